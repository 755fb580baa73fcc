//! Principal bundles over the discrete circle `Z8`, covered by the arcs
//! `U_0 = {0..4}` and `U_1 = {4,5,6,7,0}`.

use super::cocycle::{principal_from_cocycle, FinGAtlas, FinGBundle, GAtlas};
use super::group::{cyclic, FinGroup};
use crate::category::{JoinRestrictionCategory, RestrictionCategory};
use crate::error::Result;
use crate::finset::{Atom, FinObj, FinSet, ParMap};

pub fn z8() -> FinObj {
    FinObj::new("Z8", (0..8).map(Atom::Int).collect()).unwrap()
}

/// The cycle graph `k ~ k+1`.
pub fn z8_edges() -> Vec<(u32, u32)> {
    (0..8).map(|k| (k, (k + 1) % 8)).collect()
}

/// `{start, start+1, .., start+len-1}` mod 8 as an idempotent.
pub fn arc(m: &FinObj, start: u32, len: u32) -> ParMap {
    let n = m.len() as u32;
    ParMap::idempotent(m, |x| (x + n - start) % n < len)
}

pub fn c2() -> FinGroup {
    cyclic(2).to_object("C2").unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Circle {
    /// One chart covering the circle.
    Product,
    /// Two charts glued by the unit on both overlap points.
    Untwisted,
    /// Two charts glued by the unit at 4 and by the twist at 0.
    Twisted,
    /// Two charts whose transitions are defined at 4 only, so the fibre over
    /// 0 is never identified and the bundle is not totally fibred.
    Shrunken,
}

impl Circle {
    pub const ALL: [Circle; 4] = [
        Circle::Product,
        Circle::Untwisted,
        Circle::Twisted,
        Circle::Shrunken,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Circle::Product => "product",
            Circle::Untwisted => "untwisted",
            Circle::Twisted => "twisted",
            Circle::Shrunken => "shrunken",
        }
    }
}

/// The G-atlas of a circle fixture; `twist` is the group element used at 0.
pub fn circle_cocycle(g: &FinGroup, kind: Circle, twist: u32) -> FinGAtlas {
    let c = FinSet;
    let m = z8();
    let e = g.unit.apply(0).unwrap();
    let on = |keep: &ParMap, v: u32| ParMap::from_fn(&m, &g.carrier, |x| keep.apply(x).map(|_| v));
    if kind == Circle::Product {
        return GAtlas {
            base: m.clone(),
            tau: vec![vec![on(&c.identity(&m), e)]],
        };
    }
    let (u0, u1) = (arc(&m, 0, 5), arc(&m, 4, 5));
    let mut t01 = c.nowhere(&m, &g.carrier);
    t01.table[4] = Some(e);
    match kind {
        Circle::Twisted => t01.table[0] = Some(twist),
        Circle::Untwisted => t01.table[0] = Some(e),
        _ => {}
    }
    let t10 = c.compose(&t01, &g.inv).unwrap();
    let tau = vec![vec![on(&u0, e), t01], vec![t10, on(&u1, e)]];
    GAtlas {
        base: m.clone(),
        tau,
    }
}

/// The `C2` principal bundle of a circle fixture.
pub fn circle_principal(kind: Circle) -> Result<FinGBundle> {
    let g = c2();
    let ga = circle_cocycle(&g, kind, 1);
    Ok(principal_from_cocycle(&g, &ga)?.0)
}

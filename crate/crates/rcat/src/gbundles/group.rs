use crate::category::{assoc_right, times, CartesianRestrictionCategory};
use crate::error::{Error, Result};
use crate::finset::{Atom, FinObj, FinSet, ParMap};
use crate::report::{Counterexample, LawReport, Regime};
use rayon::prelude::*;

/// `(G, m, u, ι)` in a cartesian restriction category.
#[derive(Debug, Clone)]
pub struct GroupObject<O, M> {
    pub carrier: O,
    pub mul: M,
    pub unit: M,
    pub inv: M,
}

pub type FinGroup = GroupObject<FinObj, ParMap>;

/// `!u : X -> G`.
pub fn const_unit<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    g: &GroupObject<C::Obj, C::Mor>,
    x: &C::Obj,
) -> Result<C::Mor> {
    c.compose(&c.bang(x), &g.unit)
}

fn eq_case<C: CartesianRestrictionCategory + ?Sized>(
    r: &mut LawReport,
    c: &C,
    lhs: &C::Mor,
    rhs: &C::Mor,
) {
    r.check(c.mor_eq(lhs, rhs), || {
        Counterexample::new(vec![], c.show(lhs), c.show(rhs))
    });
}

/// Totality of the structure maps, associativity, both unit laws and both
/// inverse laws, decided by the model's equality.
pub fn check_group<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    g: &GroupObject<C::Obj, C::Mor>,
) -> Result<Vec<LawReport>> {
    let gg = c.product(&g.carrier, &g.carrier);
    if c.dom(&g.mul) != gg || c.cod(&g.mul) != g.carrier {
        return Err(Error::shape("m must be a morphism G×G -> G"));
    }
    let id = c.identity(&g.carrier);
    let mut total = LawReport::new("m, u, ι total", Regime::Exhaustive);
    for (name, f) in [("m", &g.mul), ("u", &g.unit), ("ι", &g.inv)] {
        total.check(c.is_total(f), || {
            Counterexample::new(vec![name.into()], c.show(f), "total")
        });
    }
    let mut assoc = LawReport::new("(m×1)m = (1×m)m", Regime::Exhaustive);
    let lhs = c.compose(&times(c, &g.mul, &id)?, &g.mul)?;
    let rhs = c.compose(
        &assoc_right(c, &g.carrier, &g.carrier, &g.carrier)?,
        &c.compose(&times(c, &id, &g.mul)?, &g.mul)?,
    )?;
    eq_case(&mut assoc, c, &lhs, &rhs);

    let bu = const_unit(c, g, &g.carrier)?;
    let mut unit = LawReport::new("⟨!u,1⟩m = 1 = ⟨1,!u⟩m", Regime::Exhaustive);
    eq_case(&mut unit, c, &c.compose(&c.pair(&bu, &id)?, &g.mul)?, &id);
    eq_case(&mut unit, c, &c.compose(&c.pair(&id, &bu)?, &g.mul)?, &id);
    let mut inv = LawReport::new("⟨ι,1⟩m = !u = ⟨1,ι⟩m", Regime::Exhaustive);
    eq_case(&mut inv, c, &c.compose(&c.pair(&g.inv, &id)?, &g.mul)?, &bu);
    eq_case(&mut inv, c, &c.compose(&c.pair(&id, &g.inv)?, &g.mul)?, &bu);
    Ok(vec![total, assoc, unit, inv])
}

/// A left action `a : G × F -> F`: total, `(1×a)a = (m×1)a` and `⟨!u,1⟩a = 1`.
pub fn check_action<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    g: &GroupObject<C::Obj, C::Mor>,
    fibre: &C::Obj,
    a: &C::Mor,
) -> Result<Vec<LawReport>> {
    let id_g = c.identity(&g.carrier);
    let id_f = c.identity(fibre);
    let mut total = LawReport::new("action total", Regime::Exhaustive);
    total.check(c.is_total(a), || {
        Counterexample::new(vec![], c.show(a), "total")
    });
    let mut compat = LawReport::new("(m×1)a = (1×a)a", Regime::Exhaustive);
    let lhs = c.compose(&times(c, &g.mul, &id_f)?, a)?;
    let rhs = c.compose(
        &assoc_right(c, &g.carrier, &g.carrier, fibre)?,
        &c.compose(&times(c, &id_g, a)?, a)?,
    )?;
    eq_case(&mut compat, c, &lhs, &rhs);
    let mut unit = LawReport::new("⟨!u,1⟩a = 1", Regime::Exhaustive);
    eq_case(
        &mut unit,
        c,
        &c.compose(&c.pair(&const_unit(c, g, fibre)?, &id_f)?, a)?,
        &id_f,
    );
    Ok(vec![total, compat, unit])
}

/// A finite group by its Cayley table, for pointwise checks too large for
/// composite objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub names: Vec<Atom>,
    /// `mul[a * n + b] = ab`.
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
    pub unit: u32,
}

impl GroupTable {
    pub fn from_fns(
        names: Vec<Atom>,
        mul: impl Fn(u32, u32) -> u32,
        inv: impl Fn(u32) -> u32,
        unit: u32,
    ) -> GroupTable {
        let n = names.len() as u32;
        let mul = (0..n * n).map(|k| mul(k / n, k % n)).collect();
        let inv = (0..n).map(inv).collect();
        GroupTable {
            names,
            mul,
            inv,
            unit,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn m(&self, a: u32, b: u32) -> u32 {
        self.mul[(a as usize) * self.len() + b as usize]
    }

    pub fn to_object(&self, name: &str) -> Result<FinGroup> {
        let c = FinSet;
        let carrier = FinObj::new(name, self.names.clone())?;
        let gg = c.product(&carrier, &carrier);
        let mul = ParMap::new(
            gg,
            carrier.clone(),
            self.mul.iter().map(|&v| Some(v)).collect(),
        )?;
        let unit = ParMap::new(c.terminal(), carrier.clone(), vec![Some(self.unit)])?;
        let inv = ParMap::new(
            carrier.clone(),
            carrier.clone(),
            self.inv.iter().map(|&v| Some(v)).collect(),
        )?;
        Ok(GroupObject {
            carrier,
            mul,
            unit,
            inv,
        })
    }

    pub fn from_object(g: &FinGroup) -> Result<GroupTable> {
        let all = |m: &ParMap| {
            m.table
                .iter()
                .map(|v| v.ok_or_else(|| Error::model("structure map not total")))
                .collect::<Result<Vec<u32>>>()
        };
        Ok(GroupTable {
            names: g.carrier.points().to_vec(),
            mul: all(&g.mul)?,
            inv: all(&g.inv)?,
            unit: g
                .unit
                .apply(0)
                .ok_or_else(|| Error::model("unit not total"))?,
        })
    }
}

/// The group laws evaluated element-wise over every triple, in parallel.
pub fn check_group_table(t: &GroupTable) -> Vec<LawReport> {
    let n = t.len() as u32;
    let name = |a: u32| t.names[a as usize].to_string();
    let assoc_fail: Vec<Counterexample> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            (0..n)
                .flat_map(move |b| (0..n).map(move |c| (a, b, c)))
                .filter_map(|(a, b, c)| {
                    let (l, r) = (t.m(t.m(a, b), c), t.m(a, t.m(b, c)));
                    (l != r).then(|| {
                        Counterexample::new(vec![name(a), name(b), name(c)], name(l), name(r))
                    })
                })
        })
        .collect();
    let mut assoc = LawReport::new("(ab)c = a(bc)", Regime::Exhaustive);
    assoc.cases = (n as u64).pow(3);
    for cx in assoc_fail {
        assoc.fail(cx);
    }
    let mut unit = LawReport::new("ea = a = ae", Regime::Exhaustive);
    let mut inv = LawReport::new("a⁻¹a = e = aa⁻¹", Regime::Exhaustive);
    for a in 0..n {
        unit.check(t.m(t.unit, a) == a && t.m(a, t.unit) == a, || {
            Counterexample::new(vec![name(a)], "unit law fails", "")
        });
        let ai = t.inv[a as usize];
        inv.check(t.m(ai, a) == t.unit && t.m(a, ai) == t.unit, || {
            Counterexample::new(vec![name(a), name(ai)], name(t.m(ai, a)), name(t.unit))
        });
    }
    vec![assoc, unit, inv]
}

/// `Z/n` with elements `0..n`.
pub fn cyclic(n: u32) -> GroupTable {
    GroupTable::from_fns(
        (0..n as i64).map(Atom::Int).collect(),
        |a, b| (a + b) % n,
        |a| (n - a) % n,
        0,
    )
}

/// Upper unitriangular 3×3 matrices over `F_p`: `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
pub fn heisenberg(p: u32) -> GroupTable {
    let enc = |a: u32, b: u32, c: u32| (a * p + b) * p + c;
    let dec = |k: u32| (k / (p * p), (k / p) % p, k % p);
    let names = (0..p * p * p)
        .map(|k| {
            let (a, b, c) = dec(k);
            Atom::Tuple(vec![
                Atom::Int(a as i64),
                Atom::Int(b as i64),
                Atom::Int(c as i64),
            ])
        })
        .collect();
    GroupTable::from_fns(
        names,
        |x, y| {
            let ((a, b, c), (a2, b2, c2)) = (dec(x), dec(y));
            enc((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p)
        },
        |x| {
            let (a, b, c) = dec(x);
            // (a,b,c)^{-1} = (-a, -b, ab - c)
            enc((p - a) % p, (p - b) % p, (a * b % p + p - c) % p)
        },
        0,
    )
}

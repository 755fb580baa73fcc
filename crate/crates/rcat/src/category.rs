//! Interface contracts for restriction categories and the generic operations
//! every model gets for free.
//!
//! Composition is diagrammatic throughout: `compose(f, g)` is "f then g".

use crate::error::{Error, Result};
use std::fmt::Debug;

pub trait RestrictionCategory: Sync {
    type Obj: Clone + PartialEq + Debug + Send + Sync;
    type Mor: Clone + Debug + Send + Sync;

    fn name(&self) -> &str;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `f` then `g`. Errors with `SHAPE_MISMATCH` when `cod f != dom g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn restrict(&self, f: &Self::Mor) -> Self::Mor;
    /// Model-supplied equality of parallel morphisms. Non-parallel inputs compare unequal.
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    /// Number of points of an object, or `usize::MAX` when not meaningful.
    fn obj_size(&self, a: &Self::Obj) -> usize;
    fn show(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }

    fn is_total(&self, f: &Self::Mor) -> bool {
        self.mor_eq(&self.restrict(f), &self.identity(&self.dom(f)))
    }

    /// A model-specific guess for the partial inverse; `partial_inverse` verifies it.
    fn partial_inverse_candidate(&self, _f: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    /// Exhaustively count the partial inverses of `f`, if the model can enumerate them.
    fn count_partial_inverses(&self, _f: &Self::Mor) -> Option<usize> {
        None
    }
}

pub trait JoinRestrictionCategory: RestrictionCategory {
    /// The least element of the hom-set `a -> b`.
    fn nowhere(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    /// Join of a family assumed pairwise compatible; `join` performs the check.
    fn join_unchecked(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
        family: &[Self::Mor],
    ) -> Result<Self::Mor>;
}

/// A pullback object together with the idempotent marking where it lives.
///
/// In the finite-set model the idempotent is the identity of a set-theoretic
/// pullback; in the polynomial model the carrier is a plain product and the
/// idempotent restricts it to the base-equality locus.
#[derive(Debug, Clone)]
pub struct FibreProduct<O, M> {
    pub obj: O,
    pub locus: M,
    pub p0: M,
    pub p1: M,
}

pub trait CartesianRestrictionCategory: RestrictionCategory {
    fn terminal(&self) -> Self::Obj;
    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn pi0(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    fn pi1(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    /// Restriction pairing, defined where both components are.
    fn pair(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn bang(&self, a: &Self::Obj) -> Self::Mor;

    /// A pullback cone with total projections, when the model can represent the carrier.
    fn restriction_pullback(
        &self,
        _f: &Self::Mor,
        _g: &Self::Mor,
    ) -> Option<(Self::Obj, Self::Mor, Self::Mor)> {
        None
    }

    fn fibre_product(
        &self,
        _f: &Self::Mor,
        _g: &Self::Mor,
    ) -> Option<FibreProduct<Self::Obj, Self::Mor>> {
        None
    }

    /// Mediating map into a fibre product.
    fn fibre_pair(
        &self,
        _fp: &FibreProduct<Self::Obj, Self::Mor>,
        _h0: &Self::Mor,
        _h1: &Self::Mor,
    ) -> Result<Self::Mor> {
        Err(Error::model(
            "fibre products are not available in this model",
        ))
    }
}

/// Everything the bundle constructions need.
pub trait Model: JoinRestrictionCategory + CartesianRestrictionCategory {}
impl<T: JoinRestrictionCategory + CartesianRestrictionCategory> Model for T {}

pub fn parallel<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor, g: &C::Mor) -> bool {
    c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g)
}

fn require_parallel<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<()> {
    if parallel(c, f, g) {
        Ok(())
    } else {
        Err(Error::shape(format!(
            "{} and {} are not parallel",
            c.show(f),
            c.show(g)
        )))
    }
}

/// Compose a non-empty chain left to right.
pub fn seq<C: RestrictionCategory + ?Sized>(c: &C, chain: &[&C::Mor]) -> Result<C::Mor> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::shape("empty composite"))?;
    let mut acc = (*first).clone();
    for g in rest {
        acc = c.compose(&acc, g)?;
    }
    Ok(acc)
}

/// `f <= g` iff `bar(f) g = f`.
pub fn leq<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<bool> {
    require_parallel(c, f, g)?;
    let lhs = c.compose(&c.restrict(f), g)?;
    Ok(c.mor_eq(&lhs, f))
}

/// `f ⌣ g` iff `bar(f) g = bar(g) f`.
pub fn compatible<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<bool> {
    require_parallel(c, f, g)?;
    let lhs = c.compose(&c.restrict(f), g)?;
    let rhs = c.compose(&c.restrict(g), f)?;
    Ok(c.mor_eq(&lhs, &rhs))
}

/// Checked join: every pair must be compatible, otherwise the first violating
/// pair (in index order) is reported. The empty family yields `nowhere`.
pub fn join<C: JoinRestrictionCategory + ?Sized>(
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
    family: &[C::Mor],
) -> Result<C::Mor> {
    for f in family {
        if c.dom(f) != *a || c.cod(f) != *b {
            return Err(Error::shape(format!(
                "{} is not a morphism of the requested hom-set",
                c.show(f)
            )));
        }
    }
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            if !compatible(c, &family[i], &family[j])? {
                return Err(Error::IncompatibleFamily {
                    first: i,
                    second: j,
                });
            }
        }
    }
    if family.is_empty() {
        return Ok(c.nowhere(a, b));
    }
    c.join_unchecked(a, b, family)
}

/// The partial inverse if one exists: the model proposes a candidate, and it is
/// accepted only when `f f* = bar(f)` and `f* f = bar(f*)` hold.
pub fn partial_inverse<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor) -> Option<C::Mor> {
    let g = c.partial_inverse_candidate(f)?;
    if c.dom(&g) != c.cod(f) || c.cod(&g) != c.dom(f) {
        return None;
    }
    let fg = c.compose(f, &g).ok()?;
    let gf = c.compose(&g, f).ok()?;
    if c.mor_eq(&fg, &c.restrict(f)) && c.mor_eq(&gf, &c.restrict(&g)) {
        Some(g)
    } else {
        None
    }
}

pub fn is_partial_iso<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor) -> bool {
    partial_inverse(c, f).is_some()
}

/// `f × g = ⟨π0 f, π1 g⟩`.
pub fn times<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    f: &C::Mor,
    g: &C::Mor,
) -> Result<C::Mor> {
    let (a, b) = (c.dom(f), c.dom(g));
    let left = c.compose(&c.pi0(&a, &b), f)?;
    let right = c.compose(&c.pi1(&a, &b), g)?;
    c.pair(&left, &right)
}

/// Projections out of the left-nested triple product `(a × b) × d`.
pub fn proj3<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
    d: &C::Obj,
) -> Result<[C::Mor; 3]> {
    let ab = c.product(a, b);
    let outer0 = c.pi0(&ab, d);
    Ok([
        c.compose(&outer0, &c.pi0(a, b))?,
        c.compose(&outer0, &c.pi1(a, b))?,
        c.pi1(&ab, d),
    ])
}

/// `(a × b) × d → a × (b × d)`.
pub fn assoc_right<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
    d: &C::Obj,
) -> Result<C::Mor> {
    let [x, y, z] = proj3(c, a, b, d)?;
    c.pair(&x, &c.pair(&y, &z)?)
}

/// `a × (b × d) → (a × b) × d`.
pub fn assoc_left<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
    d: &C::Obj,
) -> Result<C::Mor> {
    let bd = c.product(b, d);
    let x = c.pi0(a, &bd);
    let rest = c.pi1(a, &bd);
    let y = c.compose(&rest, &c.pi0(b, d))?;
    let z = c.compose(&rest, &c.pi1(b, d))?;
    c.pair(&c.pair(&x, &y)?, &z)
}

/// `a × b → b × a`.
pub fn swap<C: CartesianRestrictionCategory + ?Sized>(
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
) -> Result<C::Mor> {
    c.pair(&c.pi1(a, b), &c.pi0(a, b))
}

/// `⟨1, 1⟩ : a → a × a`.
pub fn diagonal<C: CartesianRestrictionCategory + ?Sized>(c: &C, a: &C::Obj) -> Result<C::Mor> {
    let id = c.identity(a);
    c.pair(&id, &id)
}

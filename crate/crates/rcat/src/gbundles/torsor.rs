use super::cocycle::GBundle;
use crate::category::{compatible, join, FibreProduct, Model};
use crate::error::{Error, Result};
use crate::finset::{FinObj, ParMap};
use crate::report::{Counterexample, LawReport, Regime};

/// The shear `⟨π0, r⟩ : P × G -> P ×_M P` and its partial inverse `d*`.
#[derive(Debug, Clone)]
pub struct Torsor<O, M> {
    pub fibre_product: FibreProduct<O, M>,
    pub shear: M,
    pub d_star: M,
}

/// `d_i*(y0, y1) = (y0, g0⁻¹ g1)` where `α_i y0 = (x, g0)` and `α_i y1 = (x, g1)`.
fn local_division<C: Model + ?Sized>(
    c: &C,
    pb: &GBundle<C::Obj, C::Mor>,
    fp: &FibreProduct<C::Obj, C::Mor>,
    i: usize,
) -> Result<C::Mor> {
    let b = &pb.bundle;
    let g = &pb.group.carrier;
    let a = &b.alphas[i];
    let snd = c.pi1(&b.base, g);
    let g0 = c.compose(&c.compose(&fp.p0, a)?, &snd)?;
    let g1 = c.compose(&c.compose(&fp.p1, a)?, &snd)?;
    let quotient = c.compose(
        &c.pair(&c.compose(&g0, &pb.group.inv)?, &g1)?,
        &pb.group.mul,
    )?;
    let y0 = c.compose(&fp.p0, &c.restrict(a))?;
    c.compose(&fp.locus, &c.pair(&y0, &quotient)?)
}

/// Build `d* = ⋁ d_i*` and check it against the shear: `⟨π0,r⟩ d* = 1`,
/// `d* ⟨π0,r⟩ = bar d*`, and totality of `d*` on `P ×_M P`.
pub fn torsor_witness<C: Model + ?Sized>(
    c: &C,
    pb: &GBundle<C::Obj, C::Mor>,
    r: &C::Mor,
) -> Result<(Torsor<C::Obj, C::Mor>, Vec<LawReport>)> {
    let b = &pb.bundle;
    let g = &pb.group.carrier;
    let fp = c
        .fibre_product(&b.q, &b.q)
        .ok_or_else(|| Error::model(format!("{} cannot form P ×_M P", c.name())))?;
    let pg = c.product(&b.total, g);
    let shear = c.fibre_pair(&fp, &c.pi0(&b.total, g), r)?;
    let locals = (0..b.len())
        .map(|i| local_division(c, pb, &fp, i))
        .collect::<Result<Vec<_>>>()?;
    let mut compat = LawReport::new("d_i* pairwise compatible", Regime::Exhaustive);
    for i in 0..locals.len() {
        for j in 0..locals.len() {
            let ok = compatible(c, &locals[i], &locals[j])?;
            compat.check(ok, || {
                Counterexample::new(
                    vec![format!("i={i} j={j}")],
                    c.show(&locals[i]),
                    c.show(&locals[j]),
                )
            });
        }
    }
    let d_star = join(c, &fp.obj, &pg, &locals)?;
    let mut left = LawReport::new("⟨π0,r⟩ d* = 1_{P×G}", Regime::Exhaustive);
    let lhs = c.compose(&shear, &d_star)?;
    let id = c.identity(&pg);
    left.check(c.mor_eq(&lhs, &id), || {
        Counterexample::new(vec![], c.show(&lhs), c.show(&id))
    });
    let mut right = LawReport::new("d* ⟨π0,r⟩ = bar d*", Regime::Exhaustive);
    let lhs = c.compose(&d_star, &shear)?;
    let rhs = c.restrict(&d_star);
    right.check(c.mor_eq(&lhs, &rhs), || {
        Counterexample::new(vec![], c.show(&lhs), c.show(&rhs))
    });
    let mut total = LawReport::new("d* total on P ×_M P", Regime::Exhaustive);
    let dom = c.restrict(&d_star);
    total.check(c.mor_eq(&dom, &fp.locus), || {
        Counterexample::new(vec![], c.show(&dom), c.show(&fp.locus))
    });
    Ok((
        Torsor {
            fibre_product: fp,
            shear,
            d_star,
        },
        vec![compat, left, right, total],
    ))
}

/// Points of `P ×_M P` where `d*` is undefined, as `(y0, y1)` names.
pub fn missing_pairs(t: &Torsor<FinObj, ParMap>) -> Vec<String> {
    let obj = &t.fibre_product.obj;
    (0..obj.len() as u32)
        .filter(|&k| t.d_star.apply(k).is_none())
        .map(|k| obj.point(k).to_string())
        .collect()
}

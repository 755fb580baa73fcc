use super::cocycle::{FinGBundle, GBundle};
use super::group::const_unit;
use crate::category::{assoc_right, compatible, join, times, Model};
use crate::error::{Error, Result};
use crate::finset::ParMap;
use crate::report::{Counterexample, LawReport, Regime};

fn eq_case<C: Model + ?Sized>(r: &mut LawReport, c: &C, label: String, lhs: &C::Mor, rhs: &C::Mor) {
    r.check(c.mor_eq(lhs, rhs), || {
        Counterexample::new(vec![label], c.show(lhs), c.show(rhs))
    });
}

/// `r_i = (α_i × 1_G)(1_M × m)α_i*`, composed through the reassociation
/// `(M × G) × G -> M × (G × G)`.
pub fn local_action<C: Model + ?Sized>(
    c: &C,
    pb: &GBundle<C::Obj, C::Mor>,
    i: usize,
) -> Result<C::Mor> {
    let b = &pb.bundle;
    let g = &pb.group.carrier;
    let id_g = c.identity(g);
    let lift = times(c, &b.alphas[i], &id_g)?;
    let mul = times(c, &c.identity(&b.base), &pb.group.mul)?;
    let steps = [assoc_right(c, &b.base, g, g)?, mul, b.alpha_inv[i].clone()];
    steps.iter().try_fold(lift, |acc, s| c.compose(&acc, s))
}

/// The total right action `r = ⋁ r_i` of a principal bundle, with reports for
/// the local domains, pairwise compatibility, totality, the action laws and
/// `rq = π0 q`.
pub fn right_action<C: Model + ?Sized>(
    c: &C,
    pb: &GBundle<C::Obj, C::Mor>,
) -> Result<(C::Mor, Vec<LawReport>)> {
    let b = &pb.bundle;
    let g = &pb.group.carrier;
    if b.fibre != *g {
        return Err(Error::shape("a right action needs fibre G"));
    }
    let id_g = c.identity(g);
    let locals = (0..b.len())
        .map(|i| local_action(c, pb, i))
        .collect::<Result<Vec<_>>>()?;
    let mut domains = LawReport::new("bar r_i = bar α_i × 1_G", Regime::Exhaustive);
    for (i, r) in locals.iter().enumerate() {
        let rhs = times(c, &c.restrict(&b.alphas[i]), &id_g)?;
        eq_case(&mut domains, c, format!("i={i}"), &c.restrict(r), &rhs);
    }
    let mut compat = LawReport::new("r_i pairwise compatible", Regime::Exhaustive);
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
    let pg = c.product(&b.total, g);
    let r = join(c, &pg, &b.total, &locals)?;
    let mut total = LawReport::new("r total", Regime::Exhaustive);
    total.check(c.is_total(&r), || {
        Counterexample::new(vec![], c.show(&c.restrict(&r)), "1_{P×G}")
    });

    let mut assoc = LawReport::new("(r×1)r = (1×m)r", Regime::Exhaustive);
    let lhs = c.compose(&times(c, &r, &id_g)?, &r)?;
    let rhs = c.compose(
        &assoc_right(c, &b.total, g, g)?,
        &c.compose(&times(c, &c.identity(&b.total), &pb.group.mul)?, &r)?,
    )?;
    eq_case(&mut assoc, c, "(P×G)×G".into(), &lhs, &rhs);
    let mut unit = LawReport::new("(1×e)r = 1_P", Regime::Exhaustive);
    let id_p = c.identity(&b.total);
    let lhs = c.compose(&c.pair(&id_p, &const_unit(c, &pb.group, &b.total)?)?, &r)?;
    eq_case(&mut unit, c, "P".into(), &lhs, &id_p);
    let mut over = LawReport::new("rq = π0 q", Regime::Exhaustive);
    let lhs = c.compose(&r, &b.q)?;
    let rhs = c.compose(&c.pi0(&b.total, g), &b.q)?;
    eq_case(&mut over, c, "P×G".into(), &lhs, &rhs);
    Ok((r, vec![domains, compat, total, assoc, unit, over]))
}

/// Freeness `y·g = y ⇒ g = e`, and whether each orbit is a whole fibre of `q`.
/// Transitivity holds on totally fibred bundles; elsewhere a fibre may split
/// into several orbits.
pub fn free_and_transitive(pb: &FinGBundle, r: &ParMap) -> Result<Vec<LawReport>> {
    let b = &pb.bundle;
    let ng = pb.group.carrier.len() as u32;
    let unit = pb
        .group
        .unit
        .apply(0)
        .ok_or_else(|| Error::model("unit not total"))?;
    let act = |y: u32, g: u32| r.apply(y * ng + g);
    let mut free = LawReport::new("right action free", Regime::Exhaustive);
    let mut trans = LawReport::new("orbits are the fibres of q", Regime::Exhaustive);
    for y in 0..b.total.len() as u32 {
        for g in 0..ng {
            free.check(g == unit || act(y, g) != Some(y), || {
                Counterexample::new(
                    vec![
                        b.total.point(y).to_string(),
                        pb.group.carrier.point(g).to_string(),
                    ],
                    "y·g = y",
                    "g = e",
                )
            });
        }
        let orbit: std::collections::BTreeSet<u32> = (0..ng).filter_map(|g| act(y, g)).collect();
        let fibre: std::collections::BTreeSet<u32> = (0..b.total.len() as u32)
            .filter(|&z| b.q.apply(z) == b.q.apply(y))
            .collect();
        trans.check(orbit == fibre, || {
            Counterexample::new(
                vec![b.total.point(y).to_string()],
                format!("orbit of size {}", orbit.len()),
                format!("fibre of size {}", fibre.len()),
            )
        });
    }
    Ok(vec![free, trans])
}

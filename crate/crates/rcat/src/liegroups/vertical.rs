use super::group::{all_points, TangentGroup};
use super::unit::{induce, TangentSpaceAtUnit};
use crate::category::{compatible, join, CartesianRestrictionCategory, RestrictionCategory};
use crate::error::{Error, Result};
use crate::finset::{FinSet, ParMap};
use crate::gbundles::{check_gbundle, cocycle_of, const_unit, right_action, FinGBundle, GBundle};
use crate::manifolds::FibreBundle;
use crate::poly::{Domain, Poly, PolyMap, PolyMor};
use crate::report::{Counterexample, LawReport, Regime};
use std::collections::HashSet;

pub type PolyGBundle = GBundle<usize, PolyMap>;

/// `M × G` over `M = 𝔽_p^m` with a single chart.
pub fn trivial_principal(g: &TangentGroup, m: usize) -> Result<(PolyGBundle, Vec<LawReport>)> {
    let c = &g.cat;
    let total = m + g.n;
    principal(g, m, vec![c.identity(&total)], vec![c.identity(&m)])
}

/// Two charts over `M = 𝔽_p` covering `{x <= split}` and `{x >= split}`. The
/// second chart is left translation by `shifts[k]` on the `k`-th of its base
/// pieces, so the transition is locally constant and not the unit.
pub fn two_chart_principal(
    g: &TangentGroup,
    split: u32,
    shifts: &[(Vec<u32>, Vec<u32>)],
) -> Result<(PolyGBundle, Vec<LawReport>)> {
    let c = &g.cat;
    let (p, n) = (g.p(), g.n);
    let total = 1 + n;
    let u0 = Domain::from_prefix(p, 1, 1, |x| x[0] <= split);
    let u1 = Domain::from_prefix(p, 1, 1, |x| x[0] >= split);
    let chart0 = c.idempotent(Domain::from_prefix(p, total, 1, |x| x[0] <= split));
    let mut pieces = Vec::new();
    for (xs, h) in shifts {
        if xs.iter().any(|&x| x < split) {
            return Err(Error::shape("shift pieces must lie in the second chart"));
        }
        let d = Domain::from_prefix(p, total, 1, |x| xs.contains(&x[0]));
        let translate = {
            let mut comps = vec![c.var(total, 0)];
            let hx = PolyMor::constant(p, total, h).pair(&PolyMor::select(
                p,
                total,
                &(1..total).collect::<Vec<_>>(),
            ));
            comps.extend(hx.then(g.group.mul.body().expect("m has one piece")).comps);
            PolyMor::new(p, total, comps)
        };
        pieces.push((d, translate));
    }
    let covered: HashSet<u32> = shifts
        .iter()
        .flat_map(|(xs, _)| xs.iter().copied())
        .collect();
    if covered != (split..p).collect() {
        return Err(Error::shape(
            "shift pieces must cover the second chart exactly",
        ));
    }
    let chart1 = PolyMap::piecewise(p, total, total, pieces, c.depth)?;
    principal(
        g,
        1,
        vec![chart0, chart1],
        vec![c.idempotent(u0), c.idempotent(u1)],
    )
}

fn principal(
    g: &TangentGroup,
    m: usize,
    alphas: Vec<PolyMap>,
    idempotents: Vec<PolyMap>,
) -> Result<(PolyGBundle, Vec<LawReport>)> {
    let c = &g.cat;
    let total = m + g.n;
    let q = c.pi0(&m, &g.n);
    let bundle = FibreBundle::new(c, total, m, g.n, q, alphas, idempotents)?;
    let cocycle = cocycle_of(c, &g.group, &bundle)?;
    let gb = GBundle {
        bundle,
        group: g.group.clone(),
        action: g.group.mul.clone(),
        cocycle,
    };
    let reports = check_gbundle(c, &gb)?;
    Ok((gb, reports))
}

/// Result of the vertical-bundle comparison, with stage-tagged reports.
#[derive(Debug, Clone)]
pub struct VerticalBundle {
    /// `(0 × p_u*)T(r) : P × T(G)_u -> T(P)`.
    pub comparison: PolyMap,
    /// The set-theoretic `T_0(P) = {z | T(q) z = 0 (q (p z))}`.
    pub t0: Vec<Vec<u32>>,
    pub reports: Vec<LawReport>,
}

/// (a) the square commutes, (b) `T_0(P)` by brute force, (c) the comparison
/// is a total bijection onto it with `|T_0(P)| = |P| p^n`, (d) the chart maps
/// `ξ_i` are compatible on probe cones and `⋁ f ξ_i` factors `f`.
pub fn vertical_bundle(
    g: &TangentGroup,
    tu: &TangentSpaceAtUnit,
    pb: &PolyGBundle,
) -> Result<VerticalBundle> {
    let c = &g.cat;
    let (p, n) = (g.p(), g.n);
    let b = &pb.bundle;
    let (mp, m) = (b.total, b.base);
    let (r, action_reports) = right_action(c, pb)?;
    let mut reports: Vec<LawReport> = action_reports
        .into_iter()
        .map(|mut rep| {
            rep.law = format!("(a) right action: {}", rep.law);
            rep
        })
        .collect();

    let lift = c.pair(
        &c.compose(&c.pi0(&mp, &n), &c.zero(mp))?,
        &c.compose(&c.pi1(&mp, &n), &tu.embed)?,
    )?;
    let comparison = c.compose(&c.compose(&lift, &c.unshuffle(mp, n))?, &r.tangent())?;
    let tq = b.q.tangent();
    let lhs = c.compose(&comparison, &tq)?;
    let rhs = c.compose(
        &c.compose(&c.compose(&c.pi0(&mp, &n), &b.q)?, &c.zero(m))?,
        &c.identity(&(2 * m)),
    )?;
    reports.push(LawReport::single(
        "(a) (0 × p_u*)T(r)T(q) = π0 q 0",
        Regime::Symbolic,
        c.mor_eq(&lhs, &rhs),
        c.show(&lhs),
    ));

    let zero_m = c.zero(m);
    let t0: Vec<Vec<u32>> = all_points(p, 2 * mp)
        .filter(|z| {
            let base = b.q.eval(&z[..mp]);
            let pushed = tq.eval(z);
            matches!((base, pushed), (Some(x), Some(v)) if zero_m.eval(&x).as_ref() == Some(&v))
        })
        .collect();
    let size_p = (p as usize).pow(mp as u32);
    let expected = size_p * (p as usize).pow(n as u32);
    let mut card = LawReport::new("(b) |T_0(P)| = |P| p^n", Regime::Exhaustive);
    card.check(t0.len() == expected, || {
        Counterexample::new(vec![], t0.len().to_string(), expected.to_string())
    });
    reports.push(card);

    let t0_set: HashSet<&Vec<u32>> = t0.iter().collect();
    let mut bij = LawReport::new(
        "(c) P × T(G)_u -> T_0(P) is a total bijection",
        Regime::Exhaustive,
    );
    let mut image = HashSet::new();
    for y in all_points(p, mp + n) {
        let z = comparison.eval(&y);
        bij.check(
            z.as_ref()
                .is_some_and(|z| t0_set.contains(z) && image.insert(z.clone())),
            || {
                Counterexample::new(
                    vec![format!("{y:?}")],
                    format!("{z:?}"),
                    "a new point of T_0(P)",
                )
            },
        );
    }
    bij.check(image.len() == t0.len(), || {
        Counterexample::new(vec![], image.len().to_string(), t0.len().to_string())
    });
    reports.push(bij);

    reports.push(universal_factorization(g, pb, &comparison)?);
    Ok(VerticalBundle {
        comparison,
        t0,
        reports,
    })
}

fn universal_factorization(
    g: &TangentGroup,
    pb: &PolyGBundle,
    comparison: &PolyMap,
) -> Result<LawReport> {
    let c = &g.cat;
    let (p, n) = (g.p(), g.n);
    let b = &pb.bundle;
    let (mp, m) = (b.total, b.base);
    let mut landed = LawReport::new("ξ_i lie over u", Regime::Symbolic);
    let back = c.compose(&c.compose(&c.proj(n), &g.group.inv)?, &c.zero(n))?;
    let moved = c.compose(&c.pair(&back, &c.identity(&(2 * n)))?, &g.tm())?;
    let mut fibre_idx: Vec<usize> = (m..m + n).collect();
    fibre_idx.extend(mp + m..2 * mp);
    let fibre = c.select(2 * mp, &fibre_idx);
    let xis = b
        .alphas
        .iter()
        .map(|a| {
            let h = c.compose(&c.compose(&a.tangent(), &fibre)?, &moved)?;
            c.pair(
                &c.proj(mp),
                &induce(g, "T(α_i)π1⟨pι0,1⟩T(m)", &h, &mut landed)?,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let mut r = LawReport::new(
        "(d) φ = ⋁ f ξ_i factors each probe cone uniquely",
        Regime::Probe,
    );
    r.cases += landed.cases;
    for cx in landed.counterexamples {
        r.fail(cx);
    }
    // Cones `f : Z -> T(P)` with `f T(q) = g 0` as maps, not just pointwise:
    // the base velocity is the zero polynomial.
    let z = mp + n;
    let vertical = |fibre_velocity: Vec<Poly>| -> PolyMap {
        let mut comps: Vec<Poly> = (0..mp).map(|i| c.var(z, i)).collect();
        comps.extend((0..m).map(|_| Poly::zero(p, z)));
        comps.extend(fibre_velocity);
        c.total(z, comps)
    };
    let linear = vertical((mp..z).map(|i| c.var(z, i)).collect());
    let curved = vertical(
        (0..n)
            .map(|i| {
                c.var(z, mp + i)
                    .mul(&c.var(z, m + i))
                    .add(&c.var(z, 0).mul(&c.var(z, 0)))
            })
            .collect(),
    );
    let half: Vec<Vec<u32>> = all_points(p, z).step_by(2).collect();
    let probes = [
        ("(y, 0, w)", linear.clone()),
        ("(y, 0, w g + x²)", curved),
        (
            "(y, 0, w) on every other point",
            c.compose(&c.idempotent(Domain::from_points(p, z, &half)), &linear)?,
        ),
        ("the comparison map", comparison.clone()),
    ];
    for (name, f) in probes {
        let legs = xis
            .iter()
            .map(|x| c.compose(&f, x))
            .collect::<Result<Vec<_>>>()?;
        let mut ok = true;
        for i in 0..legs.len() {
            for j in 0..legs.len() {
                ok &= compatible(c, &legs[i], &legs[j])?;
            }
        }
        let cone = c.compose(&f, &b.q.tangent())?;
        let base = c.compose(&c.compose(&cone, &c.proj(m))?, &c.zero(m))?;
        r.check(c.mor_eq(&cone, &base), || {
            Counterexample::new(
                vec![format!("{name}: f T(q) = g 0")],
                c.show(&cone),
                c.show(&base),
            )
        });
        r.check(ok, || {
            Counterexample::new(vec![name.into()], "f ξ_i", "pairwise compatible")
        });
        if !ok {
            continue;
        }
        let phi = join(c, &f.src, &(mp + n), &legs)?;
        let back = c.compose(&phi, comparison)?;
        r.check(c.mor_eq(&back, &f), || {
            Counterexample::new(vec![name.into()], c.show(&back), c.show(&f))
        });
        let g_leg = c.compose(&c.compose(&f, &b.q.tangent())?, &c.proj(m))?;
        let via = c.compose(&c.compose(&phi, &c.pi0(&mp, &n))?, &b.q)?;
        r.check(c.mor_eq(&via, &g_leg), || {
            Counterexample::new(
                vec![format!("{name}: φπ0q = g")],
                c.show(&via),
                c.show(&g_leg),
            )
        });
    }
    r.note("uniqueness follows from the comparison being injective, checked in (c)");
    Ok(r)
}

/// With the identity tangent structure `T(G)_u = 1`, `T_0(P) = P` and the
/// comparison is `⟨1, !u⟩r`, which must be the identity of `P`.
pub fn vertical_bundle_identity_tangent(pb: &FinGBundle) -> Result<LawReport> {
    let c = FinSet;
    let (r, _) = right_action(&c, pb)?;
    let total = &pb.bundle.total;
    let comparison: ParMap = c.compose(
        &c.pair(&c.identity(total), &const_unit(&c, &pb.group, total)?)?,
        &r,
    )?;
    let ok = c.mor_eq(&comparison, &c.identity(total));
    Ok(LawReport::single(
        "T = 1: P × T(G)_u -> T_0(P) is 1_P",
        Regime::Exhaustive,
        ok,
        c.show(&comparison),
    ))
}

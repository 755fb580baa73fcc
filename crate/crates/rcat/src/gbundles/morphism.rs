use super::cocycle::{FinGBundle, GAtlas, GBundle};
use super::group::GroupObject;
use crate::category::{join, leq, JoinRestrictionCategory, Model, RestrictionCategory};
use crate::error::{Error, Result};
use crate::finset::{FinSet, ParMap, SearchOutcome, SearchProblem};
use crate::manifolds::{
    bundle_to_atlas, check_atlas_morphism, check_bundle_morphism, induced_bundle_map, AtlasMorphism,
};
use crate::report::{all_passed, Counterexample, LawReport, Regime};
use rayon::prelude::*;
use std::collections::HashSet;

/// A principal bundle morphism in local form: `φ : M -> M'` and
/// `T_ik : M -> G`, acting as `A_ik(x, g) = (φ x, T_ik(x) g)`.
#[derive(Debug, Clone)]
pub struct TFamily<M> {
    pub phi: M,
    pub t: Vec<Vec<M>>,
}

impl<M> TFamily<M> {
    pub fn t(&self, i: usize, k: usize) -> &M {
        &self.t[i][k]
    }
}

type Obj<C> = <C as RestrictionCategory>::Obj;
type Mor<C> = <C as RestrictionCategory>::Mor;

fn mul_of<C: Model + ?Sized>(
    c: &C,
    g: &GroupObject<Obj<C>, Mor<C>>,
    a: &Mor<C>,
    b: &Mor<C>,
) -> Result<Mor<C>> {
    c.compose(&c.pair(a, b)?, &g.mul)
}

fn validate_family<C: Model + ?Sized>(
    c: &C,
    src: &GAtlas<Obj<C>, Mor<C>>,
    tgt: &GAtlas<Obj<C>, Mor<C>>,
    fam: &TFamily<Mor<C>>,
) -> Result<()> {
    if fam.t.len() != src.len() || fam.t.iter().any(|row| row.len() != tgt.len()) {
        return Err(Error::shape("T table does not match the chart counts"));
    }
    if c.dom(&fam.phi) != src.base || c.cod(&fam.phi) != tgt.base {
        return Err(Error::shape("φ must be a morphism M -> M'"));
    }
    Ok(())
}

/// The conditions making `A_ik = ⟨π0 φ, ⟨π0 T_ik, π1⟩m⟩` an atlas morphism
/// when transitions act by `τ_ji`:
/// (a) `(T_jk, τ_ji)m <= T_ik`, (b) `(φτ'_lk, T_ik)m <= T_il`,
/// (c) `bar(T_ik) T_il = (φτ'_lk, T_ik)m`, (d) `bar T_ik <= bar τ_ii`.
pub fn check_t_conditions<C: Model + ?Sized>(
    c: &C,
    g: &GroupObject<Obj<C>, Mor<C>>,
    src: &GAtlas<Obj<C>, Mor<C>>,
    tgt: &GAtlas<Obj<C>, Mor<C>>,
    fam: &TFamily<Mor<C>>,
) -> Result<Vec<LawReport>> {
    validate_family(c, src, tgt, fam)?;
    let (n, m) = (src.len(), tgt.len());
    let mut ra = LawReport::new("(a) (T_jk, τ_ji)m <= T_ik", Regime::Exhaustive);
    let mut rb = LawReport::new("(b) (φτ'_lk, T_ik)m <= T_il", Regime::Exhaustive);
    let mut rc = LawReport::new("(c) bar(T_ik) T_il = (φτ'_lk, T_ik)m", Regime::Exhaustive);
    let mut rd = LawReport::new("(d) bar T_ik <= bar τ_ii", Regime::Exhaustive);
    for i in 0..n {
        for k in 0..m {
            let tik = fam.t(i, k);
            let ok = leq(c, &c.restrict(tik), &c.restrict(src.t(i, i)))?;
            rd.check(ok, || {
                Counterexample::new(
                    vec![format!("i={i} k={k}")],
                    c.show(tik),
                    c.show(src.t(i, i)),
                )
            });
            for j in 0..n {
                let lhs = mul_of(c, g, fam.t(j, k), src.t(j, i))?;
                let ok = leq(c, &lhs, tik)?;
                ra.check(ok, || {
                    Counterexample::new(
                        vec![format!("i={i} j={j} k={k}")],
                        c.show(&lhs),
                        c.show(tik),
                    )
                });
            }
            for l in 0..m {
                let moved = c.compose(&fam.phi, tgt.t(l, k))?;
                let lhs = mul_of(c, g, &moved, tik)?;
                let ok = leq(c, &lhs, fam.t(i, l))?;
                rb.check(ok, || {
                    Counterexample::new(
                        vec![format!("i={i} k={k} l={l}")],
                        c.show(&lhs),
                        c.show(fam.t(i, l)),
                    )
                });
                let left = c.compose(&c.restrict(tik), fam.t(i, l))?;
                rc.check(c.mor_eq(&left, &lhs), || {
                    Counterexample::new(
                        vec![format!("i={i} k={k} l={l}")],
                        c.show(&left),
                        c.show(&lhs),
                    )
                });
            }
        }
    }
    Ok(vec![ra, rb, rc, rd])
}

/// The three conditions with the index placement `(T_jk, τ_ij)m <= T_ik`,
/// `(φτ'_lk, T_il)m <= T_ik` and `bar(T_ik) T_ih = (φτ'_kh, T_ik)m`. They
/// coincide with [`check_t_conditions`] whenever every `τ` is its own inverse
/// and `G` is abelian; comparing the two locates where the conventions part.
pub fn literal_t_conditions<C: Model + ?Sized>(
    c: &C,
    g: &GroupObject<Obj<C>, Mor<C>>,
    src: &GAtlas<Obj<C>, Mor<C>>,
    tgt: &GAtlas<Obj<C>, Mor<C>>,
    fam: &TFamily<Mor<C>>,
) -> Result<Vec<LawReport>> {
    validate_family(c, src, tgt, fam)?;
    let (n, m) = (src.len(), tgt.len());
    let mut ra = LawReport::new("(a*) (T_jk, τ_ij)m <= T_ik", Regime::Exhaustive);
    let mut rb = LawReport::new("(b*) (φτ'_lk, T_il)m <= T_ik", Regime::Exhaustive);
    let mut rc = LawReport::new("(c*) bar(T_ik) T_ih = (φτ'_kh, T_ik)m", Regime::Exhaustive);
    for i in 0..n {
        for k in 0..m {
            let tik = fam.t(i, k);
            for j in 0..n {
                let lhs = mul_of(c, g, fam.t(j, k), src.t(i, j))?;
                let ok = leq(c, &lhs, tik)?;
                ra.check(ok, || {
                    Counterexample::new(
                        vec![format!("i={i} j={j} k={k}")],
                        c.show(&lhs),
                        c.show(tik),
                    )
                });
            }
            for l in 0..m {
                let lhs = mul_of(c, g, &c.compose(&fam.phi, tgt.t(l, k))?, fam.t(i, l))?;
                let ok = leq(c, &lhs, tik)?;
                rb.check(ok, || {
                    Counterexample::new(
                        vec![format!("i={i} k={k} l={l}")],
                        c.show(&lhs),
                        c.show(tik),
                    )
                });
                let left = c.compose(&c.restrict(tik), fam.t(i, l))?;
                let right = mul_of(c, g, &c.compose(&fam.phi, tgt.t(k, l))?, tik)?;
                rc.check(c.mor_eq(&left, &right), || {
                    Counterexample::new(
                        vec![format!("i={i} k={k} h={l}")],
                        c.show(&left),
                        c.show(&right),
                    )
                });
            }
        }
    }
    Ok(vec![ra, rb, rc])
}

/// `A_ik = ⟨π0 φ, ⟨π0 T_ik, π1⟩m⟩ : M × G -> M' × G`.
pub fn t_atlas_morphism<C: Model + ?Sized>(
    c: &C,
    g: &GroupObject<Obj<C>, Mor<C>>,
    base: &Obj<C>,
    fam: &TFamily<Mor<C>>,
) -> Result<AtlasMorphism<Mor<C>>> {
    let (p0, p1) = (c.pi0(base, &g.carrier), c.pi1(base, &g.carrier));
    let moved = c.compose(&p0, &fam.phi)?;
    let comps = fam
        .t
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| c.pair(&moved, &mul_of(c, g, &c.compose(&p0, t)?, &p1)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AtlasMorphism { comps })
}

/// The total-space map of a `T`-family, `Φ = ⋁ α_i A_ik α'_k*`, after the
/// conditions are verified (`BAD_TRANSITION_FAMILY` otherwise). Reports cover
/// the conditions, the atlas-morphism laws, `Φq' = qφ`, `A_ik = α_i* Φ α'_k`
/// and equivariance `r Φ = (Φ × 1) r'`.
pub fn pbun_morphism<C: Model + ?Sized>(
    c: &C,
    p: &GBundle<Obj<C>, Mor<C>>,
    p2: &GBundle<Obj<C>, Mor<C>>,
    fam: &TFamily<Mor<C>>,
) -> Result<(Mor<C>, Vec<LawReport>)> {
    let g = &p.group;
    let mut reports = check_t_conditions(c, g, &p.cocycle, &p2.cocycle, fam)?;
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(Error::BadTransitionFamily(bad.to_string()));
    }
    let a = t_atlas_morphism(c, g, &p.bundle.base, fam)?;
    let (src, _) = bundle_to_atlas(c, &p.bundle)?;
    let (tgt, _) = bundle_to_atlas(c, &p2.bundle)?;
    reports.extend(check_atlas_morphism(c, &src.atlas, &tgt.atlas, &a)?);
    let big_phi = induced_bundle_map(c, &p.bundle, &p2.bundle, &a)?;
    reports.extend(check_bundle_morphism(
        c,
        &p.bundle,
        &p2.bundle,
        &big_phi,
        &fam.phi,
        Some(&a),
    )?);
    reports.push(equivariance(c, p, p2, &big_phi)?);
    Ok((big_phi, reports))
}

/// `r_P Φ = (Φ × 1_G) r_P'`.
pub fn equivariance<C: Model + ?Sized>(
    c: &C,
    p: &GBundle<Obj<C>, Mor<C>>,
    p2: &GBundle<Obj<C>, Mor<C>>,
    big_phi: &Mor<C>,
) -> Result<LawReport> {
    let (r, _) = super::action::right_action(c, p)?;
    let (r2, _) = super::action::right_action(c, p2)?;
    let lhs = c.compose(&r, big_phi)?;
    let rhs = c.compose(
        &crate::category::times(c, big_phi, &c.identity(&p.group.carrier))?,
        &r2,
    )?;
    let mut rep = LawReport::new("r Φ = (Φ × 1) r'", Regime::Exhaustive);
    rep.check(c.mor_eq(&lhs, &rhs), || {
        Counterexample::new(vec![], c.show(&lhs), c.show(&rhs))
    });
    Ok(rep)
}

/// `(φ, T)(φ', T') = (φφ', ⋁_k (φ T'_kl, T_ik)m)`, the local form of
/// composing the induced atlas morphisms.
pub fn compose_t_families<C: Model + ?Sized>(
    c: &C,
    g: &GroupObject<Obj<C>, Mor<C>>,
    base: &Obj<C>,
    first: &TFamily<Mor<C>>,
    second: &TFamily<Mor<C>>,
) -> Result<TFamily<Mor<C>>> {
    let mid = second.t.len();
    if first.t.iter().any(|row| row.len() != mid) {
        return Err(Error::shape("T families do not share the middle charts"));
    }
    let cols = second.t.first().map_or(0, Vec::len);
    let mut t = Vec::with_capacity(first.t.len());
    for row in &first.t {
        let mut out = Vec::with_capacity(cols);
        for l in 0..cols {
            let parts = (0..mid)
                .map(|k| mul_of(c, g, &c.compose(&first.phi, second.t(k, l))?, &row[k]))
                .collect::<Result<Vec<_>>>()?;
            out.push(join(c, base, &g.carrier, &parts)?);
        }
        t.push(out);
    }
    Ok(TFamily {
        phi: c.compose(&first.phi, &second.phi)?,
        t,
    })
}

/// Outcome of enumerating `T`-families between two principal bundles.
#[derive(Debug, Clone)]
pub struct TSearch {
    pub candidates: u64,
    pub discarded_by_continuity: u64,
    /// Families satisfying (a)-(d), with their induced maps.
    pub valid: Vec<(TFamily<ParMap>, ParMap)>,
}

impl TSearch {
    /// Valid families whose `Φ` is a total bijection.
    pub fn isomorphisms(&self) -> impl Iterator<Item = &(TFamily<ParMap>, ParMap)> {
        self.valid.iter().filter(|(_, phi)| phi.is_bijection())
    }
}

/// Enumerate every family whose `T_ik` is defined on exactly
/// `U_i ∩ φ⁻¹(U'_k)`. With `edges`, a family must also be constant along
/// each base edge inside a domain, which stands in for continuity.
pub fn search_t_families(
    p: &FinGBundle,
    p2: &FinGBundle,
    phi: &ParMap,
    edges: Option<&[(u32, u32)]>,
    budget: u64,
) -> Result<TSearch> {
    let c = FinSet;
    let g = &p.group;
    let ng = g.carrier.len() as u64;
    let (n, m) = (p.cocycle.len(), p2.cocycle.len());
    let mut slots: Vec<(usize, usize, u32)> = Vec::new();
    for i in 0..n {
        for k in 0..m {
            for x in 0..p.bundle.base.len() as u32 {
                let in_ui = p.cocycle.t(i, i).apply(x).is_some();
                let in_vk = phi
                    .apply(x)
                    .is_some_and(|y| p2.cocycle.t(k, k).apply(y).is_some());
                if in_ui && in_vk {
                    slots.push((i, k, x));
                }
            }
        }
    }
    let candidates = ng
        .checked_pow(slots.len() as u32)
        .filter(|&v| v <= budget)
        .ok_or(Error::SearchBudgetExceeded { budget })?;
    let build = |mut code: u64| {
        let mut t = vec![vec![c.nowhere(&p.bundle.base, &g.carrier); m]; n];
        for &(i, k, x) in &slots {
            t[i][k].table[x as usize] = Some((code % ng) as u32);
            code /= ng;
        }
        TFamily {
            phi: phi.clone(),
            t,
        }
    };
    let continuous = |fam: &TFamily<ParMap>| {
        edges.is_none_or(|es| {
            fam.t.iter().flatten().all(|t| {
                es.iter().all(|&(x, y)| match (t.apply(x), t.apply(y)) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                })
            })
        })
    };
    let outcomes: Vec<Option<Option<(TFamily<ParMap>, ParMap)>>> = (0..candidates)
        .into_par_iter()
        .map(|code| {
            let fam = build(code);
            if !continuous(&fam) {
                return None;
            }
            let ok = check_t_conditions(&c, g, &p.cocycle, &p2.cocycle, &fam)
                .is_ok_and(|r| all_passed(&r));
            Some(
                ok.then(|| {
                    pbun_morphism(&c, p, p2, &fam)
                        .ok()
                        .map(|(big, _)| (fam, big))
                })
                .flatten(),
            )
        })
        .collect();
    let discarded = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let valid = outcomes.into_iter().flatten().flatten().collect();
    Ok(TSearch {
        candidates,
        discarded_by_continuity: discarded,
        valid,
    })
}

/// Edges of the total space lifted through the charts: `y ~ y'` when some
/// `α_i` sends them to `(x, f)` and `(x', f)` with `x ~ x'` in the base.
pub fn lifted_edges(b: &FinGBundle, base_edges: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let nf = b.bundle.fibre.len() as u32;
    let mut out = HashSet::new();
    for (a, inv) in b.bundle.alphas.iter().zip(&b.bundle.alpha_inv) {
        for y in a.domain() {
            let v = a.apply(y).unwrap();
            let (x, f) = (v / nf, v % nf);
            for &(s, t) in base_edges {
                let other = if s == x {
                    t
                } else if t == x {
                    s
                } else {
                    continue;
                };
                if let Some(z) = inv.apply(other * nf + f) {
                    out.insert((y.min(z), y.max(z)));
                }
            }
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort_unstable();
    v
}

/// Search for an equivariant isomorphism `P -> P'` over the identity of the
/// base that carries lifted edges onto lifted edges.
pub fn trivialization_search(
    p: &FinGBundle,
    p2: &FinGBundle,
    r: &ParMap,
    r2: &ParMap,
    base_edges: &[(u32, u32)],
    budget: u64,
) -> Result<SearchOutcome> {
    let ea = lifted_edges(p, base_edges);
    let eb: HashSet<(u32, u32)> = lifted_edges(p2, base_edges).into_iter().collect();
    if ea.len() != eb.len() {
        return Ok(SearchOutcome::None { nodes: 0 });
    }
    let mut nbrs = vec![Vec::new(); p.bundle.total.len()];
    for &(s, t) in &ea {
        nbrs[s as usize].push(t);
        nbrs[t as usize].push(s);
    }
    let ng = p.group.carrier.len() as u32;
    let colours = |b: &FinGBundle| {
        (0..b.bundle.total.len() as u32)
            .map(|y| b.bundle.q.apply(y).unwrap_or(u32::MAX))
            .collect()
    };
    let problem = SearchProblem {
        a: p.bundle.total.clone(),
        b: p2.bundle.total.clone(),
        color_a: colours(p),
        color_b: colours(p2),
        constraint: Box::new(move |asg: &[Option<u32>], i: u32| {
            let ai = asg[i as usize].unwrap();
            let edges_ok = nbrs[i as usize].iter().all(|&k| match asg[k as usize] {
                Some(ak) => eb.contains(&(ai.min(ak), ai.max(ak))),
                None => true,
            });
            edges_ok
                && (0..ng).all(|g| match (r.apply(i * ng + g), r2.apply(ai * ng + g)) {
                    (Some(j), Some(bj)) => asg[j as usize].is_none_or(|aj| aj == bj),
                    _ => false,
                })
        }),
        budget,
    };
    crate::finset::iso_search(&problem)
}

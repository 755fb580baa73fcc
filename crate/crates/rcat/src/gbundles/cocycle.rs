use super::group::{check_action, const_unit, FinGroup, GroupObject};
use crate::category::{leq, Model};
use crate::error::{Error, Result};
use crate::finset::{FinObj, FinSet, ParMap};
use crate::manifolds::{atlas_to_bundle, check_bundle, Atlas, BundleAtlas, FibreBundle};
use crate::report::{Counterexample, LawReport, Regime};

/// A `G`-atlas on `M`: maps `τ_ij : M -> G`.
#[derive(Debug, Clone)]
pub struct GAtlas<O, M> {
    pub base: O,
    pub tau: Vec<Vec<M>>,
}

pub type FinGAtlas = GAtlas<FinObj, ParMap>;

impl<O, M> GAtlas<O, M> {
    pub fn len(&self) -> usize {
        self.tau.len()
    }
    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }
    pub fn t(&self, i: usize, j: usize) -> &M {
        &self.tau[i][j]
    }
}

/// `(τ_ij, τ_jk)m <= τ_ik`, `τ_ii <= !u` and `τ_ji = τ_ij ι`.
pub fn check_cocycle<C: Model + ?Sized>(
    c: &C,
    g: &GroupObject<C::Obj, C::Mor>,
    ga: &GAtlas<C::Obj, C::Mor>,
) -> Result<Vec<LawReport>> {
    let n = ga.len();
    if ga.tau.iter().any(|row| row.len() != n) {
        return Err(Error::shape("τ must be a square table"));
    }
    for row in &ga.tau {
        for t in row {
            if c.dom(t) != ga.base || c.cod(t) != g.carrier {
                return Err(Error::shape("every τ_ij must be a morphism M -> G"));
            }
        }
    }
    let unit = const_unit(c, g, &ga.base)?;
    let mut assoc = LawReport::new("(τ_ij, τ_jk)m <= τ_ik", Regime::Exhaustive);
    let mut diag = LawReport::new("τ_ii <= !u", Regime::Exhaustive);
    let mut inv = LawReport::new("τ_ji = τ_ij ι", Regime::Exhaustive);
    for i in 0..n {
        let ok = leq(c, ga.t(i, i), &unit)?;
        diag.check(ok, || {
            Counterexample::new(vec![format!("i={i}")], c.show(ga.t(i, i)), "below !u")
        });
        for j in 0..n {
            let lhs = c.compose(ga.t(i, j), &g.inv)?;
            inv.check(c.mor_eq(&lhs, ga.t(j, i)), || {
                Counterexample::new(
                    vec![format!("i={i} j={j}")],
                    c.show(&lhs),
                    c.show(ga.t(j, i)),
                )
            });
            for k in 0..n {
                let lhs = c.compose(&c.pair(ga.t(i, j), ga.t(j, k))?, &g.mul)?;
                let ok = leq(c, &lhs, ga.t(i, k))?;
                assoc.check(ok, || {
                    Counterexample::new(
                        vec![format!("i={i} j={j} k={k}")],
                        c.show(&lhs),
                        c.show(ga.t(i, k)),
                    )
                });
            }
        }
    }
    Ok(vec![assoc, diag, inv])
}

fn require(reports: &[LawReport], err: impl Fn(String) -> Error) -> Result<()> {
    match reports.iter().find(|r| !r.passed()) {
        Some(bad) => Err(err(bad.to_string())),
        None => Ok(()),
    }
}

/// Which cocycle index acts in `u_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `u_ij = ⟨π0, ⟨π0 τ_ji, π1⟩a⟩`, the form G-bundles are defined with.
    Definition,
    /// `u_ij = ⟨π0, ⟨π0 τ_ij, π1⟩a⟩`, the form the build and principal functors use.
    Build,
}

/// The bundle transition `M × F -> M × F` acting through `a`.
pub fn transition<C: Model + ?Sized>(
    c: &C,
    fibre: &C::Obj,
    a: &C::Mor,
    ga: &GAtlas<C::Obj, C::Mor>,
    i: usize,
    j: usize,
    orientation: Orientation,
) -> Result<C::Mor> {
    let tau = match orientation {
        Orientation::Definition => ga.t(j, i),
        Orientation::Build => ga.t(i, j),
    };
    let (p0, p1) = (c.pi0(&ga.base, fibre), c.pi1(&ga.base, fibre));
    let acted = c.compose(&c.pair(&c.compose(&p0, tau)?, &p1)?, a)?;
    c.pair(&p0, &acted)
}

/// The bundle atlas of a `G`-atlas acting on `F`, with `e_i = bar τ_ii`.
pub fn bundle_atlas_of<C: Model + ?Sized>(
    c: &C,
    fibre: &C::Obj,
    a: &C::Mor,
    ga: &GAtlas<C::Obj, C::Mor>,
    orientation: Orientation,
) -> Result<BundleAtlas<C::Obj, C::Mor>> {
    let n = ga.len();
    let mut transitions = Vec::with_capacity(n);
    for i in 0..n {
        transitions.push(
            (0..n)
                .map(|j| transition(c, fibre, a, ga, i, j, orientation))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(BundleAtlas {
        base: ga.base.clone(),
        fibre: fibre.clone(),
        atlas: Atlas {
            charts: vec![c.product(&ga.base, fibre); n],
            transitions,
        },
        idempotents: (0..n).map(|i| c.restrict(ga.t(i, i))).collect(),
    })
}

/// A fibre bundle with a `G`-action on its fibre and a compatible `G`-atlas.
#[derive(Debug, Clone)]
pub struct GBundle<O, M> {
    pub bundle: FibreBundle<O, M>,
    pub group: GroupObject<O, M>,
    pub action: M,
    pub cocycle: GAtlas<O, M>,
}

pub type FinGBundle = GBundle<FinObj, ParMap>;

/// Glue the bundle whose transitions act on `F` through `τ`. The cocycle and
/// the action are validated first.
pub fn associated_bundle(
    g: &FinGroup,
    fibre: &FinObj,
    a: &ParMap,
    ga: &FinGAtlas,
    orientation: Orientation,
) -> Result<(FinGBundle, Vec<LawReport>)> {
    let c = FinSet;
    let mut reports = check_cocycle(&c, g, ga)?;
    require(&reports, Error::IllFormedCocycle)?;
    let action = check_action(&c, g, fibre, a)?;
    require(&action, |m| Error::model(format!("not a G-action: {m}")))?;
    reports.extend(action);
    let ba = bundle_atlas_of(&c, fibre, a, ga, orientation)?;
    let (bundle, _, r) = atlas_to_bundle(&ba)?;
    reports.extend(r);
    let gb = GBundle {
        bundle,
        group: g.clone(),
        action: a.clone(),
        cocycle: ga.clone(),
    };
    Ok((gb, reports))
}

/// The principal bundle of a `G`-atlas: fibre `G` acted on by `m`.
pub fn principal_from_cocycle(
    g: &FinGroup,
    ga: &FinGAtlas,
) -> Result<(FinGBundle, Vec<LawReport>)> {
    associated_bundle(g, &g.carrier, &g.mul, ga, Orientation::Definition)
}

/// The bundle laws, the cocycle laws, the action laws and
/// `u_ij = α_i* α_j = ⟨π0, ⟨π0 τ_ji, π1⟩a⟩`.
pub fn check_gbundle<C: Model + ?Sized>(
    c: &C,
    gb: &GBundle<C::Obj, C::Mor>,
) -> Result<Vec<LawReport>> {
    let b = &gb.bundle;
    if gb.cocycle.len() != b.len() || gb.cocycle.base != b.base {
        return Err(Error::shape(
            "the G-atlas must index the bundle charts over the same base",
        ));
    }
    let mut out = check_bundle(c, b)?;
    out.extend(check_cocycle(c, &gb.group, &gb.cocycle)?);
    out.extend(check_action(c, &gb.group, &b.fibre, &gb.action)?);
    out.push(transition_report(
        c,
        gb,
        Orientation::Definition,
        "u_ij = α_i* α_j = ⟨π0, ⟨π0 τ_ji, π1⟩a⟩",
    )?);
    Ok(out)
}

fn transition_report<C: Model + ?Sized>(
    c: &C,
    gb: &GBundle<C::Obj, C::Mor>,
    orientation: Orientation,
    law: &str,
) -> Result<LawReport> {
    let b = &gb.bundle;
    let mut r = LawReport::new(law, Regime::Exhaustive);
    for i in 0..b.len() {
        for j in 0..b.len() {
            let lhs = c.compose(&b.alpha_inv[i], &b.alphas[j])?;
            let rhs = transition(c, &b.fibre, &gb.action, &gb.cocycle, i, j, orientation)?;
            r.check(c.mor_eq(&lhs, &rhs), || {
                Counterexample::new(vec![format!("i={i} j={j}")], c.show(&lhs), c.show(&rhs))
            });
        }
    }
    Ok(r)
}

/// Compare the bundle's transitions against the `τ_ij`-oriented form. The two
/// agree when every `τ_ij` equals its own inverse; a failure records where
/// the conventions diverge rather than a defect of the bundle.
pub fn orientation_crosscheck<C: Model + ?Sized>(
    c: &C,
    gb: &GBundle<C::Obj, C::Mor>,
) -> Result<LawReport> {
    let mut r = transition_report(
        c,
        gb,
        Orientation::Build,
        "transitions agree with the τ_ij-oriented form",
    )?;
    if !r.passed() {
        r.note("the τ_ji and τ_ij conventions give different transitions for this cocycle");
    }
    Ok(r)
}

/// The cocycle read back from a principal bundle, `τ_ji = ⟨1, !u⟩ u_ij π1`.
pub fn cocycle_of<C: Model + ?Sized>(
    c: &C,
    g: &GroupObject<C::Obj, C::Mor>,
    b: &FibreBundle<C::Obj, C::Mor>,
) -> Result<GAtlas<C::Obj, C::Mor>> {
    let n = b.len();
    let at_unit = c.pair(&c.identity(&b.base), &const_unit(c, g, &b.base)?)?;
    let pi1 = c.pi1(&b.base, &b.fibre);
    let mut tau = vec![Vec::with_capacity(n); n];
    for (j, row) in tau.iter_mut().enumerate() {
        for i in 0..n {
            let u = c.compose(&b.alpha_inv[i], &b.alphas[j])?;
            row.push(c.compose(&c.compose(&at_unit, &u)?, &pi1)?);
        }
    }
    Ok(GAtlas {
        base: b.base.clone(),
        tau,
    })
}

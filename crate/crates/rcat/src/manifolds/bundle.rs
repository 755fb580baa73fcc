use super::atlas::{check_atlas, check_atlas_morphism, identity_morphism, Atlas, AtlasMorphism};
use super::glue::{check_gluing, glue, Gluing};
use crate::category::{
    join, partial_inverse, times, CartesianRestrictionCategory, Model, RestrictionCategory,
};
use crate::error::{Error, Result};
use crate::finset::{FinObj, FinSet, ParMap};
use crate::report::{Counterexample, LawReport, Regime};

/// `q : E -> M` with local trivializations `α_i : E -> M × F`, their partial
/// inverses and base idempotents `e_i` with `bar(α_i*) = e_i × 1_F`.
#[derive(Debug, Clone)]
pub struct FibreBundle<O, M> {
    pub total: O,
    pub base: O,
    pub fibre: O,
    pub q: M,
    pub alphas: Vec<M>,
    pub alpha_inv: Vec<M>,
    pub idempotents: Vec<M>,
}

impl<O: Clone + PartialEq, M: Clone> FibreBundle<O, M> {
    /// Partial inverses are computed by the model and must exist.
    pub fn new<C: Model<Obj = O, Mor = M>>(
        c: &C,
        total: O,
        base: O,
        fibre: O,
        q: M,
        alphas: Vec<M>,
        idempotents: Vec<M>,
    ) -> Result<Self> {
        let alpha_inv = alphas
            .iter()
            .enumerate()
            .map(|(i, a)| {
                partial_inverse(c, a).ok_or_else(|| Error::NotIso(format!("α_{i} = {}", c.show(a))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_inverses(c, total, base, fibre, q, alphas, alpha_inv, idempotents)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_inverses<C: Model<Obj = O, Mor = M>>(
        c: &C,
        total: O,
        base: O,
        fibre: O,
        q: M,
        alphas: Vec<M>,
        alpha_inv: Vec<M>,
        idempotents: Vec<M>,
    ) -> Result<Self> {
        if alphas.len() != alpha_inv.len() || alphas.len() != idempotents.len() {
            return Err(Error::shape(
                "charts, inverses and idempotents must have equal counts",
            ));
        }
        let mf = c.product(&base, &fibre);
        if c.dom(&q) != total || c.cod(&q) != base {
            return Err(Error::shape("q must be a morphism E -> M"));
        }
        for (i, (a, e)) in alphas.iter().zip(&idempotents).enumerate() {
            if c.dom(a) != total || c.cod(a) != mf {
                return Err(Error::shape(format!("α_{i} must be a morphism E -> M×F")));
            }
            if c.dom(e) != base || c.cod(e) != base {
                return Err(Error::shape(format!("e_{i} must be an endomorphism of M")));
            }
        }
        Ok(FibreBundle {
            total,
            base,
            fibre,
            q,
            alphas,
            alpha_inv,
            idempotents,
        })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }
    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }
}

fn eq_case<C: RestrictionCategory + ?Sized>(
    r: &mut LawReport,
    c: &C,
    label: String,
    lhs: &C::Mor,
    rhs: &C::Mor,
) {
    r.check(c.mor_eq(lhs, rhs), || {
        Counterexample::new(vec![label], c.show(lhs), c.show(rhs))
    });
}

/// Join of a family, recording incompatibility as a failed case instead of an error.
fn join_or_fail<C: Model + ?Sized>(
    r: &mut LawReport,
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
    family: &[C::Mor],
) -> Result<Option<C::Mor>> {
    match join(c, a, b, family) {
        Ok(j) => Ok(Some(j)),
        Err(e @ Error::IncompatibleFamily { .. }) => {
            r.check(false, || {
                Counterexample::new(vec![], e.to_string(), "compatible family")
            });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Every condition of the fibre-bundle definition, one report each.
pub fn check_bundle<C: Model + ?Sized>(
    c: &C,
    b: &FibreBundle<C::Obj, C::Mor>,
) -> Result<Vec<LawReport>> {
    let pi0 = c.pi0(&b.base, &b.fibre);
    let id_f = c.identity(&b.fibre);

    let mut total = LawReport::new("q is total", Regime::Exhaustive);
    total.check(c.is_total(&b.q), || {
        Counterexample::new(vec!["q".into()], c.show(&c.restrict(&b.q)), "1_E")
    });

    let mut iso = LawReport::new(
        "α_i α_i* = bar α_i and α_i* α_i = bar α_i*",
        Regime::Exhaustive,
    );
    let mut square = LawReport::new("α_i π0 = bar(α_i) q", Regime::Exhaustive);
    let mut idem = LawReport::new(
        "bar(α_i*) = e_i × 1_F with e_i = bar e_i",
        Regime::Exhaustive,
    );
    for i in 0..b.len() {
        let (a, ai, e) = (&b.alphas[i], &b.alpha_inv[i], &b.idempotents[i]);
        eq_case(
            &mut iso,
            c,
            format!("α_{i} α_{i}*"),
            &c.compose(a, ai)?,
            &c.restrict(a),
        );
        eq_case(
            &mut iso,
            c,
            format!("α_{i}* α_{i}"),
            &c.compose(ai, a)?,
            &c.restrict(ai),
        );
        eq_case(
            &mut square,
            c,
            format!("i={i}"),
            &c.compose(a, &pi0)?,
            &c.compose(&c.restrict(a), &b.q)?,
        );
        eq_case(&mut idem, c, format!("e_{i} idempotent"), e, &c.restrict(e));
        eq_case(
            &mut idem,
            c,
            format!("i={i}"),
            &c.restrict(ai),
            &times(c, e, &id_f)?,
        );
    }

    let mut cover = LawReport::new("⋁ bar(α_i) = 1_E", Regime::Exhaustive);
    let bars: Vec<C::Mor> = b.alphas.iter().map(|a| c.restrict(a)).collect();
    if let Some(j) = join_or_fail(&mut cover, c, &b.total, &b.total, &bars)? {
        eq_case(&mut cover, c, "join".into(), &j, &c.identity(&b.total));
    }

    let mut q_join = LawReport::new("q = ⋁ α_i π0", Regime::Exhaustive);
    let legs = b
        .alphas
        .iter()
        .map(|a| c.compose(a, &pi0))
        .collect::<Result<Vec<_>>>()?;
    if let Some(j) = join_or_fail(&mut q_join, c, &b.total, &b.base, &legs)? {
        eq_case(&mut q_join, c, "join".into(), &j, &b.q);
    }
    Ok(vec![total, iso, square, idem, cover, q_join])
}

/// `bar(α_i) = bar(q e_i)` for every chart.
pub fn is_totally_fibred<C: Model + ?Sized>(
    c: &C,
    b: &FibreBundle<C::Obj, C::Mor>,
) -> Result<bool> {
    for (a, e) in b.alphas.iter().zip(&b.idempotents) {
        if !c.mor_eq(&c.restrict(a), &c.restrict(&c.compose(&b.q, e)?)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Total fibredness agrees with the square `α_i π0 = q e_i`, chart by chart.
pub fn check_totally_fibred_square<C: Model + ?Sized>(
    c: &C,
    b: &FibreBundle<C::Obj, C::Mor>,
) -> Result<LawReport> {
    let pi0 = c.pi0(&b.base, &b.fibre);
    let mut r = LawReport::new(
        "bar α_i = bar(q e_i) iff α_i π0 = q e_i",
        Regime::Exhaustive,
    );
    for (i, (a, e)) in b.alphas.iter().zip(&b.idempotents).enumerate() {
        let qe = c.compose(&b.q, e)?;
        let fibred = c.mor_eq(&c.restrict(a), &c.restrict(&qe));
        let square = c.mor_eq(&c.compose(a, &pi0)?, &qe);
        r.check(fibred == square, || {
            Counterexample::new(
                vec![format!("i={i}")],
                format!("fibred={fibred}"),
                format!("square={square}"),
            )
        });
    }
    Ok(r)
}

/// A bundle atlas on `M × F` with its base idempotents.
#[derive(Debug, Clone)]
pub struct BundleAtlas<O, M> {
    pub base: O,
    pub fibre: O,
    pub atlas: Atlas<O, M>,
    pub idempotents: Vec<M>,
}

/// Atlas laws plus the bundle-atlas shape: `u_ij = ⟨π0, u_ij π1⟩` and `u_ii = e_i × 1_F`.
pub fn check_bundle_atlas<C: Model + ?Sized>(
    c: &C,
    ba: &BundleAtlas<C::Obj, C::Mor>,
) -> Result<Vec<LawReport>> {
    let n = ba.atlas.len();
    if ba.idempotents.len() != n {
        return Err(Error::shape("one base idempotent per chart is required"));
    }
    let mf = c.product(&ba.base, &ba.fibre);
    if ba.atlas.charts.iter().any(|u| *u != mf) {
        return Err(Error::shape("every chart of a bundle atlas is M×F"));
    }
    let laws = check_atlas(c, &ba.atlas)?;
    let (pi0, pi1) = (c.pi0(&ba.base, &ba.fibre), c.pi1(&ba.base, &ba.fibre));
    let mut over = LawReport::new("u_ij = ⟨π0, u_ij π1⟩", Regime::Exhaustive);
    let mut diag = LawReport::new("u_ii = e_i × 1_F", Regime::Exhaustive);
    for i in 0..n {
        for j in 0..n {
            let u = ba.atlas.u(i, j);
            let rhs = c.pair(&pi0, &c.compose(u, &pi1)?)?;
            eq_case(&mut over, c, format!("i={i} j={j}"), u, &rhs);
        }
        let e = &ba.idempotents[i];
        eq_case(&mut diag, c, format!("e_{i} idempotent"), e, &c.restrict(e));
        eq_case(
            &mut diag,
            c,
            format!("i={i}"),
            ba.atlas.u(i, i),
            &times(c, e, &c.identity(&ba.fibre))?,
        );
    }
    Ok(vec![laws, over, diag])
}

/// `u_ij = α_i* α_j`, returned with the bundle-atlas checks.
pub fn bundle_to_atlas<C: Model + ?Sized>(
    c: &C,
    b: &FibreBundle<C::Obj, C::Mor>,
) -> Result<(BundleAtlas<C::Obj, C::Mor>, Vec<LawReport>)> {
    let n = b.len();
    let mut transitions = Vec::with_capacity(n);
    for i in 0..n {
        transitions.push(
            (0..n)
                .map(|j| c.compose(&b.alpha_inv[i], &b.alphas[j]))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mf = c.product(&b.base, &b.fibre);
    let ba = BundleAtlas {
        base: b.base.clone(),
        fibre: b.fibre.clone(),
        atlas: Atlas {
            charts: vec![mf; n],
            transitions,
        },
        idempotents: b.idempotents.clone(),
    };
    let reports = check_bundle_atlas(c, &ba)?;
    Ok((ba, reports))
}

pub type FinBundle = FibreBundle<FinObj, ParMap>;
pub type FinBundleAtlas = BundleAtlas<FinObj, ParMap>;

/// Glue a bundle atlas: `α_i* = g_i`, `q = ⋁ α_i π0` (asserted total) and
/// `u_ij = α_i* α_j` re-derived.
pub fn atlas_to_bundle(ba: &FinBundleAtlas) -> Result<(FinBundle, Gluing, Vec<LawReport>)> {
    let c = FinSet;
    let mut reports = check_bundle_atlas(&c, ba)?;
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(Error::IllFormedAtlas(bad.to_string()));
    }
    let gl = glue(&ba.atlas)?;
    reports.extend(check_gluing(&ba.atlas, &gl)?);
    let pi0 = c.pi0(&ba.base, &ba.fibre);
    let legs = gl
        .inverses
        .iter()
        .map(|a| c.compose(a, &pi0))
        .collect::<Result<Vec<_>>>()?;
    let q = join(&c, &gl.obj, &ba.base, &legs)?;
    if !q.is_total() {
        return Err(Error::IllFormedAtlas("q = ⋁ α_i π0 is not total".into()));
    }
    let b = FibreBundle::with_inverses(
        &c,
        gl.obj.clone(),
        ba.base.clone(),
        ba.fibre.clone(),
        q,
        gl.inverses.clone(),
        gl.charts.clone(),
        ba.idempotents.clone(),
    )?;
    reports.extend(check_bundle(&c, &b)?);
    let (derived, _) = bundle_to_atlas(&c, &b)?;
    let mut again = LawReport::new("u_ij = α_i* α_j after gluing", Regime::Exhaustive);
    for i in 0..b.len() {
        for j in 0..b.len() {
            eq_case(
                &mut again,
                &c,
                format!("i={i} j={j}"),
                derived.atlas.u(i, j),
                ba.atlas.u(i, j),
            );
        }
    }
    reports.push(again);
    Ok((b, gl, reports))
}

/// `Φ = ⋁_{i,k} α_i A_ik α'_k*`, the map between total spaces induced by a
/// chart-level morphism.
pub fn induced_bundle_map<C: Model + ?Sized>(
    c: &C,
    b: &FibreBundle<C::Obj, C::Mor>,
    b2: &FibreBundle<C::Obj, C::Mor>,
    a: &AtlasMorphism<C::Mor>,
) -> Result<C::Mor> {
    let mut parts = Vec::new();
    for i in 0..b.len() {
        for k in 0..b2.len() {
            parts.push(c.compose(&c.compose(&b.alphas[i], a.a(i, k))?, &b2.alpha_inv[k])?);
        }
    }
    join(c, &b.total, &b2.total, &parts)
}

/// `(Φ, φ)` commutes with the projections and reproduces `A_ik = α_i* Φ α'_k`.
pub fn check_bundle_morphism<C: Model + ?Sized>(
    c: &C,
    b: &FibreBundle<C::Obj, C::Mor>,
    b2: &FibreBundle<C::Obj, C::Mor>,
    big_phi: &C::Mor,
    phi: &C::Mor,
    a: Option<&AtlasMorphism<C::Mor>>,
) -> Result<Vec<LawReport>> {
    let mut square = LawReport::new("Φ q' = q φ", Regime::Exhaustive);
    let lhs = c.compose(big_phi, &b2.q)?;
    let rhs = c.compose(&b.q, phi)?;
    eq_case(&mut square, c, "square".into(), &lhs, &rhs);
    let mut out = vec![square];
    if let Some(a) = a {
        let mut local = LawReport::new("A_ik = α_i* Φ α'_k", Regime::Exhaustive);
        for i in 0..b.len() {
            for k in 0..b2.len() {
                let lhs = c.compose(&c.compose(&b.alpha_inv[i], big_phi)?, &b2.alphas[k])?;
                eq_case(&mut local, c, format!("i={i} k={k}"), &lhs, a.a(i, k));
            }
        }
        out.push(local);
    }
    Ok(out)
}

/// Outcome of rebuilding a bundle from its own atlas.
#[derive(Debug, Clone)]
pub struct Classification {
    pub rebuilt: FinBundle,
    /// Canonical comparison `E -> E'` from the identity atlas morphism.
    pub comparison: ParMap,
    pub reports: Vec<LawReport>,
}

/// Bundle to atlas to bundle, compared by the chart-induced map rather than by search.
pub fn classify_roundtrip(b: &FinBundle) -> Result<Classification> {
    let c = FinSet;
    let mut reports = check_bundle(&c, b)?;
    let (ba, r) = bundle_to_atlas(&c, b)?;
    reports.extend(r);
    let (rebuilt, _, r) = atlas_to_bundle(&ba)?;
    reports.extend(r);
    let ident = identity_morphism(&ba.atlas);
    reports.extend(check_atlas_morphism(&c, &ba.atlas, &ba.atlas, &ident)?);
    let phi = induced_bundle_map(&c, b, &rebuilt, &ident)?;
    reports.push(LawReport::single(
        "comparison is a total bijection",
        Regime::Exhaustive,
        phi.is_bijection(),
        format!("{phi:?}"),
    ));
    reports.extend(check_bundle_morphism(
        &c,
        b,
        &rebuilt,
        &phi,
        &c.identity(&b.base),
        Some(&ident),
    )?);
    Ok(Classification {
        rebuilt,
        comparison: phi,
        reports,
    })
}

/// `A_ik = (e_i e'_k) × 1_F`: the chart-level identity between two
/// presentations whose transitions are all identities on overlaps, whatever
/// their chart counts.
pub fn overlap_identity(a: &FinBundle, b: &FinBundle) -> Result<AtlasMorphism<ParMap>> {
    let c = FinSet;
    let id_f = c.identity(&a.fibre);
    let comps = a
        .idempotents
        .iter()
        .map(|ei| {
            b.idempotents
                .iter()
                .map(|ek| times(&c, &c.compose(ei, ek)?, &id_f))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AtlasMorphism { comps })
}

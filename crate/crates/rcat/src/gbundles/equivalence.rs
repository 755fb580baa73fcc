use super::cocycle::{
    associated_bundle, orientation_crosscheck, principal_from_cocycle, FinGBundle, Orientation,
};
use super::morphism::{pbun_morphism, TFamily};
use crate::category::RestrictionCategory;
use crate::error::{Error, Result};
use crate::finset::{FinObj, FinSet, ParMap};
use crate::manifolds::{
    bundle_to_atlas, check_bundle_morphism, identity_morphism, induced_bundle_map,
};
use crate::report::{LawReport, Regime};

/// The principal bundle glued from a `G`-bundle's atlas.
pub fn principal_part(e: &FinGBundle) -> Result<FinGBundle> {
    Ok(principal_from_cocycle(&e.group, &e.cocycle)?.0)
}

/// The `G`-bundle with fibre `F` glued from a principal bundle's atlas.
pub fn build(p: &FinGBundle, fibre: &FinObj, a: &ParMap) -> Result<FinGBundle> {
    Ok(associated_bundle(&p.group, fibre, a, &p.cocycle, Orientation::Definition)?.0)
}

fn same_structure(a: &FinGBundle, b: &FinGBundle) -> bool {
    let c = FinSet;
    a.cocycle.len() == b.cocycle.len()
        && a.cocycle
            .tau
            .iter()
            .flatten()
            .zip(b.cocycle.tau.iter().flatten())
            .all(|(x, y)| c.mor_eq(x, y))
        && c.mor_eq(&a.action, &b.action)
}

/// `⋁ α_i u_ik α'_k*` between two gluings of the same `G`-atlas and action.
pub fn canonical_iso(src: &FinGBundle, tgt: &FinGBundle) -> Result<(ParMap, Vec<LawReport>)> {
    let c = FinSet;
    if !same_structure(src, tgt) {
        return Err(Error::model("bundles carry different G-atlases or actions"));
    }
    let (ba, _) = bundle_to_atlas(&c, &src.bundle)?;
    let ident = identity_morphism(&ba.atlas);
    let phi = induced_bundle_map(&c, &src.bundle, &tgt.bundle, &ident)?;
    if !phi.is_bijection() {
        return Err(Error::NotIso(format!("{phi:?}")));
    }
    let reports = check_bundle_morphism(
        &c,
        &src.bundle,
        &tgt.bundle,
        &phi,
        &c.identity(&src.bundle.base),
        Some(&ident),
    )?;
    Ok((phi, reports))
}

/// Both composites of (principal, fibre) and build, compared with the
/// identity through canonical isomorphisms; for principal bundles the
/// isomorphism is also produced from the identity `T`-family `T_ik = τ_ki`.
pub fn equivalence_roundtrip(e: &FinGBundle) -> Result<Vec<LawReport>> {
    let c = FinSet;
    let mut out = Vec::new();
    let p = principal_part(e)?;
    let rebuilt = build(&p, &e.bundle.fibre, &e.action)?;
    let (_, r) = canonical_iso(&rebuilt, e)?;
    out.push(LawReport::single(
        "build(principal E, fibre E) ≅ E",
        Regime::Exhaustive,
        true,
        "",
    ));
    out.extend(r);

    let again = principal_part(&build(&p, &e.bundle.fibre, &e.action)?)?;
    let (phi, r) = canonical_iso(&again, &p)?;
    out.push(LawReport::single(
        "principal(build(P, F)) ≅ P",
        Regime::Exhaustive,
        true,
        "",
    ));
    out.extend(r);
    let n = p.cocycle.len();
    let ident = TFamily {
        phi: c.identity(&p.bundle.base),
        t: (0..n)
            .map(|i| (0..n).map(|k| p.cocycle.t(k, i).clone()).collect())
            .collect(),
    };
    let (from_t, r) = pbun_morphism(&c, &again, &p, &ident)?;
    out.extend(r);
    out.push(LawReport::single(
        "canonical isomorphism = map of the identity T-family",
        Regime::Exhaustive,
        c.mor_eq(&from_t, &phi),
        format!("{from_t:?} vs {phi:?}"),
    ));
    out.push(orientation_crosscheck(&c, e)?);
    Ok(out)
}

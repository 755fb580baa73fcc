use crate::campaign::{Context, ModelKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcat::finset::{self, FinSet, ParMap};
use rcat::gbundles::fixtures::{circle_principal, z8_edges, Circle};
use rcat::gbundles::*;
use rcat::laws::{self, LawConfig};
use rcat::liegroups::*;
use rcat::manifolds;
use rcat::poly::{self, sample, PolyCat, PolyMap};
use rcat::{Counterexample, Error, LawReport, Regime, RestrictionCategory, Result};
use serde_json::{json, Value};

pub enum Outcome {
    Ran {
        laws: Vec<LawReport>,
        output: Option<Value>,
    },
    Skipped(String),
}

fn ran(laws: Vec<LawReport>) -> Result<Outcome> {
    Ok(Outcome::Ran { laws, output: None })
}

fn skip(why: &str) -> Result<Outcome> {
    Ok(Outcome::Skipped(why.into()))
}

pub struct Check {
    pub id: &'static str,
    pub summary: &'static str,
    pub knobs: &'static [&'static str],
    pub run: fn(&Context) -> Result<Outcome>,
}

pub fn lookup(id: &str) -> Result<&'static Check> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.into()))
}

pub static REGISTRY: &[Check] = &[
    Check {
        id: "restriction-laws",
        summary: "R.1-R.4, the derived restriction identities and the order laws, on a seeded sample plus any `maps` targets",
        knobs: &["model", "seed", "size-bound", "budget"],
        run: restriction_laws,
    },
    Check {
        id: "join-laws",
        summary: "joins of compatible families: upper bound, least, stable under precomposition",
        knobs: &["model", "seed", "size-bound", "budget"],
        run: join_laws,
    },
    Check {
        id: "partial-inverses",
        summary: "f f* = bar f and f* f = bar f* wherever the model finds a partial inverse",
        knobs: &["model", "seed"],
        run: partial_inverses,
    },
    Check {
        id: "tangent-axioms",
        summary: "tangent structure axioms of the polynomial model, including universality of the vertical lift, and T of joins",
        knobs: &["prime", "jet-depth", "seed"],
        run: tangent_axioms,
    },
    Check {
        id: "gluing",
        summary: "gluing of `atlas` targets and of the bundle atlases of `circle` targets, with the quotient identities and probe universality",
        knobs: &[],
        run: gluing,
    },
    Check {
        id: "classification",
        summary: "bundle -> atlas -> bundle returns a canonical isomorphism, for `bundle` and `circle` targets",
        knobs: &[],
        run: classification,
    },
    Check {
        id: "right-action",
        summary: "r = join of local actions is total, satisfies both action laws and rq = π0 q, and is free with the fibres as orbits",
        knobs: &[],
        run: right_action_check,
    },
    Check {
        id: "torsor",
        summary: "d* is a partial inverse of ⟨π0, r⟩, total exactly on totally fibred bundles",
        knobs: &[],
        run: torsor,
    },
    Check {
        id: "non-triviality",
        summary: "no continuous equivariant isomorphism to the product bundle exists, by exhaustive search",
        knobs: &["budget"],
        run: non_triviality,
    },
    Check {
        id: "vertical-identity-tangent",
        summary: "with the identity tangent structure the vertical bundle of a principal bundle is the bundle itself",
        knobs: &[],
        run: vertical_identity,
    },
    Check {
        id: "trivialization",
        summary: "φ : T(G) -> G × T(G)_u and φ⁻¹ are mutually inverse, by jet equality and by enumeration",
        knobs: &["prime", "jet-depth"],
        run: trivialization,
    },
    Check {
        id: "coordinate-table",
        summary: "the tangent structure maps of T(G) and T²(G) in trivialized coordinates, row by row",
        knobs: &["prime", "jet-depth", "seed", "samples"],
        run: coordinate_table,
    },
    Check {
        id: "adjoint",
        summary: "Ad_ℓ is a left action of G on T(G)_u and Ad_r a right action, trivial for abelian G",
        knobs: &["prime", "jet-depth"],
        run: adjoint,
    },
    Check {
        id: "eckmann-hilton",
        summary: "+_u = T(m)_u and T(m)_u is a commutative group law on T(G)_u",
        knobs: &["prime", "jet-depth", "seed", "samples"],
        run: eckmann_hilton_check,
    },
    Check {
        id: "negation",
        summary: "negation on T(G) from φ and T(ι)_u is an additive inverse and a group map",
        knobs: &["prime", "jet-depth", "seed", "samples"],
        run: negation_check,
    },
    Check {
        id: "left-invariant",
        summary: "V ↦ ξ_V and ξ ↦ V_ξ are inverse bijections between T(G)_u and left-invariant sections",
        knobs: &["prime", "jet-depth", "seed", "samples"],
        run: left_invariant,
    },
    Check {
        id: "lie-bracket",
        summary: "bracket of left-invariant fields through the brace, against B(v,w) - B(w,v), antisymmetry, bilinearity and Jacobi; emits the basis table",
        knobs: &["prime", "jet-depth"],
        run: lie_bracket_check,
    },
    Check {
        id: "vertical-bundle",
        summary: "P × T(G)_u -> T_0(P) is a total bijection for a trivial and a two-chart principal bundle over 𝔽_p",
        knobs: &["prime", "jet-depth"],
        run: vertical,
    },
];

fn law_config(cx: &Context) -> LawConfig {
    LawConfig {
        size_bound: cx.config.size_bound,
        max_cases: cx.config.budget as usize,
        seed: cx.config.seed,
    }
}

fn plan(cx: &Context) -> PointPlan {
    PointPlan {
        samples: cx.config.samples,
        seed: cx.config.seed,
        ..PointPlan::default()
    }
}

enum Sample {
    Fin(Vec<ParMap>),
    Poly(PolyCat, Vec<PolyMap>),
}

fn law_sample(cx: &Context) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(cx.config.seed);
    Ok(match cx.config.model {
        ModelKind::Finset => {
            let mut s = cx.maps.clone();
            s.extend(finset::law_sample(&mut rng, cx.config.size_bound.max(1), 2));
            Sample::Fin(s)
        }
        ModelKind::Poly => {
            let c = PolyCat::new(cx.config.prime, cx.config.jet_depth)?;
            let s = sample::law_sample(&mut rng, &c, 2, 2);
            Sample::Poly(c, s)
        }
    })
}

fn restriction_laws(cx: &Context) -> Result<Outcome> {
    let cfg = law_config(cx);
    match law_sample(cx)? {
        Sample::Fin(s) => {
            let mut out = laws::check_restriction_laws(&FinSet, &s, &cfg)?;
            out.extend(laws::check_order_laws(&FinSet, &s, &cfg)?);
            ran(out)
        }
        Sample::Poly(c, s) => {
            let mut out = laws::check_restriction_laws(&c, &s, &cfg)?;
            out.extend(laws::check_order_laws(&c, &s, &cfg)?);
            ran(out)
        }
    }
}

fn join_laws(cx: &Context) -> Result<Outcome> {
    let cfg = law_config(cx);
    match law_sample(cx)? {
        Sample::Fin(s) => ran(laws::check_join_laws(&FinSet, &s, &cfg)?),
        Sample::Poly(c, s) => ran(laws::check_join_laws(&c, &s, &cfg)?),
    }
}

fn partial_inverses(cx: &Context) -> Result<Outcome> {
    const LIMIT: usize = 140;
    match law_sample(cx)? {
        Sample::Fin(s) => ran(vec![laws::check_partial_inverse_laws(
            &FinSet,
            &s[..s.len().min(LIMIT)],
        )?]),
        Sample::Poly(c, s) => ran(vec![laws::check_partial_inverse_laws(
            &c,
            &s[..s.len().min(LIMIT)],
        )?]),
    }
}

fn tangent_axioms(cx: &Context) -> Result<Outcome> {
    if cx.config.model != ModelKind::Poly {
        return skip("tangent structure lives in the poly model");
    }
    let c = PolyCat::new(cx.config.prime, cx.config.jet_depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cx.config.seed);
    let s = sample::naturality_sample(&mut rng, &c, &[1, 2], 2);
    let mut out = poly::check_tangent_axioms(&c, &[1, 2], &s)?;
    let js = sample::law_sample(&mut rng, &c, 2, 2);
    out.extend(poly::check_join_tangent_compat(&c, &js)?);
    ran(out)
}

fn tag(prefix: &str, reports: Vec<LawReport>) -> Vec<LawReport> {
    reports
        .into_iter()
        .map(|mut r| {
            r.law = format!("{prefix}: {}", r.law);
            r
        })
        .collect()
}

fn gluing(cx: &Context) -> Result<Outcome> {
    if cx.atlases.is_empty() && cx.circles.is_empty() {
        return skip("no `atlas` or `circle` targets");
    }
    let mut out = Vec::new();
    for (name, atlas) in &cx.atlases {
        let gl = manifolds::glue(atlas)?;
        out.extend(tag(name, manifolds::check_gluing(atlas, &gl)?));
        let probes = manifolds::standard_probes(atlas, &gl);
        out.extend(tag(
            name,
            vec![manifolds::check_universal_property(atlas, &gl, &probes)?],
        ));
    }
    for (name, pb) in &cx.circles {
        let ba = bundle_atlas_of(
            &FinSet,
            &pb.group.carrier,
            &pb.group.mul,
            &pb.cocycle,
            Orientation::Definition,
        )?;
        let (_, _, reports) = manifolds::atlas_to_bundle(&ba)?;
        out.extend(tag(name, reports));
    }
    ran(out)
}

fn classification(cx: &Context) -> Result<Outcome> {
    let bundles: Vec<(&str, &manifolds::FinBundle)> = cx
        .bundles
        .iter()
        .map(|(n, b)| (n.as_str(), b))
        .chain(cx.circles.iter().map(|(n, pb)| (n.as_str(), &pb.bundle)))
        .collect();
    if bundles.is_empty() {
        return skip("no `bundle` or `circle` targets");
    }
    let mut out = Vec::new();
    for (name, b) in bundles {
        let cl = manifolds::classify_roundtrip(b)?;
        out.extend(tag(name, cl.reports));
        let mut bij = LawReport::new(
            format!("{name}: comparison is a bijection"),
            Regime::Exhaustive,
        );
        bij.check(cl.comparison.is_bijection(), || {
            Counterexample::new(vec![], FinSet.show(&cl.comparison), "a bijection")
        });
        out.push(bij);
    }
    ran(out)
}

fn right_action_check(cx: &Context) -> Result<Outcome> {
    if cx.circles.is_empty() {
        return skip("no `circle` targets");
    }
    let mut out = Vec::new();
    for (name, pb) in &cx.circles {
        let (r, reports) = right_action(&FinSet, pb)?;
        out.extend(tag(name, reports));
        out.extend(tag(name, free_and_transitive(pb, &r)?));
    }
    ran(out)
}

fn torsor(cx: &Context) -> Result<Outcome> {
    if cx.circles.is_empty() {
        return skip("no `circle` targets");
    }
    let mut out = Vec::new();
    for (name, pb) in &cx.circles {
        let (r, _) = right_action(&FinSet, pb)?;
        let (t, mut reports) = torsor_witness(&FinSet, pb, &r)?;
        let total = reports.pop().expect("torsor reports end with totality");
        out.extend(tag(name, reports));
        let fibred = manifolds::is_totally_fibred(&FinSet, &pb.bundle)?;
        let mut iff = LawReport::new(
            format!("{name}: d* total iff totally fibred"),
            Regime::Exhaustive,
        );
        iff.check(total.passed() == fibred, || {
            Counterexample::new(
                missing_pairs(&t),
                format!("d* total: {}", total.passed()),
                format!("totally fibred: {fibred}"),
            )
        });
        out.push(iff);
    }
    ran(out)
}

fn non_triviality(cx: &Context) -> Result<Outcome> {
    if cx.circles.is_empty() {
        return skip("no `circle` targets");
    }
    let prod = circle_principal(Circle::Product)?;
    let (r2, _) = right_action(&FinSet, &prod)?;
    let mut out = Vec::new();
    let mut nodes = serde_json::Map::new();
    for (name, pb) in &cx.circles {
        let (r, _) = right_action(&FinSet, pb)?;
        let found = trivialization_search(pb, &prod, &r, &r2, &z8_edges(), cx.config.budget)?;
        let mut law = LawReport::new(
            format!("{name}: no equivariant trivialization"),
            Regime::Exhaustive,
        );
        law.check(found.found().is_none(), || {
            Counterexample::new(
                vec![],
                FinSet.show(found.found().expect("found")),
                "no isomorphism",
            )
        });
        nodes.insert(name.clone(), json!(found.nodes()));
        out.push(law);
    }
    Ok(Outcome::Ran {
        laws: out,
        output: Some(json!({ "search_nodes": nodes })),
    })
}

fn vertical_identity(cx: &Context) -> Result<Outcome> {
    if cx.circles.is_empty() {
        return skip("no `circle` targets");
    }
    let mut out = Vec::new();
    for (name, pb) in &cx.circles {
        out.extend(tag(name, vec![vertical_bundle_identity_tangent(pb)?]));
    }
    ran(out)
}

/// Run `f` per group target, prefixing each report with the group's name.
fn per_group(
    cx: &Context,
    f: impl Fn(&TangentGroup, &TangentSpaceAtUnit) -> Result<Vec<LawReport>>,
) -> Result<Outcome> {
    if cx.groups.is_empty() {
        return skip("no `group` targets");
    }
    let mut out = Vec::new();
    for g in &cx.groups {
        let (tu, landed) = TangentSpaceAtUnit::new(g)?;
        out.extend(tag(&g.name, vec![landed]));
        out.extend(tag(&g.name, f(g, &tu)?));
    }
    ran(out)
}

fn trivialization(cx: &Context) -> Result<Outcome> {
    per_group(cx, |g, tu| {
        let (tr, mut out) = trivialize(g, tu)?;
        out.push(mutually_inverse(
            &g.cat,
            "φ, φ⁻¹ inverse bijections of T(G)",
            &tr.phi,
            &tr.phi_inv,
        ));
        Ok(out)
    })
}

fn coordinate_table(cx: &Context) -> Result<Outcome> {
    let plan = plan(cx);
    per_group(cx, |g, tu| {
        let (tr, _) = trivialize(g, tu)?;
        let (ad, _) = adjoints(g, tu)?;
        coordinate_table_check(g, tu, &tr, &ad, &plan)
    })
}

fn adjoint(cx: &Context) -> Result<Outcome> {
    per_group(cx, |g, tu| Ok(adjoints(g, tu)?.1))
}

fn eckmann_hilton_check(cx: &Context) -> Result<Outcome> {
    let plan = plan(cx);
    per_group(cx, |g, tu| eckmann_hilton(g, tu, &plan))
}

fn negation_check(cx: &Context) -> Result<Outcome> {
    let plan = plan(cx);
    per_group(cx, |g, tu| {
        let (tr, _) = trivialize(g, tu)?;
        Ok(negation(g, tu, &tr, &plan)?.1)
    })
}

fn left_invariant(cx: &Context) -> Result<Outcome> {
    let plan = plan(cx);
    per_group(cx, |g, tu| {
        let (tr, _) = trivialize(g, tu)?;
        let (neg, _) = negation(g, tu, &tr, &plan)?;
        left_invariant_roundtrip(g, tu, &neg, &plan)
    })
}

fn lie_bracket_check(cx: &Context) -> Result<Outcome> {
    if cx.groups.is_empty() {
        return skip("no `group` targets");
    }
    let plan = plan(cx);
    let mut out = Vec::new();
    let mut tables = serde_json::Map::new();
    for g in &cx.groups {
        let (tu, _) = TangentSpaceAtUnit::new(g)?;
        let (tr, _) = trivialize(g, &tu)?;
        let (neg, _) = negation(g, &tu, &tr, &plan)?;
        let basis: Vec<LeftInvariantField> = (0..g.n)
            .map(|i| {
                field_of(
                    g,
                    &tu,
                    &(0..g.n).map(|j| u32::from(i == j)).collect::<Vec<_>>(),
                )
            })
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        for x in &basis {
            let mut row = Vec::new();
            for y in &basis {
                let (z, reports) = lie_bracket(g, &tu, &neg, x, y)?;
                out.extend(tag(&format!("{} [{:?}, {:?}]", g.name, x.v, y.v), reports));
                row.push(z.v);
            }
            rows.push(row);
        }
        let (_, reports) = lie_algebra_check(g, &tu, &neg)?;
        out.extend(tag(&g.name, reports));
        tables.insert(g.name.clone(), json!(rows));
    }
    Ok(Outcome::Ran {
        laws: out,
        output: Some(json!({ "basis_brackets": tables })),
    })
}

fn vertical(cx: &Context) -> Result<Outcome> {
    per_group(cx, |g, tu| {
        let p = g.p();
        let split = p.div_ceil(2);
        let e0: Vec<u32> = (0..g.n).map(|j| u32::from(j == 0)).collect();
        let (trivial, mut out) = trivial_principal(g, 1)?;
        let (two, reports) = two_chart_principal(g, split, &[((split..p).collect(), e0)])?;
        out.extend(reports);
        for (name, pb) in [("trivial", &trivial), ("two-chart", &two)] {
            let v = vertical_bundle(g, tu, pb)?;
            out.extend(tag(name, v.reports));
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::campaign::circle_kind;

    #[test]
    fn ids_are_unique() {
        let mut seen: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        seen.sort_unstable();
        let n = seen.len();
        seen.dedup();
        assert_eq!(seen.len(), n);
    }

    #[test]
    fn circle_names_resolve() {
        for c in Circle::ALL {
            assert_eq!(circle_kind(c.name()), Some(c));
        }
    }
}

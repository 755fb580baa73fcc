//! Runs the ten acceptance criteria, printing one PASS/FAIL line each. Exits
//! non-zero when a criterion outside `KNOWN_FAILURES` fails, when a known
//! failure unexpectedly passes, or when a runtime limit is exceeded.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcat::finset::{self, FinSet};
use rcat::gbundles::fixtures::{c2, circle_cocycle, circle_principal, z8_edges, Circle};
use rcat::gbundles::*;
use rcat::laws::{self, LawConfig};
use rcat::liegroups::*;
use rcat::manifolds;
use rcat::poly::{self, sample, PolyCat};
use rcat::{LawReport, Regime};
use std::time::{Duration, Instant};

/// Criteria expected to fail, with the reason printed beside them.
const KNOWN_FAILURES: [(u32, &str); 2] = [
    (4, "the shrunken circle bundle is not totally fibred: over 0 the fibre holds two G-orbits"),
    (7, "the literal flip row omits the bracket term; fails on Heisenberg, the corrected row passes"),
];

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    fn absorb(&mut self, tag: &str, reports: &[LawReport]) {
        for r in reports {
            if !r.passed() {
                self.failures.push(format!("{tag}: {r}"));
            }
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

type Criterion = fn() -> rcat::Result<Outcome>;

fn exhaustive(reports: &[LawReport]) -> bool {
    reports
        .iter()
        .all(|r| r.regime == Regime::Exhaustive || r.regime == Regime::Symbolic)
}

fn restriction_and_join_laws() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let cfg = LawConfig {
        size_bound: 16,
        max_cases: 1 << 22,
        seed: 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fs = finset::law_sample(&mut rng, 16, 2);
    let mut all = laws::check_restriction_laws(&FinSet, &fs, &cfg)?;
    all.extend(laws::check_order_laws(&FinSet, &fs, &cfg)?);
    all.extend(laws::check_join_laws(&FinSet, &fs, &cfg)?);
    let c = PolyCat::new(5, 3)?;
    let ps = sample::law_sample(&mut rng, &c, 2, 2);
    let mut pr = laws::check_restriction_laws(&c, &ps, &cfg)?;
    pr.extend(laws::check_order_laws(&c, &ps, &cfg)?);
    pr.extend(laws::check_join_laws(&c, &ps, &cfg)?);
    out.require(
        exhaustive(&all) && exhaustive(&pr),
        "a law suite fell back to sampling",
    );
    out.absorb("finset", &all);
    out.absorb("poly", &pr);
    let cases: u64 = all.iter().chain(&pr).map(|r| r.cases).sum();
    out.detail = format!(
        "{} laws, {cases} cases, {} finset and {} poly morphisms",
        all.len() + pr.len(),
        fs.len(),
        ps.len()
    );
    Ok(out)
}

fn gluing() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let c = FinSet;
    let g = c2();
    let ga = circle_cocycle(&g, Circle::Twisted, 1);
    let ba = bundle_atlas_of(&c, &g.carrier, &g.mul, &ga, Orientation::Definition)?;
    let (b, _, reports) = manifolds::atlas_to_bundle(&ba)?;
    out.absorb("gluing", &reports);
    out.require(
        b.total.len() == 16,
        format!("total space has {} points", b.total.len()),
    );
    out.absorb("bundle", &manifolds::check_bundle(&c, &b)?);
    let cl = manifolds::classify_roundtrip(&b)?;
    out.absorb("classification", &cl.reports);
    out.require(
        cl.comparison.is_bijection(),
        "classification comparison is not a bijection",
    );
    out.detail = format!("|E| = {}, comparison bijective", b.total.len());
    Ok(out)
}

fn non_triviality() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let c = FinSet;
    let edges = z8_edges();
    let prod = circle_principal(Circle::Product)?;
    let (r2, _) = right_action(&c, &prod)?;
    let tw = circle_principal(Circle::Twisted)?;
    let (r, _) = right_action(&c, &tw)?;
    let none = trivialization_search(&tw, &prod, &r, &r2, &edges, 1_000_000)?;
    out.require(
        none.found().is_none(),
        "found a trivialization of the twisted bundle",
    );
    let un = circle_principal(Circle::Untwisted)?;
    let (ru, _) = right_action(&c, &un)?;
    let some = trivialization_search(&un, &prod, &ru, &r2, &edges, 1_000_000)?;
    out.require(
        some.found().is_some_and(|m| m.is_bijection()),
        "no trivialization of the untwisted bundle",
    );
    out.detail = format!(
        "twisted: none after {} nodes; untwisted: found after {} nodes",
        none.nodes(),
        some.nodes()
    );
    Ok(out)
}

fn right_action_laws() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let c = FinSet;
    let mut shrunken_orbits = 0;
    for kind in Circle::ALL {
        let pb = circle_principal(kind)?;
        let (r, reports) = right_action(&c, &pb)?;
        out.absorb(kind.name(), &reports);
        let ft = free_and_transitive(&pb, &r)?;
        if kind == Circle::Shrunken {
            shrunken_orbits = ft[1].counterexamples.len();
        }
        out.absorb(kind.name(), &ft);
    }
    out.detail = format!(
        "{} bundles; shrunken has {shrunken_orbits} points whose orbit is not its fibre",
        Circle::ALL.len()
    );
    Ok(out)
}

fn torsor() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let c = FinSet;
    for kind in Circle::ALL {
        let pb = circle_principal(kind)?;
        let (r, _) = right_action(&c, &pb)?;
        let (t, reports) = torsor_witness(&c, &pb, &r)?;
        out.absorb(kind.name(), &reports[..3]);
        let fibred = manifolds::is_totally_fibred(&c, &pb.bundle)?;
        out.require(
            reports[3].passed() == fibred,
            format!(
                "{}: d* total = {}, totally fibred = {fibred}",
                kind.name(),
                reports[3].passed()
            ),
        );
        let bijective = t.shear.is_bijection();
        out.require(
            !fibred || bijective,
            format!("{}: ⟨π0,r⟩ not a bijection onto P ×_M P", kind.name()),
        );
    }
    out.detail = "d* total exactly on the three totally fibred bundles".into();
    Ok(out)
}

fn tangent_axioms() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let c = PolyCat::new(5, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = sample::naturality_sample(&mut rng, &c, &[1, 2], 2);
    let reports = poly::check_tangent_axioms(&c, &[1, 2], &s)?;
    out.absorb("axioms", &reports);
    let js = sample::law_sample(&mut rng, &c, 2, 2);
    let compat = poly::check_join_tangent_compat(&c, &js)?;
    out.absorb("join", &compat);
    out.detail = format!(
        "{} axiom reports, {} cases",
        reports.len() + compat.len(),
        reports.iter().chain(&compat).map(|r| r.cases).sum::<u64>()
    );
    Ok(out)
}

fn trivialization_and_table() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let plan = PointPlan::default();
    let groups = [
        TangentGroup::additive(5, 1, 3)?,
        TangentGroup::additive(5, 2, 3)?,
        TangentGroup::heisenberg(5, 3)?,
        TangentGroup::additive(3, 2, 3)?,
        TangentGroup::heisenberg(3, 3)?,
    ];
    let mut notes = Vec::new();
    for g in &groups {
        let (tu, landed) = TangentSpaceAtUnit::new(g)?;
        out.absorb(&g.name, &[landed]);
        let (tr, reports) = trivialize(g, &tu)?;
        out.absorb(&g.name, &reports);
        let bij = mutually_inverse(&g.cat, "φ, φ⁻¹ mutually inverse", &tr.phi, &tr.phi_inv);
        out.require(
            bij.cases == (g.p() as u64).pow(2 * g.n as u32),
            format!("{}: φ not enumerated", g.name),
        );
        out.absorb(&g.name, &[bij]);
        let (ad, reports) = adjoints(g, &tu)?;
        out.absorb(&g.name, &reports);
        let rows = coordinate_table_check(g, &tu, &tr, &ad, &plan)?;
        for r in &rows {
            if let Regime::Sampled { drawn, .. } = r.regime {
                out.require(
                    drawn >= 100_000,
                    format!("{}: {} drew {drawn}", g.name, r.law),
                );
            }
            if g.p() == 3 && (r.law.starts_with("row ℓ") || r.law.starts_with("row c")) {
                out.require(
                    r.regime == Regime::Exhaustive,
                    format!("{}: {} not exhaustive", g.name, r.law),
                );
            }
        }
        let failed: Vec<&str> = rows
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.law.as_str())
            .collect();
        if !failed.is_empty() {
            notes.push(format!("{} fails {}", g.name, failed.join(", ")));
        }
        out.absorb(&g.name, &rows);
    }
    out.detail = if notes.is_empty() {
        "all rows".into()
    } else {
        notes.join("; ")
    };
    Ok(out)
}

fn eckmann_hilton_all() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let plan = PointPlan::default();
    for g in [
        TangentGroup::additive(5, 1, 3)?,
        TangentGroup::additive(5, 2, 3)?,
        TangentGroup::heisenberg(3, 3)?,
        TangentGroup::heisenberg(5, 3)?,
    ] {
        let (tu, _) = TangentSpaceAtUnit::new(&g)?;
        out.absorb(&g.name, &eckmann_hilton(&g, &tu, &plan)?);
    }
    out.detail = "+_u = T(m)_u on F5, F5^2, H3, H5".into();
    Ok(out)
}

fn lie_algebra() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let g = TangentGroup::heisenberg(5, 3)?;
    let (tu, _) = TangentSpaceAtUnit::new(&g)?;
    let (tr, _) = trivialize(&g, &tu)?;
    let (neg, reports) = negation(&g, &tu, &tr, &PointPlan::default())?;
    out.absorb("negation", &reports);
    let basis: Vec<LeftInvariantField> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .iter()
        .map(|v| field_of(&g, &tu, v))
        .collect::<rcat::Result<_>>()?;
    let mut table = Vec::new();
    for x in &basis {
        for y in &basis {
            let (z, reports) = lie_bracket(&g, &tu, &neg, x, y)?;
            out.absorb("basis bracket", &reports);
            table.push(z.v);
        }
    }
    let expected: Vec<Vec<u32>> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| match (i, j) {
            (0, 1) => vec![0, 0, 1],
            (1, 0) => vec![0, 0, 4],
            _ => vec![0, 0, 0],
        })
        .collect();
    out.require(table == expected, format!("basis table {table:?}"));
    let (full, reports) = lie_algebra_check(&g, &tu, &neg)?;
    out.absorb("algebra", &reports);
    out.detail = format!(
        "[X,Y] = Z, others 0; {} brackets on the full span",
        full.len()
    );
    Ok(out)
}

fn vertical() -> rcat::Result<Outcome> {
    let mut out = Outcome::new();
    let g = TangentGroup::additive(5, 1, 3)?;
    let (tu, _) = TangentSpaceAtUnit::new(&g)?;
    let (trivial, r1) = trivial_principal(&g, 1)?;
    let (twisted, r2) = two_chart_principal(&g, 2, &[(vec![2], vec![1]), (vec![3, 4], vec![3])])?;
    out.absorb("trivial bundle", &r1);
    out.absorb("two-chart bundle", &r2);
    let mut sizes = Vec::new();
    for (name, pb) in [("trivial", &trivial), ("two-chart", &twisted)] {
        let v = vertical_bundle(&g, &tu, pb)?;
        out.absorb(name, &v.reports);
        sizes.push(v.t0.len());
    }
    out.detail = format!("|T_0(P)| = {sizes:?} = |P| p^n = 125");
    Ok(out)
}

fn main() {
    let criteria: [(u32, &str, u64, Criterion); 10] = [
        (
            1,
            "restriction and join laws",
            60,
            restriction_and_join_laws,
        ),
        (2, "gluing and classification round trip", 5, gluing),
        (
            3,
            "twisted circle has no trivialization",
            30,
            non_triviality,
        ),
        (4, "right action", 10, right_action_laws),
        (5, "torsor", 10, torsor),
        (6, "tangent axioms", 120, tangent_axioms),
        (
            7,
            "trivialization of T(G) and coordinate table",
            300,
            trivialization_and_table,
        ),
        (8, "Eckmann-Hilton", 10, eckmann_hilton_all),
        (9, "Lie algebra of Heisenberg", 60, lie_algebra),
        (10, "vertical bundle", 120, vertical),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let known = KNOWN_FAILURES
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, why)| *why);
        let (passed, detail) = match &result {
            Ok(o) if o.failures.is_empty() => (true, o.detail.clone()),
            Ok(o) => (
                false,
                format!("{} failing: {}", o.failures.len(), o.failures[0]),
            ),
            Err(e) => (false, format!("error {}: {e}", e.code())),
        };
        let in_time = took <= Duration::from_secs(limit);
        let verdict = if passed && in_time { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {id:>2} ({name}) in {:.2}s of {limit}s: {detail}",
            took.as_secs_f64()
        );
        if !in_time {
            unexpected.push(format!("criterion {id} exceeded {limit}s"));
        }
        match (passed, known) {
            (false, Some(why)) => println!("     known failure: {why}"),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {id} was expected to fail")),
            (true, None) => {}
        }
        if let Ok(o) = &result {
            for f in o.failures.iter().skip(1).take(3) {
                println!("     also: {f}");
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcomes: {unexpected:?}");
        std::process::exit(1);
    }
}

use rcat::category::times;
use rcat::finset::{Atom, FinObj, FinSet, ParMap};
use rcat::manifolds::{self, Atlas, AtlasMorphism, BundleAtlas, FinAtlas, FinBundleAtlas};
use rcat::{
    all_passed, CartesianRestrictionCategory, JoinRestrictionCategory, RestrictionCategory,
};

fn two_point_atlas() -> FinAtlas {
    let x = FinObj::named("X", "x", 2);
    let y = FinObj::named("Y", "y", 2);
    let u01 = ParMap::from_pairs(&x, &y, &[(Atom::sym("x1"), Atom::sym("y0"))]).unwrap();
    let u10 = ParMap::from_pairs(&y, &x, &[(Atom::sym("y0"), Atom::sym("x1"))]).unwrap();
    Atlas {
        charts: vec![x.clone(), y.clone()],
        transitions: vec![
            vec![FinSet.identity(&x), u01],
            vec![u10, FinSet.identity(&y)],
        ],
    }
}

/// Two arcs of the 8-point circle: chart 0 covers 0..=4, chart 1 covers 4..=8≡0.
fn circle_atlas() -> FinAtlas {
    let a = FinObj::named("A", "a", 5);
    let b = FinObj::named("B", "b", 5);
    let u01 = ParMap::from_fn(&a, &b, |k| match k {
        4 => Some(0),
        0 => Some(4),
        _ => None,
    });
    let u10 = ParMap::from_fn(&b, &a, |k| match k {
        0 => Some(4),
        4 => Some(0),
        _ => None,
    });
    Atlas {
        charts: vec![a.clone(), b.clone()],
        transitions: vec![
            vec![FinSet.identity(&a), u01],
            vec![u10, FinSet.identity(&b)],
        ],
    }
}

fn c2() -> FinObj {
    FinObj::range("C2", 2)
}

fn z8() -> FinObj {
    FinObj::range("Z8", 8)
}

fn arc(lo: u32, hi: u32) -> ParMap {
    ParMap::idempotent(&z8(), |x| {
        if lo <= hi {
            (lo..=hi).contains(&x)
        } else {
            x >= lo || x <= hi
        }
    })
}

/// Bundle atlas over `Z8` with fibre `C2`; `flips` lists overlap points whose
/// transition swaps the fibre, `overlap` the points where charts are glued.
fn circle_bundle_atlas(overlap: &[u32], flips: &[u32]) -> FinBundleAtlas {
    let c = FinSet;
    let (m, f) = (z8(), c2());
    let mf = c.product(&m, &f);
    let es = vec![arc(0, 4), arc(4, 0)];
    let diag: Vec<ParMap> = es
        .iter()
        .map(|e| times(&c, e, &c.identity(&f)).unwrap())
        .collect();
    let cross = ParMap::from_fn(&mf, &mf, |k| {
        let (x, g) = (k / 2, k % 2);
        overlap
            .contains(&x)
            .then(|| 2 * x + if flips.contains(&x) { 1 - g } else { g })
    });
    BundleAtlas {
        base: m,
        fibre: f,
        atlas: Atlas {
            charts: vec![mf.clone(), mf],
            transitions: vec![
                vec![diag[0].clone(), cross.clone()],
                vec![cross, diag[1].clone()],
            ],
        },
        idempotents: es,
    }
}

#[test]
fn atlas_law_examples() {
    let c = FinSet;
    let u = FinObj::named("U", "u", 3);
    assert!(
        manifolds::check_atlas(&c, &manifolds::trivial_atlas(&c, &u))
            .unwrap()
            .passed()
    );
    assert!(manifolds::check_atlas(&c, &two_point_atlas())
        .unwrap()
        .passed());
    let mut bad = two_point_atlas();
    bad.transitions[1][0] = ParMap::from_pairs(
        &bad.charts[1],
        &bad.charts[0],
        &[(Atom::sym("y0"), Atom::sym("x0"))],
    )
    .unwrap();
    let r = manifolds::check_atlas(&c, &bad).unwrap();
    assert!(!r.passed());
    assert!(
        r.counterexamples
            .iter()
            .any(|cx| cx.morphisms[0].starts_with("(iii) u_01 u_10")),
        "{r}"
    );
    assert_eq!(
        manifolds::glue(&bad).unwrap_err().code(),
        "ILL_FORMED_ATLAS"
    );
}

#[test]
fn two_chart_gluing_has_three_points() {
    let atlas = two_point_atlas();
    let gl = manifolds::glue(&atlas).unwrap();
    let names: Vec<String> = gl.obj.points().iter().map(|p| p.to_string()).collect();
    assert_eq!(names, ["(0,x0)", "(0,x1)", "(1,y1)"]);
    assert!(all_passed(&manifolds::check_gluing(&atlas, &gl).unwrap()));
    let probes = manifolds::standard_probes(&atlas, &gl);
    let r = manifolds::check_universal_property(&atlas, &gl, &probes).unwrap();
    assert!(r.passed() && r.cases > 0, "{r}");
}

#[test]
fn circle_gluing() {
    let atlas = circle_atlas();
    let gl = manifolds::glue(&atlas).unwrap();
    assert_eq!(gl.obj.len(), 8);
    // a4 and b0 name the same point, as do a0 and b4.
    assert_eq!(gl.charts[0].apply(4), gl.charts[1].apply(0));
    assert_eq!(gl.charts[0].apply(0), gl.charts[1].apply(4));
    assert_ne!(gl.charts[0].apply(1), gl.charts[1].apply(1));
    assert!(all_passed(&manifolds::check_gluing(&atlas, &gl).unwrap()));
    let r =
        manifolds::check_universal_property(&atlas, &gl, &manifolds::standard_probes(&atlas, &gl))
            .unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn probes_that_are_not_atlas_morphisms_are_rejected() {
    let atlas = two_point_atlas();
    let gl = manifolds::glue(&atlas).unwrap();
    let two = FinObj::named("T", "t", 2);
    // x1 and y0 are identified but sent to different points.
    let f0 = ParMap::from_fn(&atlas.charts[0], &two, |_| Some(0));
    let f1 = ParMap::from_fn(&atlas.charts[1], &two, |_| Some(1));
    let probe = manifolds::Probe {
        name: "split".into(),
        family: vec![f0, f1],
    };
    let r = manifolds::check_universal_property(&atlas, &gl, &[probe]).unwrap();
    assert_eq!(r.cases, 0);
    assert!(r.notes[0].contains("rejected"));
}

#[test]
fn gluing_is_idempotent() {
    let atlas = circle_atlas();
    let gl = manifolds::glue(&atlas).unwrap();
    let again = manifolds::glue(&manifolds::atlas_of(&gl).unwrap()).unwrap();
    assert_eq!(again.obj.points(), gl.obj.points());
    let cmp = manifolds::comparison(&gl, &again).unwrap();
    assert!(FinSet.mor_eq(&cmp, &FinSet.identity(&gl.obj)));
    let whole = manifolds::glue(&manifolds::trivial_atlas(&FinSet, &gl.obj)).unwrap();
    assert!(whole.charts[0].is_bijection());
}

#[test]
fn atlas_morphism_laws() {
    let c = FinSet;
    let atlas = circle_atlas();
    let id = manifolds::identity_morphism(&atlas);
    let reports = manifolds::check_atlas_morphism(&c, &atlas, &atlas, &id).unwrap();
    assert_eq!(reports.len(), 6);
    assert!(all_passed(&reports));
    let comp = manifolds::compose_morphisms(&c, &atlas, &atlas, &atlas, &id, &id).unwrap();
    for i in 0..2 {
        for k in 0..2 {
            assert!(c.mor_eq(comp.a(i, k), atlas.u(i, k)));
        }
    }
    // Dropping a component breaks (iii) but not the pointwise laws (i), (ii).
    let mut broken = id.clone();
    broken.comps[0][1] = c.nowhere(&atlas.charts[0], &atlas.charts[1]);
    let reports = manifolds::check_atlas_morphism(&c, &atlas, &atlas, &broken).unwrap();
    assert!(reports[0].passed() && reports[1].passed());
    assert!(!reports[2].passed());
}

#[test]
fn twisted_bundle_from_atlas() {
    let ba = circle_bundle_atlas(&[0, 4], &[0]);
    let (b, _, reports) = manifolds::atlas_to_bundle(&ba).unwrap();
    assert!(all_passed(&reports), "{reports:?}");
    assert_eq!(b.total.len(), 16);
    assert!(manifolds::is_totally_fibred(&FinSet, &b).unwrap());
    assert!(manifolds::check_totally_fibred_square(&FinSet, &b)
        .unwrap()
        .passed());
    let (back, reports) = manifolds::bundle_to_atlas(&FinSet, &b).unwrap();
    assert!(all_passed(&reports));
    // The overlap transition flips the fibre over 0 only.
    let u01 = back.atlas.u(0, 1);
    let mf = &back.atlas.charts[0];
    let at = |x: i64, g: i64| {
        mf.index_of(&Atom::pair(Atom::Int(x), Atom::Int(g)))
            .unwrap()
    };
    assert_eq!(u01.apply(at(0, 0)), Some(at(0, 1)));
    assert_eq!(u01.apply(at(4, 0)), Some(at(4, 0)));
    assert_eq!(u01.domain_size(), 4);
}

#[test]
fn product_bundle_single_chart() {
    let c = FinSet;
    let (m, f) = (z8(), c2());
    let mf = c.product(&m, &f);
    let ba = BundleAtlas {
        base: m.clone(),
        fibre: f,
        atlas: manifolds::trivial_atlas(&c, &mf),
        idempotents: vec![c.identity(&m)],
    };
    let (b, _, reports) = manifolds::atlas_to_bundle(&ba).unwrap();
    assert!(all_passed(&reports));
    assert_eq!(b.total.len(), 16);
    let cl = manifolds::classify_roundtrip(&b).unwrap();
    assert!(all_passed(&cl.reports));
    assert!(cl.comparison.is_bijection());
}

#[test]
fn classification_roundtrip_twisted() {
    let (b, _, _) = manifolds::atlas_to_bundle(&circle_bundle_atlas(&[0, 4], &[0])).unwrap();
    let cl = manifolds::classify_roundtrip(&b).unwrap();
    assert!(
        all_passed(&cl.reports),
        "{:?}",
        cl.reports
            .iter()
            .filter(|r| !r.passed())
            .collect::<Vec<_>>()
    );
    assert!(cl.comparison.is_bijection());
}

#[test]
fn presentations_with_different_chart_counts() {
    let c = FinSet;
    let (two, _, _) = manifolds::atlas_to_bundle(&circle_bundle_atlas(&[0, 4], &[])).unwrap();
    let (m, f) = (z8(), c2());
    let mf = c.product(&m, &f);
    let es = [arc(0, 2), arc(2, 5), arc(5, 0)];
    let mut transitions = Vec::new();
    for ei in &es {
        transitions.push(
            es.iter()
                .map(|ej| times(&c, &c.compose(ei, ej).unwrap(), &c.identity(&f)).unwrap())
                .collect(),
        );
    }
    let three = BundleAtlas {
        base: m.clone(),
        fibre: f,
        atlas: Atlas {
            charts: vec![mf; 3],
            transitions,
        },
        idempotents: es.to_vec(),
    };
    let (three, _, reports) = manifolds::atlas_to_bundle(&three).unwrap();
    assert!(all_passed(&reports));
    let a: AtlasMorphism<ParMap> = manifolds::overlap_identity(&two, &three).unwrap();
    let phi = manifolds::induced_bundle_map(&c, &two, &three, &a).unwrap();
    assert!(phi.is_bijection());
    let reports =
        manifolds::check_bundle_morphism(&c, &two, &three, &phi, &c.identity(&m), Some(&a))
            .unwrap();
    assert!(all_passed(&reports));
}

#[test]
fn shrunken_overlap_is_not_totally_fibred() {
    let (b, _, reports) = manifolds::atlas_to_bundle(&circle_bundle_atlas(&[4], &[])).unwrap();
    assert!(all_passed(&reports));
    assert_eq!(b.total.len(), 18);
    assert!(!manifolds::is_totally_fibred(&FinSet, &b).unwrap());
    assert!(manifolds::check_totally_fibred_square(&FinSet, &b)
        .unwrap()
        .passed());
}

#[test]
fn bundle_checks_catch_a_bad_projection() {
    let (mut b, _, _) = manifolds::atlas_to_bundle(&circle_bundle_atlas(&[0, 4], &[0])).unwrap();
    b.q = ParMap::from_fn(&b.total, &b.base, |k| Some((b.q.apply(k).unwrap() + 1) % 8));
    let reports = manifolds::check_bundle(&FinSet, &b).unwrap();
    assert!(!all_passed(&reports));
}

#[test]
fn json_roundtrip() {
    let atlas = circle_atlas();
    let v = manifolds::atlas_to_json(&atlas).unwrap();
    let back = manifolds::atlas_from_json(&v).unwrap();
    assert_eq!(manifolds::atlas_to_json(&back).unwrap(), v);
    let (b, _, _) = manifolds::atlas_to_bundle(&circle_bundle_atlas(&[0, 4], &[0])).unwrap();
    let v = manifolds::bundle_to_json(&b).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    let back = manifolds::bundle_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(
        serde_json::to_string(&manifolds::bundle_to_json(&back).unwrap()).unwrap(),
        text
    );
    let err =
        manifolds::atlas_from_json(&serde_json::json!({"charts": [], "transitions": {"0,0": {}}}))
            .unwrap_err();
    assert_eq!(err.code(), "MODEL_ERROR");
}

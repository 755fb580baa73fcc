use proptest::prelude::*;
use rcat::gbundles::fixtures::{circle_principal, Circle};
use rcat::liegroups::*;
use rcat::poly::PolyCat;
use rcat::{all_passed, Error, LawReport, RestrictionCategory};

fn failing(reports: &[LawReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect()
}

fn setup(g: &TangentGroup) -> (TangentSpaceAtUnit, Trivialization) {
    let (tu, landed) = TangentSpaceAtUnit::new(g).unwrap();
    assert!(landed.passed(), "{landed}");
    let (tr, reports) = trivialize(g, &tu).unwrap();
    assert!(all_passed(&reports), "{:?}", failing(&reports));
    (tu, tr)
}

/// `m(x, y) = x + y + y_{last}`: not a group, and `T(m)_u ≠ +_u`.
fn corrupted(p: u32, n: usize) -> TangentGroup {
    let g = TangentGroup::additive(p, n, 3).unwrap();
    let c = &g.cat;
    let mut mul: Vec<_> = (0..n)
        .map(|i| c.var(2 * n, i).add(&c.var(2 * n, n + i)))
        .collect();
    mul[n - 1] = mul[n - 1].add(&c.var(2 * n, 2 * n - 1));
    let inv = (0..n).map(|i| c.var(n, i).neg()).collect();
    TangentGroup::new("bad", *c, mul, inv, vec![0; n]).unwrap()
}

#[test]
fn additive_group_trivialization_is_the_identity() {
    let g = TangentGroup::additive(5, 1, 3).unwrap();
    let (_, tr) = setup(&g);
    let c = &g.cat;
    assert!(c.mor_eq(&tr.phi, &c.identity(&2)));
    assert!(c.mor_eq(&tr.phi_inv, &c.identity(&2)));
}

#[test]
fn heisenberg_trivialization_is_a_bijection() {
    let g = TangentGroup::heisenberg(5, 3).unwrap();
    let (_, tr) = setup(&g);
    let r = mutually_inverse(&g.cat, "φ", &tr.phi, &tr.phi_inv);
    assert!(r.passed());
    assert_eq!(r.cases, 5u64.pow(6));
    // φ(g, v) = (g, D₂m(g⁻¹, g) v): (a, b, c; v) ↦ (a, b, c; v0, v1, v2 - a v1)
    assert_eq!(
        tr.phi.eval(&[2, 3, 4, 1, 1, 1]),
        Some(vec![2, 3, 4, 1, 1, 4])
    );
}

#[test]
fn table_rows_hold_for_additive_groups() {
    let g = TangentGroup::additive(5, 2, 3).unwrap();
    let (tu, tr) = setup(&g);
    let (ad, ar) = adjoints(&g, &tu).unwrap();
    assert!(all_passed(&ar), "{:?}", failing(&ar));
    let rows = coordinate_table_check(&g, &tu, &tr, &ad, &PointPlan::default()).unwrap();
    assert!(all_passed(&rows), "{:?}", failing(&rows));
}

#[test]
fn heisenberg_flip_row_needs_the_bracket() {
    let g = TangentGroup::heisenberg(3, 3).unwrap();
    let (tu, tr) = setup(&g);
    let (ad, _) = adjoints(&g, &tu).unwrap();
    let rows = coordinate_table_check(&g, &tu, &tr, &ad, &PointPlan::default()).unwrap();
    let bad: Vec<&LawReport> = rows.iter().filter(|r| !r.passed()).collect();
    assert_eq!(bad.len(), 1, "{:?}", failing(&rows));
    assert!(bad[0].law.starts_with("row c:"));
    assert!(rows
        .iter()
        .any(|r| r.law.contains("corrected") && r.passed()));
    // (g, w1, w2, w3) with w1 = e0, w2 = e1 picks up [e0, e1] = e2.
    let flip = corrected_flip(&g);
    assert_eq!(
        flip.eval(&[0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0]),
        Some(vec![0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1])
    );
}

#[test]
fn adjoint_action_matches_conjugation() {
    let g = TangentGroup::heisenberg(5, 3).unwrap();
    let (tu, _) = setup(&g);
    let (ad, reports) = adjoints(&g, &tu).unwrap();
    assert!(all_passed(&reports), "{:?}", failing(&reports));
    let r = check_adjoint_oracle(&g, &ad, |x, v| heisenberg_conjugation(5, x, v));
    assert!(r.passed(), "{r}");
    assert_eq!(r.cases, 5u64.pow(6));
}

#[test]
fn eckmann_hilton_holds_and_catches_a_corrupted_product() {
    for g in [
        TangentGroup::additive(5, 2, 3).unwrap(),
        TangentGroup::heisenberg(5, 3).unwrap(),
    ] {
        let (tu, _) = setup(&g);
        let r = eckmann_hilton(&g, &tu, &PointPlan::default()).unwrap();
        assert_eq!(r.len(), 6);
        assert!(all_passed(&r), "{}: {:?}", g.name, failing(&r));
    }
    let bad = corrupted(5, 2);
    let (tu, _) = TangentSpaceAtUnit::new(&bad).unwrap();
    let r = eckmann_hilton(&bad, &tu, &PointPlan::default()).unwrap();
    assert!(!r[0].passed());
}

#[test]
fn negation_is_fibrewise_and_inverts_addition() {
    let g = TangentGroup::heisenberg(5, 3).unwrap();
    let (tu, tr) = setup(&g);
    let (neg, r) = negation(&g, &tu, &tr, &PointPlan::default()).unwrap();
    assert!(all_passed(&r), "{:?}", failing(&r));
    assert_eq!(neg.eval(&[1, 2, 3, 1, 1, 1]), Some(vec![1, 2, 3, 4, 4, 4]));
}

#[test]
fn brace_examples() {
    let c = PolyCat::new(5, 3).unwrap();
    let n = 2;
    let lift = c.lift(n);
    assert!(c.mor_eq(&brace(&c, n, &lift).unwrap(), &c.identity(&(2 * n))));
    let zero = c.zero(2 * n);
    assert!(c.mor_eq(
        &brace(&c, n, &zero).unwrap(),
        &c.compose(&c.proj(n), &c.zero(n)).unwrap()
    ));
    for f in [lift, zero] {
        let b = brace(&c, n, &f).unwrap();
        assert!(check_brace(&c, n, &f, &b).unwrap().passed());
    }
    // x ↦ (x, x², 0, x³), on one variable
    let x = c.var(1, 0);
    let f = c.total(1, vec![x.clone(), x.mul(&x), x.scale(0), x.mul(&x).mul(&x)]);
    let b = brace(&c, 1, &f).unwrap();
    assert_eq!(b.eval(&[2]), Some(vec![2, 3]));
    assert!(check_brace(&c, 1, &f, &b).unwrap().passed());
    assert!(matches!(
        brace(&c, n, &c.flip(n)),
        Err(Error::NotInEqualizer(_))
    ));
    assert!(matches!(
        brace(&c, n, &c.identity(&3)),
        Err(Error::ShapeMismatch(_))
    ));
}

#[test]
fn identity_is_the_brace_of_the_unit_tangent() {
    let g = TangentGroup::heisenberg(3, 3).unwrap();
    let (tu, _) = setup(&g);
    let (one, r) = tu.brace_of_identity(&g).unwrap();
    assert!(r.passed(), "{r}");
    assert!(g.cat.mor_eq(&one, &g.cat.select(6, &[3, 4, 5])));
}

#[test]
fn left_invariant_fields_roundtrip() {
    for g in [
        TangentGroup::additive(3, 2, 3).unwrap(),
        TangentGroup::heisenberg(3, 3).unwrap(),
    ] {
        let (tu, tr) = setup(&g);
        let (neg, _) = negation(&g, &tu, &tr, &PointPlan::default()).unwrap();
        let r = left_invariant_roundtrip(&g, &tu, &neg, &PointPlan::default()).unwrap();
        assert!(all_passed(&r), "{}: {:?}", g.name, failing(&r));
    }
    let g = TangentGroup::additive(3, 2, 3).unwrap();
    let s = search_invariant_sections(&g);
    assert_eq!(s.sections.len(), 9);
}

#[test]
fn heisenberg_bracket_of_basis_fields() {
    let g = TangentGroup::heisenberg(5, 3).unwrap();
    let (tu, tr) = setup(&g);
    let (neg, _) = negation(&g, &tu, &tr, &PointPlan::default()).unwrap();
    let x = field_of(&g, &tu, &[1, 0, 0]).unwrap();
    let y = field_of(&g, &tu, &[0, 1, 0]).unwrap();
    let (z, r) = lie_bracket(&g, &tu, &neg, &x, &y).unwrap();
    assert!(all_passed(&r), "{:?}", failing(&r));
    assert_eq!(z.v, vec![0, 0, 1]);
    let (yx, _) = lie_bracket(&g, &tu, &neg, &y, &x).unwrap();
    assert_eq!(yx.v, vec![0, 0, 4]);
}

#[test]
fn heisenberg_lie_algebra() {
    let g = TangentGroup::heisenberg(3, 3).unwrap();
    let (tu, tr) = setup(&g);
    let (neg, _) = negation(&g, &tu, &tr, &PointPlan::default()).unwrap();
    let (table, r) = lie_algebra_check(&g, &tu, &neg).unwrap();
    assert!(all_passed(&r), "{:?}", failing(&r));
    assert_eq!(table.len(), 27 * 27);
}

#[test]
fn vertical_bundle_of_trivial_and_two_chart_bundles() {
    let g = TangentGroup::additive(5, 1, 3).unwrap();
    let (tu, _) = setup(&g);
    let (trivial, r) = trivial_principal(&g, 1).unwrap();
    assert!(all_passed(&r), "{:?}", failing(&r));
    let v = vertical_bundle(&g, &tu, &trivial).unwrap();
    assert!(all_passed(&v.reports), "{:?}", failing(&v.reports));
    assert_eq!(v.t0.len(), 125);

    let (twisted, r) =
        two_chart_principal(&g, 2, &[(vec![2], vec![1]), (vec![3, 4], vec![3])]).unwrap();
    assert!(all_passed(&r), "{:?}", failing(&r));
    let v = vertical_bundle(&g, &tu, &twisted).unwrap();
    assert!(all_passed(&v.reports), "{:?}", failing(&v.reports));
    assert_eq!(v.t0.len(), 125);
}

#[test]
fn vertical_bundle_over_heisenberg() {
    let g = TangentGroup::heisenberg(3, 3).unwrap();
    let (tu, _) = setup(&g);
    let (pb, r) = two_chart_principal(&g, 1, &[(vec![1, 2], vec![1, 2, 0])]).unwrap();
    assert!(all_passed(&r), "{:?}", failing(&r));
    let v = vertical_bundle(&g, &tu, &pb).unwrap();
    assert!(all_passed(&v.reports), "{:?}", failing(&v.reports));
    assert_eq!(v.t0.len(), 3usize.pow(4) * 27);
}

#[test]
fn vertical_bundle_with_identity_tangent() {
    for kind in [Circle::Product, Circle::Untwisted, Circle::Twisted] {
        let pb = circle_principal(kind).unwrap();
        assert!(vertical_bundle_identity_tangent(&pb).unwrap().passed());
    }
}

#[test]
fn group_from_json() {
    let v = serde_json::json!({
        "name": "F7",
        "p": 7,
        "unit": [0],
        "mul": [{"p": 7, "arity": 2, "terms": [{"exp": [1, 0], "coef": 1}, {"exp": [0, 1], "coef": 1}]}],
        "inv": [{"p": 7, "arity": 1, "terms": [{"exp": [1], "coef": 6}]}]
    });
    let g = TangentGroup::from_json(&v, 3).unwrap();
    assert!(g.is_abelian());
    assert_eq!(g.mul_point(&[3], &[5]), vec![1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heisenberg_bracket_oracle_is_antisymmetric_and_bilinear(
        v in prop::collection::vec(0u32..5, 3),
        w in prop::collection::vec(0u32..5, 3),
        z in prop::collection::vec(0u32..5, 3),
    ) {
        let g = TangentGroup::heisenberg(5, 3).unwrap();
        let vw = g.bracket_oracle(&v, &w);
        prop_assert_eq!(add_vec(5, &vw, &g.bracket_oracle(&w, &v)), vec![0; 3]);
        let lhs = g.bracket_oracle(&add_vec(5, &v, &z), &w);
        prop_assert_eq!(lhs, add_vec(5, &vw, &g.bracket_oracle(&z, &w)));
        prop_assert_eq!(vw, vec![0, 0, (v[0] * w[1] + 25 - v[1] * w[0]) % 5]);
    }

    #[test]
    fn trivialization_inverts_pointwise(x in prop::collection::vec(0u32..5, 6)) {
        let g = TangentGroup::heisenberg(5, 3).unwrap();
        let (tu, _) = TangentSpaceAtUnit::new(&g).unwrap();
        let (tr, _) = trivialize(&g, &tu).unwrap();
        let y = tr.phi.eval(&x).unwrap();
        prop_assert_eq!(tr.phi_inv.eval(&y), Some(x));
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcat::category::{compatible, join, leq, partial_inverse};
use rcat::finset::{self, all_maps, iso_search, Atom, FinObj, FinSet, ParMap, SearchProblem};
use rcat::laws::{self, LawConfig};
use rcat::{
    all_passed, CartesianRestrictionCategory, Error, JoinRestrictionCategory, RestrictionCategory,
};

fn a3() -> FinObj {
    FinObj::named("A", "a", 3)
}
fn b2() -> FinObj {
    FinObj::named("B", "b", 2)
}
fn s(x: &str) -> Atom {
    Atom::sym(x)
}

#[test]
fn restriction_is_inclusion_of_domain() {
    let f = ParMap::from_pairs(&a3(), &b2(), &[(s("a0"), s("b0")), (s("a1"), s("b1"))]).unwrap();
    let bar = FinSet.restrict(&f);
    assert_eq!(bar.table, vec![Some(0), Some(1), None]);
    let reports =
        laws::check_restriction_laws(&FinSet, &[f.clone(), bar], &LawConfig::default()).unwrap();
    assert!(all_passed(&reports));
}

#[test]
fn leq_and_compatible_examples() {
    let f = ParMap::from_pairs(&a3(), &b2(), &[(s("a0"), s("b0"))]).unwrap();
    let g = ParMap::from_pairs(&a3(), &b2(), &[(s("a0"), s("b0")), (s("a1"), s("b1"))]).unwrap();
    assert!(leq(&FinSet, &f, &g).unwrap());
    assert!(!leq(&FinSet, &g, &f).unwrap());
    let h = ParMap::from_pairs(&a3(), &b2(), &[(s("a2"), s("b1"))]).unwrap();
    assert!(compatible(&FinSet, &f, &h).unwrap());
    let clash = ParMap::from_pairs(&a3(), &b2(), &[(s("a0"), s("b1"))]).unwrap();
    assert!(!compatible(&FinSet, &f, &clash).unwrap());
    let other = ParMap::from_pairs(&b2(), &b2(), &[]).unwrap();
    assert_eq!(
        leq(&FinSet, &f, &other).unwrap_err().code(),
        "SHAPE_MISMATCH"
    );
}

#[test]
fn compose_examples() {
    let c = FinObj::named("C", "c", 1);
    let f = ParMap::from_pairs(&a3(), &b2(), &[(s("a0"), s("b0")), (s("a1"), s("b1"))]).unwrap();
    let g = ParMap::from_pairs(&b2(), &c, &[(s("b0"), s("c0"))]).unwrap();
    let fg = FinSet.compose(&f, &g).unwrap();
    assert_eq!(fg.table, vec![Some(0), None, None]);
    assert!(FinSet.compose(&g, &f).is_err());
}

#[test]
fn joins() {
    let total = ParMap::from_fn(&a3(), &b2(), |i| Some(i % 2));
    let left = ParMap::from_fn(&a3(), &b2(), |i| (i < 2).then_some(i % 2));
    let right = ParMap::from_fn(&a3(), &b2(), |i| (i >= 1).then_some(i % 2));
    let j = join(&FinSet, &a3(), &b2(), &[left.clone(), right]).unwrap();
    assert!(FinSet.mor_eq(&j, &total));
    let single = join(&FinSet, &a3(), &b2(), std::slice::from_ref(&left)).unwrap();
    assert!(FinSet.mor_eq(&single, &left));
    let empty = join(&FinSet, &a3(), &b2(), &[]).unwrap();
    assert!(FinSet.mor_eq(&empty, &FinSet.nowhere(&a3(), &b2())));
    let clash = ParMap::from_fn(&a3(), &b2(), |i| (i == 0).then_some(1));
    assert_eq!(
        join(&FinSet, &a3(), &b2(), &[total.clone(), left, clash]).unwrap_err(),
        Error::IncompatibleFamily {
            first: 0,
            second: 2
        }
    );
}

#[test]
fn partial_inverses() {
    let a = a3();
    let id = FinSet.identity(&a);
    assert!(FinSet.mor_eq(&partial_inverse(&FinSet, &id).unwrap(), &id));
    let inj = ParMap::from_pairs(&a, &b2(), &[(s("a0"), s("b1")), (s("a2"), s("b0"))]).unwrap();
    let inv = partial_inverse(&FinSet, &inj).unwrap();
    assert_eq!(inv.table, vec![Some(2), Some(0)]);
    assert_eq!(FinSet.count_partial_inverses(&inj), Some(1));
    let noninj = ParMap::from_fn(&a, &b2(), |_| Some(0));
    assert!(partial_inverse(&FinSet, &noninj).is_none());
    assert_eq!(FinSet.count_partial_inverses(&noninj), Some(0));
}

#[test]
fn products_and_pairing() {
    let (a, b) = (FinObj::named("A", "a", 2), FinObj::named("B", "b", 3));
    assert_eq!(FinSet.product(&a, &b).len(), 6);
    let one = FinSet.terminal();
    let a1 = FinSet.product(&a, &one);
    assert_eq!(a1.len(), a.len());
    // ⟨f, g⟩ π0 = bar(g) f for strictly partial g.
    let x = FinObj::named("X", "x", 3);
    for f in all_maps(&x, &a) {
        for g in all_maps(&x, &b).into_iter().step_by(7) {
            let lhs = FinSet
                .compose(&FinSet.pair(&f, &g).unwrap(), &FinSet.pi0(&a, &b))
                .unwrap();
            let rhs = FinSet.compose(&FinSet.restrict(&g), &f).unwrap();
            assert!(FinSet.mor_eq(&lhs, &rhs));
        }
    }
}

#[test]
fn restriction_pullbacks() {
    let (two, three) = (FinObj::named("A", "a", 2), FinObj::named("C", "c", 3));
    let one = FinSet.terminal();
    let (x, pa, pc) = FinSet
        .restriction_pullback(&FinSet.bang(&two), &FinSet.bang(&three))
        .unwrap();
    assert_eq!(x.len(), 6);
    assert!(pa.is_total() && pc.is_total());
    let _ = one;
    let b = FinObj::named("B", "b", 2);
    let c1 = FinObj::named("C", "c", 1);
    let f = ParMap::from_pairs(&two, &b, &[(s("a0"), s("b0")), (s("a1"), s("b0"))]).unwrap();
    let g = ParMap::from_pairs(&c1, &b, &[(s("c0"), s("b0"))]).unwrap();
    let (x, _, _) = FinSet.restriction_pullback(&f, &g).unwrap();
    assert_eq!(
        x.points(),
        &[Atom::pair(s("a0"), s("c0")), Atom::pair(s("a1"), s("c0"))]
    );
    let id = FinSet.identity(&b);
    let (x, pa, pc) = FinSet.restriction_pullback(&id, &id).unwrap();
    assert_eq!(x.len(), 2);
    assert!(pa.is_bijection() && pc.is_bijection());
}

/// The unique mediating map of a pullback of totals, by exhaustive search over
/// all maps into the pullback.
#[test]
fn pullback_universal_property_by_enumeration() {
    let a = FinObj::named("A", "a", 3);
    let c = FinObj::named("C", "c", 2);
    let b = FinObj::named("B", "b", 2);
    let z = FinObj::named("Z", "z", 2);
    let f = ParMap::from_fn(&a, &b, |i| Some(i.min(1)));
    let g = ParMap::from_fn(&c, &b, Some);
    let fp = FinSet.fibre_product(&f, &g).unwrap();
    let mut cones = 0;
    for ra in all_maps(&z, &a) {
        for rc in all_maps(&z, &c) {
            let lhs = FinSet.compose(&ra, &f).unwrap();
            let rhs = FinSet.compose(&rc, &g).unwrap();
            if !FinSet.mor_eq(&lhs, &rhs) {
                continue;
            }
            cones += 1;
            let matching: Vec<ParMap> = all_maps(&z, &fp.obj)
                .into_iter()
                .filter(|phi| {
                    FinSet.mor_eq(&FinSet.compose(phi, &fp.p0).unwrap(), &ra)
                        && FinSet.mor_eq(&FinSet.compose(phi, &fp.p1).unwrap(), &rc)
                })
                .collect();
            assert_eq!(matching.len(), 1, "cone {ra:?} {rc:?}");
            let mediating = FinSet.fibre_pair(&fp, &ra, &rc).unwrap();
            assert!(FinSet.mor_eq(&mediating, &matching[0]));
        }
    }
    assert!(cones > 10);
}

/// A restriction that returns the complement of the domain breaks R.1.
struct Corrupt;
impl RestrictionCategory for Corrupt {
    type Obj = FinObj;
    type Mor = ParMap;
    fn name(&self) -> &str {
        "corrupt"
    }
    fn dom(&self, f: &ParMap) -> FinObj {
        f.src.clone()
    }
    fn cod(&self, f: &ParMap) -> FinObj {
        f.tgt.clone()
    }
    fn identity(&self, a: &FinObj) -> ParMap {
        FinSet.identity(a)
    }
    fn compose(&self, f: &ParMap, g: &ParMap) -> rcat::Result<ParMap> {
        FinSet.compose(f, g)
    }
    fn restrict(&self, f: &ParMap) -> ParMap {
        ParMap::idempotent(&f.src, |i| f.apply(i).is_none())
    }
    fn mor_eq(&self, f: &ParMap, g: &ParMap) -> bool {
        FinSet.mor_eq(f, g)
    }
    fn obj_size(&self, a: &FinObj) -> usize {
        a.len()
    }
}

#[test]
fn corrupted_restriction_is_caught() {
    let f = ParMap::from_pairs(&a3(), &b2(), &[(s("a0"), s("b0"))]).unwrap();
    let reports =
        laws::check_restriction_laws(&Corrupt, std::slice::from_ref(&f), &LawConfig::default())
            .unwrap();
    let r1 = reports.iter().find(|r| r.law.starts_with("R.1")).unwrap();
    assert!(!r1.passed());
    assert_eq!(r1.counterexamples[0].morphisms, vec![format!("{f:?}")]);
    assert!(r1.counterexamples[0].lhs != r1.counterexamples[0].rhs);
}

/// Setting every restriction to the identity is the trivial restriction
/// structure, which satisfies every law: no checker can flag it.
#[test]
fn identity_restriction_is_lawful() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sample = finset::law_sample(&mut rng, 5, 1);
    let reports =
        laws::check_restriction_laws(&laws::Trivial(&FinSet), &sample, &LawConfig::default())
            .unwrap();
    assert!(all_passed(&reports));
}

#[test]
fn law_suites_pass_on_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sample = finset::law_sample(&mut rng, 8, 3);
    let cfg = LawConfig::default();
    for r in laws::check_restriction_laws(&FinSet, &sample, &cfg).unwrap() {
        assert!(r.passed(), "{r}");
        assert_eq!(r.regime, rcat::Regime::Exhaustive);
    }
    for r in laws::check_join_laws(&FinSet, &sample, &cfg).unwrap() {
        assert!(r.passed(), "{r}");
    }
    for r in laws::check_order_laws(&FinSet, &sample, &cfg).unwrap() {
        assert!(r.passed(), "{r}");
    }
    assert!(laws::check_partial_inverse_laws(&FinSet, &sample[..140])
        .unwrap()
        .passed());
    for r in laws::tot_triv_smoke(&FinSet, &sample, &cfg).unwrap() {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn sampled_regime_above_size_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sample = finset::law_sample(&mut rng, 16, 2);
    let cfg = LawConfig {
        size_bound: 8,
        max_cases: 500,
        seed: 3,
    };
    let reports = laws::check_restriction_laws(&FinSet, &sample, &cfg).unwrap();
    assert!(reports
        .iter()
        .any(|r| matches!(r.regime, rcat::Regime::Sampled { .. })));
    assert!(all_passed(&reports));
}

#[test]
fn json_roundtrip_is_bit_exact() {
    let a = FinObj::new(
        "P",
        vec![Atom::Int(3), s("x"), Atom::pair(s("y"), Atom::Int(1))],
    )
    .unwrap();
    let f = ParMap::from_fn(&a, &b2(), |i| (i != 1).then_some(i % 2));
    let text = serde_json::to_string(&finset::map_to_json(&f).unwrap()).unwrap();
    let back = finset::map_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert!(FinSet.mor_eq(&f, &back));
    assert_eq!(
        serde_json::to_string(&finset::map_to_json(&back).unwrap()).unwrap(),
        text
    );
    let clash = FinObj::new("K", vec![Atom::Int(1), s("1")]).unwrap();
    assert!(finset::map_to_json(&FinSet.identity(&clash)).is_err());
}

#[test]
fn iso_search_examples() {
    let a = FinObj::named("A", "a", 4);
    let id_problem = SearchProblem {
        a: a.clone(),
        b: a.clone(),
        color_a: vec![0, 1, 2, 3],
        color_b: vec![0, 1, 2, 3],
        constraint: Box::new(|_, _| true),
        budget: 1000,
    };
    let found = iso_search(&id_problem).unwrap();
    assert!(found.found().unwrap().is_bijection());
    assert!(FinSet.mor_eq(found.found().unwrap(), &FinSet.identity(&a)));
    let impossible = SearchProblem {
        constraint: Box::new(|asg: &[Option<u32>], i| asg[i as usize] != Some(i)),
        ..id_problem
    };
    assert!(iso_search(&impossible).unwrap().found().is_none());
    let big = FinObj::named("N", "n", 9);
    let tight = SearchProblem {
        a: big.clone(),
        b: big.clone(),
        color_a: vec![0; 9],
        color_b: vec![0; 9],
        constraint: Box::new(|asg: &[Option<u32>], _| asg.iter().flatten().count() < 9),
        budget: 10_000,
    };
    assert_eq!(
        iso_search(&tight).unwrap_err().code(),
        "SEARCH_BUDGET_EXCEEDED"
    );
}

type Table = Vec<Option<u32>>;

fn arb_map() -> impl Strategy<Value = (Table, Table, Table)> {
    let entry = prop::option::of(0u32..4);
    let t = prop::collection::vec(entry, 5);
    (t.clone(), t.clone(), t)
}

proptest! {
    #[test]
    fn join_is_a_semilattice((t1, t2, t3) in arb_map()) {
        let (a, b) = (FinObj::named("A", "a", 5), FinObj::named("B", "b", 4));
        let f = ParMap::new(a.clone(), b.clone(), t1).unwrap();
        let g = ParMap::new(a.clone(), b.clone(), t2).unwrap();
        let h = ParMap::new(a.clone(), b.clone(), t3).unwrap();
        // Make g and h compatible with f by agreeing with f where it is defined.
        let fix = |m: &ParMap| ParMap::from_fn(&a, &b, |i| f.apply(i).or(m.apply(i)));
        let (g, h) = (fix(&g), fix(&h));
        let g = ParMap::from_fn(&a, &b, |i| if h.apply(i).is_some() && g.apply(i) != h.apply(i) { None } else { g.apply(i) });
        let j = |xs: &[ParMap]| join(&FinSet, &a, &b, xs).unwrap();
        prop_assert!(FinSet.mor_eq(&j(&[f.clone(), f.clone()]), &f));
        prop_assert!(FinSet.mor_eq(&j(&[f.clone(), g.clone()]), &j(&[g.clone(), f.clone()])));
        prop_assert!(FinSet.mor_eq(&j(&[j(&[f.clone(), g.clone()]), h.clone()]), &j(&[f.clone(), j(&[g.clone(), h.clone()])])));
        prop_assert!(FinSet.mor_eq(&j(std::slice::from_ref(&f)), &f));
        // Join is the table union.
        let u = j(&[f.clone(), g.clone()]);
        for i in 0..5 {
            prop_assert_eq!(u.apply(i), f.apply(i).or(g.apply(i)));
        }
    }

    #[test]
    fn leq_is_a_partial_order((t1, t2, t3) in arb_map()) {
        let (a, b) = (FinObj::named("A", "a", 5), FinObj::named("B", "b", 4));
        let f = ParMap::new(a.clone(), b.clone(), t1).unwrap();
        let g = ParMap::new(a.clone(), b.clone(), t2).unwrap();
        let h = ParMap::new(a, b, t3).unwrap();
        let le = |x: &ParMap, y: &ParMap| leq(&FinSet, x, y).unwrap();
        prop_assert!(le(&f, &f));
        if le(&f, &g) && le(&g, &f) { prop_assert!(FinSet.mor_eq(&f, &g)); }
        if le(&f, &g) && le(&g, &h) { prop_assert!(le(&f, &h)); }
    }

    #[test]
    fn partial_inverse_is_involutive(t in prop::collection::vec(prop::option::of(0u32..6), 5)) {
        let (a, b) = (FinObj::named("A", "a", 5), FinObj::named("B", "b", 6));
        let f = ParMap::new(a, b, t).unwrap();
        match partial_inverse(&FinSet, &f) {
            Some(g) => {
                prop_assert!(f.is_injective());
                prop_assert!(FinSet.mor_eq(&partial_inverse(&FinSet, &g).unwrap(), &f));
            }
            None => prop_assert!(!f.is_injective()),
        }
    }

    #[test]
    fn json_roundtrip(t in prop::collection::vec(prop::option::of(0u32..3), 4)) {
        let a = FinObj::new("A", vec![Atom::Int(-1), Atom::sym("p"), Atom::unit(), Atom::pair(Atom::Int(0), Atom::sym("q"))]).unwrap();
        let b = FinObj::range("B", 3);
        let f = ParMap::new(a, b, t).unwrap();
        let text = serde_json::to_string(&finset::map_to_json(&f).unwrap()).unwrap();
        let back = finset::map_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert!(FinSet.mor_eq(&f, &back));
        prop_assert_eq!(serde_json::to_string(&finset::map_to_json(&back).unwrap()).unwrap(), text);
    }
}

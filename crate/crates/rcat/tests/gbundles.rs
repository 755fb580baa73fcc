use proptest::prelude::*;
use rcat::category::{compatible, join, leq};
use rcat::finset::{FinObj, FinSet, ParMap};
use rcat::gbundles::fixtures::{c2, circle_cocycle, circle_principal, z8_edges, Circle};
use rcat::gbundles::*;
use rcat::manifolds::is_totally_fibred;
use rcat::{all_passed, Error, JoinRestrictionCategory, RestrictionCategory};

fn failing(reports: &[rcat::LawReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect()
}

#[test]
fn finite_groups_satisfy_the_group_laws() {
    let c = FinSet;
    for (name, t) in [("C2", cyclic(2)), ("Z5", cyclic(5)), ("H3", heisenberg(3))] {
        let g = t.to_object(name).unwrap();
        let r = check_group(&c, &g).unwrap();
        assert!(all_passed(&r), "{name}: {:?}", failing(&r));
        assert!(all_passed(&check_group_table(&t)));
    }
    let h5 = heisenberg(5);
    assert_eq!(h5.len(), 125);
    let r = check_group_table(&h5);
    assert!(all_passed(&r));
    assert_eq!(r[0].cases, 125u64.pow(3));
}

#[test]
fn corrupted_structure_maps_are_caught() {
    let c = FinSet;
    let mut t = cyclic(3);
    t.inv = vec![0, 1, 2];
    let g = t.to_object("Z3").unwrap();
    let r = check_group(&c, &g).unwrap();
    assert!(r[3].law.contains('ι') && !r[3].passed());
    assert!(r[1].passed() && r[2].passed());

    let mut t = cyclic(3);
    t.mul[3 + 1] = 0;
    t.mul[0] = 1;
    let g = t.to_object("Z3").unwrap();
    assert!(!check_group(&c, &g).unwrap()[1].passed());
}

#[test]
fn heisenberg_is_not_abelian() {
    let h = heisenberg(3);
    let x = 9; // (1,0,0)
    let y = 3; // (0,1,0)
    assert_ne!(h.m(x, y), h.m(y, x));
    assert_eq!(h.names[h.m(x, y) as usize].to_string(), "(1,1,1)");
}

#[test]
fn actions() {
    let c = FinSet;
    let g = c2();
    assert!(all_passed(
        &check_action(&c, &g, &g.carrier, &g.mul).unwrap()
    ));
    let x2 = FinObj::named("X2", "x", 2);
    let gx = rcat::CartesianRestrictionCategory::product(&c, &g.carrier, &x2);
    let swap = ParMap::from_fn(&gx, &x2, |k| {
        Some(if k / 2 == 0 { k % 2 } else { 1 - k % 2 })
    });
    assert!(all_passed(&check_action(&c, &g, &x2, &swap).unwrap()));
    let broken = ParMap::from_fn(&gx, &x2, |_| Some(0));
    assert!(!all_passed(&check_action(&c, &g, &x2, &broken).unwrap()));
}

#[test]
fn circle_fixtures_have_the_expected_total_spaces() {
    let c = FinSet;
    for kind in Circle::ALL {
        let p = circle_principal(kind).unwrap();
        let expected = if kind == Circle::Shrunken { 18 } else { 16 };
        assert_eq!(p.bundle.total.len(), expected, "{}", kind.name());
        let r = check_gbundle(&c, &p).unwrap();
        assert!(all_passed(&r), "{}: {:?}", kind.name(), failing(&r));
        assert_eq!(
            is_totally_fibred(&c, &p.bundle).unwrap(),
            kind != Circle::Shrunken
        );
        let back = cocycle_of(&c, &p.group, &p.bundle).unwrap();
        for (a, b) in back
            .tau
            .iter()
            .flatten()
            .zip(p.cocycle.tau.iter().flatten())
        {
            assert!(c.mor_eq(a, b));
        }
    }
}

#[test]
fn ill_formed_cocycles_are_rejected() {
    let g = c2();
    let mut ga = circle_cocycle(&g, Circle::Twisted, 1);
    ga.tau[0][0].table[2] = Some(1);
    let err = principal_from_cocycle(&g, &ga).unwrap_err();
    assert_eq!(err.code(), "ILL_FORMED_COCYCLE");

    let mut ga = circle_cocycle(&g, Circle::Twisted, 1);
    ga.tau[1][0] = FinSet.nowhere(&ga.base, &g.carrier);
    assert!(matches!(
        principal_from_cocycle(&g, &ga),
        Err(Error::IllFormedCocycle(_))
    ));
}

#[test]
fn right_action_and_torsor() {
    let c = FinSet;
    for kind in Circle::ALL {
        let p = circle_principal(kind).unwrap();
        let (r, reports) = right_action(&c, &p).unwrap();
        assert!(
            all_passed(&reports),
            "{}: {:?}",
            kind.name(),
            failing(&reports)
        );
        let ft = free_and_transitive(&p, &r).unwrap();
        assert!(ft[0].passed());
        assert_eq!(ft[1].passed(), kind != Circle::Shrunken, "{}", kind.name());
        let (t, reports) = torsor_witness(&c, &p, &r).unwrap();
        assert!(
            reports[..3].iter().all(|r| r.passed()),
            "{}: {:?}",
            kind.name(),
            failing(&reports)
        );
        let missing = missing_pairs(&t);
        if kind == Circle::Shrunken {
            assert!(!reports[3].passed());
            assert_eq!(missing.len(), 8);
        } else {
            assert!(reports[3].passed() && missing.is_empty());
        }
    }
}

#[test]
fn twisted_circle_has_no_continuous_trivialization() {
    let c = FinSet;
    let tw = circle_principal(Circle::Twisted).unwrap();
    let prod = circle_principal(Circle::Product).unwrap();
    let id = c.identity(&tw.bundle.base);
    let edges = z8_edges();
    let s = search_t_families(&tw, &prod, &id, Some(&edges), 1 << 20).unwrap();
    assert_eq!(s.candidates, 1024);
    assert_eq!(s.isomorphisms().count(), 0);
    assert!(s.valid.is_empty());
    // without continuity the discrete model trivializes anything
    let loose = search_t_families(&tw, &prod, &id, None, 1 << 20).unwrap();
    assert_eq!(loose.isomorphisms().count(), 256);

    let (r, _) = right_action(&c, &tw).unwrap();
    let (r2, _) = right_action(&c, &prod).unwrap();
    let out = trivialization_search(&tw, &prod, &r, &r2, &edges, 1_000_000).unwrap();
    assert!(out.found().is_none());

    let un = circle_principal(Circle::Untwisted).unwrap();
    let (ru, _) = right_action(&c, &un).unwrap();
    let found = trivialization_search(&un, &prod, &ru, &r2, &edges, 1_000_000).unwrap();
    assert!(found.found().is_some_and(|m| m.is_bijection()));
    let s = search_t_families(&un, &prod, &id, Some(&edges), 1 << 20).unwrap();
    assert_eq!(s.isomorphisms().count(), 2);
}

#[test]
fn t_families_compose_like_their_maps() {
    let c = FinSet;
    let un = circle_principal(Circle::Untwisted).unwrap();
    let prod = circle_principal(Circle::Product).unwrap();
    let id = c.identity(&un.bundle.base);
    let edges = z8_edges();
    let s = search_t_families(&un, &prod, &id, Some(&edges), 1 << 20).unwrap();
    let autos = search_t_families(&prod, &prod, &id, Some(&edges), 1 << 20).unwrap();
    assert_eq!(autos.isomorphisms().count(), 2);
    for (f1, m1) in s.isomorphisms() {
        for (f2, m2) in autos.isomorphisms() {
            let comp = compose_t_families(&c, &un.group, &un.bundle.base, f1, f2).unwrap();
            let (m, reports) = pbun_morphism(&c, &un, &prod, &comp).unwrap();
            assert!(all_passed(&reports), "{:?}", failing(&reports));
            assert!(c.mor_eq(&m, &c.compose(m1, m2).unwrap()));
        }
    }
}

#[test]
fn bad_t_families_are_rejected() {
    let c = FinSet;
    let tw = circle_principal(Circle::Twisted).unwrap();
    let prod = circle_principal(Circle::Product).unwrap();
    // the unit on each chart ignores the twist at 0
    let fam = TFamily {
        phi: c.identity(&tw.bundle.base),
        t: vec![
            vec![tw.cocycle.t(0, 0).clone()],
            vec![tw.cocycle.t(1, 1).clone()],
        ],
    };
    let err = pbun_morphism(&c, &tw, &prod, &fam).unwrap_err();
    assert_eq!(err.code(), "BAD_TRANSITION_FAMILY");
}

#[test]
fn index_conventions_agree_for_c2_and_part_for_z3() {
    let c = FinSet;
    for kind in Circle::ALL {
        let p = circle_principal(kind).unwrap();
        assert!(orientation_crosscheck(&c, &p).unwrap().passed());
        let ident = identity_family(&p);
        assert!(all_passed(
            &literal_t_conditions(&c, &p.group, &p.cocycle, &p.cocycle, &ident).unwrap()
        ));
    }
    let z3 = cyclic(3).to_object("Z3").unwrap();
    let ga = circle_cocycle(&z3, Circle::Twisted, 1);
    let (p, reports) = principal_from_cocycle(&z3, &ga).unwrap();
    assert!(all_passed(&reports));
    assert!(all_passed(&check_gbundle(&c, &p).unwrap()));
    let cross = orientation_crosscheck(&c, &p).unwrap();
    assert!(!cross.passed() && !cross.notes.is_empty());
    let ident = identity_family(&p);
    assert!(all_passed(
        &check_t_conditions(&c, &p.group, &p.cocycle, &p.cocycle, &ident).unwrap()
    ));
    assert!(!all_passed(
        &literal_t_conditions(&c, &p.group, &p.cocycle, &p.cocycle, &ident).unwrap()
    ));
    let (phi, r) = pbun_morphism(&c, &p, &p, &ident).unwrap();
    assert!(all_passed(&r));
    assert!(c.mor_eq(&phi, &c.identity(&p.bundle.total)));
    // the other orientation still glues, to a different bundle atlas
    let (q, _) = associated_bundle(&z3, &z3.carrier, &z3.mul, &ga, Orientation::Build).unwrap();
    assert_eq!(q.bundle.total.len(), p.bundle.total.len());
    assert!(!all_passed(&check_gbundle(&c, &q).unwrap()));
}

fn identity_family(p: &FinGBundle) -> TFamily<ParMap> {
    let n = p.cocycle.len();
    TFamily {
        phi: FinSet.identity(&p.bundle.base),
        t: (0..n)
            .map(|i| (0..n).map(|k| p.cocycle.t(k, i).clone()).collect())
            .collect(),
    }
}

#[test]
fn equivalence_roundtrips() {
    let c = FinSet;
    let g = c2();
    let x3 = FinObj::named("X3", "x", 3);
    let gx = rcat::CartesianRestrictionCategory::product(&c, &g.carrier, &x3);
    // the nontrivial element swaps x0 and x1 and fixes x2
    let act = ParMap::from_fn(&gx, &x3, |k| {
        let (s, x) = (k / 3, k % 3);
        Some(if s == 1 && x < 2 { 1 - x } else { x })
    });
    for kind in Circle::ALL {
        let p = circle_principal(kind).unwrap();
        let r = equivalence_roundtrip(&p).unwrap();
        assert!(all_passed(&r), "{}: {:?}", kind.name(), failing(&r));
        let e = build(&p, &x3, &act).unwrap();
        let expected = if kind == Circle::Shrunken { 27 } else { 24 };
        assert_eq!(e.bundle.total.len(), expected);
        let r = equivalence_roundtrip(&e).unwrap();
        assert!(all_passed(&r), "{}: {:?}", kind.name(), failing(&r));
    }
}

#[test]
fn slice_group_is_a_group_object() {
    let slice = Slice::new(fixtures::z8());
    for t in [cyclic(2), cyclic(3)] {
        let g = t.to_object("G").unwrap();
        let sg = slice_group(&slice, &g).unwrap();
        let r = check_group(&slice, &sg).unwrap();
        assert!(all_passed(&r), "{:?}", failing(&r));
    }
    let mut t = cyclic(3);
    t.inv = vec![0, 1, 2];
    let sg = slice_group(&slice, &t.to_object("G").unwrap()).unwrap();
    assert!(!check_group(&slice, &sg).unwrap()[3].passed());
}

const N: usize = 5;

fn obj(name: &str) -> FinObj {
    FinObj::named(name, "p", N)
}

fn table() -> impl Strategy<Value = Vec<Option<u32>>> {
    prop::collection::vec(prop::option::weighted(0.7, 0..N as u32), N)
}

fn domains(k: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), N), k)
}

fn restricted(f: &ParMap, keep: &[bool]) -> ParMap {
    ParMap::from_fn(&f.src, &f.tgt, |x| {
        if keep[x as usize] {
            f.apply(x)
        } else {
            None
        }
    })
}

proptest! {
    #[test]
    fn join_of_products_dominates_product_of_joins(f in table(), g in table(), df in domains(3), dg in domains(3)) {
        let c = FinSet;
        let (a, b) = (obj("A"), obj("B"));
        let f = ParMap::new(a.clone(), b.clone(), f).unwrap();
        let g = ParMap::new(b.clone(), a.clone(), g).unwrap();
        let fs: Vec<ParMap> = df.iter().map(|d| restricted(&f, d)).collect();
        let gs: Vec<ParMap> = dg.iter().map(|d| restricted(&g, d)).collect();
        let lhs = c.compose(&join(&c, &a, &b, &fs).unwrap(), &join(&c, &b, &a, &gs).unwrap()).unwrap();
        let diag: Vec<ParMap> = fs.iter().zip(&gs).map(|(x, y)| c.compose(x, y).unwrap()).collect();
        let rhs = join(&c, &a, &a, &diag).unwrap();
        prop_assert!(leq(&c, &rhs, &lhs).unwrap());
    }

    #[test]
    fn above_the_restriction_means_equal(f in table(), g in table()) {
        let c = FinSet;
        let f = ParMap::new(obj("A"), obj("B"), f).unwrap();
        let g = ParMap::new(obj("B"), obj("A"), g).unwrap();
        let fg = c.compose(&f, &g).unwrap();
        let bar = c.restrict(&f);
        if leq(&c, &bar, &fg).unwrap() {
            prop_assert!(c.mor_eq(&fg, &bar));
        }
    }

    #[test]
    fn restricted_below_means_compatible(f in table(), g in table()) {
        let c = FinSet;
        let f = ParMap::new(obj("A"), obj("B"), f).unwrap();
        let g = ParMap::new(obj("A"), obj("B"), g).unwrap();
        if leq(&c, &c.compose(&c.restrict(&f), &g).unwrap(), &f).unwrap() {
            prop_assert!(compatible(&c, &f, &g).unwrap());
        }
    }
}

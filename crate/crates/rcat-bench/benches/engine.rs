use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcat::finset::{self, FinSet};
use rcat::laws::{self, LawConfig};
use rcat::liegroups::*;
use rcat::poly::{sample, PolyCat};
use rcat::RestrictionCategory;

fn law_suites(c: &mut Criterion) {
    let cfg = LawConfig {
        size_bound: 16,
        max_cases: 1 << 22,
        seed: 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fs = finset::law_sample(&mut rng, 16, 2);
    let pc = PolyCat::new(5, 3).unwrap();
    let ps = sample::law_sample(&mut rng, &pc, 2, 2);
    c.bench_function("restriction laws, finset", |b| {
        b.iter(|| laws::check_restriction_laws(&FinSet, black_box(&fs), &cfg).unwrap())
    });
    c.bench_function("restriction laws, poly", |b| {
        b.iter(|| laws::check_restriction_laws(&pc, black_box(&ps), &cfg).unwrap())
    });
}

fn heisenberg(c: &mut Criterion) {
    let g = TangentGroup::heisenberg(5, 3).unwrap();
    let (tu, _) = TangentSpaceAtUnit::new(&g).unwrap();
    c.bench_function("trivialize H5", |b| {
        b.iter(|| trivialize(black_box(&g), &tu).unwrap())
    });

    let (tr, _) = trivialize(&g, &tu).unwrap();
    let round = g.cat.compose(&tr.phi, &tr.phi_inv).unwrap();
    let id = g.cat.identity(&6);
    c.bench_function("jet equality, φ;φ⁻¹ = 1", |b| {
        b.iter(|| g.cat.mor_eq(black_box(&round), &id))
    });

    let (neg, _) = negation(&g, &tu, &tr, &PointPlan::default()).unwrap();
    let x = field_of(&g, &tu, &[1, 0, 0]).unwrap();
    let y = field_of(&g, &tu, &[0, 1, 0]).unwrap();
    let mut group = c.benchmark_group("bracket");
    group.sample_size(10);
    group.bench_function("[X, Y] on H5", |b| {
        b.iter(|| lie_bracket(&g, &tu, &neg, black_box(&x), &y).unwrap())
    });
    group.finish();
}

criterion_group!(benches, law_suites, heisenberg);
criterion_main!(benches);

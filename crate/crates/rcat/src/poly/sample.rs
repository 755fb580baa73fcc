use super::domain::Domain;
use super::map::{PolyCat, PolyMap};
use super::ring::{Poly, PolyMor};
use rand::Rng;

pub fn random_poly(rng: &mut impl Rng, p: u32, arity: usize, max_deg: u32, terms: usize) -> Poly {
    let mut q = Poly::zero(p, arity);
    for _ in 0..terms {
        let mut e = vec![0u32; arity];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 && arity > 0 {
            e[rng.gen_range(0..arity)] += 1;
            budget -= 1;
        }
        q.add_term(e, rng.gen_range(1..p));
    }
    q
}

pub fn random_body(rng: &mut impl Rng, p: u32, n: usize, m: usize) -> PolyMor {
    PolyMor::new(p, n, (0..m).map(|_| random_poly(rng, p, n, 3, 3)).collect())
}

/// A random subset of 𝔽_p^n; each point kept with probability `density`.
pub fn random_domain(rng: &mut impl Rng, p: u32, n: usize, density: f64) -> Domain {
    let pts: Vec<Vec<u32>> = Domain::full(p, n)
        .points()
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    Domain::from_points(p, n, &pts)
}

/// `x_0^p - x_0`: zero as a function, nonzero first derivative.
fn frobenius_defect(p: u32, n: usize) -> Poly {
    let mut e = vec![0; n];
    e[0] = p;
    Poly::monomial(p, e, 1).sub(&Poly::var(p, n, 0))
}

/// Law-suite sample over all hom-sets between arities `0..=max_arity`: for
/// each, random global bodies, their restrictions to random subsets, two-piece
/// maps on complementary subsets, and a body perturbed by `x^p - x` (equal
/// values, different jets).
pub fn law_sample(
    rng: &mut impl Rng,
    c: &PolyCat,
    max_arity: usize,
    per_homset: usize,
) -> Vec<PolyMap> {
    let p = c.p;
    let mut out = Vec::new();
    for n in 0..=max_arity {
        for m in 0..=max_arity {
            for _ in 0..per_homset {
                let body = random_body(rng, p, n, m);
                let d = random_domain(rng, p, n, 0.6);
                out.push(PolyMap::total(body.clone()));
                out.push(PolyMap::on(d.clone(), body.clone()));
                let other = random_body(rng, p, n, m);
                let rest = Domain::full(p, n)
                    .points()
                    .into_iter()
                    .filter(|x| !d.contains(x))
                    .collect::<Vec<_>>();
                let rest = Domain::from_points(p, n, &rest);
                out.push(PolyMap::from_pieces(
                    p,
                    n,
                    m,
                    vec![(d.clone(), body.clone()), (rest, other)],
                ));
                if n > 0 && m > 0 {
                    let mut bumped = body.clone();
                    bumped.comps[0] = bumped.comps[0].add(&frobenius_defect(p, n));
                    out.push(PolyMap::on(d, bumped));
                }
            }
        }
    }
    out
}

/// Total and partial maps between positive arities, for naturality checks.
pub fn naturality_sample(
    rng: &mut impl Rng,
    c: &PolyCat,
    arities: &[usize],
    per_homset: usize,
) -> Vec<PolyMap> {
    let mut out = Vec::new();
    for &n in arities {
        for &m in arities {
            for k in 0..per_homset {
                let body = random_body(rng, c.p, n, m);
                if k % 2 == 0 {
                    out.push(PolyMap::total(body));
                } else {
                    out.push(PolyMap::on(random_domain(rng, c.p, n, 0.5), body));
                }
            }
            // One linear map per hom-set.
            let lin = PolyMor::new(
                c.p,
                n,
                (0..m)
                    .map(|_| {
                        (0..n).fold(Poly::zero(c.p, n), |acc, i| {
                            acc.add(&Poly::var(c.p, n, i).scale(rng.gen_range(0..c.p)))
                        })
                    })
                    .collect(),
            );
            out.push(PolyMap::total(lin));
        }
    }
    out
}

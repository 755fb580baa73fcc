use super::group::{all_points, sample_points};
use crate::category::RestrictionCategory;
use crate::poly::{decode, PolyCat, PolyMap};
use crate::report::{Counterexample, LawReport, Regime};
use rayon::prelude::*;

/// How pointwise comparisons pick their points: every point when the carrier
/// has at most `exhaustive_limit` points, otherwise `samples` seeded draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointPlan {
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for PointPlan {
    fn default() -> Self {
        PointPlan {
            exhaustive_limit: 600_000,
            samples: 100_000,
            seed: 7,
        }
    }
}

impl PointPlan {
    pub fn regime(&self, p: u32, k: usize) -> Regime {
        if self.is_exhaustive(p, k) {
            Regime::Exhaustive
        } else {
            Regime::Sampled {
                seed: self.seed,
                drawn: self.samples as u64,
            }
        }
    }

    fn is_exhaustive(&self, p: u32, k: usize) -> bool {
        (p as u64)
            .checked_pow(k as u32)
            .is_some_and(|t| t <= self.exhaustive_limit)
    }

    /// Run `case` on the planned points of `𝔽_p^k`, in parallel.
    pub fn run<F>(&self, p: u32, k: usize, case: F) -> Vec<Option<Counterexample>>
    where
        F: Fn(&[u32]) -> Option<Counterexample> + Sync,
    {
        if self.is_exhaustive(p, k) {
            let total = (p as usize).pow(k as u32);
            (0..total)
                .into_par_iter()
                .map(|i| case(&decode(p, k, i)))
                .collect()
        } else {
            sample_points(p, k, self.samples, self.seed)
                .par_iter()
                .map(|x| case(x))
                .collect()
        }
    }
}

/// A law decided twice: once by jet equality of the composites, once by
/// evaluating both sides on the planned points.
pub fn law(c: &PolyCat, name: &str, lhs: &PolyMap, rhs: &PolyMap, plan: &PointPlan) -> LawReport {
    let k = lhs.src;
    let mut r = LawReport::new(name, plan.regime(c.p, k));
    r.check(c.mor_eq(lhs, rhs), || {
        Counterexample::new(vec!["jet equality".into()], c.show(lhs), c.show(rhs))
    });
    r.absorb(plan.run(c.p, k, |x| {
        let (a, b) = (lhs.eval(x), rhs.eval(x));
        (a != b).then(|| {
            Counterexample::new(vec![format!("{x:?}")], format!("{a:?}"), format!("{b:?}"))
        })
    }));
    r.note("the first case is symbolic; the rest are points");
    r
}

/// Whether `f` is a bijection of `𝔽_p^k` with inverse `g`, by enumeration.
pub fn mutually_inverse(c: &PolyCat, name: &str, f: &PolyMap, g: &PolyMap) -> LawReport {
    let k = f.src;
    let mut r = LawReport::new(name, Regime::Exhaustive);
    let outcomes: Vec<_> = all_points(c.p, k)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|x| {
            let there = f.eval(x).and_then(|y| g.eval(&y));
            let back = g.eval(x).and_then(|y| f.eval(&y));
            (there.as_deref() != Some(x) || back.as_deref() != Some(x)).then(|| {
                Counterexample::new(
                    vec![format!("{x:?}")],
                    format!("{there:?} / {back:?}"),
                    format!("{x:?}"),
                )
            })
        })
        .collect();
    r.absorb(outcomes);
    r
}

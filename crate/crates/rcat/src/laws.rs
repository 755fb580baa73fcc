//! Generic law-checker suites. Every check reports counterexamples instead of
//! aborting; only model errors (a required composite rejected) propagate.

use crate::category::{
    compatible, join, leq, parallel, JoinRestrictionCategory, RestrictionCategory,
};
use crate::error::{Error, Result};
use crate::report::{Counterexample, LawReport, Regime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LawConfig {
    /// Objects up to this many points are checked over every tuple of the sample.
    pub size_bound: usize,
    /// Tuples drawn per law in the sampled regime, and the cap on any one enumeration.
    pub max_cases: usize,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            size_bound: 64,
            max_cases: 200_000,
            seed: 0,
        }
    }
}

/// Distinct objects of a sample and, per morphism, the class of its domain and codomain.
struct Classes {
    dom: Vec<usize>,
    cod: Vec<usize>,
    max_size: usize,
}

fn classify<C: RestrictionCategory + ?Sized>(c: &C, sample: &[C::Mor]) -> Classes {
    let mut objs: Vec<C::Obj> = Vec::new();
    let mut index = |o: C::Obj| match objs.iter().position(|x| *x == o) {
        Some(i) => i,
        None => {
            objs.push(o);
            objs.len() - 1
        }
    };
    let mut dom = Vec::with_capacity(sample.len());
    let mut cod = Vec::with_capacity(sample.len());
    for f in sample {
        dom.push(index(c.dom(f)));
        cod.push(index(c.cod(f)));
    }
    let max_size = objs.iter().map(|o| c.obj_size(o)).max().unwrap_or(0);
    Classes { dom, cod, max_size }
}

/// Pick the tuples to evaluate: all of them in the exhaustive regime, otherwise
/// a seeded draw of `max_cases`.
fn select<T: Clone>(all: Vec<T>, exhaustive: bool, cfg: &LawConfig, salt: u64) -> (Vec<T>, Regime) {
    if (exhaustive && all.len() <= cfg.max_cases.max(1) * 16) || all.len() <= cfg.max_cases {
        return (all, Regime::Exhaustive);
    }
    let seed = cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = (0..cfg.max_cases)
        .map(|_| all[rng.gen_range(0..all.len())].clone())
        .collect();
    (
        picked,
        Regime::Sampled {
            seed,
            drawn: cfg.max_cases as u64,
        },
    )
}

fn run<T, F>(law: &str, tuples: Vec<T>, regime: Regime, eval: F) -> Result<LawReport>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Option<Counterexample>> + Sync,
{
    let outcomes: Vec<Option<Counterexample>> =
        tuples.par_iter().map(&eval).collect::<Result<Vec<_>>>()?;
    let mut report = LawReport::new(law, regime);
    report.absorb(outcomes);
    Ok(report)
}

fn eq_or<C: RestrictionCategory + ?Sized>(
    c: &C,
    names: &[&C::Mor],
    lhs: &C::Mor,
    rhs: &C::Mor,
) -> Option<Counterexample> {
    if c.mor_eq(lhs, rhs) {
        None
    } else {
        Some(Counterexample::new(
            names.iter().map(|m| c.show(m)).collect(),
            c.show(lhs),
            c.show(rhs),
        ))
    }
}

fn pairs_where(n: usize, pred: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if pred(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// R.1–R.4 and the derived lemma items, one report per law.
pub fn check_restriction_laws<C: RestrictionCategory + ?Sized>(
    c: &C,
    sample: &[C::Mor],
    cfg: &LawConfig,
) -> Result<Vec<LawReport>> {
    let cl = classify(c, sample);
    let exhaustive = cl.max_size <= cfg.size_bound;
    let n = sample.len();
    let singles: Vec<usize> = (0..n).collect();
    let same_dom = pairs_where(n, |i, j| cl.dom[i] == cl.dom[j]);
    let composable = pairs_where(n, |i, j| cl.cod[i] == cl.dom[j]);
    let par = pairs_where(n, |i, j| cl.dom[i] == cl.dom[j] && cl.cod[i] == cl.cod[j]);
    let bar = |f: &C::Mor| c.restrict(f);
    let s = sample;
    let mut out = Vec::new();

    let (t, r) = select(singles.clone(), exhaustive, cfg, 1);
    out.push(run("R.1 bar(f) f = f", t, r, |&i| {
        let f = &s[i];
        Ok(eq_or(c, &[f], &c.compose(&bar(f), f)?, f))
    })?);

    let (t, r) = select(same_dom.clone(), exhaustive, cfg, 2);
    out.push(run(
        "R.2 bar(g) bar(f) = bar(f) bar(g)",
        t,
        r,
        |&(i, j)| {
            let (f, g) = (&s[i], &s[j]);
            let lhs = c.compose(&bar(g), &bar(f))?;
            let rhs = c.compose(&bar(f), &bar(g))?;
            Ok(eq_or(c, &[f, g], &lhs, &rhs))
        },
    )?);

    let (t, r) = select(same_dom.clone(), exhaustive, cfg, 3);
    out.push(run(
        "R.3 bar(bar(g) f) = bar(g) bar(f)",
        t,
        r,
        |&(i, j)| {
            let (f, g) = (&s[i], &s[j]);
            let lhs = bar(&c.compose(&bar(g), f)?);
            let rhs = c.compose(&bar(g), &bar(f))?;
            Ok(eq_or(c, &[f, g], &lhs, &rhs))
        },
    )?);

    let (t, r) = select(composable.clone(), exhaustive, cfg, 4);
    out.push(run("R.4 f bar(h) = bar(f h) f", t, r, |&(i, j)| {
        let (f, h) = (&s[i], &s[j]);
        let lhs = c.compose(f, &bar(h))?;
        let rhs = c.compose(&bar(&c.compose(f, h)?), f)?;
        Ok(eq_or(c, &[f, h], &lhs, &rhs))
    })?);

    let (t, r) = select(singles.clone(), exhaustive, cfg, 5);
    out.push(run("lemma: bar(f) bar(f) = bar(f)", t, r, |&i| {
        let f = &s[i];
        Ok(eq_or(c, &[f], &c.compose(&bar(f), &bar(f))?, &bar(f)))
    })?);

    let (t, r) = select(singles, exhaustive, cfg, 6);
    out.push(run("lemma: bar(bar(f)) = bar(f)", t, r, |&i| {
        let f = &s[i];
        Ok(eq_or(c, &[f], &bar(&bar(f)), &bar(f)))
    })?);

    let (t, r) = select(composable, exhaustive, cfg, 7);
    out.push(run("lemma: bar(f bar(g)) = bar(f g)", t, r, |&(i, j)| {
        let (f, g) = (&s[i], &s[j]);
        let lhs = bar(&c.compose(f, &bar(g))?);
        let rhs = bar(&c.compose(f, g)?);
        Ok(eq_or(c, &[f, g], &lhs, &rhs))
    })?);

    let (t, r) = select(same_dom, exhaustive, cfg, 8);
    out.push(run(
        "lemma: bar(f) compatible with bar(g)",
        t,
        r,
        |&(i, j)| {
            let (f, g) = (&s[i], &s[j]);
            let ok = compatible(c, &bar(f), &bar(g))?;
            Ok((!ok).then(|| {
                Counterexample::new(vec![c.show(f), c.show(g)], "incompatible", "compatible")
            }))
        },
    )?);

    let (t, r) = select(par, exhaustive, cfg, 9);
    out.push(run(
        "lemma: f <= g implies f compatible with g",
        t,
        r,
        |&(i, j)| {
            let (f, g) = (&s[i], &s[j]);
            let ok = !leq(c, f, g)? || compatible(c, f, g)?;
            Ok((!ok).then(|| {
                Counterexample::new(
                    vec![c.show(f), c.show(g)],
                    "f <= g but incompatible",
                    "compatible",
                )
            }))
        },
    )?);
    Ok(out)
}

/// Reflexivity, antisymmetry and transitivity of `<=` over the sample.
pub fn check_order_laws<C: RestrictionCategory + ?Sized>(
    c: &C,
    sample: &[C::Mor],
    cfg: &LawConfig,
) -> Result<Vec<LawReport>> {
    let cl = classify(c, sample);
    let exhaustive = cl.max_size <= cfg.size_bound;
    let n = sample.len();
    let s = sample;
    let par = |i: usize, j: usize| cl.dom[i] == cl.dom[j] && cl.cod[i] == cl.cod[j];
    let mut out = Vec::new();

    let (t, r) = select((0..n).collect::<Vec<_>>(), exhaustive, cfg, 11);
    out.push(run("order: reflexive", t, r, |&i| {
        let ok = leq(c, &s[i], &s[i])?;
        Ok((!ok).then(|| Counterexample::new(vec![c.show(&s[i])], "f <= f fails", "holds")))
    })?);

    let (t, r) = select(pairs_where(n, par), exhaustive, cfg, 12);
    out.push(run("order: antisymmetric", t, r, |&(i, j)| {
        let (f, g) = (&s[i], &s[j]);
        let ok = !(leq(c, f, g)? && leq(c, g, f)?) || c.mor_eq(f, g);
        Ok((!ok).then(|| Counterexample::new(vec![c.show(f), c.show(g)], "f <= g <= f", "f != g")))
    })?);

    let leq_table: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| par(i, j) && leq(c, &s[i], &s[j]).unwrap_or(false))
                .collect()
        })
        .collect();
    let mut chains = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq_table[i][j] {
                continue;
            }
            for k in 0..n {
                if j != k && leq_table[j][k] {
                    chains.push((i, j, k));
                }
            }
        }
    }
    let (t, r) = select(chains, exhaustive, cfg, 13);
    out.push(run("order: transitive", t, r, |&(i, j, k)| {
        let ok = leq(c, &s[i], &s[k])?;
        Ok((!ok).then(|| {
            Counterexample::new(
                vec![c.show(&s[i]), c.show(&s[j]), c.show(&s[k])],
                "f <= g <= h but not f <= h",
                "f <= h",
            )
        }))
    })?);
    Ok(out)
}

/// The three join laws plus the semilattice invariants, over compatible
/// pairs and triples drawn from the sample.
pub fn check_join_laws<C: JoinRestrictionCategory + ?Sized>(
    c: &C,
    sample: &[C::Mor],
    cfg: &LawConfig,
) -> Result<Vec<LawReport>> {
    let cl = classify(c, sample);
    let exhaustive = cl.max_size <= cfg.size_bound;
    let n = sample.len();
    let s = sample;
    let par = |i: usize, j: usize| cl.dom[i] == cl.dom[j] && cl.cod[i] == cl.cod[j];
    let compat: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| par(i, j) && compatible(c, &s[i], &s[j]).unwrap_or(false))
                .collect()
        })
        .collect();
    let families: Vec<(usize, usize)> = pairs_where(n, |i, j| i <= j && compat[i][j]);
    let join2 = |i: usize, j: usize| -> Result<C::Mor> {
        let (a, b) = (c.dom(&s[i]), c.cod(&s[i]));
        join(c, &a, &b, &[s[i].clone(), s[j].clone()])
    };
    let mut out = Vec::new();

    let (t, r) = select(families.clone(), exhaustive, cfg, 21);
    out.push(run("join: bar(join s) = join bar(s)", t, r, |&(i, j)| {
        let a = c.dom(&s[i]);
        let lhs = c.restrict(&join2(i, j)?);
        let rhs = join(c, &a, &a, &[c.restrict(&s[i]), c.restrict(&s[j])])?;
        Ok(eq_or(c, &[&s[i], &s[j]], &lhs, &rhs))
    })?);

    let mut distrib = Vec::new();
    for &(i, j) in &families {
        for g in 0..n {
            if cl.cod[g] == cl.dom[i] {
                distrib.push((i, j, g));
            }
        }
    }
    let (t, r) = select(distrib, exhaustive, cfg, 22);
    out.push(run("join: g (join s) = join (g s)", t, r, |&(i, j, g)| {
        let gg = &s[g];
        let lhs = c.compose(gg, &join2(i, j)?)?;
        let (a, b) = (c.dom(gg), c.cod(&s[i]));
        let rhs = join(c, &a, &b, &[c.compose(gg, &s[i])?, c.compose(gg, &s[j])?])?;
        Ok(eq_or(c, &[gg, &s[i], &s[j]], &lhs, &rhs))
    })?);

    let mut sup = Vec::new();
    for &(i, j) in &families {
        for h in 0..n {
            if par(i, h) {
                sup.push((i, j, h));
            }
        }
    }
    let (t, r) = select(sup, exhaustive, cfg, 23);
    out.push(run("join: supremum", t, r, |&(i, j, h)| {
        let jn = join2(i, j)?;
        let upper = leq(c, &s[i], &jn)? && leq(c, &s[j], &jn)?;
        let least = !(leq(c, &s[i], &s[h])? && leq(c, &s[j], &s[h])?) || leq(c, &jn, &s[h])?;
        Ok((!(upper && least)).then(|| {
            Counterexample::new(
                vec![c.show(&s[i]), c.show(&s[j]), c.show(&s[h])],
                format!("upper bound: {upper}, least: {least}"),
                "both",
            )
        }))
    })?);

    let (t, r) = select((0..n).collect::<Vec<_>>(), exhaustive, cfg, 24);
    out.push(run("join: singleton and idempotence", t, r, |&i| {
        let f = &s[i];
        let (a, b) = (c.dom(f), c.cod(f));
        let one = join(c, &a, &b, std::slice::from_ref(f))?;
        let two = join(c, &a, &b, &[f.clone(), f.clone()])?;
        Ok(eq_or(c, &[f], &one, f).or_else(|| eq_or(c, &[f], &two, f)))
    })?);

    let (t, r) = select(families.clone(), exhaustive, cfg, 25);
    out.push(run("join: commutative", t, r, |&(i, j)| {
        let lhs = join2(i, j)?;
        let rhs = join2(j, i)?;
        Ok(eq_or(c, &[&s[i], &s[j]], &lhs, &rhs))
    })?);

    let mut triples = Vec::new();
    for &(i, j) in &families {
        for k in j..n {
            if compat[i][k] && compat[j][k] {
                triples.push((i, j, k));
            }
        }
    }
    let (t, r) = select(triples, exhaustive, cfg, 26);
    out.push(run("join: associative", t, r, |&(i, j, k)| {
        let (a, b) = (c.dom(&s[i]), c.cod(&s[i]));
        let ij = join2(i, j)?;
        let jk = join2(j, k)?;
        let lhs = join(c, &a, &b, &[ij, s[k].clone()])?;
        let rhs = join(c, &a, &b, &[s[i].clone(), jk])?;
        Ok(eq_or(c, &[&s[i], &s[j], &s[k]], &lhs, &rhs))
    })?);

    let (t, r) = select((0..n).collect::<Vec<_>>(), exhaustive, cfg, 27);
    out.push(run("join: empty join is the least element", t, r, |&i| {
        let f = &s[i];
        let (a, b) = (c.dom(f), c.cod(f));
        let bottom = join(c, &a, &b, &[])?;
        let ok = leq(c, &bottom, f)? && c.mor_eq(&c.restrict(&bottom), &c.nowhere(&a, &a));
        Ok((!ok)
            .then(|| Counterexample::new(vec![c.show(f)], c.show(&bottom), "below every morphism")))
    })?);

    let incompatible = pairs_where(n, |i, j| i < j && par(i, j) && !compat[i][j]);
    let (t, r) = select(incompatible, exhaustive, cfg, 28);
    out.push(run(
        "join: incompatible families are rejected",
        t,
        r,
        |&(i, j)| {
            let (a, b) = (c.dom(&s[i]), c.cod(&s[i]));
            Ok(match join(c, &a, &b, &[s[i].clone(), s[j].clone()]) {
                Err(Error::IncompatibleFamily {
                    first: 0,
                    second: 1,
                }) => None,
                other => Some(Counterexample::new(
                    vec![c.show(&s[i]), c.show(&s[j])],
                    format!("{other:?}"),
                    "INCOMPATIBLE_FAMILY (0, 1)",
                )),
            })
        },
    )?);
    Ok(out)
}

/// `(f*)* = f` and the defining equations, for every sample member that has a partial inverse.
pub fn check_partial_inverse_laws<C: RestrictionCategory + ?Sized>(
    c: &C,
    sample: &[C::Mor],
) -> Result<LawReport> {
    let mut report = LawReport::new(
        "partial inverse: f f* = bar(f), f* f = bar(f*), (f*)* = f",
        Regime::Exhaustive,
    );
    let mut found = 0u64;
    for f in sample {
        let Some(g) = crate::category::partial_inverse(c, f) else {
            continue;
        };
        found += 1;
        let ok_eqs = c.mor_eq(&c.compose(f, &g)?, &c.restrict(f))
            && c.mor_eq(&c.compose(&g, f)?, &c.restrict(&g));
        let back = crate::category::partial_inverse(c, &g);
        let involutive = back.as_ref().is_some_and(|h| c.mor_eq(h, f));
        let unique = c.count_partial_inverses(f).is_none_or(|k| k == 1);
        report.check(ok_eqs && involutive && unique, || {
            Counterexample::new(
                vec![c.show(f)],
                format!("equations {ok_eqs}, involutive {involutive}, unique {unique}"),
                "all true",
            )
        });
    }
    report.note(format!(
        "{found} of {} sample morphisms are partial isomorphisms",
        sample.len()
    ));
    Ok(report)
}

/// A category with every restriction set to the identity.
pub struct Trivial<'a, C: ?Sized>(pub &'a C);

impl<C: RestrictionCategory + ?Sized> RestrictionCategory for Trivial<'_, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn name(&self) -> &str {
        "trivial restriction"
    }
    fn dom(&self, f: &C::Mor) -> C::Obj {
        self.0.dom(f)
    }
    fn cod(&self, f: &C::Mor) -> C::Obj {
        self.0.cod(f)
    }
    fn identity(&self, a: &C::Obj) -> C::Mor {
        self.0.identity(a)
    }
    fn compose(&self, f: &C::Mor, g: &C::Mor) -> Result<C::Mor> {
        self.0.compose(f, g)
    }
    fn restrict(&self, f: &C::Mor) -> C::Mor {
        self.0.identity(&self.0.dom(f))
    }
    fn mor_eq(&self, f: &C::Mor, g: &C::Mor) -> bool {
        self.0.mor_eq(f, g)
    }
    fn obj_size(&self, a: &C::Obj) -> usize {
        self.0.obj_size(a)
    }
    fn show(&self, f: &C::Mor) -> String {
        self.0.show(f)
    }
}

/// Total morphisms form a category, and the trivial restriction on them is lawful.
pub fn tot_triv_smoke<C: RestrictionCategory + ?Sized>(
    c: &C,
    sample: &[C::Mor],
    cfg: &LawConfig,
) -> Result<Vec<LawReport>> {
    let totals: Vec<C::Mor> = sample.iter().filter(|f| c.is_total(f)).cloned().collect();
    let mut ids = LawReport::new("Tot: identities are total", Regime::Exhaustive);
    for f in sample {
        let id = c.identity(&c.dom(f));
        ids.check(c.is_total(&id), || {
            Counterexample::new(vec![c.show(&id)], "partial identity", "total")
        });
    }
    let mut closed = LawReport::new("Tot: totals closed under composition", Regime::Exhaustive);
    for f in &totals {
        for g in &totals {
            if c.cod(f) != c.dom(g) {
                continue;
            }
            let fg = c.compose(f, g)?;
            closed.check(c.is_total(&fg), || {
                Counterexample::new(vec![c.show(f), c.show(g)], c.show(&fg), "total composite")
            });
        }
    }
    closed.note(format!(
        "enumerated {} composable pairs of {} total sample morphisms; no strictly partial composite exists among them iff PASS",
        closed.cases,
        totals.len()
    ));
    let mut out = vec![ids, closed];
    for mut r in check_restriction_laws(&Trivial(c), &totals, cfg)? {
        r.law = format!("Triv: {}", r.law);
        out.push(r);
    }
    Ok(out)
}

/// The cone of `restriction_pullback` commutes and has total projections.
pub fn check_pullback_cone<C: crate::category::CartesianRestrictionCategory + ?Sized>(
    c: &C,
    f: &C::Mor,
    g: &C::Mor,
) -> Result<LawReport> {
    let mut report = LawReport::new("restriction pullback cone", Regime::Exhaustive);
    match c.restriction_pullback(f, g) {
        None => report.note("model cannot represent the pullback carrier (NONE)"),
        Some((_, pa, pc)) => {
            let lhs = c.compose(&pa, f)?;
            let rhs = c.compose(&pc, g)?;
            report.case(eq_or(c, &[f, g], &lhs, &rhs));
            report.check(c.is_total(&pa) && c.is_total(&pc), || {
                Counterexample::new(
                    vec![c.show(&pa), c.show(&pc)],
                    "partial projection",
                    "total projections",
                )
            });
        }
    }
    Ok(report)
}

/// `parallel` re-exported for checkers in other modules.
pub fn are_parallel<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor, g: &C::Mor) -> bool {
    parallel(c, f, g)
}

pub(crate) fn counter<C: RestrictionCategory + ?Sized>(
    c: &C,
    names: &[&C::Mor],
    lhs: &C::Mor,
    rhs: &C::Mor,
) -> Option<Counterexample> {
    eq_or(c, names, lhs, rhs)
}

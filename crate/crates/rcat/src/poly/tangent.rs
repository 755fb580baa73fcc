//! Tangent structure on the polynomial model. Coordinates on `T(M)` are
//! `(x, v)`; on `T²M` they are `(x, v, a, b)` where `a = dx`, `b = dv`.

use super::linalg;
use super::map::{PolyCat, PolyMap};
use super::ring::Poly;
use crate::category::{CartesianRestrictionCategory, RestrictionCategory};
use crate::error::{Error, Result};
use crate::laws::counter;
use crate::report::{Counterexample, LawReport, Regime};
use rayon::prelude::*;

impl PolyCat {
    fn range(a: usize, b: usize) -> Vec<usize> {
        (a..b).collect()
    }

    /// `p : TM -> M`.
    pub fn proj(&self, n: usize) -> PolyMap {
        self.select(2 * n, &Self::range(0, n))
    }

    /// `0 : M -> TM`.
    pub fn zero(&self, n: usize) -> PolyMap {
        let mut comps: Vec<Poly> = (0..n).map(|i| self.var(n, i)).collect();
        comps.extend((0..n).map(|_| Poly::zero(self.p, n)));
        self.total(n, comps)
    }

    /// `+ : T_2 M -> TM`, `(x, v1, v2) ↦ (x, v1 + v2)`.
    pub fn plus(&self, n: usize) -> PolyMap {
        let mut comps: Vec<Poly> = (0..n).map(|i| self.var(3 * n, i)).collect();
        comps.extend((0..n).map(|i| self.var(3 * n, n + i).add(&self.var(3 * n, 2 * n + i))));
        self.total(3 * n, comps)
    }

    /// `ℓ : TM -> T²M`, `(x, v) ↦ (x, 0, 0, v)`.
    pub fn lift(&self, n: usize) -> PolyMap {
        let z = Poly::zero(self.p, 2 * n);
        let mut comps: Vec<Poly> = (0..n).map(|i| self.var(2 * n, i)).collect();
        comps.extend(std::iter::repeat_n(z, 2 * n));
        comps.extend((0..n).map(|i| self.var(2 * n, n + i)));
        self.total(2 * n, comps)
    }

    /// `c : T²M -> T²M`, `(x, v, a, b) ↦ (x, a, v, b)`.
    pub fn flip(&self, n: usize) -> PolyMap {
        let mut idx = Self::range(0, n);
        idx.extend(2 * n..3 * n);
        idx.extend(n..2 * n);
        idx.extend(3 * n..4 * n);
        self.select(4 * n, &idx)
    }

    /// Projection `T_k M -> TM` onto the `i`-th vector (0-based).
    pub fn tk_pi(&self, n: usize, k: usize, i: usize) -> PolyMap {
        let mut idx = Self::range(0, n);
        idx.extend((1 + i) * n..(2 + i) * n);
        self.select((k + 1) * n, &idx)
    }

    /// `⟨f_1, …, f_k⟩ : X -> T_k M` for maps into `TM` over a common base.
    pub fn tk_pair(&self, n: usize, maps: &[&PolyMap]) -> Result<PolyMap> {
        let first = maps.first().ok_or_else(|| Error::shape("empty family"))?;
        let mut acc = self.compose(first, &self.proj(n))?;
        for f in maps {
            if f.tgt != 2 * n {
                return Err(Error::shape("tk_pair components must land in TM"));
            }
            acc = self.pair(
                &acc,
                &self.compose(f, &self.select(2 * n, &Self::range(n, 2 * n)))?,
            )?;
        }
        Ok(acc)
    }

    /// Mediating map into `T(T_2 M)` for two maps into `T²M` agreeing after `T(p)`.
    pub fn tp_pair(&self, n: usize, f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
        let part = |h: &PolyMap, a: usize| {
            self.compose(h, &self.select(4 * n, &Self::range(a * n, (a + 1) * n)))
        };
        let blocks = [
            part(f, 0)?,
            part(f, 1)?,
            part(g, 1)?,
            part(f, 2)?,
            part(f, 3)?,
            part(g, 3)?,
        ];
        let mut acc = blocks[0].clone();
        for b in &blocks[1..] {
            acc = self.pair(&acc, b)?;
        }
        Ok(acc)
    }

    /// `T_k(f)` for `f : n -> m`.
    pub fn tk_map(&self, f: &PolyMap, k: usize) -> Result<PolyMap> {
        let (n, m) = (f.src, f.tgt);
        let tf = f.tangent();
        let legs: Vec<PolyMap> = (0..k)
            .map(|i| self.compose(&self.tk_pi(n, k, i), &tf))
            .collect::<Result<_>>()?;
        self.tk_pair(m, &legs.iter().collect::<Vec<_>>())
    }

    /// `T(A × B) -> T(A) × T(B)`: `(a, b, da, db) ↦ (a, da, b, db)`.
    pub fn shuffle(&self, a: usize, b: usize) -> PolyMap {
        let mut idx = Self::range(0, a);
        idx.extend(a + b..2 * a + b);
        idx.extend(a..a + b);
        idx.extend(2 * a + b..2 * a + 2 * b);
        self.select(2 * (a + b), &idx)
    }

    /// Inverse of `shuffle(a, b)`.
    pub fn unshuffle(&self, a: usize, b: usize) -> PolyMap {
        let mut idx = Self::range(0, a);
        idx.extend(2 * a..2 * a + b);
        idx.extend(a..2 * a);
        idx.extend(2 * a + b..2 * a + 2 * b);
        self.select(2 * (a + b), &idx)
    }
}

fn eq_case(
    c: &PolyCat,
    names: &[&PolyMap],
    lhs: &PolyMap,
    rhs: &PolyMap,
) -> Option<Counterexample> {
    counter(c, names, lhs, rhs)
}

/// Check that a cone with total, linear-cospan legs is a wide pullback of
/// finite sets, by three certificates: the cone commutes, the pairing of the
/// legs has a left inverse (so it is injective), and the carrier has as many
/// points as the set-theoretic pullback (counted by rank over 𝔽_p).
pub fn certify_pullback(
    c: &PolyCat,
    law: &str,
    legs: &[PolyMap],
    cospan: &[PolyMap],
    left_inverse: &PolyMap,
) -> Result<LawReport> {
    let mut r = LawReport::new(law, Regime::Symbolic);
    let base = c.compose(&legs[0], &cospan[0])?;
    for (leg, cs) in legs.iter().zip(cospan).skip(1) {
        let other = c.compose(leg, cs)?;
        r.case(eq_case(c, &[leg, cs], &other, &base));
    }
    let total = legs.iter().all(PolyMap::is_total);
    r.check(total, || {
        Counterexample::new(vec![], "partial leg", "total legs")
    });
    let mut paired = legs[0].clone();
    for leg in &legs[1..] {
        paired = c.pair(&paired, leg)?;
    }
    let round = c.compose(&paired, left_inverse)?;
    r.case(eq_case(
        c,
        &[&paired, left_inverse],
        &round,
        &c.identity(&legs[0].src),
    ));

    // Set-theoretic pullback: tuples (y_i) with y_i g_i = y_0 g_0.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let dims: Vec<usize> = cospan.iter().map(|g| g.src).collect();
    let cols: usize = dims.iter().sum();
    let offs: Vec<usize> = dims
        .iter()
        .scan(0, |s, d| {
            let o = *s;
            *s += d;
            Some(o)
        })
        .collect();
    for (i, g) in cospan.iter().enumerate().skip(1) {
        let (b0, bi) = (g_body(&cospan[0])?, g_body(g)?);
        for k in 0..g.tgt {
            let mut row = vec![0u32; cols];
            for v in 0..dims[i] {
                row[offs[i] + v] = bi.comps[k].linear_coeff(v);
            }
            for v in 0..dims[0] {
                row[v] = (row[v] + c.p - b0.comps[k].linear_coeff(v)) % c.p;
            }
            rows.push(row);
            rhs.push((b0.comps[k].constant_term() + c.p - bi.comps[k].constant_term()) % c.p);
        }
    }
    let exp = if rows.is_empty() {
        Some(cols)
    } else {
        linalg::solution_exponent(&rows, &rhs, c.p, cols)
    };
    let carrier = legs[0].src;
    r.check(exp == Some(carrier), || {
        Counterexample::new(
            vec![],
            format!("|X| = {}^{carrier}", c.p),
            format!("|pullback| = {}^{exp:?}", c.p),
        )
    });
    r.note(format!(
        "cardinality certificate: {}^{carrier} points on both sides",
        c.p
    ));
    Ok(r)
}

fn g_body(g: &PolyMap) -> Result<&super::ring::PolyMor> {
    match g.body() {
        Some(b) if b.is_affine() && g.is_total() => Ok(b),
        _ => Err(Error::model(
            "pullback certificate needs total affine cospan maps",
        )),
    }
}

/// The tangent-structure axioms for base arities `arities`, with naturality
/// checked against `sample` (maps between those arities).
pub fn check_tangent_axioms(
    c: &PolyCat,
    arities: &[usize],
    sample: &[PolyMap],
) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let id = |n: usize| c.identity(&n);
    let cmp = |f: &PolyMap, g: &PolyMap| c.compose(f, g);

    let mut push_eq =
        |law: &str, cases: Vec<Result<(Vec<PolyMap>, PolyMap, PolyMap)>>| -> Result<()> {
            let mut r = LawReport::new(law, Regime::Symbolic);
            let evaluated: Vec<(Vec<PolyMap>, PolyMap, PolyMap)> =
                cases.into_iter().collect::<Result<_>>()?;
            let outcomes: Vec<_> = evaluated
                .par_iter()
                .map(|(names, l, rr)| eq_case(c, &names.iter().collect::<Vec<_>>(), l, rr))
                .collect();
            r.absorb(outcomes);
            out.push(r);
            Ok(())
        };

    // Naturality.
    let nat = |f: &PolyMap| -> Result<[(Vec<PolyMap>, PolyMap, PolyMap); 5]> {
        let (n, m) = (f.src, f.tgt);
        let tf = f.tangent();
        let ttf = tf.tangent();
        Ok([
            (vec![f.clone()], cmp(&tf, &c.proj(m))?, cmp(&c.proj(n), f)?),
            (vec![f.clone()], cmp(f, &c.zero(m))?, cmp(&c.zero(n), &tf)?),
            (
                vec![f.clone()],
                cmp(&c.tk_map(f, 2)?, &c.plus(m))?,
                cmp(&c.plus(n), &tf)?,
            ),
            (
                vec![f.clone()],
                cmp(&tf, &c.lift(m))?,
                cmp(&c.lift(n), &ttf)?,
            ),
            (
                vec![f.clone()],
                cmp(&ttf, &c.flip(m))?,
                cmp(&c.flip(n), &ttf)?,
            ),
        ])
    };
    let nats: Vec<[_; 5]> = sample.par_iter().map(nat).collect::<Result<_>>()?;
    for (k, name) in ["p", "0", "+", "ℓ", "c"].iter().enumerate() {
        push_eq(
            &format!("naturality of {name}"),
            nats.iter().map(|row| Ok(row[k].clone())).collect(),
        )?;
    }

    let each = |f: &dyn Fn(usize) -> Result<(PolyMap, PolyMap)>| -> Vec<Result<(Vec<PolyMap>, PolyMap, PolyMap)>> {
        arities.iter().map(|&n| f(n).map(|(l, r)| (vec![], l, r))).collect()
    };

    // Additive bundle laws.
    push_eq(
        "bundle: + p = π0 p",
        each(&|n| {
            Ok((
                cmp(&c.plus(n), &c.proj(n))?,
                cmp(&c.tk_pi(n, 2, 0), &c.proj(n))?,
            ))
        }),
    )?;
    push_eq(
        "bundle: + p = π1 p",
        each(&|n| {
            Ok((
                cmp(&c.plus(n), &c.proj(n))?,
                cmp(&c.tk_pi(n, 2, 1), &c.proj(n))?,
            ))
        }),
    )?;
    push_eq(
        "bundle: 0 p = 1",
        each(&|n| Ok((cmp(&c.zero(n), &c.proj(n))?, id(n)))),
    )?;
    push_eq(
        "bundle: + associative",
        each(&|n| {
            let pi = |i| c.tk_pi(n, 3, i);
            let s01 = cmp(&c.tk_pair(n, &[&pi(0), &pi(1)])?, &c.plus(n))?;
            let s12 = cmp(&c.tk_pair(n, &[&pi(1), &pi(2)])?, &c.plus(n))?;
            let l = cmp(&c.tk_pair(n, &[&s01, &pi(2)])?, &c.plus(n))?;
            let r = cmp(&c.tk_pair(n, &[&pi(0), &s12])?, &c.plus(n))?;
            Ok((l, r))
        }),
    )?;
    push_eq(
        "bundle: + commutative",
        each(&|n| {
            let sw = c.tk_pair(n, &[&c.tk_pi(n, 2, 1), &c.tk_pi(n, 2, 0)])?;
            Ok((cmp(&sw, &c.plus(n))?, c.plus(n)))
        }),
    )?;
    push_eq(
        "bundle: 0 is a unit for +",
        each(&|n| {
            let z = cmp(&c.proj(n), &c.zero(n))?;
            Ok((
                cmp(&c.tk_pair(n, &[&id(2 * n), &z])?, &c.plus(n))?,
                id(2 * n),
            ))
        }),
    )?;

    // (ℓ, 0) is an additive bundle morphism (p, +, 0) -> (T(p), T(+), T(0)).
    push_eq(
        "(ℓ,0): ℓ T(p) = p 0",
        each(&|n| {
            Ok((
                cmp(&c.lift(n), &c.proj(n).tangent())?,
                cmp(&c.proj(n), &c.zero(n))?,
            ))
        }),
    )?;
    push_eq(
        "(ℓ,0): ℓ preserves +",
        each(&|n| {
            let l0 = cmp(&c.tk_pi(n, 2, 0), &c.lift(n))?;
            let l1 = cmp(&c.tk_pi(n, 2, 1), &c.lift(n))?;
            let lhs = cmp(&c.tp_pair(n, &l0, &l1)?, &c.plus(n).tangent())?;
            Ok((lhs, cmp(&c.plus(n), &c.lift(n))?))
        }),
    )?;
    push_eq(
        "(ℓ,0): 0 ℓ = 0 T(0)",
        each(&|n| {
            Ok((
                cmp(&c.zero(n), &c.lift(n))?,
                cmp(&c.zero(n), &c.zero(n).tangent())?,
            ))
        }),
    )?;

    // (c, 1) is an additive bundle morphism (T(p), T(+), T(0)) -> (p_T, +_T, 0_T).
    push_eq(
        "(c,1): c p_T = T(p)",
        each(&|n| Ok((cmp(&c.flip(n), &c.proj(2 * n))?, c.proj(n).tangent()))),
    )?;
    push_eq(
        "(c,1): c preserves +",
        each(&|n| {
            let t0 = c.tk_pi(n, 2, 0).tangent();
            let t1 = c.tk_pi(n, 2, 1).tangent();
            let lhs = cmp(&c.plus(n).tangent(), &c.flip(n))?;
            let legs = [cmp(&t0, &c.flip(n))?, cmp(&t1, &c.flip(n))?];
            let rhs = cmp(&c.tk_pair(2 * n, &[&legs[0], &legs[1]])?, &c.plus(2 * n))?;
            Ok((lhs, rhs))
        }),
    )?;
    push_eq(
        "(c,1): T(0) c = 0_T",
        each(&|n| Ok((cmp(&c.zero(n).tangent(), &c.flip(n))?, c.zero(2 * n)))),
    )?;

    push_eq(
        "c c = 1",
        each(&|n| Ok((cmp(&c.flip(n), &c.flip(n))?, id(4 * n)))),
    )?;
    push_eq(
        "ℓ c = ℓ",
        each(&|n| Ok((cmp(&c.lift(n), &c.flip(n))?, c.lift(n)))),
    )?;
    push_eq(
        "coherence: ℓ ℓ_T = ℓ T(ℓ)",
        each(&|n| {
            Ok((
                cmp(&c.lift(n), &c.lift(2 * n))?,
                cmp(&c.lift(n), &c.lift(n).tangent())?,
            ))
        }),
    )?;
    push_eq(
        "coherence: T(c) c_T T(c) = c_T T(c) c_T",
        each(&|n| {
            let (tc, ct) = (c.flip(n).tangent(), c.flip(2 * n));
            Ok((cmp(&cmp(&tc, &ct)?, &tc)?, cmp(&cmp(&ct, &tc)?, &ct)?))
        }),
    )?;
    push_eq(
        "coherence: ℓ_T T(c) c_T = c T(ℓ)",
        each(&|n| {
            let lhs = cmp(&cmp(&c.lift(2 * n), &c.flip(n).tangent())?, &c.flip(2 * n))?;
            Ok((lhs, cmp(&c.flip(n), &c.lift(n).tangent())?))
        }),
    )?;

    // Cartesian structure and the linear-map specialization.
    push_eq(
        "T(A×B) ≅ T(A)×T(B): shuffle then unshuffle",
        arities
            .iter()
            .flat_map(|&a| arities.iter().map(move |&b| (a, b)))
            .map(|(a, b)| -> Result<Vec<_>> {
                Ok(vec![
                    (
                        vec![],
                        cmp(&c.shuffle(a, b), &c.unshuffle(a, b))?,
                        id(2 * (a + b)),
                    ),
                    (
                        vec![],
                        cmp(&c.unshuffle(a, b), &c.shuffle(a, b))?,
                        id(2 * (a + b)),
                    ),
                ])
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .map(Ok)
            .collect(),
    )?;
    push_eq(
        "T(π0) = shuffle π0, T(π1) = shuffle π1",
        arities
            .iter()
            .flat_map(|&a| arities.iter().map(move |&b| (a, b)))
            .map(|(a, b)| -> Result<Vec<_>> {
                Ok(vec![
                    (
                        vec![],
                        c.pi0(&a, &b).tangent(),
                        cmp(&c.shuffle(a, b), &c.pi0(&(2 * a), &(2 * b)))?,
                    ),
                    (
                        vec![],
                        c.pi1(&a, &b).tangent(),
                        cmp(&c.shuffle(a, b), &c.pi1(&(2 * a), &(2 * b)))?,
                    ),
                ])
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .map(Ok)
            .collect(),
    )?;
    push_eq(
        "linear maps: T(f) = f × f",
        sample
            .iter()
            .filter(|f| {
                f.is_total()
                    && f.body().is_some_and(|b| {
                        b.comps
                            .iter()
                            .all(|q| q.degree() <= 1 && q.constant_term() == 0)
                    })
            })
            .map(|f| {
                Ok((
                    vec![f.clone()],
                    f.tangent(),
                    crate::category::times(c, f, f)?,
                ))
            })
            .collect(),
    )?;

    // T preserves restriction.
    push_eq(
        "T(bar f) = bar(T f)",
        sample
            .iter()
            .map(|f| {
                Ok((
                    vec![f.clone()],
                    c.restrict(f).tangent(),
                    c.restrict(&f.tangent()),
                ))
            })
            .collect(),
    )?;

    // Wide pullbacks T_k M preserved by T^j, and universality of ℓ.
    for &n in arities {
        for k in 1..=2 {
            for j in 0..=2 {
                let legs: Vec<PolyMap> =
                    (0..k).map(|i| c.tk_pi(n, k, i).tangent_power(j)).collect();
                let cospan: Vec<PolyMap> = (0..k).map(|_| c.proj(n).tangent_power(j)).collect();
                let inv = block_left_inverse(c, n, k, j);
                out.push(certify_pullback(
                    c,
                    &format!("T^{j} preserves T_{k} (n = {n})"),
                    &legs,
                    &cospan,
                    &inv,
                )?);
            }
        }
        let u = universal_lift_map(c, n);
        let base = cmp(&c.tk_pi(n, 2, 0), &c.proj(n))?;
        let mut inv_idx = PolyCat::range(0, n);
        inv_idx.extend(3 * n..4 * n);
        inv_idx.extend(n..2 * n);
        let inv = c.select(5 * n, &inv_idx);
        out.push(certify_pullback(
            c,
            &format!("universality of ℓ: pullback square (n = {n})"),
            &[u, base],
            &[c.proj(n).tangent(), c.zero(n)],
            &inv,
        )?);
    }
    Ok(out)
}

/// `u : T_2 M -> T²M`, `(x, v, w) ↦ (x, w, 0, v)`, i.e. `⟨π0 ℓ, π1 0_T⟩ T(+)`.
pub fn universal_lift_map(c: &PolyCat, n: usize) -> PolyMap {
    let mut comps: Vec<Poly> = (0..n).map(|i| c.var(3 * n, i)).collect();
    comps.extend((0..n).map(|i| c.var(3 * n, 2 * n + i)));
    comps.extend((0..n).map(|_| Poly::zero(c.p, 3 * n)));
    comps.extend((0..n).map(|i| c.var(3 * n, n + i)));
    c.total(3 * n, comps)
}

/// Left inverse of the legs of `T^j(T_k M)`: block `b` takes its base from the
/// first leg and vector `i` from leg `i`.
fn block_left_inverse(c: &PolyCat, n: usize, k: usize, j: usize) -> PolyMap {
    let blocks = 1usize << j;
    let leg = blocks * 2 * n;
    let mut idx = Vec::new();
    for b in 0..blocks {
        idx.extend(b * 2 * n..b * 2 * n + n);
        for i in 0..k {
            idx.extend(i * leg + b * 2 * n + n..i * leg + b * 2 * n + 2 * n);
        }
    }
    c.select(k * leg, &idx)
}

/// The universal-lift square read as an equalizer: `f : X -> T²M` has
/// `f T(p) = f T(p) p 0` iff the `a` block of `f` vanishes.
pub fn in_lift_equalizer(c: &PolyCat, n: usize, f: &PolyMap) -> Result<bool> {
    let tp = c.proj(n).tangent();
    let lhs = c.compose(f, &tp)?;
    let rhs = c.compose(&c.compose(&lhs, &c.proj(n))?, &c.zero(n))?;
    Ok(c.mor_eq(&lhs, &rhs))
}

/// Comparisons for the join/tangent lemma. `f`-side relations use the model
/// depth `N`, `T f`-side relations depth `N - 1`: both then inspect derivatives
/// of `f` up to order `N`.
pub fn check_join_tangent_compat(c: &PolyCat, sample: &[PolyMap]) -> Result<Vec<LawReport>> {
    let lower = PolyCat {
        depth: c.depth.saturating_sub(1),
        ..*c
    };
    let n = sample.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| sample[i].src == sample[j].src && sample[i].tgt == sample[j].tgt)
        .collect();
    let rows: Vec<[Option<Counterexample>; 3]> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<_> {
            let (f, g) = (&sample[i], &sample[j]);
            let (tf, tg) = (f.tangent(), g.tangent());
            let le = crate::category::leq(c, f, g)?;
            let tle = crate::category::leq(&lower, &tf, &tg)?;
            let co = crate::category::compatible(c, f, g)?;
            let tco = crate::category::compatible(&lower, &tf, &tg)?;
            let join_case = if co {
                let a = &f.src;
                let b = &f.tgt;
                let j1 = crate::category::join(c, a, b, &[f.clone(), g.clone()])?.tangent();
                let j2 =
                    crate::category::join(&lower, &(2 * a), &(2 * b), &[tf.clone(), tg.clone()])?;
                counter(&lower, &[f, g], &j2, &j1)
            } else {
                None
            };
            let names = || vec![format!("{f:?}"), format!("{g:?}")];
            Ok([
                (le != tle).then(|| {
                    Counterexample::new(
                        names(),
                        format!("f <= g: {le}"),
                        format!("T f <= T g: {tle}"),
                    )
                }),
                (co != tco).then(|| {
                    Counterexample::new(
                        names(),
                        format!("f ⌣ g: {co}"),
                        format!("T f ⌣ T g: {tco}"),
                    )
                }),
                join_case,
            ])
        })
        .collect::<Result<_>>()?;
    let laws = [
        "f <= g iff T f <= T g",
        "f ⌣ g iff T f ⌣ T g",
        "join T(f_i) = T(join f_i)",
    ];
    let mut out: Vec<LawReport> = laws
        .iter()
        .map(|l| LawReport::new(*l, Regime::Exhaustive))
        .collect();
    for row in rows {
        for (k, o) in row.into_iter().enumerate() {
            // Join cases only count for compatible pairs.
            if k == 2 && o.is_none() {
                continue;
            }
            out[k].case(o);
        }
    }
    let compatible_pairs = pairs
        .iter()
        .filter(|&&(i, j)| crate::category::compatible(c, &sample[i], &sample[j]).unwrap_or(false))
        .count() as u64;
    out[2].cases = compatible_pairs;
    for r in &mut out {
        r.note(format!(
            "f-side depth {}, T-side depth {}",
            c.depth, lower.depth
        ));
    }
    Ok(out)
}

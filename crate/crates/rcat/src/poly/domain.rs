use super::ring::PolyMor;
use crate::error::{Error, Result};

/// Largest prefix enumerated when computing preimages.
pub const ENUMERATION_LIMIT: usize = 4_000_000;

/// A subset of 𝔽_p^n of the form `H × 𝔽_p^(n-k)` with `H ⊆ 𝔽_p^k` stored as a
/// bitmap. Tangent carriers append coordinates, so `T` acts on domains by
/// keeping `H` and widening the free tail.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    pub p: u32,
    pub arity: usize,
    pub head_arity: usize,
    /// Indexed by `Σ x_i p^i` over the first `head_arity` coordinates.
    pub head: Vec<bool>,
}

fn pow(p: u32, k: usize) -> usize {
    (p as usize).pow(k as u32)
}

/// Decode a head index into its coordinates.
pub fn decode(p: u32, k: usize, mut idx: usize) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (idx % p as usize) as u32;
            idx /= p as usize;
            d
        })
        .collect()
}

pub fn encode(p: u32, x: &[u32]) -> usize {
    x.iter()
        .rev()
        .fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

impl Domain {
    pub fn full(p: u32, arity: usize) -> Domain {
        Domain {
            p,
            arity,
            head_arity: 0,
            head: vec![true],
        }
    }

    pub fn empty(p: u32, arity: usize) -> Domain {
        Domain {
            p,
            arity,
            head_arity: 0,
            head: vec![false],
        }
    }

    pub fn from_points(p: u32, arity: usize, points: &[Vec<u32>]) -> Domain {
        let mut head = vec![false; pow(p, arity)];
        for x in points {
            head[encode(p, x)] = true;
        }
        Domain {
            p,
            arity,
            head_arity: arity,
            head,
        }
        .normalize()
    }

    /// Points whose first coordinates satisfy `pred`, with `k` coordinates inspected.
    pub fn from_prefix(p: u32, arity: usize, k: usize, pred: impl Fn(&[u32]) -> bool) -> Domain {
        let head = (0..pow(p, k)).map(|i| pred(&decode(p, k, i))).collect();
        Domain {
            p,
            arity,
            head_arity: k,
            head,
        }
        .normalize()
    }

    pub fn is_full(&self) -> bool {
        self.head.iter().all(|&b| b)
    }

    pub fn is_empty(&self) -> bool {
        !self.head.iter().any(|&b| b)
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.head[encode(self.p, &x[..self.head_arity])]
    }

    pub fn count(&self) -> u128 {
        let heads = self.head.iter().filter(|&&b| b).count() as u128;
        heads * (self.p as u128).pow((self.arity - self.head_arity) as u32)
    }

    /// Head points that are members.
    pub fn head_points(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.head
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| decode(self.p, self.head_arity, i))
    }

    /// Every member point; only sensible for small domains.
    pub fn points(&self) -> Vec<Vec<u32>> {
        let tail = self.arity - self.head_arity;
        let mut out = Vec::new();
        for h in self.head_points() {
            for t in 0..pow(self.p, tail) {
                let mut x = h.clone();
                x.extend(decode(self.p, tail, t));
                out.push(x);
            }
        }
        out
    }

    fn widen(&self, k: usize) -> Domain {
        if k <= self.head_arity {
            return self.clone();
        }
        let m = self.head.len();
        let head = (0..pow(self.p, k)).map(|i| self.head[i % m]).collect();
        Domain {
            p: self.p,
            arity: self.arity,
            head_arity: k,
            head,
        }
    }

    /// Drop trailing head coordinates that do not matter; canonical form for equality.
    pub fn normalize(mut self) -> Domain {
        if self.is_empty() {
            return Domain::empty(self.p, self.arity);
        }
        while self.head_arity > 0 {
            let inner = pow(self.p, self.head_arity - 1);
            let irrelevant = (inner..self.head.len()).all(|i| self.head[i] == self.head[i % inner]);
            if !irrelevant {
                break;
            }
            self.head.truncate(inner);
            self.head_arity -= 1;
        }
        self
    }

    fn zip(&self, other: &Domain, op: impl Fn(bool, bool) -> bool) -> Domain {
        assert_eq!(self.arity, other.arity, "domain arity mismatch");
        let k = self.head_arity.max(other.head_arity);
        let (a, b) = (self.widen(k), other.widen(k));
        let head = a
            .head
            .iter()
            .zip(&b.head)
            .map(|(&x, &y)| op(x, y))
            .collect();
        Domain {
            p: self.p,
            arity: self.arity,
            head_arity: k,
            head,
        }
        .normalize()
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        self.zip(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Domain) -> Domain {
        self.zip(other, |a, b| a || b)
    }

    pub fn subset_of(&self, other: &Domain) -> bool {
        self.zip(other, |a, b| a && !b).is_empty()
    }

    /// The same head with `extra` free coordinates appended.
    pub fn extend(&self, extra: usize) -> Domain {
        Domain {
            arity: self.arity + extra,
            ..self.clone()
        }
    }

    /// Domain of `T(f)` for a piece with this domain.
    pub fn tangent(&self) -> Domain {
        self.extend(self.arity)
    }

    /// `self × other` on concatenated coordinates.
    pub fn product(&self, other: &Domain) -> Domain {
        let arity = self.arity + other.arity;
        if other.head_arity == 0 {
            return if other.head[0] {
                self.extend(other.arity)
            } else {
                Domain::empty(self.p, arity)
            };
        }
        let a = self.widen(self.arity);
        let m = a.head.len();
        let head = (0..m * other.head.len())
            .map(|i| a.head[i % m] && other.head[i / m])
            .collect();
        Domain {
            p: self.p,
            arity,
            head_arity: self.arity + other.head_arity,
            head,
        }
        .normalize()
    }

    /// `{x | f(x) ∈ self}`, enumerating only the source coordinates the relevant components use.
    pub fn preimage(&self, f: &PolyMor) -> Result<Domain> {
        assert_eq!(f.out_arity(), self.arity, "preimage arity mismatch");
        let n = f.in_arity;
        if self.head_arity == 0 {
            return Ok(if self.head[0] {
                Domain::full(self.p, n)
            } else {
                Domain::empty(self.p, n)
            });
        }
        let relevant = &f.comps[..self.head_arity];
        let k = relevant
            .iter()
            .flat_map(|c| {
                c.vars()
                    .into_iter()
                    .enumerate()
                    .filter(|(_, u)| *u)
                    .map(|(i, _)| i + 1)
            })
            .max()
            .unwrap_or(0);
        if pow(self.p, k) > ENUMERATION_LIMIT {
            return Err(Error::model(format!(
                "preimage needs {} prefix points",
                pow(self.p, k)
            )));
        }
        let head = (0..pow(self.p, k))
            .map(|i| {
                let mut x = decode(self.p, k, i);
                x.resize(n, 0);
                let y: Vec<u32> = relevant.iter().map(|c| c.eval(&x)).collect();
                self.head[encode(self.p, &y)]
            })
            .collect();
        Ok(Domain {
            p: self.p,
            arity: n,
            head_arity: k,
            head,
        }
        .normalize())
    }

    /// Image of the domain under `f`, as an enumerated set.
    pub fn image(&self, f: &PolyMor) -> Result<Domain> {
        if self.count() > ENUMERATION_LIMIT as u128 {
            return Err(Error::model("image enumeration exceeds the limit"));
        }
        let pts: Vec<Vec<u32>> = self.points().iter().map(|x| f.eval(x)).collect();
        Ok(Domain::from_points(self.p, f.out_arity(), &pts))
    }
}

impl std::fmt::Debug for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_full() {
            return write!(f, "F{}^{}", self.p, self.arity);
        }
        if self.is_empty() {
            return write!(f, "∅");
        }
        let heads: Vec<String> = self
            .head_points()
            .take(6)
            .map(|h| format!("{h:?}"))
            .collect();
        let more = if self.head.iter().filter(|&&b| b).count() > 6 {
            ",…"
        } else {
            ""
        };
        write!(
            f,
            "{{{}{more}}}×F{}^{}",
            heads.join(","),
            self.p,
            self.arity - self.head_arity
        )
    }
}

use super::domain::{Domain, ENUMERATION_LIMIT};
use super::linalg;
use super::ring::{Poly, PolyMor};
use crate::category::{
    CartesianRestrictionCategory, FibreProduct, JoinRestrictionCategory, RestrictionCategory,
};
use crate::error::{Error, Result};
use std::collections::HashSet;
use std::fmt;

/// A partial map `𝔽_p^src -> 𝔽_p^tgt` given by polynomial pieces on domains.
/// Pieces are pairwise jet-compatible on overlaps.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    pub p: u32,
    pub src: usize,
    pub tgt: usize,
    pub pieces: Vec<(Domain, PolyMor)>,
}

impl PolyMap {
    pub fn total(body: PolyMor) -> PolyMap {
        PolyMap::on(Domain::full(body.p, body.in_arity), body)
    }

    pub fn on(domain: Domain, body: PolyMor) -> PolyMap {
        assert_eq!(domain.arity, body.in_arity, "domain arity mismatch");
        let (p, src, tgt) = (body.p, body.in_arity, body.out_arity());
        PolyMap::from_pieces(p, src, tgt, vec![(domain, body)])
    }

    /// Trusted constructor: drops empty pieces and merges syntactically equal bodies.
    pub fn from_pieces(p: u32, src: usize, tgt: usize, pieces: Vec<(Domain, PolyMor)>) -> PolyMap {
        let mut merged: Vec<(Domain, PolyMor)> = Vec::new();
        for (d, b) in pieces {
            if d.is_empty() {
                continue;
            }
            match merged.iter_mut().find(|(_, mb)| *mb == b) {
                Some((md, _)) => *md = md.union(&d),
                None => merged.push((d, b)),
            }
        }
        PolyMap {
            p,
            src,
            tgt,
            pieces: merged,
        }
    }

    /// Checked constructor: pieces must be jet-compatible to `depth` on overlaps.
    pub fn piecewise(
        p: u32,
        src: usize,
        tgt: usize,
        pieces: Vec<(Domain, PolyMor)>,
        depth: usize,
    ) -> Result<PolyMap> {
        for (d, b) in &pieces {
            if d.arity != src || b.in_arity != src || b.out_arity() != tgt {
                return Err(Error::shape(format!(
                    "piece {b:?} does not have shape {src} -> {tgt}"
                )));
            }
        }
        for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                let overlap = pieces[i].0.intersect(&pieces[j].0);
                if !bodies_jet_agree(&pieces[i].1, &pieces[j].1, &overlap, depth) {
                    return Err(Error::IncompatibleFamily {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(PolyMap::from_pieces(p, src, tgt, pieces))
    }

    pub fn domain(&self) -> Domain {
        self.pieces
            .iter()
            .fold(Domain::empty(self.p, self.src), |acc, (d, _)| acc.union(d))
    }

    pub fn is_total(&self) -> bool {
        self.domain().is_full()
    }

    pub fn eval(&self, x: &[u32]) -> Option<Vec<u32>> {
        self.pieces
            .iter()
            .find(|(d, _)| d.contains(x))
            .map(|(_, b)| b.eval(x))
    }

    /// The same map restricted to `d`.
    pub fn restrict_to(&self, d: &Domain) -> PolyMap {
        let pieces = self
            .pieces
            .iter()
            .map(|(pd, b)| (pd.intersect(d), b.clone()))
            .collect();
        PolyMap::from_pieces(self.p, self.src, self.tgt, pieces)
    }

    /// `T` of the map: each piece differentiated on the widened domain.
    pub fn tangent(&self) -> PolyMap {
        let pieces = self
            .pieces
            .iter()
            .map(|(d, b)| (d.tangent(), b.tangent()))
            .collect();
        PolyMap::from_pieces(self.p, 2 * self.src, 2 * self.tgt, pieces)
    }

    /// `T^k`.
    pub fn tangent_power(&self, k: usize) -> PolyMap {
        (0..k).fold(self.clone(), |f, _| f.tangent())
    }

    /// The single body, if the map has exactly one piece.
    pub fn body(&self) -> Option<&PolyMor> {
        match self.pieces.as_slice() {
            [(_, b)] => Some(b),
            _ => None,
        }
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} [", self.src, self.tgt)?;
        for (k, (d, b)) in self.pieces.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{d:?}: {b:?}")?;
        }
        write!(f, "]")
    }
}

/// Does the polynomial function vanish at every point of `d`?
pub fn vanishes_on(q: &Poly, d: &Domain) -> bool {
    if q.is_zero() || d.is_empty() {
        return true;
    }
    let used = q.vars();
    let Some(last) = (0..d.head_arity).rev().find(|&i| used[i]) else {
        return q.vanishes_everywhere();
    };
    let mut seen = HashSet::new();
    for h in d.head_points() {
        let prefix = &h[..=last];
        if seen.insert(prefix.to_vec()) && !q.fix_prefix(prefix).vanishes_everywhere() {
            return false;
        }
    }
    true
}

/// All partial derivatives of order at most `depth` vanish on `d`. Mixed
/// partials commute, so variables are taken in nondecreasing order.
pub fn jets_vanish(q: &Poly, d: &Domain, depth: usize) -> bool {
    fn go(q: &Poly, d: &Domain, depth: usize, start: usize) -> bool {
        if !vanishes_on(q, d) {
            return false;
        }
        if depth == 0 {
            return true;
        }
        (start..q.arity).all(|v| {
            let dq = q.deriv(v);
            dq.is_zero() || go(&dq, d, depth - 1, v)
        })
    }
    go(q, d, depth, 0)
}

/// `T^k(a)` and `T^k(b)` agree on `T^k(d)` for every `k <= depth`. The
/// components of `T^k` are multilinear in the tangent coordinates with the
/// partial derivatives of order `<= k` as coefficients, so this is equivalent
/// to `jets_vanish(a - b)`.
pub fn bodies_jet_agree(a: &PolyMor, b: &PolyMor, d: &Domain, depth: usize) -> bool {
    a.comps.len() == b.comps.len()
        && a.comps
            .iter()
            .zip(&b.comps)
            .all(|(x, y)| jets_vanish(&x.sub(y), d, depth))
}

/// Equal domains, and on every overlap of pieces all jets up to `depth` agree.
pub fn jet_equal(f: &PolyMap, g: &PolyMap, depth: usize) -> Result<bool> {
    if f.src != g.src || f.tgt != g.tgt {
        return Err(Error::shape(format!("{f:?} and {g:?} are not parallel")));
    }
    if f.domain() != g.domain() {
        return Ok(false);
    }
    for (df, bf) in &f.pieces {
        for (dg, bg) in &g.pieces {
            if bf == bg {
                continue;
            }
            let overlap = df.intersect(dg);
            if !bodies_jet_agree(bf, bg, &overlap, depth) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Piecewise polynomial partial maps over 𝔽_p, compared by jet equality to `depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyCat {
    pub p: u32,
    pub depth: usize,
}

impl PolyCat {
    pub fn new(p: u32, depth: usize) -> Result<PolyCat> {
        if !super::ring::is_prime(p) {
            return Err(Error::model(format!("{p} is not prime")));
        }
        Ok(PolyCat { p, depth })
    }

    pub fn total(&self, n: usize, comps: Vec<Poly>) -> PolyMap {
        PolyMap::total(PolyMor::new(self.p, n, comps))
    }

    pub fn select(&self, n: usize, idx: &[usize]) -> PolyMap {
        PolyMap::total(PolyMor::select(self.p, n, idx))
    }

    pub fn var(&self, n: usize, i: usize) -> Poly {
        Poly::var(self.p, n, i)
    }

    /// Idempotent on a domain.
    pub fn idempotent(&self, d: Domain) -> PolyMap {
        PolyMap::on(d.clone(), PolyMor::identity(self.p, d.arity))
    }

    pub fn t(&self, f: &PolyMap) -> PolyMap {
        f.tangent()
    }

    pub fn jet_equal_at(&self, f: &PolyMap, g: &PolyMap, depth: usize) -> bool {
        jet_equal(f, g, depth).unwrap_or(false)
    }

    /// Candidate inverse for a piece with an invertible affine body.
    fn affine_inverse(&self, d: &Domain, b: &PolyMor) -> Option<(Domain, PolyMor)> {
        let n = b.in_arity;
        if b.out_arity() != n || !b.is_affine() {
            return None;
        }
        let a: Vec<Vec<u32>> = b
            .comps
            .iter()
            .map(|c| (0..n).map(|i| c.linear_coeff(i)).collect())
            .collect();
        let shift: Vec<u32> = b.comps.iter().map(Poly::constant_term).collect();
        let inv = linalg::inverse(&a, self.p)?;
        let minus = linalg::negate(&linalg::mat_vec(&inv, &shift, self.p), self.p);
        let comps = (0..n)
            .map(|r| {
                let mut q = Poly::constant(self.p, n, minus[r]);
                for (c, &k) in inv[r].iter().enumerate() {
                    q = q.add(&Poly::var(self.p, n, c).scale(k));
                }
                q
            })
            .collect();
        let image = if d.is_full() {
            Domain::full(self.p, n)
        } else {
            d.image(b).ok()?
        };
        Some((image, PolyMor::new(self.p, n, comps)))
    }
}

impl RestrictionCategory for PolyCat {
    type Obj = usize;
    type Mor = PolyMap;

    fn name(&self) -> &str {
        "poly"
    }
    fn dom(&self, f: &PolyMap) -> usize {
        f.src
    }
    fn cod(&self, f: &PolyMap) -> usize {
        f.tgt
    }
    fn identity(&self, a: &usize) -> PolyMap {
        PolyMap::total(PolyMor::identity(self.p, *a))
    }
    fn compose(&self, f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
        if f.tgt != g.src {
            return Err(Error::shape(format!(
                "cannot compose arity {} into arity {}",
                f.tgt, g.src
            )));
        }
        let mut pieces = Vec::new();
        for (df, bf) in &f.pieces {
            for (dg, bg) in &g.pieces {
                let d = df.intersect(&dg.preimage(bf)?);
                if !d.is_empty() {
                    pieces.push((d, bf.then(bg)));
                }
            }
        }
        Ok(PolyMap::from_pieces(self.p, f.src, g.tgt, pieces))
    }
    fn restrict(&self, f: &PolyMap) -> PolyMap {
        self.idempotent(f.domain())
    }
    fn mor_eq(&self, f: &PolyMap, g: &PolyMap) -> bool {
        jet_equal(f, g, self.depth).unwrap_or(false)
    }
    fn obj_size(&self, a: &usize) -> usize {
        (self.p as usize)
            .checked_pow(*a as u32)
            .unwrap_or(usize::MAX)
    }
    fn is_total(&self, f: &PolyMap) -> bool {
        f.is_total()
    }
    fn partial_inverse_candidate(&self, f: &PolyMap) -> Option<PolyMap> {
        let pieces = f
            .pieces
            .iter()
            .map(|(d, b)| self.affine_inverse(d, b))
            .collect::<Option<Vec<_>>>()?;
        Some(PolyMap::from_pieces(self.p, f.tgt, f.src, pieces))
    }
}

impl JoinRestrictionCategory for PolyCat {
    fn nowhere(&self, a: &usize, b: &usize) -> PolyMap {
        PolyMap {
            p: self.p,
            src: *a,
            tgt: *b,
            pieces: Vec::new(),
        }
    }
    fn join_unchecked(&self, a: &usize, b: &usize, family: &[PolyMap]) -> Result<PolyMap> {
        let pieces = family
            .iter()
            .flat_map(|f| f.pieces.iter().cloned())
            .collect();
        Ok(PolyMap::from_pieces(self.p, *a, *b, pieces))
    }
}

impl CartesianRestrictionCategory for PolyCat {
    fn terminal(&self) -> usize {
        0
    }
    fn product(&self, a: &usize, b: &usize) -> usize {
        a + b
    }
    fn pi0(&self, a: &usize, b: &usize) -> PolyMap {
        self.select(a + b, &(0..*a).collect::<Vec<_>>())
    }
    fn pi1(&self, a: &usize, b: &usize) -> PolyMap {
        self.select(a + b, &(*a..a + b).collect::<Vec<_>>())
    }
    fn pair(&self, f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
        if f.src != g.src {
            return Err(Error::shape("pairing needs a common source"));
        }
        let mut pieces = Vec::new();
        for (df, bf) in &f.pieces {
            for (dg, bg) in &g.pieces {
                pieces.push((df.intersect(dg), bf.pair(bg)));
            }
        }
        Ok(PolyMap::from_pieces(self.p, f.src, f.tgt + g.tgt, pieces))
    }
    fn bang(&self, a: &usize) -> PolyMap {
        PolyMap::total(PolyMor::new(self.p, *a, Vec::new()))
    }

    /// The carrier is the plain product; the locus idempotent cuts out `f(x) = g(y)`.
    fn fibre_product(&self, f: &PolyMap, g: &PolyMap) -> Option<FibreProduct<usize, PolyMap>> {
        if f.tgt != g.tgt {
            return None;
        }
        let n = f.src + g.src;
        if self.obj_size(&n) > ENUMERATION_LIMIT {
            return None;
        }
        let (a, c) = (f.src, g.src);
        let locus = Domain::from_prefix(self.p, n, n, |xy| {
            match (f.eval(&xy[..a]), g.eval(&xy[a..])) {
                (Some(u), Some(v)) => u == v,
                _ => false,
            }
        });
        Some(FibreProduct {
            obj: n,
            locus: self.idempotent(locus),
            p0: self.pi0(&a, &c),
            p1: self.pi1(&a, &c),
        })
    }

    fn fibre_pair(
        &self,
        fp: &FibreProduct<usize, PolyMap>,
        h0: &PolyMap,
        h1: &PolyMap,
    ) -> Result<PolyMap> {
        self.compose(&self.pair(h0, h1)?, &fp.locus)
    }
}

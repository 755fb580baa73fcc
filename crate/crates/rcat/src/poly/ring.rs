use std::collections::BTreeMap;
use std::fmt;

pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero mod the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p as u64 - 2, p)
}

pub fn neg_mod(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

pub fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// A polynomial over the prime field of order `p` in `arity` variables, in
/// expanded normal form: exponent vectors of length `arity`, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub p: u32,
    pub arity: usize,
    pub terms: BTreeMap<Vec<u32>, u32>,
}

impl Poly {
    pub fn zero(p: u32, arity: usize) -> Poly {
        Poly {
            p,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u32, arity: usize, c: u32) -> Poly {
        let mut out = Poly::zero(p, arity);
        out.add_term(vec![0; arity], c);
        out
    }

    pub fn var(p: u32, arity: usize, i: usize) -> Poly {
        assert!(i < arity, "variable {i} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut out = Poly::zero(p, arity);
        out.add_term(e, 1);
        out
    }

    pub fn monomial(p: u32, exps: Vec<u32>, c: u32) -> Poly {
        let mut out = Poly::zero(p, exps.len());
        out.add_term(exps, c);
        out
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: u32) {
        debug_assert_eq!(exps.len(), self.arity);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, k: u32) -> Poly {
        let mut out = Poly::zero(self.p, self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), mul_mod(*c, k, self.p));
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.p - 1)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.p, self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, mul_mod(*c1, *c2, self.p));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::constant(self.p, self.arity, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let p = self.p;
        let mut s = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c as u64;
            for (xi, ei) in x.iter().zip(e) {
                if *ei > 0 {
                    t = t * pow_mod(*xi, *ei as u64, p) as u64 % p as u64;
                }
            }
            s += t;
        }
        (s % p as u64) as u32
    }

    /// Formal partial derivative in variable `i`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.p, self.arity);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, mul_mod(*c, e[i] % self.p, self.p));
        }
        out
    }

    /// Substitute `args[i]` (all of arity `arity`) for variable `i`.
    pub fn substitute(&self, args: &[Poly], arity: usize) -> Poly {
        assert_eq!(args.len(), self.arity, "substitution arity mismatch");
        let mut cache: Vec<Vec<Poly>> = args
            .iter()
            .map(|a| vec![Poly::constant(self.p, arity, 1), a.clone()])
            .collect();
        let mut out = Poly::zero(self.p, arity);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(self.p, arity, *c);
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= ei as usize {
                    let next = powers.last().unwrap().mul(&args[i]);
                    powers.push(next);
                }
                t = t.mul(&powers[ei as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Fix the leading variables to `prefix`, keeping the arity (those variables no longer occur).
    pub fn fix_prefix(&self, prefix: &[u32]) -> Poly {
        let mut out = Poly::zero(self.p, self.arity);
        for (e, c) in &self.terms {
            let mut k = *c;
            for (xi, ei) in prefix.iter().zip(e) {
                if *ei > 0 {
                    k = mul_mod(k, pow_mod(*xi, *ei as u64, self.p), self.p);
                }
            }
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[..prefix.len()].iter_mut().for_each(|x| *x = 0);
            out.add_term(e2, k);
        }
        out
    }

    /// Whether the polynomial function on the whole of 𝔽_p^n is zero: reduce
    /// exponents with x^p = x and test the result syntactically.
    pub fn vanishes_everywhere(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let m = self.p - 1;
        let mut reduced = Poly::zero(self.p, self.arity);
        for (e, c) in &self.terms {
            let e2 = e
                .iter()
                .map(|&x| if x == 0 { 0 } else { (x - 1) % m + 1 })
                .collect();
            reduced.add_term(e2, *c);
        }
        reduced.is_zero()
    }

    /// Bitmask-free list of the variables that occur.
    pub fn vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.arity];
        for e in self.terms.keys() {
            for (u, &x) in used.iter_mut().zip(e) {
                *u |= x > 0;
            }
        }
        used
    }

    /// Re-index into a larger arity: variable `i` becomes `map[i]`.
    pub fn reindex(&self, new_arity: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(self.p, new_arity);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_arity];
            for (i, &x) in e.iter().enumerate() {
                e2[map[i]] += x;
            }
            out.add_term(e2, *c);
        }
        out
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    /// Linear coefficient of variable `i` and constant term, for affine polynomials.
    pub fn linear_coeff(&self, i: usize) -> u32 {
        let mut e = vec![0; self.arity];
        e[i] = 1;
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.terms.get(&vec![0; self.arity]).copied().unwrap_or(0)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{x}")
                    }
                })
                .collect();
            match (mono.is_empty(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, c) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A tuple of polynomials `𝔽_p^n -> 𝔽_p^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMor {
    pub p: u32,
    pub in_arity: usize,
    pub comps: Vec<Poly>,
}

impl PolyMor {
    pub fn new(p: u32, in_arity: usize, comps: Vec<Poly>) -> PolyMor {
        assert!(
            comps.iter().all(|c| c.arity == in_arity && c.p == p),
            "component arity mismatch"
        );
        PolyMor { p, in_arity, comps }
    }

    pub fn out_arity(&self) -> usize {
        self.comps.len()
    }

    pub fn identity(p: u32, n: usize) -> PolyMor {
        PolyMor::new(p, n, (0..n).map(|i| Poly::var(p, n, i)).collect())
    }

    /// The coordinate map picking `idx[k]` as output `k`.
    pub fn select(p: u32, n: usize, idx: &[usize]) -> PolyMor {
        PolyMor::new(p, n, idx.iter().map(|&i| Poly::var(p, n, i)).collect())
    }

    pub fn constant(p: u32, n: usize, values: &[u32]) -> PolyMor {
        PolyMor::new(
            p,
            n,
            values.iter().map(|&c| Poly::constant(p, n, c)).collect(),
        )
    }

    /// `self` then `g`.
    pub fn then(&self, g: &PolyMor) -> PolyMor {
        assert_eq!(self.out_arity(), g.in_arity, "composite arity mismatch");
        let comps = g
            .comps
            .iter()
            .map(|c| c.substitute(&self.comps, self.in_arity))
            .collect();
        PolyMor::new(self.p, self.in_arity, comps)
    }

    /// Componentwise pairing `⟨self, g⟩`.
    pub fn pair(&self, g: &PolyMor) -> PolyMor {
        assert_eq!(self.in_arity, g.in_arity, "pairing arity mismatch");
        let mut comps = self.comps.clone();
        comps.extend(g.comps.iter().cloned());
        PolyMor::new(self.p, self.in_arity, comps)
    }

    pub fn eval(&self, x: &[u32]) -> Vec<u32> {
        self.comps.iter().map(|c| c.eval(x)).collect()
    }

    /// `T(f)(x, v) = (f(x), J_f(x) v)`.
    pub fn tangent(&self) -> PolyMor {
        let n = self.in_arity;
        let lift: Vec<usize> = (0..n).collect();
        let mut comps: Vec<Poly> = self.comps.iter().map(|c| c.reindex(2 * n, &lift)).collect();
        for c in &self.comps {
            let mut d = Poly::zero(self.p, 2 * n);
            for i in 0..n {
                let di = c.deriv(i);
                if di.is_zero() {
                    continue;
                }
                d = d.add(
                    &di.reindex(2 * n, &lift)
                        .mul(&Poly::var(self.p, 2 * n, n + i)),
                );
            }
            comps.push(d);
        }
        PolyMor::new(self.p, 2 * n, comps)
    }

    pub fn is_affine(&self) -> bool {
        self.comps.iter().all(Poly::is_affine)
    }
}

impl fmt::Debug for PolyMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

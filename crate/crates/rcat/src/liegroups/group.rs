use crate::category::{CartesianRestrictionCategory, RestrictionCategory};
use crate::error::{Error, Result};
use crate::gbundles::GroupObject;
use crate::poly::{decode, poly_from_json, Poly, PolyCat, PolyMap, PolyMor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub type PolyGroup = GroupObject<usize, PolyMap>;

/// A group object in the polynomial model on `𝔽_p^n`.
#[derive(Debug, Clone)]
pub struct TangentGroup {
    pub name: String,
    pub cat: PolyCat,
    pub n: usize,
    pub group: PolyGroup,
}

impl TangentGroup {
    pub fn new(
        name: &str,
        cat: PolyCat,
        mul: Vec<Poly>,
        inv: Vec<Poly>,
        unit: Vec<u32>,
    ) -> Result<TangentGroup> {
        let n = unit.len();
        if mul.len() != n || inv.len() != n {
            return Err(Error::shape(
                "m, ι and u must have the same number of components",
            ));
        }
        if mul.iter().any(|q| q.arity != 2 * n || q.p != cat.p)
            || inv.iter().any(|q| q.arity != n || q.p != cat.p)
        {
            return Err(Error::shape(
                "m must have arity 2n and ι arity n over the model's field",
            ));
        }
        let group = GroupObject {
            carrier: n,
            mul: cat.total(2 * n, mul),
            unit: PolyMap::total(PolyMor::constant(cat.p, 0, &unit)),
            inv: cat.total(n, inv),
        };
        Ok(TangentGroup {
            name: name.into(),
            cat,
            n,
            group,
        })
    }

    /// `(𝔽_p^k, +)`.
    pub fn additive(p: u32, k: usize, depth: usize) -> Result<TangentGroup> {
        let cat = PolyCat::new(p, depth)?;
        let mul = (0..k)
            .map(|i| cat.var(2 * k, i).add(&cat.var(2 * k, k + i)))
            .collect();
        let inv = (0..k).map(|i| cat.var(k, i).neg()).collect();
        TangentGroup::new(&format!("F{p}^{k}"), cat, mul, inv, vec![0; k])
    }

    /// Unitriangular 3×3 matrices: `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    pub fn heisenberg(p: u32, depth: usize) -> Result<TangentGroup> {
        let cat = PolyCat::new(p, depth)?;
        let x = |i| cat.var(6, i);
        let mul = vec![
            x(0).add(&x(3)),
            x(1).add(&x(4)),
            x(2).add(&x(5)).add(&x(0).mul(&x(4))),
        ];
        let y = |i| cat.var(3, i);
        let inv = vec![y(0).neg(), y(1).neg(), y(0).mul(&y(1)).sub(&y(2))];
        TangentGroup::new(&format!("H{p}"), cat, mul, inv, vec![0; 3])
    }

    /// `{"name", "p", "unit": [..], "mul": [poly..], "inv": [poly..]}`, with
    /// polynomials in the poly-model JSON form.
    pub fn from_json(v: &Value, depth: usize) -> Result<TangentGroup> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::model(format!("group file lacks `{k}`")))
        };
        let p = field("p")?
            .as_u64()
            .ok_or_else(|| Error::model("`p` must be an integer"))? as u32;
        let cat = PolyCat::new(p, depth)?;
        let polys = |k: &str| -> Result<Vec<Poly>> {
            field(k)?
                .as_array()
                .ok_or_else(|| Error::model(format!("`{k}` must be a list")))?
                .iter()
                .map(poly_from_json)
                .collect()
        };
        let unit: Vec<u32> = serde_json::from_value(field("unit")?.clone())?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("G");
        TangentGroup::new(name, cat, polys("mul")?, polys("inv")?, unit)
    }

    pub fn p(&self) -> u32 {
        self.cat.p
    }

    pub fn unit_point(&self) -> Vec<u32> {
        self.group.unit.eval(&[]).expect("unit is total")
    }

    pub fn mul_point(&self, g: &[u32], h: &[u32]) -> Vec<u32> {
        self.group.mul.eval(&[g, h].concat()).expect("m is total")
    }

    /// Whether `m` commutes as a polynomial function.
    pub fn is_abelian(&self) -> bool {
        let c = &self.cat;
        let swapped = c.compose(
            &crate::category::swap(c, &self.n, &self.n).expect("swap"),
            &self.group.mul,
        );
        swapped
            .map(|s| c.mor_eq(&s, &self.group.mul))
            .unwrap_or(false)
    }

    /// `!u : X -> G`.
    pub fn bang_unit(&self, x: usize) -> PolyMap {
        self.cat
            .compose(&self.cat.bang(&x), &self.group.unit)
            .expect("unit composes")
    }

    /// `T(m)` read on `T(G) × T(G)` with coordinates `(g, v, h, w)`.
    pub fn tm(&self) -> PolyMap {
        self.tmk(2)
    }

    /// `T(m_k)` on `T(G)^k` with coordinates `(g_1, v_1, .., g_k, v_k)`,
    /// where `m_k` multiplies left to right.
    pub fn tmk(&self, k: usize) -> PolyMap {
        let c = &self.cat;
        let n = self.n;
        let mk = (2..k).fold(self.group.mul.clone(), |acc, j| {
            let rest = c.select(j * n + n, &((j * n)..(j * n + n)).collect::<Vec<_>>());
            let head = c
                .compose(&c.select(j * n + n, &(0..j * n).collect::<Vec<_>>()), &acc)
                .expect("m_k");
            c.compose(&c.pair(&head, &rest).expect("pair"), &self.group.mul)
                .expect("m_k")
        });
        let mut idx: Vec<usize> = (0..k).flat_map(|i| 2 * i * n..(2 * i + 1) * n).collect();
        idx.extend((0..k).flat_map(|i| (2 * i + 1) * n..(2 * i + 2) * n));
        c.compose(&c.select(2 * k * n, &idx), &mk.tangent())
            .expect("T(m_k)")
    }

    /// The group object `T(G)` with `T(m)`, `T(u)` and `T(ι)`.
    pub fn tangent_group(&self) -> PolyGroup {
        GroupObject {
            carrier: 2 * self.n,
            mul: self.tm(),
            unit: self.group.unit.tangent(),
            inv: self.group.inv.tangent(),
        }
    }

    /// `B(v, w)_k = Σ ∂²m_k/∂x_i∂y_j (u, u) v_i w_j`, the bilinear part of `m` at the unit.
    pub fn bilinear_part(&self, v: &[u32], w: &[u32]) -> Vec<u32> {
        let n = self.n;
        let p = self.p();
        let at = [self.unit_point(), self.unit_point()].concat();
        let body = self.group.mul.body().expect("m has one piece");
        body.comps
            .iter()
            .map(|q| {
                let mut s = 0u64;
                for i in 0..n {
                    let di = q.deriv(i);
                    for j in 0..n {
                        let k = di.deriv(n + j).eval(&at) as u64;
                        s += k * v[i] as u64 % p as u64 * w[j] as u64;
                    }
                }
                (s % p as u64) as u32
            })
            .collect()
    }

    /// The oracle `B(v, w) - B(w, v)`.
    pub fn bracket_oracle(&self, v: &[u32], w: &[u32]) -> Vec<u32> {
        let p = self.p();
        let a = self.bilinear_part(v, w);
        let b = self.bilinear_part(w, v);
        a.iter().zip(&b).map(|(x, y)| (x + p - y) % p).collect()
    }
}

/// All points of `𝔽_p^k`.
pub fn all_points(p: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as usize).pow(k as u32);
    (0..count).map(move |i| decode(p, k, i))
}

/// `count` seeded random points of `𝔽_p^k`.
pub fn sample_points(p: u32, k: usize, count: usize, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..k).map(|_| rng.gen_range(0..p)).collect())
        .collect()
}

pub fn add_vec(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn neg_vec(p: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|x| (p - x) % p).collect()
}

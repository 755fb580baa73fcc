//! Finite sets and partial maps.

mod json;
mod search;

pub use json::{map_from_json, map_to_json, obj_from_json, obj_to_json};
pub use search::{iso_search, SearchOutcome, SearchProblem};

use crate::category::{
    CartesianRestrictionCategory, FibreProduct, JoinRestrictionCategory, RestrictionCategory,
};
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A point of a finite carrier. Product points are tuples, so nested products
/// associate to the left as written.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Atom {
    Int(i64),
    Sym(String),
    Tuple(Vec<Atom>),
}

impl Atom {
    pub fn sym(s: impl Into<String>) -> Atom {
        Atom::Sym(s.into())
    }
    pub fn pair(a: Atom, b: Atom) -> Atom {
        Atom::Tuple(vec![a, b])
    }
    pub fn unit() -> Atom {
        Atom::Tuple(Vec::new())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(i) => write!(f, "{i}"),
            Atom::Sym(s) => write!(f, "{s}"),
            Atom::Tuple(xs) => {
                write!(f, "(")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct ObjData {
    name: String,
    points: Vec<Atom>,
    index: HashMap<Atom, u32>,
}

/// A finite carrier. Equality compares the ordered point lists; the name is a label.
#[derive(Clone)]
pub struct FinObj(Arc<ObjData>);

impl FinObj {
    pub fn new(name: impl Into<String>, points: Vec<Atom>) -> Result<FinObj> {
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i as u32).is_some() {
                return Err(Error::model(format!("duplicate point {p}")));
            }
        }
        Ok(FinObj(Arc::new(ObjData {
            name: name.into(),
            points,
            index,
        })))
    }

    /// Points `prefix0 .. prefix{n-1}`.
    pub fn named(name: &str, prefix: &str, n: usize) -> FinObj {
        FinObj::new(
            name,
            (0..n).map(|i| Atom::Sym(format!("{prefix}{i}"))).collect(),
        )
        .unwrap()
    }

    /// Points `0 .. n-1` as integers.
    pub fn range(name: &str, n: usize) -> FinObj {
        FinObj::new(name, (0..n as i64).map(Atom::Int).collect()).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }
    pub fn points(&self) -> &[Atom] {
        &self.0.points
    }
    pub fn len(&self) -> usize {
        self.0.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.points.is_empty()
    }
    pub fn index_of(&self, a: &Atom) -> Option<u32> {
        self.0.index.get(a).copied()
    }
    pub fn point(&self, i: u32) -> &Atom {
        &self.0.points[i as usize]
    }
}

impl PartialEq for FinObj {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.points == other.0.points
    }
}

impl fmt::Debug for FinObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.name, self.0.points.len())
    }
}

/// A partial map given by a table indexed by source points.
#[derive(Clone, PartialEq)]
pub struct ParMap {
    pub src: FinObj,
    pub tgt: FinObj,
    pub table: Vec<Option<u32>>,
}

impl ParMap {
    pub fn new(src: FinObj, tgt: FinObj, table: Vec<Option<u32>>) -> Result<ParMap> {
        if table.len() != src.len() {
            return Err(Error::shape(format!(
                "table has {} entries, source has {} points",
                table.len(),
                src.len()
            )));
        }
        if let Some(bad) = table.iter().flatten().find(|&&v| v as usize >= tgt.len()) {
            return Err(Error::shape(format!(
                "value index {bad} outside target {:?}",
                tgt
            )));
        }
        Ok(ParMap { src, tgt, table })
    }

    /// Build from `(source point, target point)` pairs.
    pub fn from_pairs(src: &FinObj, tgt: &FinObj, pairs: &[(Atom, Atom)]) -> Result<ParMap> {
        let mut table = vec![None; src.len()];
        for (a, b) in pairs {
            let i = src
                .index_of(a)
                .ok_or_else(|| Error::shape(format!("{a} is not a point of {}", src.name())))?;
            let j = tgt
                .index_of(b)
                .ok_or_else(|| Error::shape(format!("{b} is not a point of {}", tgt.name())))?;
            if table[i as usize].replace(j).is_some_and(|old| old != j) {
                return Err(Error::NonFunctionalRelation(format!("{a} has two images")));
            }
        }
        Ok(ParMap {
            src: src.clone(),
            tgt: tgt.clone(),
            table,
        })
    }

    /// Total map from a function on point indices.
    pub fn from_fn(src: &FinObj, tgt: &FinObj, f: impl Fn(u32) -> Option<u32>) -> ParMap {
        let table = (0..src.len() as u32).map(f).collect();
        ParMap {
            src: src.clone(),
            tgt: tgt.clone(),
            table,
        }
    }

    /// The partial identity on the given subset of indices.
    pub fn idempotent(a: &FinObj, keep: impl Fn(u32) -> bool) -> ParMap {
        ParMap::from_fn(a, a, |i| keep(i).then_some(i))
    }

    pub fn apply(&self, i: u32) -> Option<u32> {
        self.table[i as usize]
    }

    pub fn apply_atom(&self, a: &Atom) -> Option<&Atom> {
        let i = self.src.index_of(a)?;
        self.apply(i).map(|j| self.tgt.point(j))
    }

    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|_| i as u32))
    }

    pub fn domain_size(&self) -> usize {
        self.table.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.tgt.len()];
        for &j in self.table.iter().flatten() {
            if std::mem::replace(&mut seen[j as usize], true) {
                return false;
            }
        }
        true
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn is_bijection(&self) -> bool {
        self.is_total() && self.is_injective() && self.src.len() == self.tgt.len()
    }
}

impl fmt::Debug for ParMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} {{", self.src.name(), self.tgt.name())?;
        let mut first = true;
        for (i, v) in self.table.iter().enumerate() {
            if let Some(j) = v {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}↦{}", self.src.point(i as u32), self.tgt.point(*j))?;
            }
        }
        write!(f, "}}")
    }
}

/// The category of finite sets and partial maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinSet;

impl RestrictionCategory for FinSet {
    type Obj = FinObj;
    type Mor = ParMap;

    fn name(&self) -> &str {
        "finset"
    }
    fn dom(&self, f: &ParMap) -> FinObj {
        f.src.clone()
    }
    fn cod(&self, f: &ParMap) -> FinObj {
        f.tgt.clone()
    }
    fn identity(&self, a: &FinObj) -> ParMap {
        ParMap::from_fn(a, a, Some)
    }
    fn compose(&self, f: &ParMap, g: &ParMap) -> Result<ParMap> {
        if f.tgt != g.src {
            return Err(Error::shape(format!(
                "cannot compose {:?} then {:?}",
                f.tgt, g.src
            )));
        }
        let table = f
            .table
            .iter()
            .map(|v| v.and_then(|j| g.table[j as usize]))
            .collect();
        Ok(ParMap {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            table,
        })
    }
    fn restrict(&self, f: &ParMap) -> ParMap {
        ParMap::idempotent(&f.src, |i| f.table[i as usize].is_some())
    }
    fn mor_eq(&self, f: &ParMap, g: &ParMap) -> bool {
        f.table == g.table && f.src == g.src && f.tgt == g.tgt
    }
    fn obj_size(&self, a: &FinObj) -> usize {
        a.len()
    }
    fn is_total(&self, f: &ParMap) -> bool {
        f.is_total()
    }
    fn partial_inverse_candidate(&self, f: &ParMap) -> Option<ParMap> {
        if !f.is_injective() {
            return None;
        }
        let mut table = vec![None; f.tgt.len()];
        for (i, v) in f.table.iter().enumerate() {
            if let Some(j) = v {
                table[*j as usize] = Some(i as u32);
            }
        }
        Some(ParMap {
            src: f.tgt.clone(),
            tgt: f.src.clone(),
            table,
        })
    }
    fn count_partial_inverses(&self, f: &ParMap) -> Option<usize> {
        let count = (f.src.len() as f64 + 1.0).powi(f.tgt.len() as i32);
        if count > 1e6 {
            return None;
        }
        let mut n = 0;
        for g in all_maps(&f.tgt, &f.src) {
            let fg = self.compose(f, &g).ok()?;
            let gf = self.compose(&g, f).ok()?;
            if self.mor_eq(&fg, &self.restrict(f)) && self.mor_eq(&gf, &self.restrict(&g)) {
                n += 1;
            }
        }
        Some(n)
    }
}

impl JoinRestrictionCategory for FinSet {
    fn nowhere(&self, a: &FinObj, b: &FinObj) -> ParMap {
        ParMap {
            src: a.clone(),
            tgt: b.clone(),
            table: vec![None; a.len()],
        }
    }
    fn join_unchecked(&self, a: &FinObj, b: &FinObj, family: &[ParMap]) -> Result<ParMap> {
        let mut table = vec![None; a.len()];
        for f in family {
            for (slot, v) in table.iter_mut().zip(&f.table) {
                if slot.is_none() {
                    *slot = *v;
                }
            }
        }
        Ok(ParMap {
            src: a.clone(),
            tgt: b.clone(),
            table,
        })
    }
}

impl CartesianRestrictionCategory for FinSet {
    fn terminal(&self) -> FinObj {
        FinObj::new("1", vec![Atom::unit()]).unwrap()
    }
    fn product(&self, a: &FinObj, b: &FinObj) -> FinObj {
        let mut points = Vec::with_capacity(a.len() * b.len());
        for x in a.points() {
            for y in b.points() {
                points.push(Atom::pair(x.clone(), y.clone()));
            }
        }
        FinObj::new(format!("{}×{}", a.name(), b.name()), points).unwrap()
    }
    fn pi0(&self, a: &FinObj, b: &FinObj) -> ParMap {
        let n = b.len() as u32;
        ParMap::from_fn(&self.product(a, b), a, |i| Some(i / n))
    }
    fn pi1(&self, a: &FinObj, b: &FinObj) -> ParMap {
        let n = b.len() as u32;
        ParMap::from_fn(&self.product(a, b), b, |i| Some(i % n))
    }
    fn pair(&self, f: &ParMap, g: &ParMap) -> Result<ParMap> {
        if f.src != g.src {
            return Err(Error::shape("pairing needs a common source"));
        }
        let n = g.tgt.len() as u32;
        let prod = self.product(&f.tgt, &g.tgt);
        let table = f
            .table
            .iter()
            .zip(&g.table)
            .map(|(a, b)| Some(a.as_ref()? * n + b.as_ref()?))
            .collect();
        Ok(ParMap {
            src: f.src.clone(),
            tgt: prod,
            table,
        })
    }
    fn bang(&self, a: &FinObj) -> ParMap {
        ParMap::from_fn(a, &self.terminal(), |_| Some(0))
    }

    fn restriction_pullback(&self, f: &ParMap, g: &ParMap) -> Option<(FinObj, ParMap, ParMap)> {
        let fp = self.fibre_product(f, g)?;
        Some((fp.obj, fp.p0, fp.p1))
    }

    fn fibre_product(&self, f: &ParMap, g: &ParMap) -> Option<FibreProduct<FinObj, ParMap>> {
        if f.tgt != g.tgt {
            return None;
        }
        let mut pts = Vec::new();
        let mut idx = Vec::new();
        for (a, fa) in f.table.iter().enumerate() {
            for (c, gc) in g.table.iter().enumerate() {
                if fa.is_some() && fa == gc {
                    pts.push(Atom::pair(
                        f.src.point(a as u32).clone(),
                        g.src.point(c as u32).clone(),
                    ));
                    idx.push((a as u32, c as u32));
                }
            }
        }
        let obj = FinObj::new(
            format!("{}×_{}{}", f.src.name(), f.tgt.name(), g.src.name()),
            pts,
        )
        .ok()?;
        let p0 = ParMap::from_fn(&obj, &f.src, |k| Some(idx[k as usize].0));
        let p1 = ParMap::from_fn(&obj, &g.src, |k| Some(idx[k as usize].1));
        Some(FibreProduct {
            locus: self.identity(&obj),
            obj,
            p0,
            p1,
        })
    }

    /// Defined where both components are and the pair lies in the pullback.
    fn fibre_pair(
        &self,
        fp: &FibreProduct<FinObj, ParMap>,
        h0: &ParMap,
        h1: &ParMap,
    ) -> Result<ParMap> {
        if h0.src != h1.src || h0.tgt != fp.p0.tgt || h1.tgt != fp.p1.tgt {
            return Err(Error::shape(
                "fibre pairing components do not match the fibre product",
            ));
        }
        let lookup: HashMap<(u32, u32), u32> = (0..fp.obj.len() as u32)
            .map(|k| {
                (
                    (
                        fp.p0.table[k as usize].unwrap(),
                        fp.p1.table[k as usize].unwrap(),
                    ),
                    k,
                )
            })
            .collect();
        let table = h0
            .table
            .iter()
            .zip(&h1.table)
            .map(|(a, b)| lookup.get(&((*a)?, (*b)?)).copied())
            .collect();
        Ok(ParMap {
            src: h0.src.clone(),
            tgt: fp.obj.clone(),
            table,
        })
    }
}

/// Every partial map `a -> b`, in lexicographic table order.
pub fn all_maps(a: &FinObj, b: &FinObj) -> Vec<ParMap> {
    let k = b.len() as u32 + 1;
    let total = (k as u64).pow(a.len() as u32);
    (0..total)
        .map(|mut code| {
            let table = (0..a.len())
                .map(|_| {
                    let d = (code % k as u64) as u32;
                    code /= k as u64;
                    d.checked_sub(1)
                })
                .collect();
            ParMap {
                src: a.clone(),
                tgt: b.clone(),
                table,
            }
        })
        .collect()
}

/// A random partial map; each point is defined with probability `density`.
pub fn random_map(rng: &mut impl Rng, a: &FinObj, b: &FinObj, density: f64) -> ParMap {
    let table = (0..a.len())
        .map(|_| (!b.is_empty() && rng.gen_bool(density)).then(|| rng.gen_range(0..b.len() as u32)))
        .collect();
    ParMap {
        src: a.clone(),
        tgt: b.clone(),
        table,
    }
}

/// Sample for the law suites: complete hom-sets between objects of 1 to 3
/// points, plus random maps (and their restrictions) among larger objects up
/// to `max_points`.
pub fn law_sample(rng: &mut impl Rng, max_points: usize, per_homset: usize) -> Vec<ParMap> {
    let small: Vec<FinObj> = (1..=3)
        .map(|n| FinObj::named(&format!("S{n}"), "s", n))
        .collect();
    let mut out = Vec::new();
    for a in &small {
        for b in &small {
            out.extend(all_maps(a, b));
        }
    }
    let mut sizes = vec![5, 8, max_points];
    sizes.dedup();
    let big: Vec<FinObj> = sizes
        .iter()
        .map(|&n| FinObj::named(&format!("B{n}"), "b", n))
        .collect();
    for a in &big {
        for b in &big {
            for k in 0..per_homset {
                let f = random_map(rng, a, b, [1.0, 0.8, 0.5][k % 3]);
                // Restrictions of a common map give comparable and compatible pairs.
                let keep: Vec<bool> = (0..a.len()).map(|_| rng.gen_bool(0.6)).collect();
                let g = ParMap::from_fn(a, b, |i| if keep[i as usize] { f.apply(i) } else { None });
                out.push(f);
                out.push(g);
            }
        }
    }
    out
}

use super::group::{FinGroup, GroupObject};
use crate::category::{times, CartesianRestrictionCategory, FibreProduct, RestrictionCategory};
use crate::error::{Error, Result};
use crate::finset::{FinObj, FinSet, ParMap};

/// An object `p : X -> M` of the slice over `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceObj {
    pub obj: FinObj,
    pub over: ParMapEq,
}

/// `ParMap` compared by table, so slice objects can be compared.
#[derive(Debug, Clone)]
pub struct ParMapEq(pub ParMap);

impl PartialEq for ParMapEq {
    fn eq(&self, other: &Self) -> bool {
        FinSet.mor_eq(&self.0, &other.0)
    }
}

#[derive(Debug, Clone)]
pub struct SliceMor {
    pub src: SliceObj,
    pub tgt: SliceObj,
    pub map: ParMap,
}

/// Partial maps over `M`: `f : (X,p) -> (Y,p')` with `f p' <= p`. Products
/// are fibre products over `M` and the terminal object is `(M, 1_M)`.
#[derive(Debug, Clone)]
pub struct Slice {
    pub base: FinObj,
}

impl Slice {
    pub fn new(base: FinObj) -> Slice {
        Slice { base }
    }

    pub fn object(&self, p: ParMap) -> Result<SliceObj> {
        if p.tgt != self.base {
            return Err(Error::shape("slice objects must map into the base"));
        }
        Ok(SliceObj {
            obj: p.src.clone(),
            over: ParMapEq(p),
        })
    }

    /// Checks `f p' <= p`.
    pub fn morphism(&self, src: &SliceObj, tgt: &SliceObj, map: ParMap) -> Result<SliceMor> {
        let c = FinSet;
        if map.src != src.obj || map.tgt != tgt.obj {
            return Err(Error::shape("slice morphism does not match its objects"));
        }
        let lhs = c.compose(&map, &tgt.over.0)?;
        if !crate::category::leq(&c, &lhs, &src.over.0)? {
            return Err(Error::model("map does not commute with the projections"));
        }
        Ok(SliceMor {
            src: src.clone(),
            tgt: tgt.clone(),
            map,
        })
    }

    fn fibre(&self, a: &SliceObj, b: &SliceObj) -> FibreProduct<FinObj, ParMap> {
        FinSet
            .fibre_product(&a.over.0, &b.over.0)
            .expect("slice objects share the base")
    }
}

impl RestrictionCategory for Slice {
    type Obj = SliceObj;
    type Mor = SliceMor;

    fn name(&self) -> &str {
        "slice"
    }
    fn dom(&self, f: &SliceMor) -> SliceObj {
        f.src.clone()
    }
    fn cod(&self, f: &SliceMor) -> SliceObj {
        f.tgt.clone()
    }
    fn identity(&self, a: &SliceObj) -> SliceMor {
        SliceMor {
            src: a.clone(),
            tgt: a.clone(),
            map: FinSet.identity(&a.obj),
        }
    }
    fn compose(&self, f: &SliceMor, g: &SliceMor) -> Result<SliceMor> {
        if f.tgt != g.src {
            return Err(Error::shape("slice morphisms do not compose"));
        }
        Ok(SliceMor {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            map: FinSet.compose(&f.map, &g.map)?,
        })
    }
    fn restrict(&self, f: &SliceMor) -> SliceMor {
        SliceMor {
            src: f.src.clone(),
            tgt: f.src.clone(),
            map: FinSet.restrict(&f.map),
        }
    }
    fn mor_eq(&self, f: &SliceMor, g: &SliceMor) -> bool {
        f.src == g.src && f.tgt == g.tgt && FinSet.mor_eq(&f.map, &g.map)
    }
    fn obj_size(&self, a: &SliceObj) -> usize {
        a.obj.len()
    }
    fn show(&self, f: &SliceMor) -> String {
        format!("{:?}", f.map)
    }
}

impl CartesianRestrictionCategory for Slice {
    fn terminal(&self) -> SliceObj {
        let id = FinSet.identity(&self.base);
        SliceObj {
            obj: self.base.clone(),
            over: ParMapEq(id),
        }
    }
    fn product(&self, a: &SliceObj, b: &SliceObj) -> SliceObj {
        let fp = self.fibre(a, b);
        let over = FinSet.compose(&fp.p0, &a.over.0).unwrap();
        SliceObj {
            obj: fp.obj,
            over: ParMapEq(over),
        }
    }
    fn pi0(&self, a: &SliceObj, b: &SliceObj) -> SliceMor {
        SliceMor {
            src: self.product(a, b),
            tgt: a.clone(),
            map: self.fibre(a, b).p0,
        }
    }
    fn pi1(&self, a: &SliceObj, b: &SliceObj) -> SliceMor {
        SliceMor {
            src: self.product(a, b),
            tgt: b.clone(),
            map: self.fibre(a, b).p1,
        }
    }
    fn pair(&self, f: &SliceMor, g: &SliceMor) -> Result<SliceMor> {
        if f.src != g.src {
            return Err(Error::shape("pairing needs a common source"));
        }
        let fp = self.fibre(&f.tgt, &g.tgt);
        let map = FinSet.fibre_pair(&fp, &f.map, &g.map)?;
        Ok(SliceMor {
            src: f.src.clone(),
            tgt: self.product(&f.tgt, &g.tgt),
            map,
        })
    }
    fn bang(&self, a: &SliceObj) -> SliceMor {
        SliceMor {
            src: a.clone(),
            tgt: self.terminal(),
            map: a.over.0.clone(),
        }
    }
}

impl crate::category::JoinRestrictionCategory for Slice {
    fn nowhere(&self, a: &SliceObj, b: &SliceObj) -> SliceMor {
        SliceMor {
            src: a.clone(),
            tgt: b.clone(),
            map: FinSet.nowhere(&a.obj, &b.obj),
        }
    }
    fn join_unchecked(&self, a: &SliceObj, b: &SliceObj, family: &[SliceMor]) -> Result<SliceMor> {
        let maps: Vec<ParMap> = family.iter().map(|f| f.map.clone()).collect();
        Ok(SliceMor {
            src: a.clone(),
            tgt: b.clone(),
            map: FinSet.join_unchecked(&a.obj, &b.obj, &maps)?,
        })
    }
}

/// `π0 : M × G -> M` as a group object over `M`, with fibrewise
/// multiplication, unit `⟨1, !u⟩` and inverse `1 × ι`.
pub fn slice_group(slice: &Slice, g: &FinGroup) -> Result<GroupObject<SliceObj, SliceMor>> {
    let c = FinSet;
    let m = &slice.base;
    let carrier = slice.object(c.pi0(m, &g.carrier))?;
    let gg = slice.product(&carrier, &carrier);
    let fp = slice.fibre(&carrier, &carrier);
    let snd = c.pi1(m, &g.carrier);
    let base_pt = c.compose(&fp.p0, &c.pi0(m, &g.carrier))?;
    let prod = c.compose(
        &c.pair(&c.compose(&fp.p0, &snd)?, &c.compose(&fp.p1, &snd)?)?,
        &g.mul,
    )?;
    let mul = SliceMor {
        src: gg,
        tgt: carrier.clone(),
        map: c.pair(&base_pt, &prod)?,
    };
    let unit_map = c.pair(&c.identity(m), &c.compose(&c.bang(m), &g.unit)?)?;
    let unit = SliceMor {
        src: slice.terminal(),
        tgt: carrier.clone(),
        map: unit_map,
    };
    let inv = SliceMor {
        src: carrier.clone(),
        tgt: carrier.clone(),
        map: times(&c, &c.identity(m), &g.inv)?,
    };
    Ok(GroupObject {
        carrier,
        mul,
        unit,
        inv,
    })
}

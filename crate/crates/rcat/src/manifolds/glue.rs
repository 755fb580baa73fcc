use super::atlas::{check_atlas, check_atlas_morphism, trivial_atlas, Atlas, AtlasMorphism};
use crate::category::{
    is_partial_iso, join, leq, partial_inverse, CartesianRestrictionCategory, RestrictionCategory,
};
use crate::error::{Error, Result};
use crate::finset::{all_maps, Atom, FinObj, FinSet, ParMap};
use crate::report::{Counterexample, LawReport, Regime};

pub type FinAtlas = Atlas<FinObj, ParMap>;

/// A gluing with charts `g_i : U_i -> G` and their partial inverses `g_i*`.
#[derive(Debug, Clone)]
pub struct Gluing {
    pub obj: FinObj,
    pub charts: Vec<ParMap>,
    pub inverses: Vec<ParMap>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    /// Keeps the smaller root, so every root is the least member of its class.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Quotient of `{(i,x) | x ∈ dom u_ii}` by `(i,x) ~ (j, u_ij x)`. Each class is
/// named `(i, x)` after its least member in chart-then-point order.
pub fn glue(atlas: &FinAtlas) -> Result<Gluing> {
    let c = FinSet;
    let laws = check_atlas(&c, atlas)?;
    if let Some(cx) = laws.counterexamples.first() {
        return Err(Error::IllFormedAtlas(format!(
            "{}: {} vs {}",
            cx.morphisms.join(" "),
            cx.lhs,
            cx.rhs
        )));
    }
    let n = atlas.len();
    let offsets: Vec<usize> = atlas
        .charts
        .iter()
        .scan(0, |acc, u| {
            let o = *acc;
            *acc += u.len();
            Some(o)
        })
        .collect();
    let total = offsets.last().map_or(0, |o| o + atlas.charts[n - 1].len());
    let live: Vec<bool> = (0..n)
        .flat_map(|i| (0..atlas.charts[i].len() as u32).map(move |x| (i, x)))
        .map(|(i, x)| atlas.u(i, i).apply(x).is_some())
        .collect();
    let mut uf = UnionFind((0..total).collect());
    for i in 0..n {
        for j in 0..n {
            for (x, y) in atlas.u(i, j).table.iter().enumerate() {
                if let Some(y) = y {
                    uf.union(offsets[i] + x, offsets[j] + *y as usize);
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut points = Vec::new();
    for node in 0..total {
        if !live[node] {
            continue;
        }
        let root = uf.find(node);
        if root == node {
            let i = offsets.iter().rposition(|&o| o <= node).unwrap();
            let x = atlas.charts[i].point((node - offsets[i]) as u32).clone();
            class_of[node] = points.len();
            points.push(Atom::Tuple(vec![Atom::Int(i as i64), x]));
        } else {
            class_of[node] = class_of[root];
        }
    }
    let obj = FinObj::new("G", points)?;
    let mut charts = Vec::with_capacity(n);
    let mut inverses = Vec::with_capacity(n);
    for i in 0..n {
        let u = &atlas.charts[i];
        let g = ParMap::from_fn(u, &obj, |x| {
            let node = offsets[i] + x as usize;
            live[node].then(|| class_of[node] as u32)
        });
        let mut inv = vec![None; obj.len()];
        for (x, k) in g.table.iter().enumerate() {
            if let Some(k) = k {
                if inv[*k as usize].replace(x as u32).is_some() {
                    return Err(Error::NonFunctionalRelation(format!(
                        "class {} meets chart {i} twice",
                        obj.point(*k)
                    )));
                }
            }
        }
        inverses.push(ParMap::new(obj.clone(), u.clone(), inv)?);
        charts.push(g);
    }
    Ok(Gluing {
        obj,
        charts,
        inverses,
    })
}

/// The identities that characterise a gluing: each `g_i` is a partial
/// isomorphism with inverse `g_i*`, `u_ij = g_i g_j*`, `u_ij g_j <= g_i` and
/// `⋁ g_i* g_i = 1_G`.
pub fn check_gluing(atlas: &FinAtlas, gl: &Gluing) -> Result<Vec<LawReport>> {
    let c = FinSet;
    let n = atlas.len();
    let mut iso = LawReport::new("gluing charts are partial isomorphisms", Regime::Exhaustive);
    let mut trans = LawReport::new("u_ij = g_i g_j*", Regime::Exhaustive);
    let mut below = LawReport::new("u_ij g_j <= g_i", Regime::Exhaustive);
    for i in 0..n {
        let g = &gl.charts[i];
        let ok = partial_inverse(&c, g).is_some_and(|inv| c.mor_eq(&inv, &gl.inverses[i]));
        iso.check(ok, || {
            Counterexample::new(vec![format!("g_{i}")], c.show(g), "partial inverse g_i*")
        });
        for j in 0..n {
            let lhs = c.compose(g, &gl.inverses[j])?;
            trans.check(c.mor_eq(&lhs, atlas.u(i, j)), || {
                Counterexample::new(
                    vec![format!("i={i} j={j}")],
                    c.show(&lhs),
                    c.show(atlas.u(i, j)),
                )
            });
            let lhs = c.compose(atlas.u(i, j), &gl.charts[j])?;
            let ok = leq(&c, &lhs, g)?;
            below.check(ok, || {
                Counterexample::new(vec![format!("i={i} j={j}")], c.show(&lhs), c.show(g))
            });
        }
    }
    let mut cover = LawReport::new("⋁ g_i* g_i = 1_G", Regime::Exhaustive);
    let parts = (0..n)
        .map(|i| c.compose(&gl.inverses[i], &gl.charts[i]))
        .collect::<Result<Vec<_>>>()?;
    match join(&c, &gl.obj, &gl.obj, &parts) {
        Ok(j) => {
            let id = c.identity(&gl.obj);
            cover.check(c.mor_eq(&j, &id), || {
                Counterexample::new(vec![], c.show(&j), c.show(&id))
            });
        }
        Err(e) => cover.check(false, || {
            Counterexample::new(vec![], e.to_string(), "compatible family")
        }),
    }
    let into_g = AtlasMorphism {
        comps: gl.charts.iter().map(|g| vec![g.clone()]).collect(),
    };
    let mut charts_morphism = LawReport::new(
        "(g_i) is an atlas morphism into At(1_G)",
        Regime::Exhaustive,
    );
    for r in check_atlas_morphism(&c, atlas, &trivial_atlas(&c, &gl.obj), &into_g)? {
        charts_morphism.cases += r.cases;
        for cx in r.counterexamples {
            charts_morphism.fail(cx);
        }
    }
    Ok(vec![iso, trans, below, cover, charts_morphism])
}

/// The map out of a gluing induced by `f_i : U_i -> X`, namely `⋁ g_i* f_i`.
pub fn induced_map(gl: &Gluing, f: &[ParMap]) -> Result<ParMap> {
    let c = FinSet;
    let x = f
        .first()
        .map(|m| m.tgt.clone())
        .ok_or_else(|| Error::shape("empty family"))?;
    if f.len() != gl.charts.len() {
        return Err(Error::shape("family size differs from the chart count"));
    }
    let parts = gl
        .inverses
        .iter()
        .zip(f)
        .map(|(gi, fi)| c.compose(gi, fi))
        .collect::<Result<Vec<_>>>()?;
    join(&c, &gl.obj, &x, &parts)
}

/// A named family `f_i : U_i -> X` used to exercise the universal property.
#[derive(Debug, Clone)]
pub struct Probe {
    pub name: String,
    pub family: Vec<ParMap>,
}

/// Probes built from the gluing itself: the charts, their composites with a
/// few fixed maps out of `G`, and the chart domains sent to a point.
pub fn standard_probes(atlas: &FinAtlas, gl: &Gluing) -> Vec<Probe> {
    let c = FinSet;
    let mut out = vec![Probe {
        name: "charts".into(),
        family: gl.charts.clone(),
    }];
    let to_point =
        (0..atlas.len()).map(|i| c.compose(atlas.u(i, i), &c.bang(&atlas.charts[i])).unwrap());
    out.push(Probe {
        name: "chart domains to a point".into(),
        family: to_point.collect(),
    });
    let three = FinObj::named("X3", "x", 3);
    let hs = [
        (
            "g_i then class index mod 3",
            ParMap::from_fn(&gl.obj, &three, |k| Some(k % 3)),
        ),
        (
            "g_i then a partial map to X3",
            ParMap::from_fn(&gl.obj, &three, |k| (k % 2 == 0).then_some((k / 2) % 3)),
        ),
        (
            "g_i then a constant",
            ParMap::from_fn(&gl.obj, &three, |_| Some(1)),
        ),
    ];
    for (name, h) in hs {
        let family = gl
            .charts
            .iter()
            .map(|g| c.compose(g, &h).unwrap())
            .collect();
        out.push(Probe {
            name: name.into(),
            family,
        });
    }
    out
}

/// Certify the universal property on probes: each probe must be an atlas
/// morphism into `At(1_X)`; the induced map `h` then satisfies `g_i h = f_i`,
/// and when the hom-set `G -> X` is small enough, `h` is shown to be the only
/// such map by enumeration.
pub fn check_universal_property(
    atlas: &FinAtlas,
    gl: &Gluing,
    probes: &[Probe],
) -> Result<LawReport> {
    let c = FinSet;
    let mut r = LawReport::new("gluing universal property", Regime::Probe);
    for p in probes {
        let x = p.family[0].tgt.clone();
        let target = trivial_atlas(&c, &x);
        let as_morphism = AtlasMorphism {
            comps: p.family.iter().map(|f| vec![f.clone()]).collect(),
        };
        let laws = check_atlas_morphism(&c, atlas, &target, &as_morphism)?;
        if laws.iter().any(|l| !l.passed()) {
            r.note(format!(
                "probe '{}' rejected: not an atlas morphism into At(1_X)",
                p.name
            ));
            continue;
        }
        let h = induced_map(gl, &p.family)?;
        for (i, (g, f)) in gl.charts.iter().zip(&p.family).enumerate() {
            let lhs = c.compose(g, &h)?;
            r.check(c.mor_eq(&lhs, f), || {
                Counterexample::new(
                    vec![p.name.clone(), format!("i={i}")],
                    c.show(&lhs),
                    c.show(f),
                )
            });
        }
        let space = ((x.len() + 1) as f64).powi(gl.obj.len() as i32);
        if space <= 200_000.0 {
            let mut count = 0usize;
            for cand in all_maps(&gl.obj, &x) {
                let fits = gl
                    .charts
                    .iter()
                    .zip(&p.family)
                    .all(|(g, f)| c.compose(g, &cand).is_ok_and(|m| c.mor_eq(&m, f)));
                count += fits as usize;
            }
            r.check(count == 1, || {
                Counterexample::new(
                    vec![p.name.clone()],
                    format!("{count} mediating maps"),
                    "exactly one",
                )
            });
        }
        r.note(format!("probe '{}' accepted", p.name));
    }
    Ok(r)
}

/// The atlas `(U_i, g_i g_j*)` read back off a gluing.
pub fn atlas_of(gl: &Gluing) -> Result<FinAtlas> {
    let c = FinSet;
    let n = gl.charts.len();
    let mut transitions = Vec::with_capacity(n);
    for i in 0..n {
        transitions.push(
            (0..n)
                .map(|j| c.compose(&gl.charts[i], &gl.inverses[j]))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Atlas {
        charts: gl.charts.iter().map(|g| g.src.clone()).collect(),
        transitions,
    })
}

/// `⋁_i g_i* g'_i`, the comparison between two gluings of one atlas.
pub fn comparison(a: &Gluing, b: &Gluing) -> Result<ParMap> {
    let c = FinSet;
    let parts = a
        .inverses
        .iter()
        .zip(&b.charts)
        .map(|(gi, hi)| c.compose(gi, hi))
        .collect::<Result<Vec<_>>>()?;
    let m = join(&c, &a.obj, &b.obj, &parts)?;
    if !(m.is_bijection() && is_partial_iso(&c, &m)) {
        return Err(Error::NotIso(format!("{m:?}")));
    }
    Ok(m)
}

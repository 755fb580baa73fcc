use crate::category::{join, leq, JoinRestrictionCategory, RestrictionCategory};
use crate::error::{Error, Result};
use crate::report::{Counterexample, LawReport, Regime};

/// Charts `U_i` and transitions `u_ij : U_i -> U_j`.
#[derive(Debug, Clone)]
pub struct Atlas<O, M> {
    pub charts: Vec<O>,
    pub transitions: Vec<Vec<M>>,
}

impl<O, M> Atlas<O, M> {
    pub fn len(&self) -> usize {
        self.charts.len()
    }
    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }
    pub fn u(&self, i: usize, j: usize) -> &M {
        &self.transitions[i][j]
    }
}

/// Components `A_ik : U_i -> V_k`.
#[derive(Debug, Clone)]
pub struct AtlasMorphism<M> {
    pub comps: Vec<Vec<M>>,
}

impl<M> AtlasMorphism<M> {
    pub fn a(&self, i: usize, k: usize) -> &M {
        &self.comps[i][k]
    }
}

/// The one-chart atlas `At(1_U)`.
pub fn trivial_atlas<C: RestrictionCategory + ?Sized>(c: &C, u: &C::Obj) -> Atlas<C::Obj, C::Mor> {
    Atlas {
        charts: vec![u.clone()],
        transitions: vec![vec![c.identity(u)]],
    }
}

/// `A_ik = u_ik`.
pub fn identity_morphism<O, M: Clone>(atlas: &Atlas<O, M>) -> AtlasMorphism<M> {
    AtlasMorphism {
        comps: atlas.transitions.clone(),
    }
}

pub fn validate_atlas<C: RestrictionCategory + ?Sized>(
    c: &C,
    atlas: &Atlas<C::Obj, C::Mor>,
) -> Result<()> {
    let n = atlas.len();
    if atlas.transitions.len() != n || atlas.transitions.iter().any(|row| row.len() != n) {
        return Err(Error::shape(format!(
            "atlas with {n} charts needs an {n}×{n} transition table"
        )));
    }
    for i in 0..n {
        for j in 0..n {
            let u = atlas.u(i, j);
            if c.dom(u) != atlas.charts[i] || c.cod(u) != atlas.charts[j] {
                return Err(Error::shape(format!(
                    "u_{i}{j} is not a morphism U_{i} -> U_{j}"
                )));
            }
        }
    }
    Ok(())
}

pub fn validate_morphism<C: RestrictionCategory + ?Sized>(
    c: &C,
    src: &Atlas<C::Obj, C::Mor>,
    tgt: &Atlas<C::Obj, C::Mor>,
    a: &AtlasMorphism<C::Mor>,
) -> Result<()> {
    if a.comps.len() != src.len() || a.comps.iter().any(|row| row.len() != tgt.len()) {
        return Err(Error::shape(
            "atlas morphism table does not match the chart counts",
        ));
    }
    for (i, row) in a.comps.iter().enumerate() {
        for (k, m) in row.iter().enumerate() {
            if c.dom(m) != src.charts[i] || c.cod(m) != tgt.charts[k] {
                return Err(Error::shape(format!(
                    "A_{i}{k} is not a morphism U_{i} -> V_{k}"
                )));
            }
        }
    }
    Ok(())
}

fn labelled<C: RestrictionCategory + ?Sized>(
    c: &C,
    label: String,
    lhs: &C::Mor,
    rhs: &C::Mor,
) -> Counterexample {
    Counterexample::new(vec![label], c.show(lhs), c.show(rhs))
}

/// The three atlas laws, over every index pair and triple.
pub fn check_atlas<C: RestrictionCategory + ?Sized>(
    c: &C,
    atlas: &Atlas<C::Obj, C::Mor>,
) -> Result<LawReport> {
    validate_atlas(c, atlas)?;
    let n = atlas.len();
    let mut r = LawReport::new("atlas laws", Regime::Exhaustive);
    for i in 0..n {
        for j in 0..n {
            let lhs = c.compose(atlas.u(i, i), atlas.u(i, j))?;
            r.check(c.mor_eq(&lhs, atlas.u(i, j)), || {
                labelled(
                    c,
                    format!("(i) u_{i}{i} u_{i}{j} = u_{i}{j}"),
                    &lhs,
                    atlas.u(i, j),
                )
            });
            for k in 0..n {
                let lhs = c.compose(atlas.u(i, j), atlas.u(j, k))?;
                let ok = leq(c, &lhs, atlas.u(i, k))?;
                r.check(ok, || {
                    labelled(
                        c,
                        format!("(ii) u_{i}{j} u_{j}{k} <= u_{i}{k}"),
                        &lhs,
                        atlas.u(i, k),
                    )
                });
            }
            let lhs = c.compose(atlas.u(i, j), atlas.u(j, i))?;
            let rhs = c.restrict(atlas.u(i, j));
            r.check(c.mor_eq(&lhs, &rhs), || {
                labelled(
                    c,
                    format!("(iii) u_{i}{j} u_{j}{i} = bar u_{i}{j}"),
                    &lhs,
                    &rhs,
                )
            });
        }
    }
    Ok(r)
}

/// The five atlas-morphism laws as separate reports, plus a cross-check that
/// every instance of (v) that holds also satisfies (iv), which (v) implies.
pub fn check_atlas_morphism<C: RestrictionCategory + ?Sized>(
    c: &C,
    src: &Atlas<C::Obj, C::Mor>,
    tgt: &Atlas<C::Obj, C::Mor>,
    a: &AtlasMorphism<C::Mor>,
) -> Result<Vec<LawReport>> {
    validate_morphism(c, src, tgt, a)?;
    let (n, m) = (src.len(), tgt.len());
    let mut r1 = LawReport::new("atlas morphism (i) u_ii A_ik = A_ik", Regime::Exhaustive);
    let mut r2 = LawReport::new("atlas morphism (ii) A_ik v_kk = A_ik", Regime::Exhaustive);
    let mut r3 = LawReport::new("atlas morphism (iii) u_ij A_jk <= A_ik", Regime::Exhaustive);
    let mut r4 = LawReport::new("atlas morphism (iv) A_ik v_kl <= A_il", Regime::Exhaustive);
    let mut r5 = LawReport::new(
        "atlas morphism (v) A_ik v_kl = bar(A_ik) A_il",
        Regime::Exhaustive,
    );
    let mut cross = LawReport::new("atlas morphism (v) implies (iv)", Regime::Exhaustive);
    for i in 0..n {
        for k in 0..m {
            let aik = a.a(i, k);
            let lhs = c.compose(src.u(i, i), aik)?;
            r1.check(c.mor_eq(&lhs, aik), || {
                labelled(c, format!("i={i} k={k}"), &lhs, aik)
            });
            let lhs = c.compose(aik, tgt.u(k, k))?;
            r2.check(c.mor_eq(&lhs, aik), || {
                labelled(c, format!("i={i} k={k}"), &lhs, aik)
            });
            for j in 0..n {
                let lhs = c.compose(src.u(i, j), a.a(j, k))?;
                let ok = leq(c, &lhs, aik)?;
                r3.check(ok, || labelled(c, format!("i={i} j={j} k={k}"), &lhs, aik));
            }
            for l in 0..m {
                let lhs = c.compose(aik, tgt.u(k, l))?;
                let iv = leq(c, &lhs, a.a(i, l))?;
                r4.check(iv, || {
                    labelled(c, format!("i={i} k={k} l={l}"), &lhs, a.a(i, l))
                });
                let rhs = c.compose(&c.restrict(aik), a.a(i, l))?;
                let v = c.mor_eq(&lhs, &rhs);
                r5.check(v, || labelled(c, format!("i={i} k={k} l={l}"), &lhs, &rhs));
                cross.check(!v || iv, || {
                    Counterexample::new(
                        vec![format!("i={i} k={k} l={l}")],
                        "(v) holds",
                        "(iv) fails",
                    )
                });
            }
        }
    }
    Ok(vec![r1, r2, r3, r4, r5, cross])
}

/// `(AB)_il = ⋁_k A_ik B_kl`.
pub fn compose_morphisms<C: JoinRestrictionCategory + ?Sized>(
    c: &C,
    src: &Atlas<C::Obj, C::Mor>,
    mid: &Atlas<C::Obj, C::Mor>,
    tgt: &Atlas<C::Obj, C::Mor>,
    a: &AtlasMorphism<C::Mor>,
    b: &AtlasMorphism<C::Mor>,
) -> Result<AtlasMorphism<C::Mor>> {
    validate_morphism(c, src, mid, a)?;
    validate_morphism(c, mid, tgt, b)?;
    let mut comps = Vec::with_capacity(src.len());
    for i in 0..src.len() {
        let mut row = Vec::with_capacity(tgt.len());
        for l in 0..tgt.len() {
            let family = (0..mid.len())
                .map(|k| c.compose(a.a(i, k), b.a(k, l)))
                .collect::<Result<Vec<_>>>()?;
            row.push(join(c, &src.charts[i], &tgt.charts[l], &family)?);
        }
        comps.push(row);
    }
    Ok(AtlasMorphism { comps })
}

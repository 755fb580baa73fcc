use super::brace::{brace, check_brace};
use super::check::PointPlan;
use super::group::{add_vec, all_points, neg_vec, TangentGroup};
use super::unit::{induce, TangentSpaceAtUnit};
use crate::category::{CartesianRestrictionCategory, RestrictionCategory};
use crate::error::{Error, Result};
use crate::poly::{encode, PolyMap, PolyMor};
use crate::report::{Counterexample, LawReport, Regime};
use rayon::prelude::*;

/// A section `ξ : G -> T(G)` together with its element `V_ξ = ⟨1, uξ⟩`.
#[derive(Debug, Clone)]
pub struct LeftInvariantField {
    pub xi: PolyMap,
    pub v: Vec<u32>,
}

/// `ξ_V = (0 × V p_u*)T(m)`.
pub fn field_of(
    g: &TangentGroup,
    tu: &TangentSpaceAtUnit,
    v: &[u32],
) -> Result<LeftInvariantField> {
    let c = &g.cat;
    let n = g.n;
    if v.len() != n {
        return Err(Error::shape(format!(
            "an element of T(G)_u has {n} coordinates"
        )));
    }
    let elem = PolyMap::total(PolyMor::constant(g.p(), 0, v));
    let at_unit = c.compose(&c.compose(&c.bang(&n), &elem)?, &tu.embed)?;
    let xi = c.compose(&c.pair(&c.zero(n), &at_unit)?, &g.tm())?;
    Ok(LeftInvariantField { xi, v: v.to_vec() })
}

/// `V_ξ = ⟨1, uξ⟩`.
pub fn element_of(g: &TangentGroup, xi: &PolyMap) -> Result<Vec<u32>> {
    let c = &g.cat;
    let mut landed = LawReport::new("uξ lies over u", Regime::Symbolic);
    let v = induce(g, "uξ", &c.compose(&g.group.unit, xi)?, &mut landed)?;
    if !landed.passed() {
        return Err(Error::model("ξ is not a section over the unit"));
    }
    v.eval(&[])
        .ok_or_else(|| Error::model("ξ undefined at the unit"))
}

/// `ξp = 1`, checked before anything else.
pub fn is_section(g: &TangentGroup, xi: &PolyMap) -> bool {
    let c = &g.cat;
    c.compose(xi, &c.proj(g.n))
        .is_ok_and(|f| c.mor_eq(&f, &c.identity(&g.n)))
}

/// `(0 × ξ)T(m) = mξ`.
pub fn is_left_invariant(g: &TangentGroup, xi: &PolyMap) -> bool {
    let c = &g.cat;
    let n = g.n;
    let run = || -> Result<bool> {
        let lhs = c.compose(&crate::category::times(c, &c.zero(n), xi)?, &g.tm())?;
        let rhs = c.compose(&g.group.mul, xi)?;
        Ok(c.mor_eq(&lhs, &rhs))
    };
    run().unwrap_or(false)
}

/// Pointwise tables of `G` used by the section search: `m`, and for each pair
/// `(g, h)` the matrix of `w ↦ T(m)((g, 0), (h, w))`.
struct PointTables {
    points: Vec<Vec<u32>>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    push: Vec<Vec<Vec<u32>>>,
}

impl PointTables {
    fn new(g: &TangentGroup) -> PointTables {
        let p = g.p();
        let n = g.n;
        let points: Vec<Vec<u32>> = all_points(p, n).collect();
        let size = points.len();
        let tm = g.tm();
        let mut mul = vec![0; size * size];
        let mut push = vec![Vec::new(); size * size];
        for (a, x) in points.iter().enumerate() {
            for (b, y) in points.iter().enumerate() {
                mul[a * size + b] = encode(p, &g.mul_point(x, y));
                push[a * size + b] = (0..n)
                    .map(|j| {
                        let e: Vec<u32> = (0..n).map(|i| u32::from(i == j)).collect();
                        let out = tm
                            .eval(&[x.clone(), vec![0; n], y.clone(), e].concat())
                            .expect("T(m) total");
                        out[n..].to_vec()
                    })
                    .collect();
            }
        }
        let inv = points
            .iter()
            .map(|x| encode(p, &g.group.inv.eval(x).expect("ι total")))
            .collect();
        PointTables {
            points,
            mul,
            inv,
            push,
        }
    }

    fn apply(&self, g: usize, h: usize, w: &[u32], p: u32) -> Vec<u32> {
        let cols = &self.push[g * self.points.len() + h];
        let n = w.len();
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i] as u64 * w[j] as u64).sum::<u64>() as u32 % p)
            .collect()
    }
}

/// Outcome of the exhaustive search over sections of `p`.
#[derive(Debug, Clone)]
pub struct SectionSearch {
    /// Values of each invariant section at the points of `G`, in encoding order.
    pub sections: Vec<Vec<Vec<u32>>>,
    pub nodes: u64,
}

/// Every left-invariant section, found by backtracking over pointwise values
/// with the invariance constraints checked as soon as both ends are assigned.
pub fn search_invariant_sections(g: &TangentGroup) -> SectionSearch {
    let t = PointTables::new(g);
    let p = g.p();
    let size = t.points.len();
    let unit = encode(p, &g.unit_point());
    let mut order = vec![unit];
    order.extend((0..size).filter(|&x| x != unit));
    let values: Vec<Vec<u32>> = all_points(p, g.n).collect();
    let mut assigned: Vec<Option<Vec<u32>>> = vec![None; size];
    let mut out = SectionSearch {
        sections: Vec::new(),
        nodes: 0,
    };

    fn consistent(t: &PointTables, assigned: &[Option<Vec<u32>>], x: usize, p: u32) -> bool {
        let size = t.points.len();
        let vx = assigned[x].as_ref().expect("x assigned");
        assigned.iter().enumerate().all(|(y, vy)| {
            let Some(vy) = vy else { return true };
            // (g, h) = (y x⁻¹, x) and (x y⁻¹, y)
            let g1 = t.mul[y * size + t.inv[x]];
            let g2 = t.mul[x * size + t.inv[y]];
            t.apply(g1, x, vx, p) == *vy && t.apply(g2, y, vy, p) == *vx
        })
    }

    fn go(
        t: &PointTables,
        order: &[usize],
        values: &[Vec<u32>],
        assigned: &mut Vec<Option<Vec<u32>>>,
        depth: usize,
        p: u32,
        out: &mut SectionSearch,
    ) {
        if depth == order.len() {
            out.sections.push(
                assigned
                    .iter()
                    .map(|v| v.clone().expect("complete"))
                    .collect(),
            );
            return;
        }
        let x = order[depth];
        for v in values {
            out.nodes += 1;
            assigned[x] = Some(v.clone());
            if consistent(t, assigned, x, p) {
                go(t, order, values, assigned, depth + 1, p, out);
            }
        }
        assigned[x] = None;
    }
    go(&t, &order, &values, &mut assigned, 0, p, &mut out);
    out
}

/// `V ↦ ξ_V ↦ V` for every `V`, `ξ ↦ V_ξ ↦ ξ` for every invariant `ξ`
/// (found exhaustively when `n <= 2`, otherwise over the generated family),
/// and closure of the invariant fields under `0`, `+` and `−`.
pub fn left_invariant_roundtrip(
    g: &TangentGroup,
    tu: &TangentSpaceAtUnit,
    neg: &PolyMap,
    plan: &PointPlan,
) -> Result<Vec<LawReport>> {
    let c = &g.cat;
    let n = g.n;
    let p = g.p();
    let elements: Vec<Vec<u32>> = all_points(p, n).collect();
    let fields: Vec<LeftInvariantField> = elements
        .iter()
        .map(|v| field_of(g, tu, v))
        .collect::<Result<_>>()?;

    let mut section = LawReport::new("ξ_V p = 1", Regime::Exhaustive);
    let mut invariant = LawReport::new("ξ_V left-invariant", Regime::Exhaustive);
    let mut back = LawReport::new("V_{ξ_V} = V", Regime::Exhaustive);
    for f in &fields {
        let name = || vec![format!("V = {:?}", f.v)];
        section.check(is_section(g, &f.xi), || {
            Counterexample::new(name(), c.show(&f.xi), "section")
        });
        invariant.check(is_left_invariant(g, &f.xi), || {
            Counterexample::new(name(), c.show(&f.xi), "invariant")
        });
        let v = element_of(g, &f.xi)?;
        back.check(v == f.v, || {
            Counterexample::new(name(), format!("{v:?}"), format!("{:?}", f.v))
        });
    }
    let mut reports = vec![section, invariant, back];

    let values_of = |xi: &PolyMap| -> Vec<Vec<u32>> {
        elements
            .iter()
            .map(|x| xi.eval(x).expect("total")[n..].to_vec())
            .collect()
    };
    if n <= 2 {
        let found = search_invariant_sections(g);
        let mut r = LawReport::new("every invariant section is ξ_{V_ξ}", Regime::Exhaustive);
        r.note(format!(
            "{} invariant sections among {}^({}·{}) candidates, {} search nodes",
            found.sections.len(),
            p,
            n,
            elements.len(),
            found.nodes
        ));
        let unit = encode(p, &g.unit_point());
        for s in &found.sections {
            let v = &s[unit];
            let regenerated = values_of(&field_of(g, tu, v)?.xi);
            r.check(regenerated == *s, || {
                Counterexample::new(vec![format!("ξ(u) = {v:?}")], "ξ_{V_ξ}", "ξ")
            });
        }
        r.check(found.sections.len() == elements.len(), || {
            Counterexample::new(
                vec![],
                format!("{} sections", found.sections.len()),
                format!("{} elements", elements.len()),
            )
        });
        reports.push(r);
    } else {
        let mut r = LawReport::new("ξ_{V_ξ} = ξ on the generated family", Regime::Exhaustive);
        for f in &fields {
            let again = field_of(g, tu, &element_of(g, &f.xi)?)?;
            r.check(c.mor_eq(&again.xi, &f.xi), || {
                Counterexample::new(
                    vec![format!("V = {:?}", f.v)],
                    c.show(&again.xi),
                    c.show(&f.xi),
                )
            });
        }
        r.note("n > 2: completeness rests on the bijection V ↦ ξ_V rather than a search");
        reports.push(r);
    }

    // Closure. Pairs are exhaustive for small carriers and sampled otherwise.
    let zero = field_of(g, tu, &vec![0; n])?;
    let zero_field = c.zero(n);
    let mut closed = LawReport::new(
        "invariant fields closed under 0, +, −",
        plan.regime(p, 2 * n),
    );
    closed.check(
        c.mor_eq(&zero.xi, &zero_field) && is_left_invariant(g, &zero_field),
        || Counterexample::new(vec!["0".into()], c.show(&zero.xi), c.show(&zero_field)),
    );
    let idx = |v: &[u32]| encode(p, v);
    let outcomes = plan.run(p, 2 * n, |vw| {
        let (v, w) = (&vw[..n], &vw[n..]);
        let (a, b) = (&fields[idx(v)], &fields[idx(w)]);
        let sum = c
            .compose(&c.tk_pair(n, &[&a.xi, &b.xi]).ok()?, &c.plus(n))
            .ok()?;
        let expect = &fields[idx(&add_vec(p, v, w))];
        let negated = c.compose(&a.xi, neg).ok()?;
        let expect_neg = &fields[idx(&neg_vec(p, v))];
        let ok = is_left_invariant(g, &sum)
            && c.mor_eq(&sum, &expect.xi)
            && is_left_invariant(g, &negated)
            && c.mor_eq(&negated, &expect_neg.xi);
        (!ok).then(|| {
            Counterexample::new(
                vec![format!("V = {v:?}, W = {w:?}")],
                c.show(&sum),
                c.show(&expect.xi),
            )
        })
    });
    closed.absorb(outcomes);
    reports.push(closed);
    Ok(reports)
}

/// Negation on `T²G` over `p : T²G -> TG`: `c T(−) c`.
fn neg2(g: &TangentGroup, neg: &PolyMap) -> Result<PolyMap> {
    let c = &g.cat;
    c.compose(&c.compose(&c.flip(g.n), &neg.tangent())?, &c.flip(g.n))
}

/// `[w1, w2] = {⟨w1 T(w2), w2 T(w1) c −⟩ +}` composed symbolically.
pub fn bracket_morphism(
    g: &TangentGroup,
    neg: &PolyMap,
    w1: &PolyMap,
    w2: &PolyMap,
) -> Result<(PolyMap, LawReport)> {
    let c = &g.cat;
    let n = g.n;
    let a = c.compose(w1, &w2.tangent())?;
    let b = c.compose(
        &c.compose(&c.compose(w2, &w1.tangent())?, &c.flip(n))?,
        &neg2(g, neg)?,
    )?;
    let (pa, pb) = (
        c.compose(&a, &c.proj(2 * n))?,
        c.compose(&b, &c.proj(2 * n))?,
    );
    if !c.mor_eq(&pa, &pb) {
        return Err(Error::shape(
            "w1 T(w2) and w2 T(w1) c − lie over different points of T(G)",
        ));
    }
    let sum = c.compose(&c.tk_pair(2 * n, &[&a, &b])?, &c.plus(2 * n))?;
    let out = brace(c, n, &sum)?;
    let check = check_brace(c, n, &sum, &out)?;
    Ok((out, check))
}

/// The same bracket evaluated point by point: the two terms are evaluated at
/// each `x`, negated through `c T(−) c`, added as `c₂ T(+) c`, and braced.
pub fn bracket_pointwise(
    g: &TangentGroup,
    neg: &PolyMap,
    w1: &PolyMap,
    w2: &PolyMap,
) -> Result<Vec<Vec<u32>>> {
    let c = &g.cat;
    let n = g.n;
    let (t1, t2) = (w1.tangent(), w2.tangent());
    let flip = c.flip(n);
    let neg_t = neg.tangent();
    let plus_t = c.plus(n).tangent();
    all_points(g.p(), n)
        .map(|x| {
            let at = |f: &PolyMap, y: &[u32]| {
                f.eval(y)
                    .ok_or_else(|| Error::model("bracket term undefined"))
            };
            let a = at(&t2, &at(w1, &x)?)?;
            let b = at(
                &flip,
                &at(&neg_t, &at(&flip, &at(&flip, &at(&t1, &at(w2, &x)?)?)?)?)?,
            )?;
            // c₂ T(+) c: flip both, pair into T(T₂G) and add.
            let (fa, fb) = (at(&flip, &a)?, at(&flip, &b)?);
            if fa[..n] != fb[..n] || fa[2 * n..3 * n] != fb[2 * n..3 * n] {
                return Err(Error::shape("terms do not agree after T(p)"));
            }
            let blk = |v: &[u32], k: usize| v[k * n..(k + 1) * n].to_vec();
            let tt2: Vec<u32> = [
                blk(&fa, 0),
                blk(&fa, 1),
                blk(&fb, 1),
                blk(&fa, 2),
                blk(&fa, 3),
                blk(&fb, 3),
            ]
            .concat();
            let sum = at(&flip, &at(&plus_t, &tt2)?)?;
            if sum[2 * n..3 * n].iter().any(|&k| k != 0) {
                return Err(Error::NotInEqualizer(format!("a-block nonzero at {x:?}")));
            }
            Ok([blk(&sum, 0), blk(&sum, 3)].concat())
        })
        .collect()
}

/// The bracket of two left-invariant fields, with both evaluation strategies
/// compared and the result checked to be a left-invariant section.
pub fn lie_bracket(
    g: &TangentGroup,
    tu: &TangentSpaceAtUnit,
    neg: &PolyMap,
    w1: &LeftInvariantField,
    w2: &LeftInvariantField,
) -> Result<(LeftInvariantField, Vec<LawReport>)> {
    let c = &g.cat;
    let n = g.n;
    for w in [w1, w2] {
        if !is_section(g, &w.xi) || !is_left_invariant(g, &w.xi) {
            return Err(Error::model(format!(
                "the field for V = {:?} is not a left-invariant section",
                w.v
            )));
        }
    }
    let (xi, brace_check) = bracket_morphism(g, neg, &w1.xi, &w2.xi)?;
    let pointwise = bracket_pointwise(g, neg, &w1.xi, &w2.xi)?;
    let label = || vec![format!("[{:?}, {:?}]", w1.v, w2.v)];
    let mut agree = LawReport::new(
        "bracket: composed and pointwise evaluation agree",
        Regime::Exhaustive,
    );
    for (x, want) in all_points(g.p(), n).zip(&pointwise) {
        let got = xi.eval(&x);
        agree.check(got.as_ref() == Some(want), || {
            Counterexample::new(label(), format!("{got:?}"), format!("{want:?}"))
        });
    }
    let mut shape = LawReport::new("bracket is a left-invariant section", Regime::Symbolic);
    shape.check(is_section(g, &xi), || {
        Counterexample::new(label(), c.show(&xi), "section")
    });
    shape.check(is_left_invariant(g, &xi), || {
        Counterexample::new(label(), c.show(&xi), "left-invariant")
    });
    let v = element_of(g, &xi)?;
    let regenerated = field_of(g, tu, &v)?;
    shape.check(c.mor_eq(&regenerated.xi, &xi), || {
        Counterexample::new(label(), c.show(&xi), "ξ_{V_ξ}")
    });
    Ok((
        LeftInvariantField { xi, v },
        vec![brace_check, agree, shape],
    ))
}

/// The bracket on all of `T(G)_u`, computed through fields, then checked
/// against the oracle `B(v, w) - B(w, v)`, for antisymmetry, bilinearity
/// (scalars act by repeated `+_u`) and the Jacobi identity.
pub fn lie_algebra_check(
    g: &TangentGroup,
    tu: &TangentSpaceAtUnit,
    neg: &PolyMap,
) -> Result<(Vec<Vec<u32>>, Vec<LawReport>)> {
    let n = g.n;
    let p = g.p();
    let elements: Vec<Vec<u32>> = all_points(p, n).collect();
    let size = elements.len();
    let fields: Vec<LeftInvariantField> = elements
        .iter()
        .map(|v| field_of(g, tu, v))
        .collect::<Result<_>>()?;

    // Basis brackets through the full pipeline.
    let basis: Vec<usize> = (0..n)
        .map(|i| encode(p, &(0..n).map(|j| u32::from(i == j)).collect::<Vec<_>>()))
        .collect();
    let mut reports = Vec::new();
    let mut pipeline = LawReport::new(
        "basis brackets: both strategies, invariance, brace equation",
        Regime::Exhaustive,
    );
    for &i in &basis {
        for &j in &basis {
            let (_, rs) = lie_bracket(g, tu, neg, &fields[i], &fields[j])?;
            for r in rs {
                pipeline.cases += r.cases;
                for cx in r.counterexamples {
                    pipeline.fail(cx);
                }
            }
        }
    }
    reports.push(pipeline);

    // Every pair via the composed bracket.
    let table: Vec<Vec<u32>> = (0..size * size)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (&fields[k / size], &fields[k % size]);
            let (xi, _) = bracket_morphism(g, neg, &a.xi, &b.xi)?;
            element_of(g, &xi)
        })
        .collect::<Result<_>>()?;
    let br = |a: usize, b: usize| &table[a * size + b];
    let idx = |v: &[u32]| encode(p, v);

    let mut oracle = LawReport::new("bracket = B(v,w) - B(w,v)", Regime::Exhaustive);
    let mut anti = LawReport::new("[v,w] = -[w,v] and [v,v] = 0", Regime::Exhaustive);
    for a in 0..size {
        for b in 0..size {
            let (v, w) = (&elements[a], &elements[b]);
            let want = g.bracket_oracle(v, w);
            oracle.check(*br(a, b) == want, || {
                Counterexample::new(
                    vec![format!("{v:?}, {w:?}")],
                    format!("{:?}", br(a, b)),
                    format!("{want:?}"),
                )
            });
            anti.check(*br(a, b) == neg_vec(p, br(b, a)), || {
                Counterexample::new(
                    vec![format!("{v:?}, {w:?}")],
                    format!("{:?}", br(a, b)),
                    format!("{:?}", neg_vec(p, br(b, a))),
                )
            });
        }
        anti.check(br(a, a).iter().all(|&k| k == 0), || {
            Counterexample::new(
                vec![format!("{:?}", elements[a])],
                format!("{:?}", br(a, a)),
                "0",
            )
        });
    }

    // Scalars act by repeated +_u.
    let plus_u = |v: &[u32], w: &[u32]| tu.plus.eval(&[v, w].concat()).expect("+_u total");
    let scale = |k: u32, v: &[u32]| (0..k).fold(vec![0; n], |acc, _| plus_u(&acc, v));
    let mut bilinear = LawReport::new("bracket 𝔽_p-bilinear", Regime::Exhaustive);
    bilinear.absorb(
        (0..size * size)
            .into_par_iter()
            .flat_map_iter(|k| {
                let (a, b) = (k / size, k % size);
                let mut out = Vec::with_capacity(size + 2 * p as usize);
                for c2 in 0..size {
                    let s = idx(&plus_u(&elements[a], &elements[c2]));
                    let ok = *br(s, b) == plus_u(br(a, b), br(c2, b));
                    let s = idx(&plus_u(&elements[b], &elements[c2]));
                    let ok = ok && *br(a, s) == plus_u(br(a, b), br(a, c2));
                    out.push((!ok).then(|| {
                        Counterexample::new(vec![format!("{a} {b} {c2}")], "additivity", "fails")
                    }));
                }
                for t in 0..p {
                    let sa = idx(&scale(t, &elements[a]));
                    let sb = idx(&scale(t, &elements[b]));
                    let want = scale(t, br(a, b));
                    let ok = *br(sa, b) == want && *br(a, sb) == want;
                    out.push((!ok).then(|| {
                        Counterexample::new(vec![format!("{t}·({a}, {b})")], "homogeneity", "fails")
                    }));
                }
                out
            })
            .collect(),
    );

    let mut jacobi = LawReport::new("[u,[v,w]] + [v,[w,u]] + [w,[u,v]] = 0", Regime::Exhaustive);
    jacobi.absorb(
        (0..size * size)
            .into_par_iter()
            .flat_map_iter(|k| {
                let (a, b) = (k / size, k % size);
                (0..size).map(move |c2| {
                    let t1 = br(a, idx(br(b, c2)));
                    let t2 = br(b, idx(br(c2, a)));
                    let t3 = br(c2, idx(br(a, b)));
                    let s = add_vec(p, &add_vec(p, t1, t2), t3);
                    (s.iter().any(|&x| x != 0)).then(|| {
                        Counterexample::new(vec![format!("{a} {b} {c2}")], format!("{s:?}"), "0")
                    })
                })
            })
            .collect(),
    );
    jacobi.note(format!("ring: ℤ acting through 𝔽_{p}"));
    reports.extend([oracle, anti, bilinear, jacobi]);
    Ok((table, reports))
}

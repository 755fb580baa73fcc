use super::group::TangentGroup;
use crate::category::{times, CartesianRestrictionCategory, RestrictionCategory};
use crate::error::{Error, Result};
use crate::poly::{in_lift_equalizer, PolyMap};
use crate::report::{Counterexample, LawReport, Regime};

/// `T(G)_u` as the standalone object `𝔽_p^n` with explicit `p_u*`. The
/// structure maps are induced from maps into `T(G)` (or `T²G` for `ℓ_u`)
/// by dropping the base coordinates, after checking that those are `u`.
#[derive(Debug, Clone)]
pub struct TangentSpaceAtUnit {
    pub n: usize,
    /// `p_u* : T(G)_u -> T(G)`, `w ↦ (u, w)`.
    pub embed: PolyMap,
    pub zero: PolyMap,
    pub plus: PolyMap,
    pub tm: PolyMap,
    pub inv: PolyMap,
    /// `ℓ_u : T(G)_u -> T(T(G)_u)`, coordinates `(w, dw)` on the target.
    pub lift: PolyMap,
}

fn vector_part(g: &TangentGroup) -> PolyMap {
    g.cat.select(2 * g.n, &(g.n..2 * g.n).collect::<Vec<_>>())
}

/// Induce a map into `T(G)_u` from `h : X -> T(G)`, recording whether `h p = !u`.
pub fn induce(g: &TangentGroup, law: &str, h: &PolyMap, landed: &mut LawReport) -> Result<PolyMap> {
    let c = &g.cat;
    let hp = c.compose(h, &c.proj(g.n))?;
    let bu = c.compose(&c.restrict(h), &g.bang_unit(h.src))?;
    landed.check(c.mor_eq(&hp, &bu), || {
        Counterexample::new(vec![law.into()], c.show(&hp), c.show(&bu))
    });
    c.compose(h, &vector_part(g))
}

impl TangentSpaceAtUnit {
    pub fn new(g: &TangentGroup) -> Result<(TangentSpaceAtUnit, LawReport)> {
        let c = &g.cat;
        let n = g.n;
        let mut landed = LawReport::new("induced maps land over u", Regime::Symbolic);
        let embed = c.pair(&g.bang_unit(n), &c.identity(&n))?;
        let pu = c.compose(&embed, &c.proj(n))?;
        let bu = g.bang_unit(n);
        landed.check(c.mor_eq(&pu, &bu), || {
            Counterexample::new(vec!["p_u* p".into()], c.show(&pu), c.show(&bu))
        });

        let zero_raw = c.compose(&g.group.unit, &c.zero(n))?;
        let zero = induce(g, "u 0", &zero_raw, &mut landed)?;
        let e0 = c.compose(&c.pi0(&n, &n), &embed)?;
        let e1 = c.compose(&c.pi1(&n, &n), &embed)?;
        let plus_raw = c.compose(&c.tk_pair(n, &[&e0, &e1])?, &c.plus(n))?;
        let plus = induce(g, "⟨p_u*, p_u*⟩ +", &plus_raw, &mut landed)?;
        let tm_raw = c.compose(&times(c, &embed, &embed)?, &g.tm())?;
        let tm = induce(g, "(p_u* × p_u*) T(m)", &tm_raw, &mut landed)?;
        let inv_raw = c.compose(&embed, &g.group.inv.tangent())?;
        let inv = induce(g, "p_u* T(ι)", &inv_raw, &mut landed)?;

        // ℓ lands in the image of T(p_u*): over T(u) after T(p).
        let lift_raw = c.compose(&embed, &c.lift(n))?;
        let tp = c.compose(&lift_raw, &c.proj(n).tangent())?;
        let tu = c.compose(&c.bang(&n), &g.group.unit.tangent())?;
        landed.check(c.mor_eq(&tp, &tu), || {
            Counterexample::new(vec!["p_u* ℓ T(p)".into()], c.show(&tp), c.show(&tu))
        });
        let mut idx: Vec<usize> = (n..2 * n).collect();
        idx.extend(3 * n..4 * n);
        let lift = c.compose(&lift_raw, &c.select(4 * n, &idx))?;
        Ok((
            TangentSpaceAtUnit {
                n,
                embed,
                zero,
                plus,
                tm,
                inv,
                lift,
            },
            landed,
        ))
    }

    /// `{1}` on `T(T(G)_u)`, derived rather than assumed. `T(p_u*)` commutes
    /// with `ℓ`, `0` and `+`, so uniqueness of braces gives
    /// `{T(p_u*)} = {1} p_u*`. The brace of `T(p_u*)` is computed in `T²G`,
    /// checked to lie over `u` and read into `T(G)_u`; the defining equation
    /// `1 = ⟨{1}ℓ_u, p0⟩T(+_u)` is then re-checked on `T(T(G)_u)`.
    pub fn brace_of_identity(&self, g: &TangentGroup) -> Result<(PolyMap, LawReport)> {
        let c = &g.cat;
        let n = self.n;
        let t_embed = self.embed.tangent();
        if !in_lift_equalizer(c, n, &t_embed)? {
            return Err(Error::NotInEqualizer("T(p_u*)".into()));
        }
        let braced = super::brace::brace(c, n, &t_embed)?;
        let mut landed = LawReport::new("{1} on T(T(G)_u) lies over u", Regime::Symbolic);
        let one = induce(g, "{T(p_u*)}", &braced, &mut landed)?;
        let dw = c.select(2 * n, &(n..2 * n).collect::<Vec<_>>());
        let matches = c.mor_eq(&one, &dw);
        landed.note(format!(
            "{{1}} = {{T(p_u*)}} read through p_u*; in coordinates (w, dw) ↦ dw: {}",
            if matches {
                "confirmed"
            } else {
                "NOT confirmed"
            }
        ));
        landed.check(matches, || {
            Counterexample::new(vec!["{1}".into()], c.show(&one), "π1")
        });
        let id = c.identity(&(2 * n));
        let p0 = c.compose(&c.proj(n), &c.zero(n))?;
        let legs = c.pair(&c.compose(&one, &self.lift)?, &p0)?;
        let rebuilt = c.compose(&c.compose(&legs, &c.unshuffle(n, n))?, &self.plus.tangent())?;
        landed.check(c.mor_eq(&rebuilt, &id), || {
            Counterexample::new(vec!["⟨{1}ℓ_u, p0⟩T(+_u)".into()], c.show(&rebuilt), "1")
        });
        Ok((one, landed))
    }
}

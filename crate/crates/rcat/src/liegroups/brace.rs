use crate::category::RestrictionCategory;
use crate::error::{Error, Result};
use crate::poly::{in_lift_equalizer, PolyCat, PolyMap};
use crate::report::{Counterexample, LawReport, Regime};

fn blocks(c: &PolyCat, n: usize, f: &PolyMap, which: &[usize]) -> Result<PolyMap> {
    let idx: Vec<usize> = which.iter().flat_map(|&b| b * n..(b + 1) * n).collect();
    c.compose(f, &c.select(4 * n, &idx))
}

/// `{f} : X -> TM` for `f : X -> T²M` in the equalizer of `T(p)` and
/// `T(p)p0`. With `f = (f0, f1, 0, f3)` this is `(f0, f3)`.
pub fn brace(c: &PolyCat, n: usize, f: &PolyMap) -> Result<PolyMap> {
    if f.tgt != 4 * n {
        return Err(Error::shape(format!(
            "brace needs a map into T²M with M of arity {n}"
        )));
    }
    if !in_lift_equalizer(c, n, f)? {
        let a = blocks(c, n, f, &[2])?;
        let dom = f.domain();
        let witness = super::group::all_points(c.p, f.src)
            .take(1 << 16)
            .filter(|x| dom.contains(x))
            .find(|x| a.eval(x).is_some_and(|v| v.iter().any(|&k| k != 0)))
            .map(|x| format!("{x:?}"))
            .unwrap_or_else(|| "a jet of the a-block".into());
        return Err(Error::NotInEqualizer(format!(
            "a-block of f is nonzero at {witness}"
        )));
    }
    blocks(c, n, f, &[0, 3])
}

/// Re-verify `f = ⟨{f}ℓ, f p 0⟩ T(+)`, the defining equation of the brace.
pub fn check_brace(c: &PolyCat, n: usize, f: &PolyMap, braced: &PolyMap) -> Result<LawReport> {
    let lifted = c.compose(braced, &c.lift(n))?;
    let based = c.compose(&c.compose(f, &c.proj(2 * n))?, &c.zero(2 * n))?;
    let rebuilt = c.compose(&c.tp_pair(n, &lifted, &based)?, &c.plus(n).tangent())?;
    let mut r = LawReport::new("f = ⟨{f}ℓ, fp0⟩T(+)", Regime::Symbolic);
    r.check(c.mor_eq(&rebuilt, f), || {
        Counterexample::new(vec![c.show(f)], c.show(&rebuilt), c.show(f))
    });
    Ok(r)
}

use super::atlas::Atlas;
use super::bundle::{FibreBundle, FinBundle};
use super::glue::FinAtlas;
use crate::error::{Error, Result};
use crate::finset::{map_from_json, map_to_json, obj_from_json, obj_to_json, FinSet};
use serde_json::{json, Map, Value};

/// `{"charts": [object, ...], "transitions": {"i,j": map, ...}}`; missing
/// pairs are read as nowhere-defined.
pub fn atlas_to_json(a: &FinAtlas) -> Result<Value> {
    let mut transitions = Map::new();
    for i in 0..a.len() {
        for j in 0..a.len() {
            if a.u(i, j).domain_size() > 0 {
                transitions.insert(format!("{i},{j}"), map_to_json(a.u(i, j))?);
            }
        }
    }
    Ok(
        json!({ "charts": a.charts.iter().map(obj_to_json).collect::<Vec<_>>(), "transitions": transitions }),
    )
}

pub fn atlas_from_json(v: &Value) -> Result<FinAtlas> {
    use crate::JoinRestrictionCategory;
    let charts = v
        .get("charts")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::model("atlas needs a \"charts\" array"))?
        .iter()
        .map(obj_from_json)
        .collect::<Result<Vec<_>>>()?;
    let n = charts.len();
    let mut transitions: Vec<Vec<_>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| FinSet.nowhere(&charts[i], &charts[j]))
                .collect()
        })
        .collect();
    if let Some(t) = v.get("transitions") {
        let t = t
            .as_object()
            .ok_or_else(|| Error::model("\"transitions\" must be an object"))?;
        for (key, m) in t {
            let (i, j) = parse_key(key, n)?;
            let f = map_from_json(m)?;
            if f.src != charts[i] || f.tgt != charts[j] {
                return Err(Error::shape(format!(
                    "transition {key} does not run between charts {i} and {j}"
                )));
            }
            transitions[i][j] = f;
        }
    }
    Ok(Atlas {
        charts,
        transitions,
    })
}

fn parse_key(key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || {
        Error::model(format!(
            "transition key \"{key}\" is not of the form \"i,j\" with i,j < {n}"
        ))
    };
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i >= n || j >= n {
        return Err(bad());
    }
    Ok((i, j))
}

/// `{"total", "base", "fibre", "q", "charts": [α_i], "idempotents": [e_i]}`.
pub fn bundle_to_json(b: &FinBundle) -> Result<Value> {
    Ok(json!({
        "total": obj_to_json(&b.total),
        "base": obj_to_json(&b.base),
        "fibre": obj_to_json(&b.fibre),
        "q": map_to_json(&b.q)?,
        "charts": b.alphas.iter().map(map_to_json).collect::<Result<Vec<_>>>()?,
        "idempotents": b.idempotents.iter().map(map_to_json).collect::<Result<Vec<_>>>()?,
    }))
}

pub fn bundle_from_json(v: &Value) -> Result<FinBundle> {
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| Error::model(format!("bundle needs \"{k}\"")))
    };
    let maps = |k: &str| -> Result<Vec<_>> {
        field(k)?
            .as_array()
            .ok_or_else(|| Error::model(format!("\"{k}\" must be an array")))?
            .iter()
            .map(map_from_json)
            .collect()
    };
    FibreBundle::new(
        &FinSet,
        obj_from_json(field("total")?)?,
        obj_from_json(field("base")?)?,
        obj_from_json(field("fibre")?)?,
        map_from_json(field("q")?)?,
        maps("charts")?,
        maps("idempotents")?,
    )
}

use super::{Atom, FinObj, ParMap};
use crate::error::{Error, Result};
use serde_json::{json, Map, Value};
use std::collections::HashMap;

pub fn obj_to_json(a: &FinObj) -> Value {
    json!({ "object": a.name(), "points": a.points() })
}

pub fn obj_from_json(v: &Value) -> Result<FinObj> {
    let name = v
        .get("object")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::model("object JSON needs a string \"object\" field"))?;
    let points = v
        .get("points")
        .ok_or_else(|| Error::model("object JSON needs \"points\""))?;
    let points: Vec<Atom> = serde_json::from_value(points.clone())?;
    FinObj::new(name, points)
}

/// Table keys: a symbol is its own key, any other atom its compact JSON.
fn key_of(a: &Atom) -> String {
    match a {
        Atom::Sym(s) => s.clone(),
        other => serde_json::to_string(other).expect("atoms serialize"),
    }
}

fn keys(a: &FinObj) -> Result<HashMap<String, u32>> {
    let mut out = HashMap::with_capacity(a.len());
    for (i, p) in a.points().iter().enumerate() {
        if out.insert(key_of(p), i as u32).is_some() {
            return Err(Error::model(format!(
                "points of {} have colliding table keys ({})",
                a.name(),
                key_of(p)
            )));
        }
    }
    Ok(out)
}

pub fn map_to_json(f: &ParMap) -> Result<Value> {
    keys(&f.src)?;
    let mut table = Map::new();
    for (i, v) in f.table.iter().enumerate() {
        if let Some(j) = v {
            table.insert(
                key_of(f.src.point(i as u32)),
                serde_json::to_value(f.tgt.point(*j))?,
            );
        }
    }
    Ok(json!({ "map": { "src": obj_to_json(&f.src), "tgt": obj_to_json(&f.tgt), "table": table } }))
}

pub fn map_from_json(v: &Value) -> Result<ParMap> {
    let m = v
        .get("map")
        .ok_or_else(|| Error::model("map JSON needs a \"map\" field"))?;
    let src = obj_from_json(
        m.get("src")
            .ok_or_else(|| Error::model("map needs \"src\""))?,
    )?;
    let tgt = obj_from_json(
        m.get("tgt")
            .ok_or_else(|| Error::model("map needs \"tgt\""))?,
    )?;
    let table_json = m
        .get("table")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::model("map needs an object \"table\""))?;
    let src_keys = keys(&src)?;
    let mut table = vec![None; src.len()];
    for (k, val) in table_json {
        let i = *src_keys.get(k).ok_or_else(|| {
            Error::shape(format!("table key {k} is not a point of {}", src.name()))
        })?;
        let b: Atom = serde_json::from_value(val.clone())?;
        let j = tgt
            .index_of(&b)
            .ok_or_else(|| Error::shape(format!("{b} is not a point of {}", tgt.name())))?;
        table[i as usize] = Some(j);
    }
    ParMap::new(src, tgt, table)
}

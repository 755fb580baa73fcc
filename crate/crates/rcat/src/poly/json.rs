use super::domain::Domain;
use super::map::PolyMap;
use super::ring::{Poly, PolyMor};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: u32,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    p: u32,
    arity: usize,
    terms: Vec<TermJson>,
}

/// A domain is the string `"full"` or an explicit point list.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DomainJson {
    Full(String),
    Points(Vec<Vec<u32>>),
}

#[derive(Serialize, Deserialize)]
struct PieceJson {
    domain: DomainJson,
    body: Vec<PolyJson>,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    p: u32,
    src: usize,
    tgt: usize,
    pieces: Vec<PieceJson>,
}

fn poly_out(q: &Poly) -> PolyJson {
    PolyJson {
        p: q.p,
        arity: q.arity,
        terms: q
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                coef: *c,
            })
            .collect(),
    }
}

fn poly_in(j: PolyJson) -> Result<Poly> {
    if !super::ring::is_prime(j.p) {
        return Err(Error::model(format!("{} is not prime", j.p)));
    }
    let mut q = Poly::zero(j.p, j.arity);
    for t in j.terms {
        if t.exp.len() != j.arity {
            return Err(Error::shape(format!(
                "exponent vector {:?} does not have length {}",
                t.exp, j.arity
            )));
        }
        q.add_term(t.exp, t.coef);
    }
    Ok(q)
}

pub fn poly_to_json(q: &Poly) -> Value {
    serde_json::to_value(poly_out(q)).expect("polynomials serialize")
}

pub fn poly_from_json(v: &Value) -> Result<Poly> {
    poly_in(serde_json::from_value(v.clone())?)
}

pub fn map_to_json(f: &PolyMap) -> Value {
    let pieces = f
        .pieces
        .iter()
        .map(|(d, b)| PieceJson {
            domain: if d.is_full() {
                DomainJson::Full("full".into())
            } else {
                DomainJson::Points(d.points())
            },
            body: b.comps.iter().map(poly_out).collect(),
        })
        .collect();
    serde_json::to_value(MapJson {
        p: f.p,
        src: f.src,
        tgt: f.tgt,
        pieces,
    })
    .expect("maps serialize")
}

pub fn map_from_json(v: &Value, depth: usize) -> Result<PolyMap> {
    let j: MapJson = serde_json::from_value(v.clone())?;
    let mut pieces = Vec::new();
    for piece in j.pieces {
        let d = match piece.domain {
            DomainJson::Full(s) if s == "full" => Domain::full(j.p, j.src),
            DomainJson::Full(s) => return Err(Error::model(format!("unknown domain keyword {s}"))),
            DomainJson::Points(pts) => {
                if pts
                    .iter()
                    .any(|x| x.len() != j.src || x.iter().any(|&c| c >= j.p))
                {
                    return Err(Error::shape("domain point outside the source"));
                }
                Domain::from_points(j.p, j.src, &pts)
            }
        };
        let comps = piece
            .body
            .into_iter()
            .map(poly_in)
            .collect::<Result<Vec<_>>>()?;
        if comps.len() != j.tgt || comps.iter().any(|q| q.arity != j.src || q.p != j.p) {
            return Err(Error::shape("piece body does not match the declared shape"));
        }
        pieces.push((d, PolyMor::new(j.p, j.src, comps)));
    }
    PolyMap::piecewise(j.p, j.src, j.tgt, pieces, depth)
}

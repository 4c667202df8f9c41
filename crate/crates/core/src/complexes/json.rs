use serde_json::{json, Map, Value};

use super::chain::ChainComplex;
use super::graded::GradedObject;
use super::multi::{BinaryMulticomplex, DiffMap, Multicomplex};
use crate::error::{Error, Result};
use crate::json::{cell_key, parse_cell_key};
use crate::linalg::IntMatrix;

/// A complex read from or written to the interchange format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexData {
    Plain(Multicomplex),
    Binary(BinaryMulticomplex),
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn family_to_json(dim: usize, fam: &[DiffMap]) -> Value {
    let per_dir = |m: &DiffMap| -> Value {
        Value::Object(m.iter().map(|(c, x)| (cell_key(c), x.to_json())).collect::<Map<_, _>>())
    };
    if dim == 1 {
        per_dir(&fam[0])
    } else {
        Value::Object(fam.iter().enumerate().map(|(i, m)| ((i + 1).to_string(), per_dir(m))).collect())
    }
}

fn family_from_json(dim: usize, v: &Value, name: &str) -> Result<Vec<DiffMap>> {
    let obj = v.as_object().ok_or_else(|| parse_err(format!("\"{name}\" must be an object")))?;
    let parse_dir = |m: &Map<String, Value>| -> Result<DiffMap> {
        let mut out = DiffMap::new();
        for (k, x) in m {
            let cell = parse_cell_key(k, dim).map_err(parse_err)?;
            let mat = IntMatrix::from_json(x).map_err(|e| Error::Validation { cell: k.clone(), message: e })?;
            out.insert(cell, mat);
        }
        Ok(out)
    };
    let flat = dim == 1 && obj.values().all(|x| x.get("rows").is_some());
    if flat {
        return Ok(vec![parse_dir(obj)?]);
    }
    let mut fam = vec![DiffMap::new(); dim];
    for (k, x) in obj {
        let dir: usize = k.trim().parse().map_err(|_| parse_err(format!("bad direction {k:?} in \"{name}\"")))?;
        if dir == 0 || dir > dim {
            return Err(parse_err(format!("direction {dir} out of range 1..={dim}")));
        }
        let m = x.as_object().ok_or_else(|| parse_err(format!("\"{name}\".{k} must be an object")))?;
        fam[dir - 1] = parse_dir(m)?;
    }
    Ok(fam)
}

fn ranks_to_json(g: &GradedObject) -> Value {
    Value::Object(g.cells().map(|(c, r)| (cell_key(c), Value::from(r))).collect())
}

impl ComplexData {
    pub fn to_json(&self) -> Value {
        match self {
            ComplexData::Plain(m) => json!({
                "dimension": m.dim(),
                "ranks": ranks_to_json(m.objects()),
                "differentials": {"d": family_to_json(m.dim(), m.family())},
            }),
            ComplexData::Binary(b) => json!({
                "dimension": b.dim(),
                "ranks": ranks_to_json(b.objects()),
                "differentials": {
                    "d": family_to_json(b.dim(), b.d_family()),
                    "d_tilde": family_to_json(b.dim(), b.d_tilde_family()),
                },
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dim = v.get("dimension").and_then(Value::as_u64).ok_or_else(|| parse_err("missing integer \"dimension\""))? as usize;
        if dim == 0 {
            return Err(parse_err("dimension must be at least 1"));
        }
        let ranks = v.get("ranks").and_then(Value::as_object).ok_or_else(|| parse_err("missing object \"ranks\""))?;
        let mut g = GradedObject::new(dim);
        for (k, r) in ranks {
            let cell = parse_cell_key(k, dim).map_err(parse_err)?;
            let r = r.as_u64().ok_or_else(|| parse_err(format!("rank at {k} must be a nonnegative integer")))?;
            g.set_rank(cell, r as usize);
        }
        let diffs = v.get("differentials").and_then(Value::as_object).ok_or_else(|| parse_err("missing object \"differentials\""))?;
        let d = match diffs.get("d") {
            Some(x) => family_from_json(dim, x, "d")?,
            None => vec![DiffMap::new(); dim],
        };
        match diffs.get("d_tilde") {
            Some(x) => {
                let dt = family_from_json(dim, x, "d_tilde")?;
                Ok(ComplexData::Binary(BinaryMulticomplex::new(g, d, dt)?))
            }
            None => Ok(ComplexData::Plain(Multicomplex::new(g, d)?)),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn dim(&self) -> usize {
        match self {
            ComplexData::Plain(m) => m.dim(),
            ComplexData::Binary(b) => b.dim(),
        }
    }

    /// Plain complexes become diagonal binary ones.
    pub fn into_binary(self) -> BinaryMulticomplex {
        match self {
            ComplexData::Plain(m) => m.as_binary(),
            ComplexData::Binary(b) => b,
        }
    }
}

impl From<&ChainComplex> for ComplexData {
    fn from(c: &ChainComplex) -> Self {
        ComplexData::Plain(Multicomplex::from_chain(c))
    }
}

//! JSON encodings shared by every interchange format: integers that fit in 64
//! bits are plain numbers, larger ones are decimal strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::linalg::IntMatrix;

pub fn bigint_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn bigint_from_value(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("non-integer entry {n}"))
            }
        }
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}")),
        other => Err(format!("expected integer, found {other}")),
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        bigint_to_value(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = Value::deserialize(d)?;
        bigint_from_value(&v).map_err(D::Error::custom)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(bigint_to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter().map(|x| bigint_from_value(x).map_err(D::Error::custom)).collect()
    }
}

impl IntMatrix {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> =
            (0..self.rows()).map(|i| Value::Array(self.row(i).iter().map(bigint_to_value).collect())).collect();
        serde_json::json!({"rows": self.rows(), "cols": self.cols(), "entries": entries})
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        let rows = v.get("rows").and_then(Value::as_u64).ok_or("matrix needs integer \"rows\"")? as usize;
        let cols = v.get("cols").and_then(Value::as_u64).ok_or("matrix needs integer \"cols\"")? as usize;
        let entries = v.get("entries").and_then(Value::as_array).ok_or("matrix needs \"entries\" array")?;
        if entries.len() != rows {
            return Err(format!("expected {rows} rows, found {}", entries.len()));
        }
        let mut flat = Vec::with_capacity(rows * cols);
        for (i, row) in entries.iter().enumerate() {
            let row = row.as_array().ok_or(format!("row {i} is not an array"))?;
            if row.len() != cols {
                return Err(format!("row {i} has {} entries, expected {cols}", row.len()));
            }
            for x in row {
                flat.push(bigint_from_value(x)?);
            }
        }
        IntMatrix::from_entries(rows, cols, flat).map_err(|e| e.to_string())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        IntMatrix::from_json(&v).map_err(D::Error::custom)
    }
}

/// Multi-index key such as `"2"` or `"1,0"`.
pub fn cell_key(cell: &[usize]) -> String {
    cell.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_cell_key(key: &str, dim: usize) -> Result<Vec<usize>, String> {
    let parts: Result<Vec<usize>, _> = key.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let parts = parts.map_err(|_| format!("bad multi-index {key:?} (must be nonnegative integers)"))?;
    if parts.len() != dim {
        return Err(format!("multi-index {key:?} has {} entries, dimension is {dim}", parts.len()));
    }
    Ok(parts)
}

//! Replayable certificates for relations between classes of bounded acyclic binary
//! multicomplexes: short exact sequences, diagonal objects, and chains of them that
//! reduce a claimed identity to the relations.

mod product;
mod shift;
mod splitting;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::complexes::{BinaryMulticomplex, CellMap, ComplexData, ShortExactSequence};
use crate::error::{Error, Result};
use crate::json::{bigint_from_value, bigint_to_value, cell_key, parse_cell_key};
use crate::linalg::{solve_integer, IntMatrix};

pub use product::product_vanishing_witness;
pub use shift::shift_witness;
pub use splitting::{
    binary_nonsplit_check, binary_nonsplit_example, find_binary_section, split_acyclic_mono, split_chain_idempotent,
    IdempotentKernel,
};

/// Formal integer combination of stored objects, keyed by object index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KClassExpr(pub BTreeMap<usize, BigInt>);

impl KClassExpr {
    pub fn term(id: usize, coeff: impl Into<BigInt>) -> Self {
        let mut e = Self::default();
        e.add(id, coeff.into());
        e
    }

    pub fn add(&mut self, id: usize, coeff: BigInt) {
        let slot = self.0.entry(id).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.0.remove(&id);
        }
    }

    pub fn add_scaled(&mut self, other: &KClassExpr, c: &BigInt) {
        for (&id, x) in &other.0 {
            self.add(id, x * c);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for KClassExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (id, c)) in self.0.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            let mag = c.abs();
            if mag != BigInt::from(1) {
                write!(f, "{mag}")?;
            }
            write!(f, "[#{id}]")?;
        }
        Ok(())
    }
}

/// One relation. Objects are referenced by index into the owning chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationWitness {
    /// `[total] = [sub] + [quotient]`.
    Ses { sub: usize, total: usize, quotient: usize, inclusion: CellMap, projection: CellMap },
    /// `[object] = 0`: both differentials agree in `direction`.
    Diagonal { object: usize, direction: usize },
}

impl RelationWitness {
    /// The relation as an expression that must vanish.
    pub fn relation(&self) -> KClassExpr {
        match self {
            RelationWitness::Ses { sub, total, quotient, .. } => {
                let mut e = KClassExpr::term(*total, 1);
                e.add(*sub, BigInt::from(-1));
                e.add(*quotient, BigInt::from(-1));
                e
            }
            RelationWitness::Diagonal { object, .. } => KClassExpr::term(*object, 1),
        }
    }

    pub fn is_ses(&self) -> bool {
        matches!(self, RelationWitness::Ses { .. })
    }
}

/// `true` iff the sequence is degreewise split short exact and both maps commute with
/// every differential of both families.
pub fn check_ses(ses: &ShortExactSequence) -> bool {
    ses.first_failure().is_none()
}

/// A claim together with the relations that prove it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    pub level: usize,
    pub objects: Vec<BinaryMulticomplex>,
    pub witnesses: Vec<RelationWitness>,
    /// Expression asserted to vanish.
    pub claim: KClassExpr,
    /// Coefficients with `claim = Σ multipliers[w] · relation(w)`.
    pub multipliers: Vec<BigInt>,
}

/// Outcome of replaying a chain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainReport {
    pub object_failures: Vec<(usize, String)>,
    pub witness_failures: Vec<(usize, String)>,
    pub ledger_failure: Option<String>,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.object_failures.is_empty() && self.witness_failures.is_empty() && self.ledger_failure.is_none()
    }

    pub fn messages(&self) -> Vec<String> {
        let mut out: Vec<String> = self.object_failures.iter().map(|(i, m)| format!("object #{i}: {m}")).collect();
        out.extend(self.witness_failures.iter().map(|(i, m)| format!("witness {i}: {m}")));
        out.extend(self.ledger_failure.iter().map(|m| format!("ledger: {m}")));
        out
    }
}

impl WitnessChain {
    pub fn ses_count(&self) -> usize {
        self.witnesses.iter().filter(|w| w.is_ses()).count()
    }

    pub fn diagonal_count(&self) -> usize {
        self.witnesses.len() - self.ses_count()
    }

    /// Replays every witness and the ledger from scratch.
    pub fn check(&self) -> ChainReport {
        let mut report = ChainReport::default();
        report.object_failures = self
            .objects
            .par_iter()
            .enumerate()
            .filter_map(|(i, o)| {
                if o.dim() != self.level {
                    return Some((i, format!("dimension {} at level {}", o.dim(), self.level)));
                }
                if let Some(v) = o.validate().first() {
                    return Some((i, format!("{} at {}: {}", v.rule, cell_key(&v.cell), v.detail)));
                }
                if !o.is_acyclic() {
                    return Some((i, "not acyclic".into()));
                }
                None
            })
            .collect();
        report.witness_failures = self
            .witnesses
            .par_iter()
            .enumerate()
            .filter_map(|(k, w)| self.check_witness(w).err().map(|m| (k, m)))
            .collect();
        if self.multipliers.len() != self.witnesses.len() {
            report.ledger_failure = Some(format!("{} multipliers for {} witnesses", self.multipliers.len(), self.witnesses.len()));
        } else {
            let mut residual = self.claim.clone();
            for (w, c) in self.witnesses.iter().zip(&self.multipliers) {
                residual.add_scaled(&w.relation(), &-c);
            }
            if !residual.is_empty() {
                report.ledger_failure = Some(format!("residual {residual} does not vanish"));
            }
        }
        report
    }

    fn object(&self, id: usize) -> std::result::Result<&BinaryMulticomplex, String> {
        self.objects.get(id).ok_or_else(|| format!("object #{id} does not exist"))
    }

    fn check_witness(&self, w: &RelationWitness) -> std::result::Result<(), String> {
        match w {
            RelationWitness::Ses { sub, total, quotient, inclusion, projection } => {
                let ses = ShortExactSequence {
                    sub: self.object(*sub)?.clone(),
                    total: self.object(*total)?.clone(),
                    quotient: self.object(*quotient)?.clone(),
                    inclusion: inclusion.clone(),
                    projection: projection.clone(),
                };
                match ses.first_failure() {
                    None => Ok(()),
                    Some((c, why)) => Err(format!("not short exact at {}: {why}", cell_key(&c))),
                }
            }
            RelationWitness::Diagonal { object, direction } => {
                let o = self.object(*object)?;
                if *direction >= o.dim() {
                    return Err(format!("direction {} out of range", direction + 1));
                }
                if o.is_diagonal_in(*direction) {
                    Ok(())
                } else {
                    Err(format!("object #{object} is not diagonal in direction {}", direction + 1))
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let maps = |m: &CellMap| Value::Object(m.iter().map(|(c, x)| (cell_key(c), x.to_json())).collect::<Map<_, _>>());
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| match w {
                RelationWitness::Ses { sub, total, quotient, inclusion, projection } => json!({
                    "kind": "ses",
                    "level": self.level,
                    "objects": {"sub": sub, "total": total, "quotient": quotient},
                    "maps": {"inclusion": maps(inclusion), "projection": maps(projection)},
                }),
                RelationWitness::Diagonal { object, direction } => json!({
                    "kind": "diagonal",
                    "level": self.level,
                    "objects": {"complex": object},
                    "direction": direction + 1,
                }),
            })
            .collect();
        json!({
            "level": self.level,
            "objects": self.objects.iter().map(|o| ComplexData::Binary(o.clone()).to_json()).collect::<Vec<_>>(),
            "witnesses": witnesses,
            "claim": Value::Object(self.claim.0.iter().map(|(id, c)| (id.to_string(), bigint_to_value(c))).collect()),
            "multipliers": self.multipliers.iter().map(bigint_to_value).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let perr = |m: String| Error::Parse(m);
        let level = v.get("level").and_then(Value::as_u64).ok_or_else(|| perr("missing integer \"level\"".into()))? as usize;
        let objects = v
            .get("objects")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing array \"objects\"".into()))?
            .iter()
            .map(|o| ComplexData::from_json(o).map(ComplexData::into_binary))
            .collect::<Result<Vec<_>>>()?;
        let id_of = |w: &Value, key: &str| -> Result<usize> {
            w.get("objects")
                .and_then(|o| o.get(key))
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| perr(format!("witness needs objects.{key}")))
        };
        let maps_of = |w: &Value, key: &str| -> Result<CellMap> {
            let m = w
                .get("maps")
                .and_then(|m| m.get(key))
                .and_then(Value::as_object)
                .ok_or_else(|| perr(format!("witness needs maps.{key}")))?;
            let mut out = CellMap::new();
            for (k, x) in m {
                let cell = parse_cell_key(k, level).map_err(perr)?;
                out.insert(cell, IntMatrix::from_json(x).map_err(|e| Error::Validation { cell: k.clone(), message: e })?);
            }
            Ok(out)
        };
        let mut witnesses = Vec::new();
        for w in v.get("witnesses").and_then(Value::as_array).ok_or_else(|| perr("missing array \"witnesses\"".into()))? {
            if let Some(l) = w.get("level").and_then(Value::as_u64) {
                if l as usize != level {
                    return Err(perr(format!("witness level {l} differs from chain level {level}")));
                }
            }
            match w.get("kind").and_then(Value::as_str) {
                Some("ses") => witnesses.push(RelationWitness::Ses {
                    sub: id_of(w, "sub")?,
                    total: id_of(w, "total")?,
                    quotient: id_of(w, "quotient")?,
                    inclusion: maps_of(w, "inclusion")?,
                    projection: maps_of(w, "projection")?,
                }),
                Some("diagonal") => {
                    let dir = w.get("direction").and_then(Value::as_u64).ok_or_else(|| perr("diagonal witness needs \"direction\"".into()))?;
                    if dir == 0 {
                        return Err(perr("directions are numbered from 1".into()));
                    }
                    witnesses.push(RelationWitness::Diagonal { object: id_of(w, "complex")?, direction: dir as usize - 1 });
                }
                other => return Err(perr(format!("unknown witness kind {other:?}"))),
            }
        }
        let mut claim = KClassExpr::default();
        if let Some(c) = v.get("claim") {
            let c = c.as_object().ok_or_else(|| perr("\"claim\" must be an object".into()))?;
            for (k, x) in c {
                let id: usize = k.parse().map_err(|_| perr(format!("bad object index {k:?} in claim")))?;
                claim.add(id, bigint_from_value(x).map_err(perr)?);
            }
        }
        let multipliers = v
            .get("multipliers")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing array \"multipliers\"".into()))?
            .iter()
            .map(|x| bigint_from_value(x).map_err(perr))
            .collect::<Result<Vec<_>>>()?;
        Ok(WitnessChain { level, objects, witnesses, claim, multipliers })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

/// Accumulates objects (interned by equality) and witnesses.
#[derive(Debug)]
pub(crate) struct ChainBuilder {
    level: usize,
    objects: Vec<BinaryMulticomplex>,
    witnesses: Vec<RelationWitness>,
}

impl ChainBuilder {
    pub(crate) fn new(level: usize) -> Self {
        ChainBuilder { level, objects: Vec::new(), witnesses: Vec::new() }
    }

    pub(crate) fn intern(&mut self, o: &BinaryMulticomplex) -> usize {
        if let Some(i) = self.objects.iter().position(|x| x == o) {
            return i;
        }
        self.objects.push(o.clone());
        self.objects.len() - 1
    }

    pub(crate) fn ses(&mut self, ses: ShortExactSequence) {
        let sub = self.intern(&ses.sub);
        let total = self.intern(&ses.total);
        let quotient = self.intern(&ses.quotient);
        self.witnesses.push(RelationWitness::Ses { sub, total, quotient, inclusion: ses.inclusion, projection: ses.projection });
    }

    pub(crate) fn diagonal(&mut self, o: &BinaryMulticomplex, direction: usize) {
        let object = self.intern(o);
        let w = RelationWitness::Diagonal { object, direction };
        if !self.witnesses.contains(&w) {
            self.witnesses.push(w);
        }
    }

    /// Solves for the multipliers expressing `claim` through the relations.
    pub(crate) fn finish(self, claim: KClassExpr) -> Result<WitnessChain> {
        let rows = self.objects.len();
        let rel = IntMatrix::from_fn(rows, self.witnesses.len(), |i, j| {
            self.witnesses[j].relation().0.get(&i).cloned().unwrap_or_default()
        });
        let target = IntMatrix::from_fn(rows, 1, |i, _| claim.0.get(&i).cloned().unwrap_or_default());
        let x = solve_integer(&rel, &target)
            .ok_or_else(|| Error::Validation { cell: "ledger".into(), message: "claim is not a combination of the relations".into() })?;
        let multipliers = (0..self.witnesses.len()).map(|j| x.get(j, 0).clone()).collect();
        Ok(WitnessChain { level: self.level, objects: self.objects, witnesses: self.witnesses, claim, multipliers })
    }
}

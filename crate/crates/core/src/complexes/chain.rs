use num_bigint::BigInt;
use num_traits::One;

use super::graded::GradedObject;
use super::validate::{ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, FgAbGroup, IntMatrix};

/// Bounded chain complex of free modules in degrees `0..ranks.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `diffs[i - 1]` is `d_i : C_i -> C_{i-1}`.
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn zero() -> Self {
        ChainComplex { ranks: vec![], diffs: vec![] }
    }

    /// `diffs[k]` is `d_{k+1}`; shapes are checked, `d^2 = 0` is not (see `validate`).
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        let len = ranks.len();
        if diffs.len() + 1 != len.max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} objects need {} differentials, got {}",
                len,
                len.saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::Validation {
                    cell: (k + 1).to_string(),
                    message: format!("d_{} has shape {:?}, expected {:?}", k + 1, d.shape(), (ranks[k], ranks[k + 1])),
                });
            }
        }
        let mut c = ChainComplex { ranks, diffs };
        c.trim();
        Ok(c)
    }

    pub fn from_parts(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Self {
        Self::new(ranks, diffs).expect("malformed chain complex")
    }

    /// `Z --x--> Z` in degrees `top`, `top - 1`.
    pub fn two_term(x: i64, top: usize) -> Self {
        assert!(top >= 1);
        let mut ranks = vec![0; top + 1];
        ranks[top] = 1;
        ranks[top - 1] = 1;
        let mut diffs: Vec<IntMatrix> = (1..=top).map(|i| IntMatrix::zeros(ranks[i - 1], ranks[i])).collect();
        diffs[top - 1] = IntMatrix::scalar(x);
        Self::from_parts(ranks, diffs)
    }

    /// A single module of rank `r` in degree `deg`.
    pub fn concentrated(r: usize, deg: usize) -> Self {
        let mut ranks = vec![0; deg + 1];
        ranks[deg] = r;
        let diffs = (1..=deg).map(|i| IntMatrix::zeros(ranks[i - 1], ranks[i])).collect();
        Self::from_parts(ranks, diffs)
    }

    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        if self.ranks.is_empty() {
            self.diffs.clear();
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// `d_i : C_i -> C_{i-1}` (a correctly shaped zero matrix outside the support).
    pub fn d(&self, i: usize) -> IntMatrix {
        if i >= 1 && i < self.ranks.len() {
            self.diffs[i - 1].clone()
        } else if i == 0 {
            IntMatrix::zeros(0, self.rank(0))
        } else {
            IntMatrix::zeros(self.rank(i - 1), 0)
        }
    }

    pub fn d_ref(&self, i: usize) -> Option<&IntMatrix> {
        if i >= 1 && i < self.ranks.len() {
            Some(&self.diffs[i - 1])
        } else {
            None
        }
    }

    /// Top degree with a nonzero object (0 for the zero complex).
    pub fn length(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn graded(&self) -> GradedObject {
        GradedObject::from_degrees(&self.ranks)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for i in 2..self.ranks.len() {
            let dd = &self.diffs[i - 2] * &self.diffs[i - 1];
            if !dd.is_zero() {
                report.violations.push(Violation::new(vec![i], "d^2 = 0", "d_{i-1} d_i is nonzero"));
            }
        }
        report
    }

    /// Homology in every degree `0..=length`.
    pub fn homology_all(&self) -> Vec<FgAbGroup> {
        let factors: Vec<Vec<BigInt>> =
            (0..=self.ranks.len()).map(|i| self.d_ref(i).map(invariant_factors).unwrap_or_default()).collect();
        (0..self.ranks.len())
            .map(|i| {
                let out_rank = factors[i].len();
                let into = &factors[i + 1];
                FgAbGroup {
                    free_rank: self.ranks[i] - out_rank - into.len(),
                    torsion: into.iter().filter(|x| !x.is_one()).cloned().collect(),
                }
            })
            .collect()
    }

    pub fn homology(&self, i: usize) -> FgAbGroup {
        self.homology_all().get(i).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    /// All homology vanishes. Over the integers this also makes every cycle module a
    /// direct summand, since each boundary map then has all invariant factors equal to 1.
    pub fn is_acyclic(&self) -> bool {
        self.homology_all().iter().all(FgAbGroup::is_zero)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.ranks.is_empty() {
            return Self::zero();
        }
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let mut ranks = vec![0; k];
        ranks.extend_from_slice(&self.ranks);
        let mut diffs: Vec<IntMatrix> = (1..=k).map(|i| IntMatrix::zeros(ranks[i - 1], ranks[i])).collect();
        for d in &self.diffs {
            diffs.push(d.scale(&sign));
        }
        Self::from_parts(ranks, diffs)
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Self {
        let len = self.ranks.len().max(other.ranks.len());
        let ranks: Vec<usize> = (0..len).map(|i| self.rank(i) + other.rank(i)).collect();
        let diffs = (1..len).map(|i| self.d(i).block_diag(&other.d(i))).collect();
        Self::from_parts(ranks, diffs)
    }

    /// Change of basis `C_i -> g_i C_i` with unimodular `g_i`; differentials become `g_{i-1} d_i g_i^{-1}`.
    pub fn conjugate(&self, g: &[IntMatrix], g_inv: &[IntMatrix]) -> Self {
        let diffs = (1..self.ranks.len()).map(|i| &(&g[i - 1] * &self.diffs[i - 1]) * &g_inv[i]).collect();
        Self::from_parts(self.ranks.clone(), diffs)
    }

    /// Keep degrees in `[lo, hi]`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        let ranks: Vec<usize> = (0..self.ranks.len()).map(|i| if i >= lo && i <= hi { self.ranks[i] } else { 0 }).collect();
        let diffs = (1..self.ranks.len())
            .map(|i| {
                if i > lo && i <= hi {
                    self.diffs[i - 1].clone()
                } else {
                    IntMatrix::zeros(ranks[i - 1], ranks[i])
                }
            })
            .collect();
        Self::from_parts(ranks, diffs)
    }

    /// Is `maps` (one matrix per degree) a chain map `self -> other`?
    pub fn is_chain_map(&self, other: &ChainComplex, maps: &[IntMatrix]) -> bool {
        let len = self.ranks.len().max(other.ranks.len());
        let get = |i: usize| maps.get(i).cloned().unwrap_or_else(|| IntMatrix::zeros(other.rank(i), self.rank(i)));
        for i in 0..len {
            if get(i).shape() != (other.rank(i), self.rank(i)) {
                return false;
            }
        }
        (1..len).all(|i| &other.d(i) * &get(i) == &get(i - 1) * &self.d(i))
    }
}

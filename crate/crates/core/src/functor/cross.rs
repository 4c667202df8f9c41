use std::collections::BTreeSet;

use super::basis::{basis_elements, leaf_alphabet};
use super::spec::FunctorSpec;
use crate::linalg::IntMatrix;

/// The summand of `F(⊕ Z^{n_i})` spanned by basis elements touching every summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossEffect {
    pub rank: usize,
    /// Columns are standard basis vectors of `F(⊕ Z^{n_i})`.
    pub inclusion: IntMatrix,
    /// Positions of the selected basis elements in the sorted basis of `F(⊕ Z^{n_i})`.
    pub positions: Vec<usize>,
}

/// `cr_k(F)(Z^{n_1}, ..., Z^{n_k})` with `k = ranks.len()`.
pub fn cross_effect(spec: &FunctorSpec, ranks: &[usize]) -> CrossEffect {
    let total: usize = ranks.iter().sum();
    let mut block_of = Vec::with_capacity(total);
    for (b, &n) in ranks.iter().enumerate() {
        block_of.extend(std::iter::repeat(b).take(n));
    }
    let basis = basis_elements(spec, &leaf_alphabet(total));
    let positions: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(_, b)| {
            let touched: BTreeSet<usize> = b.leaves().into_iter().map(|l| block_of[l as usize]).collect();
            touched.len() == ranks.len()
        })
        .map(|(i, _)| i)
        .collect();
    let mut inclusion = IntMatrix::zeros(basis.len(), positions.len());
    for (j, &i) in positions.iter().enumerate() {
        inclusion.set(i, j, 1.into());
    }
    CrossEffect { rank: positions.len(), inclusion, positions }
}

/// Checks the structural degree `d` against cross effects on rank-one arguments:
/// `cr_{d+1}(F) = 0` and, for `d > 0`, `cr_d(F) ≠ 0`.
pub fn verify_degree(spec: &FunctorSpec) -> bool {
    let d = spec.degree() as usize;
    let above = cross_effect(spec, &vec![1; d + 1]).rank == 0;
    let at = d == 0 || cross_effect(spec, &vec![1; d]).rank > 0;
    above && at
}

pub fn degree_of(spec: &FunctorSpec) -> u32 {
    spec.degree()
}

use std::collections::BTreeSet;

use num_traits::One;

use super::graded::Cell;
use super::multi::{BinaryMulticomplex, CellMap};
use crate::linalg::{invariant_factors, IntMatrix};

/// `0 -> sub --inclusion--> total --projection--> quotient -> 0`, degreewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub sub: BinaryMulticomplex,
    pub total: BinaryMulticomplex,
    pub quotient: BinaryMulticomplex,
    pub inclusion: CellMap,
    pub projection: CellMap,
}

fn map_at(maps: &CellMap, cell: &Cell, rows: usize, cols: usize) -> IntMatrix {
    maps.get(cell).cloned().unwrap_or_else(|| IntMatrix::zeros(rows, cols))
}

/// Full column rank with trivial cokernel torsion, i.e. a split injection over the integers.
fn is_split_injective(a: &IntMatrix) -> bool {
    let f = invariant_factors(a);
    f.len() == a.cols() && f.iter().all(One::is_one)
}

impl ShortExactSequence {
    /// First cell (and reason) where the sequence fails to be short exact or the maps fail
    /// to commute with a differential of either family.
    pub fn first_failure(&self) -> Option<(Cell, String)> {
        let n = self.total.dim();
        if self.sub.dim() != n || self.quotient.dim() != n {
            return Some((vec![], "objects have different dimensions".into()));
        }
        let mut cells: BTreeSet<Cell> = BTreeSet::new();
        for g in [self.sub.objects(), self.total.objects(), self.quotient.objects()] {
            cells.extend(g.cells().map(|(c, _)| c.clone()));
        }
        for c in &cells {
            let (a, b, q) = (self.sub.objects().rank(c), self.total.objects().rank(c), self.quotient.objects().rank(c));
            let i = map_at(&self.inclusion, c, b, a);
            let p = map_at(&self.projection, c, q, b);
            if i.shape() != (b, a) || p.shape() != (q, b) {
                return Some((c.clone(), "map has the wrong shape".into()));
            }
            if a + q != b {
                return Some((c.clone(), format!("ranks {a} + {q} != {b}")));
            }
            if !(&p * &i).is_zero() {
                return Some((c.clone(), "projection after inclusion is not zero".into()));
            }
            if !is_split_injective(&i) {
                return Some((c.clone(), "inclusion is not a split injection".into()));
            }
            if !is_split_injective(&p.transpose()) {
                return Some((c.clone(), "projection is not surjective".into()));
            }
        }
        if let Some((c, why)) = self.sub.first_noncommuting_cell(&self.total, &self.inclusion) {
            return Some((c, format!("inclusion: {why}")));
        }
        if let Some((c, why)) = self.total.first_noncommuting_cell(&self.quotient, &self.projection) {
            return Some((c, format!("projection: {why}")));
        }
        None
    }

    pub fn is_exact(&self) -> bool {
        self.first_failure().is_none()
    }
}

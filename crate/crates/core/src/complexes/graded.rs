use std::collections::BTreeMap;

use crate::json::cell_key;

pub type Cell = Vec<usize>;

/// First-quadrant grid of free-module ranks. Only nonzero ranks are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedObject {
    dim: usize,
    ranks: BTreeMap<Cell, usize>,
}

impl GradedObject {
    pub fn new(dim: usize) -> Self {
        GradedObject { dim, ranks: BTreeMap::new() }
    }

    pub fn from_ranks(dim: usize, ranks: impl IntoIterator<Item = (Cell, usize)>) -> Self {
        let mut g = Self::new(dim);
        for (c, r) in ranks {
            g.set_rank(c, r);
        }
        g
    }

    /// One-dimensional graded object with `ranks[i]` in degree `i`.
    pub fn from_degrees(ranks: &[usize]) -> Self {
        Self::from_ranks(1, ranks.iter().enumerate().map(|(i, &r)| (vec![i], r)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self, cell: &[usize]) -> usize {
        self.ranks.get(cell).copied().unwrap_or(0)
    }

    /// Rank at `cell - e_dir`, zero when that leaves the first quadrant.
    pub fn rank_below(&self, cell: &[usize], dir: usize) -> usize {
        if cell[dir] == 0 {
            0
        } else {
            let mut c = cell.to_vec();
            c[dir] -= 1;
            self.rank(&c)
        }
    }

    pub fn set_rank(&mut self, cell: Cell, rank: usize) {
        assert_eq!(cell.len(), self.dim, "cell {} has wrong dimension", cell_key(&cell));
        if rank == 0 {
            self.ranks.remove(&cell);
        } else {
            self.ranks.insert(cell, rank);
        }
    }

    /// Cells with nonzero rank, in lexicographic order.
    pub fn cells(&self) -> impl Iterator<Item = (&Cell, usize)> {
        self.ranks.iter().map(|(c, &r)| (c, r))
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Largest occupied index in each direction (0 for an empty grid).
    pub fn support_bound(&self) -> Vec<usize> {
        let mut b = vec![0; self.dim];
        for c in self.ranks.keys() {
            for (i, &x) in c.iter().enumerate() {
                b[i] = b[i].max(x);
            }
        }
        b
    }

    /// Largest total degree |cell| carrying a nonzero rank.
    pub fn top_total_degree(&self) -> usize {
        self.ranks.keys().map(|c| c.iter().sum::<usize>()).max().unwrap_or(0)
    }

    pub fn shifted(&self, dir: usize, k: usize) -> Self {
        Self::from_ranks(
            self.dim,
            self.ranks.iter().map(|(c, &r)| {
                let mut c = c.clone();
                c[dir] += k;
                (c, r)
            }),
        )
    }

    /// Every cell in the box `[0, bound]`.
    pub fn box_cells(bound: &[usize]) -> Vec<Cell> {
        let mut out = vec![vec![]];
        for &b in bound {
            let mut next = Vec::new();
            for c in &out {
                for x in 0..=b {
                    let mut c2 = c.clone();
                    c2.push(x);
                    next.push(c2);
                }
            }
            out = next;
        }
        out
    }
}

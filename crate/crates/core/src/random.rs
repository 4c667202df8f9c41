//! Seeded generators for test inputs.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{BinaryComplex, BinaryMulticomplex, ChainComplex, DiffMap, GradedObject};
use crate::linalg::IntMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Product of random elementary matrices, with its inverse.
pub fn unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut g = IntMatrix::identity(n);
    let mut g_inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            g = IntMatrix::scalar(-1);
            g_inv = IntMatrix::scalar(-1);
        }
        return (g, g_inv);
    }
    for _ in 0..steps {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let c: i64 = [-2, -1, 1, 2][rng.gen_range(0..4)];
        // row_a += c row_b; the inverse subtracts the same column multiple
        let mut e = IntMatrix::identity(n);
        e.set(a, b, BigInt::from(c));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(a, b, BigInt::from(-c));
        g = &e * &g;
        g_inv = &g_inv * &e_inv;
    }
    (g, g_inv)
}

/// Conjugates a complex by random unimodular changes of basis in every degree.
pub fn scramble(rng: &mut impl Rng, c: &ChainComplex) -> ChainComplex {
    let (g, g_inv): (Vec<_>, Vec<_>) = c.ranks().iter().map(|&r| unimodular(rng, r, 2 * r + 2)).unzip();
    c.conjugate(&g, &g_inv)
}

/// Sum of elementary pieces `Z --x--> Z` and `Z[i]`, scrambled. Top degree at most `length`,
/// every rank at most `max_rank`.
pub fn complex(rng: &mut impl Rng, length: usize, max_rank: usize, acyclic: bool) -> ChainComplex {
    let mut ranks = vec![0usize; length + 1];
    let mut diffs: Vec<Vec<(usize, usize, i64)>> = vec![vec![]; length + 1];
    let pieces = rng.gen_range(1..=(length + 1) * max_rank);
    for _ in 0..pieces {
        let top = rng.gen_range(0..=length);
        if acyclic || rng.gen_bool(0.6) {
            if top == 0 || ranks[top] >= max_rank || ranks[top - 1] >= max_rank {
                continue;
            }
            let x = if acyclic { 1 } else { [1, 1, 2, 3, -1][rng.gen_range(0..5)] };
            diffs[top].push((ranks[top - 1], ranks[top], x));
            ranks[top] += 1;
            ranks[top - 1] += 1;
        } else if ranks[top] < max_rank {
            ranks[top] += 1;
        }
    }
    let d: Vec<IntMatrix> = (1..=length)
        .map(|i| {
            let mut m = IntMatrix::zeros(ranks[i - 1], ranks[i]);
            for &(r, c, x) in &diffs[i] {
                m.set(r, c, BigInt::from(x));
            }
            m
        })
        .collect();
    scramble(rng, &ChainComplex::from_parts(ranks, d))
}

/// Acyclic binary complex whose two differentials are independent scramblings of the same pieces.
pub fn binary_acyclic(rng: &mut impl Rng, length: usize, max_rank: usize) -> BinaryComplex {
    let c = complex(rng, length, max_rank, true);
    let c2 = scramble(rng, &c);
    BinaryComplex::from_chain_pair(&c, &c2).expect("same graded object")
}

/// Acyclic binary bicomplex `A ⊠ B` of two random acyclic binary complexes: direction 0
/// carries `d_A ⊗ 1`, direction 1 carries `1 ⊗ d_B`, for both differentials.
pub fn binary_acyclic_square(rng: &mut impl Rng, length: usize, max_rank: usize) -> BinaryMulticomplex {
    let a = binary_acyclic(rng, length, max_rank);
    let b = binary_acyclic(rng, length, max_rank);
    let ra: Vec<usize> = (0..=length).map(|i| a.objects().rank(&[i])).collect();
    let rb: Vec<usize> = (0..=length).map(|j| b.objects().rank(&[j])).collect();
    let objects = GradedObject::from_ranks(
        2,
        (0..=length).flat_map(|i| (0..=length).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], ra[i] * rb[j])),
    );
    let family = |tilde: bool| -> Vec<DiffMap> {
        let (mut d0, mut d1) = (DiffMap::new(), DiffMap::new());
        for i in 0..=length {
            for j in 0..=length {
                if i > 0 {
                    d0.insert(vec![i, j], a.diff(tilde, 0, &[i]).kronecker(&IntMatrix::identity(rb[j])));
                }
                if j > 0 {
                    d1.insert(vec![i, j], IntMatrix::identity(ra[i]).kronecker(&b.diff(tilde, 0, &[j])));
                }
            }
        }
        vec![d0, d1]
    };
    BinaryMulticomplex::new(objects, family(false), family(true)).expect("tensor factors commute")
}

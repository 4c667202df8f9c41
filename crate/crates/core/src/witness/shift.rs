use num_bigint::BigInt;

use super::{ChainBuilder, KClassExpr, WitnessChain};
use crate::complexes::{BinaryMulticomplex, CellMap, ShortExactSequence};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

fn lower_rank(m: &BinaryMulticomplex, dir: usize, c: &[usize]) -> usize {
    if c[dir] == 0 {
        return 0;
    }
    let mut b = c.to_vec();
    b[dir] -= 1;
    m.objects().rank(&b)
}

/// `0 -> M -> cone(M) -> M[1] -> 0`.
fn cone_ses(m: &BinaryMulticomplex, dir: usize) -> ShortExactSequence {
    let cone = m.cone(dir);
    let quotient = m.shift(dir, 1);
    let mut inclusion = CellMap::new();
    let mut projection = CellMap::new();
    for (c, _) in cone.objects().cells() {
        let (a, b) = (lower_rank(m, dir, c), m.objects().rank(c));
        inclusion.insert(c.clone(), IntMatrix::zeros(a, b).vstack(&IntMatrix::identity(b)));
        projection.insert(c.clone(), IntMatrix::identity(a).hstack(&IntMatrix::zeros(a, b)));
    }
    ShortExactSequence { sub: m.clone(), total: cone, quotient, inclusion, projection }
}

/// `0 -> cone(trun M) -> cone(M) -> Δ -> 0`, with `Δ` the top slice doubled (joined by `-1`).
fn truncation_ses(m: &BinaryMulticomplex, dir: usize) -> ShortExactSequence {
    let top = m.objects().support_bound()[dir];
    let trun = m.truncate_top(dir);
    let sub = trun.cone(dir);
    let total = m.cone(dir);
    let quotient = m.doubled_slice(dir, top, top + 1, -1);
    let embed = |small: usize, big: usize| if small == big { IntMatrix::identity(big) } else { IntMatrix::zeros(big, small) };
    let mut inclusion = CellMap::new();
    let mut projection = CellMap::new();
    for (c, _) in total.objects().cells() {
        let i = c[dir];
        let (a, b) = (lower_rank(m, dir, c), m.objects().rank(c));
        let (ta, tb) = (lower_rank(&trun, dir, c), trun.objects().rank(c));
        inclusion.insert(c.clone(), embed(ta, a).block_diag(&embed(tb, b)));
        let q = quotient.objects().rank(c);
        let first = if i == top + 1 { IntMatrix::identity(a) } else { IntMatrix::zeros(q, a) };
        let second = if i == top { IntMatrix::identity(b) } else { IntMatrix::zeros(q, b) };
        projection.insert(c.clone(), first.hstack(&second));
    }
    ShortExactSequence { sub, total, quotient, inclusion, projection }
}

/// Certificate for `[N[k]] = (-1)^k [N]`, shifting along direction `dir`: cone sequences
/// for each unit shift, then truncation of each cone down to zero.
pub fn shift_witness(n: &BinaryMulticomplex, k: usize, dir: usize) -> Result<WitnessChain> {
    if dir >= n.dim() {
        return Err(Error::DimensionMismatch(format!("direction {} of a dimension {} object", dir + 1, n.dim())));
    }
    if !n.is_acyclic() {
        return Err(Error::NotAcyclic("shift input".into()));
    }
    let mut b = ChainBuilder::new(n.dim());
    let base = b.intern(n);
    let shifted = b.intern(&n.shift(dir, k));
    let mut claim = KClassExpr::term(shifted, 1);
    claim.add(base, if k % 2 == 0 { BigInt::from(-1) } else { BigInt::from(1) });
    let mut m = n.clone();
    for _ in 0..k {
        b.ses(cone_ses(&m, dir));
        let mut t = m.clone();
        while !t.objects().is_zero() {
            let ses = truncation_ses(&t, dir);
            b.diagonal(&ses.quotient, dir);
            b.ses(ses);
            t = t.truncate_top(dir);
        }
        b.diagonal(&BinaryMulticomplex::zero(n.dim()), dir);
        m = m.shift(dir, 1);
    }
    b.finish(claim)
}

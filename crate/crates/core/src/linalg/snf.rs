use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `u * s * v == original`, with `u_inv * original * v_inv == s`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub original: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `s`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Transforms {
    l: IntMatrix,
    l_inv: IntMatrix,
    r: IntMatrix,
    r_inv: IntMatrix,
}

/// Working state: `w = l * a * r`, with the inverses kept in step.
struct Reducer<'a> {
    w: IntMatrix,
    t: Option<&'a mut Transforms>,
}

impl Reducer<'_> {
    fn row_add(&mut self, a: usize, b: usize, c: &BigInt) {
        self.w.add_row_multiple(a, b, c);
        if let Some(t) = self.t.as_deref_mut() {
            t.l.add_row_multiple(a, b, c);
            t.l_inv.add_col_multiple(b, a, &-c);
        }
    }

    fn col_add(&mut self, a: usize, b: usize, c: &BigInt) {
        self.w.add_col_multiple(a, b, c);
        if let Some(t) = self.t.as_deref_mut() {
            t.r.add_col_multiple(a, b, c);
            t.r_inv.add_row_multiple(b, a, &-c);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.w.swap_rows(a, b);
        if let Some(t) = self.t.as_deref_mut() {
            t.l.swap_rows(a, b);
            t.l_inv.swap_cols(a, b);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.w.swap_cols(a, b);
        if let Some(t) = self.t.as_deref_mut() {
            t.r.swap_cols(a, b);
            t.r_inv.swap_rows(a, b);
        }
    }

    fn row_negate(&mut self, a: usize) {
        self.w.negate_row(a);
        if let Some(t) = self.t.as_deref_mut() {
            t.l.negate_row(a);
            t.l_inv.negate_col(a);
        }
    }

    /// Smallest nonzero |entry| in the block [t.., t..].
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.w.rows() {
            for j in t..self.w.cols() {
                let x = self.w.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().map_or(true, |b| a < b.2) {
                    let unit = a.is_one();
                    best = Some((i, j, a));
                    if unit {
                        let b = best.unwrap();
                        return Some((b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) -> usize {
        let (m, n) = self.w.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if self.w.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.w.get(i, t).div_floor(self.w.get(t, t));
                    self.row_add(i, t, &-q);
                    if !self.w.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if self.w.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.w.get(t, j).div_floor(self.w.get(t, t));
                    self.col_add(j, t, &-q);
                    if !self.w.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // move the smallest remainder in row/column t onto the diagonal
                    let mut best = (t, t, self.w.get(t, t).abs());
                    for i in t + 1..m {
                        let a = self.w.get(i, t).abs();
                        if !a.is_zero() && a < best.2 {
                            best = (i, t, a);
                        }
                    }
                    for j in t + 1..n {
                        let a = self.w.get(t, j).abs();
                        if !a.is_zero() && a < best.2 {
                            best = (t, j, a);
                        }
                    }
                    self.row_swap(t, best.0);
                    self.col_swap(t, best.1);
                    continue;
                }
                let p = self.w.get(t, t).clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.w.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.w.get(t, t).is_negative() {
                self.row_negate(t);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form over the integers with unimodular transforms.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut t = Transforms {
        l: IntMatrix::identity(m),
        l_inv: IntMatrix::identity(m),
        r: IntMatrix::identity(n),
        r_inv: IntMatrix::identity(n),
    };
    let mut red = Reducer { w: a.clone(), t: Some(&mut t) };
    let rank = red.run();
    let s = red.w;
    SmithDecomposition {
        u: t.l_inv,
        s,
        v: t.r_inv,
        u_inv: t.l,
        v_inv: t.r,
        original: a.clone(),
        rank,
    }
}

/// Smith form of a matrix tagged with a coefficient domain; only the integers are accepted.
pub fn snf_in(a: &IntMatrix, domain: super::CoeffDomain) -> Result<SmithDecomposition> {
    match domain {
        super::CoeffDomain::Integers => Ok(snf(a)),
        other => Err(Error::WrongDomain(other.to_string())),
    }
}

/// Invariant factors without tracking transforms.
pub(crate) fn dense_invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut red = Reducer { w: a.clone(), t: None };
    let rank = red.run();
    let mut out: Vec<BigInt> = (0..rank).map(|i| red.w.get(i, i).abs()).collect();
    // the reducer already yields a divisibility chain; sorting is a cheap guard for callers
    out.sort();
    out
}

/// Saturated basis of the kernel, as columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let d = snf(a);
    let n = a.cols();
    let idx: Vec<usize> = (d.rank..n).collect();
    d.v_inv.select_cols(&idx)
}

/// Basis of the saturation of the image (a summand containing the image with finite index).
pub fn image_saturation_basis(a: &IntMatrix) -> IntMatrix {
    let d = snf(a);
    let idx: Vec<usize> = (0..d.rank).collect();
    d.u.select_cols(&idx)
}

/// Retraction `r` with `r * inclusion = 1`, read off the Smith form of the inclusion.
pub fn split_summand(inclusion: &IntMatrix) -> Result<IntMatrix> {
    let k = inclusion.cols();
    let d = snf(inclusion);
    if d.rank < k {
        return Err(Error::NotASummand("0 (not injective)".into()));
    }
    if let Some(f) = d.invariant_factors().into_iter().find(|f| !f.is_one()) {
        return Err(Error::NotASummand(f.to_string()));
    }
    let idx: Vec<usize> = (0..k).collect();
    let top = d.u_inv.select_rows(&idx);
    Ok(&d.v_inv * &top)
}

/// Section `t` of a surjection `p` (so `p * t = 1`).
pub fn split_surjection(p: &IntMatrix) -> Result<IntMatrix> {
    let m = p.rows();
    let d = snf(p);
    if d.rank < m {
        return Err(Error::NotASummand("0 (not surjective)".into()));
    }
    if let Some(f) = d.invariant_factors().into_iter().find(|f| !f.is_one()) {
        return Err(Error::NotASummand(f.to_string()));
    }
    let idx: Vec<usize> = (0..m).collect();
    let left = d.v_inv.select_cols(&idx);
    Ok(&left * &d.u_inv)
}

/// Integer solution `x` of `a * x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let d = snf(a);
    let lb = &d.u_inv * b;
    let n = a.cols();
    let mut y = IntMatrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        for i in 0..a.rows() {
            let v = lb.get(i, c);
            if i < d.rank {
                let s = d.s.get(i, i);
                if !v.is_multiple_of(s) {
                    return None;
                }
                y.set(i, c, v / s);
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(&d.v_inv * &y)
}

/// Matrix inverse over the integers, if the matrix is unimodular.
pub fn inverse_unimodular(a: &IntMatrix) -> Option<IntMatrix> {
    if a.rows() != a.cols() {
        return None;
    }
    solve_integer(a, &IntMatrix::identity(a.rows()))
}

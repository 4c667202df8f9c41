//! Invariant factors of large sparse matrices: unit pivots are eliminated
//! sparsely (each contributes a factor 1), the leftover core goes through the
//! dense Smith reduction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::dense_invariant_factors;
use super::CoeffDomain;

type Row = Vec<(usize, BigInt)>;

fn row_axpy(target: &Row, pivot: &Row, c: &BigInt) -> Row {
    // target - c * pivot
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ti = target.get(i).map(|x| x.0);
        let pj = pivot.get(j).map(|x| x.0);
        match (ti, pj) {
            (Some(a), Some(b)) if a == b => {
                let v = &target[i].1 - c * &pivot[j].1;
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(target[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(target[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, -(c * &pivot[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Sorted nonzero invariant factors of `a` (so the rank is the length).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (m, n) = a.shape();
    let mut rows: Vec<Option<Row>> = (0..m)
        .map(|i| {
            let r: Row = (0..n).filter(|&j| !a.get(i, j).is_zero()).map(|j| (j, a.get(i, j).clone())).collect();
            if r.is_empty() {
                None
            } else {
                Some(r)
            }
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for (j, _) in r {
                col_rows[*j].insert(i);
            }
        }
    }
    let mut units = 0usize;
    loop {
        // cheapest unit pivot by a Markowitz count
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (j, v) in r {
                if v.abs().is_one() {
                    let cost = (r.len() - 1) * (col_rows[*j].len() - 1);
                    if best.map_or(true, |b| cost < b.2) {
                        best = Some((i, *j, cost));
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let prow = rows[pi].take().unwrap();
        for (j, _) in &prow {
            col_rows[*j].remove(&pi);
        }
        let u = prow.iter().find(|x| x.0 == pj).unwrap().1.clone();
        let others: Vec<usize> = col_rows[pj].iter().copied().collect();
        for i in others {
            let r = rows[i].take().unwrap();
            let aij = r.iter().find(|x| x.0 == pj).unwrap().1.clone();
            let c = &aij * &u; // u = ±1, so aij / u = aij * u
            let new = row_axpy(&r, &prow, &c);
            let old_cols: BTreeSet<usize> = r.iter().map(|x| x.0).collect();
            let new_cols: BTreeSet<usize> = new.iter().map(|x| x.0).collect();
            for j in old_cols.difference(&new_cols) {
                col_rows[*j].remove(&i);
            }
            for j in new_cols.difference(&old_cols) {
                col_rows[*j].insert(i);
            }
            if !new.is_empty() {
                rows[i] = Some(new);
            }
        }
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m).filter(|&i| rows[i].is_some()).collect();
    let live_cols: Vec<usize> = (0..n).filter(|&j| !col_rows[j].is_empty()).collect();
    let mut out = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let pos: std::collections::HashMap<usize, usize> =
            live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut core = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (k, &i) in live_rows.iter().enumerate() {
            for (j, v) in rows[i].as_ref().unwrap() {
                core.set(k, pos[j], v.clone());
            }
        }
        out.extend(dense_invariant_factors(&core));
    }
    out
}

pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

/// Rank of `a` read over the given coefficient domain.
pub fn rank_over(a: &IntMatrix, domain: CoeffDomain) -> usize {
    match domain {
        CoeffDomain::Integers | CoeffDomain::Rationals => rank(a),
        CoeffDomain::PrimeField(p) => rank_mod_p(a, p),
    }
}

fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    let pm = BigInt::from(p);
    let mut w: Vec<Vec<u128>> = (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| x.mod_floor(&pm).to_u128().unwrap()).collect())
        .collect();
    let p = p as u128;
    let inv = |x: u128| -> u128 {
        // Fermat inverse
        let (mut base, mut e, mut acc) = (x % p, p - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let (m, n) = a.shape();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..m).find(|&i| w[i][c] != 0) else { continue };
        w.swap(r, piv);
        let iv = inv(w[r][c]);
        for i in 0..m {
            if i != r && w[i][c] != 0 {
                let f = w[i][c] * iv % p;
                for k in c..n {
                    let sub = f * w[r][k] % p;
                    w[i][k] = (w[i][k] + p - sub) % p;
                }
            }
        }
        r += 1;
        if r == m {
            break;
        }
    }
    r
}

use num_bigint::BigInt;
use num_traits::One;

use crate::complexes::{BinaryMulticomplex, Cell, CellMap, ChainComplex};
use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, kernel_basis, solve_integer, split_summand, split_surjection, IntMatrix};

/// Kernel of a chain idempotent with its inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentKernel {
    pub complex: ChainComplex,
    pub inclusion: Vec<IntMatrix>,
}

/// Degreewise kernels of an idempotent chain map `e`, with the induced differentials.
pub fn split_chain_idempotent(e: &[IntMatrix], c: &ChainComplex) -> Result<IdempotentKernel> {
    let len = c.ranks().len();
    if e.len() != len {
        return Err(Error::DimensionMismatch(format!("{} components for {len} degrees", e.len())));
    }
    for (i, ei) in e.iter().enumerate() {
        if ei.shape() != (c.rank(i), c.rank(i)) {
            return Err(Error::DimensionMismatch(format!("component {i} has shape {:?}", ei.shape())));
        }
        if &(ei * ei) != ei {
            return Err(Error::NotIdempotent(i));
        }
    }
    if !c.is_chain_map(c, e) {
        return Err(Error::Validation { cell: String::new(), message: "idempotent is not a chain map".into() });
    }
    let inclusion: Vec<IntMatrix> = e.iter().map(kernel_basis).collect();
    let ranks: Vec<usize> = inclusion.iter().map(IntMatrix::cols).collect();
    let diffs = (1..len)
        .map(|i| solve_integer(&inclusion[i - 1], &(&c.d(i) * &inclusion[i])).expect("chain maps preserve kernels"))
        .collect();
    Ok(IdempotentKernel { complex: ChainComplex::new(ranks, diffs)?, inclusion })
}

fn is_split_injective(a: &IntMatrix) -> bool {
    let f = invariant_factors(a);
    f.len() == a.cols() && f.iter().all(One::is_one)
}

/// Chain splitting `s: Q -> P` of a degreewise split mono `i: P -> Q` of acyclic complexes,
/// built splice by splice from degree 0 upward, starting from `s_fixed` in degree 0.
pub fn split_acyclic_mono(i: &[IntMatrix], p: &ChainComplex, q: &ChainComplex, s_fixed: &IntMatrix) -> Result<Vec<IntMatrix>> {
    let len = p.ranks().len().max(q.ranks().len()).max(i.len());
    let comp = |k: usize| i.get(k).cloned().unwrap_or_else(|| IntMatrix::zeros(q.rank(k), p.rank(k)));
    for k in 0..len {
        let ik = comp(k);
        if ik.shape() != (q.rank(k), p.rank(k)) {
            return Err(Error::DimensionMismatch(format!("component {k} has shape {:?}", ik.shape())));
        }
        if !is_split_injective(&ik) {
            return Err(Error::NotMono(k));
        }
    }
    if !p.is_acyclic() {
        return Err(Error::NotAcyclic("source".into()));
    }
    if !q.is_acyclic() {
        return Err(Error::NotAcyclic("target".into()));
    }
    let maps: Vec<IntMatrix> = (0..len).map(comp).collect();
    if !p.is_chain_map(q, &maps) {
        return Err(Error::Validation { cell: String::new(), message: "inclusion is not a chain map".into() });
    }
    if s_fixed.shape() != (p.rank(0), q.rank(0)) || !(s_fixed * &maps[0]).is_identity() {
        return Err(Error::Validation { cell: "0".into(), message: "fixed splitting does not split degree 0".into() });
    }

    // cycles Z_k with bases K_k, and the maps q_k: X_k -> Z_{k-1}
    let cycles = |x: &ChainComplex, k: usize| if k == 0 { IntMatrix::identity(x.rank(0)) } else { kernel_basis(&x.d(k)) };
    let mut s = vec![s_fixed.clone()];
    // splitting on the cycles of the previous degree
    let mut s_cycles = s_fixed.clone();
    for k in 1..len {
        let (kp, kq) = (cycles(p, k), cycles(q, k));
        let (kp_prev, kq_prev) = (cycles(p, k - 1), cycles(q, k - 1));
        let qp = solve_integer(&kp_prev, &p.d(k)).ok_or_else(|| Error::NotAcyclic(format!("source at {k}")))?;
        let qq = solve_integer(&kq_prev, &q.d(k)).ok_or_else(|| Error::NotAcyclic(format!("target at {k}")))?;
        let tp = split_surjection(&qp).map_err(|_| Error::NotAcyclic(format!("source at {k}")))?;
        let rp = split_summand(&kp).map_err(|_| Error::NotAcyclic(format!("source at {k}")))?;
        let one = IntMatrix::identity(p.rank(k));
        let hp = &rp * &(&one - &(&tp * &qp));
        let s0 = split_summand(&maps[k]).map_err(|_| Error::NotMono(k))?;
        let sk = &(&(&kp * &hp) * &s0) + &(&(&tp * &s_cycles) * &qq);
        s_cycles = &(&hp * &sk) * &kq;
        s.push(sk);
    }
    Ok(s)
}

fn block(rows: &[&IntMatrix]) -> IntMatrix {
    rows.iter().skip(1).fold(rows[0].clone(), |acc, m| acc.vstack(m))
}

/// A degreewise section `s` of `f: x -> y` (so `f s = 1`) commuting with both differential
/// families, found by solving the linear system over the integers.
pub fn find_binary_section(f: &CellMap, x: &BinaryMulticomplex, y: &BinaryMulticomplex) -> Option<CellMap> {
    let mut cells: Vec<Cell> = x.objects().cells().map(|(c, _)| c.clone()).collect();
    cells.extend(y.objects().cells().map(|(c, _)| c.clone()));
    cells.sort();
    cells.dedup();
    // unknown offsets: s_c is rank_x(c) × rank_y(c), row-major
    let mut offset = std::collections::BTreeMap::new();
    let mut total = 0;
    for c in &cells {
        offset.insert(c.clone(), total);
        total += x.objects().rank(c) * y.objects().rank(c);
    }
    let var = |c: &Cell, r: usize, col: usize| offset[c] + r * y.objects().rank(c) + col;
    let mut rows: Vec<IntMatrix> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for c in &cells {
        let (rx, ry) = (x.objects().rank(c), y.objects().rank(c));
        let fc = f.get(c).cloned().unwrap_or_else(|| IntMatrix::zeros(ry, rx));
        for a in 0..ry {
            for bcol in 0..ry {
                let mut row = IntMatrix::zeros(1, total);
                for m in 0..rx {
                    *row.get_mut(0, var(c, m, bcol)) += fc.get(a, m);
                }
                rows.push(row);
                rhs.push(if a == bcol { BigInt::one() } else { BigInt::default() });
            }
        }
        for dir in 0..x.dim() {
            if c[dir] == 0 {
                continue;
            }
            let mut b = c.clone();
            b[dir] -= 1;
            let (bx, by) = (x.objects().rank(&b), y.objects().rank(&b));
            for tilde in [false, true] {
                let dx = x.diff(tilde, dir, c);
                let dy = y.diff(tilde, dir, c);
                // dx s_c - s_b dy = 0
                for r in 0..bx {
                    for col in 0..ry {
                        let mut row = IntMatrix::zeros(1, total);
                        for m in 0..rx {
                            *row.get_mut(0, var(c, m, col)) += dx.get(r, m);
                        }
                        for m in 0..by {
                            *row.get_mut(0, var(&b, r, m)) -= dy.get(m, col);
                        }
                        rows.push(row);
                        rhs.push(BigInt::default());
                    }
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        IntMatrix::zeros(total, 1)
    } else {
        let a = block(&rows.iter().collect::<Vec<_>>());
        let b = IntMatrix::from_fn(rhs.len(), 1, |i, _| rhs[i].clone());
        solve_integer(&a, &b)?
    };
    Some(
        cells
            .iter()
            .map(|c| {
                let (rx, ry) = (x.objects().rank(c), y.objects().rank(c));
                (c.clone(), IntMatrix::from_fn(rx, ry, |r, col| sol.get(var(c, r, col), 0).clone()))
            })
            .collect(),
    )
}

/// The epimorphism `(P ⇉ P⊕P ⇉ P) -> (P ⇉ P -> 0)` with `P = ℤ^rank`. The top row is
/// `i_1` then the projection killing the first summand; the bottom row uses the other
/// summand. With `diagonal` both rows are the top one.
pub fn binary_nonsplit_example(rank: usize, diagonal: bool) -> (BinaryMulticomplex, BinaryMulticomplex, CellMap) {
    let id = IntMatrix::identity(rank);
    let zero = IntMatrix::zeros(rank, rank);
    let i1 = id.vstack(&zero);
    let i2 = zero.vstack(&id);
    let kill_first = zero.hstack(&id);
    let kill_second = id.hstack(&zero);
    let top = ChainComplex::from_parts(vec![rank, 2 * rank, rank], vec![kill_first.clone(), i1.clone()]);
    let bottom = if diagonal { top.clone() } else { ChainComplex::from_parts(vec![rank, 2 * rank, rank], vec![kill_second, i2]) };
    let x = BinaryMulticomplex::from_chain_pair(&top, &bottom).expect("same objects");
    let target = ChainComplex::from_parts(vec![0, rank, rank], vec![IntMatrix::zeros(0, rank), id.clone()]);
    let y = BinaryMulticomplex::from_chain_pair(&target, &target).expect("same objects");
    let mut f = CellMap::new();
    f.insert(vec![0], IntMatrix::zeros(0, rank));
    f.insert(vec![1], id.hstack(&id));
    f.insert(vec![2], id);
    (x, y, f)
}

/// `true` when the binary epimorphism above admits no section commuting with both differentials.
pub fn binary_nonsplit_check() -> bool {
    let (x, y, f) = binary_nonsplit_example(1, false);
    find_binary_section(&f, &x, &y).is_none()
}

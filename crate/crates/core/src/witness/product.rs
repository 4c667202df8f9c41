use num_bigint::BigInt;

use super::{ChainBuilder, KClassExpr, WitnessChain};
use crate::complexes::{BinaryMulticomplex, Cell, CellMap, DiffMap, GradedObject, ShortExactSequence};
use crate::derived::{simplicial_tensor_map, simplicial_tensor_n};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve_integer, IntMatrix};

fn identity_map(x: &BinaryMulticomplex) -> CellMap {
    x.objects().cells().map(|(c, r)| (c.clone(), IntMatrix::identity(r))).collect()
}

/// `0 -> A ⊗ Q -> B ⊗ Q -> C ⊗ Q -> 0` from `0 -> A -> B -> C -> 0` (or with the factors swapped).
fn tensor_ses(ses: &ShortExactSequence, q: &BinaryMulticomplex, q_on_left: bool) -> Result<ShortExactSequence> {
    let id = identity_map(q);
    let t = |x: &BinaryMulticomplex| if q_on_left { simplicial_tensor_n(q, x) } else { simplicial_tensor_n(x, q) };
    let m = |(a, b): (&BinaryMulticomplex, &BinaryMulticomplex), f: &CellMap| {
        if q_on_left {
            simplicial_tensor_map((q, a), (q, b), &id, f)
        } else {
            simplicial_tensor_map((a, q), (b, q), f, &id)
        }
    };
    Ok(ShortExactSequence {
        sub: t(&ses.sub)?,
        total: t(&ses.total)?,
        quotient: t(&ses.quotient)?,
        inclusion: m((&ses.sub, &ses.total), &ses.inclusion)?,
        projection: m((&ses.total, &ses.quotient), &ses.projection)?,
    })
}

/// `0 -> X|[0,j-1] -> X|[0,j] -> X_j[j] -> 0` along direction 0.
fn filtration_ses(x: &BinaryMulticomplex, j: usize) -> ShortExactSequence {
    let sub = x.restrict(0, 0, j - 1);
    let total = x.restrict(0, 0, j);
    let quotient = x.slice(0, j, j);
    let mut inclusion = CellMap::new();
    let mut projection = CellMap::new();
    for (c, r) in total.objects().cells() {
        if c[0] == j {
            projection.insert(c.clone(), IntMatrix::identity(r));
        } else {
            inclusion.insert(c.clone(), IntMatrix::identity(r));
        }
    }
    ShortExactSequence { sub, total, quotient, inclusion, projection }
}

/// `0 -> X_j[t-1] -> (X_j = X_j) -> X_j[t] -> 0`.
fn doubling_ses(x: &BinaryMulticomplex, j: usize, t: usize) -> ShortExactSequence {
    let total = x.doubled_slice(0, j, t, 1);
    let mut inclusion = CellMap::new();
    let mut projection = CellMap::new();
    for (c, r) in total.objects().cells() {
        if c[0] == t {
            projection.insert(c.clone(), IntMatrix::identity(r));
        } else {
            inclusion.insert(c.clone(), IntMatrix::identity(r));
        }
    }
    ShortExactSequence { sub: x.slice(0, j, t - 1), total, quotient: x.slice(0, j, t), inclusion, projection }
}

fn at_degree(c: &[usize], j: usize) -> Cell {
    let mut c = c.to_vec();
    c[0] = j;
    c
}

/// `Z_j = ker(d^0: P_j -> P_{j-1})` placed in degree 0, with its inclusion into `P_j[0]`.
fn cycles(p: &BinaryMulticomplex, j: usize) -> (BinaryMulticomplex, CellMap) {
    let n = p.dim();
    let slice = p.slice(0, j, 0);
    let mut basis = CellMap::new();
    let mut objects = GradedObject::new(n);
    for (c, r) in slice.objects().cells() {
        let k = if j == 0 { IntMatrix::identity(r) } else { kernel_basis(&p.d(0, &at_degree(c, j))) };
        objects.set_rank(c.clone(), k.cols());
        basis.insert(c.clone(), k);
    }
    let get = |c: &Cell| basis.get(c).cloned().unwrap_or_else(|| IntMatrix::zeros(slice.objects().rank(c), 0));
    let mut fams = Vec::new();
    for tilde in [false, true] {
        let mut fam = vec![DiffMap::new(); n];
        for (c, _) in objects.cells() {
            for (dir, slot) in fam.iter_mut().enumerate().skip(1) {
                if c[dir] == 0 {
                    continue;
                }
                let mut b = c.clone();
                b[dir] -= 1;
                let image = &slice.diff(tilde, dir, c) * &get(c);
                let m = solve_integer(&get(&b), &image).expect("differentials preserve cycles");
                slot.insert(c.clone(), m);
            }
        }
        fams.push(fam);
    }
    let d_tilde = fams.pop().unwrap();
    let d = fams.pop().unwrap();
    (BinaryMulticomplex::new(objects, d, d_tilde).expect("cycle shapes are consistent"), basis)
}

/// Certificate that `[P ⊗_{Δ,n} Q]` vanishes, filtering `P` along the first direction.
pub fn product_vanishing_witness(p: &BinaryMulticomplex, q: &BinaryMulticomplex) -> Result<WitnessChain> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", p.dim(), q.dim())));
    }
    if p.dim() == 0 {
        return Err(Error::DimensionMismatch("dimension must be at least 1".into()));
    }
    if !p.is_acyclic() {
        return Err(Error::NotAcyclic("first factor".into()));
    }
    if !q.is_acyclic() {
        return Err(Error::NotAcyclic("second factor".into()));
    }
    let n = p.dim();
    let mut b = ChainBuilder::new(n);
    let product = simplicial_tensor_n(p, q)?;
    let top = b.intern(&product);
    let claim = KClassExpr::term(top, BigInt::from(1));
    if let Some(dir) = (0..n).find(|&d| p.is_diagonal_in(d) && q.is_diagonal_in(d)) {
        b.diagonal(&product, dir);
        return b.finish(claim);
    }
    let len_p = p.objects().support_bound()[0];
    let len_q = q.objects().support_bound()[0];

    // degree filtration of P
    for j in 1..=len_p {
        b.ses(tensor_ses(&filtration_ses(p, j), q, false)?);
    }

    // P_j[t] ⊗ Q = -P_j[t-1] ⊗ Q via the doubled slice, which is killed by filtering Q
    for j in 1..=len_p {
        for t in (1..=j).rev() {
            let ses = doubling_ses(p, j, t);
            let e = ses.total.clone();
            b.ses(tensor_ses(&ses, q, false)?);
            for i in 1..=len_q {
                b.ses(tensor_ses(&filtration_ses(q, i), &e, true)?);
            }
            for i in 0..=len_q {
                let piece = simplicial_tensor_n(&e, &q.slice(0, i, i))?;
                b.diagonal(&piece, 0);
            }
        }
    }

    // the exact sequence of slices, spliced through the cycles Z_j
    let mut prev = cycles(p, 0);
    for j in 1..=len_p {
        let (z, k) = cycles(p, j);
        let (z_prev, k_prev) = &prev;
        let pj = p.slice(0, j, 0);
        let mut proj = CellMap::new();
        for (c, _) in pj.objects().cells() {
            let d = p.d(0, &at_degree(c, j));
            let kp = k_prev.get(c).cloned().unwrap_or_else(|| IntMatrix::zeros(d.rows(), 0));
            proj.insert(c.clone(), solve_integer(&kp, &d).expect("acyclic: boundaries are cycles"));
        }
        let ses = ShortExactSequence { sub: z.clone(), total: pj, quotient: z_prev.clone(), inclusion: k.clone(), projection: proj };
        b.ses(tensor_ses(&ses, q, false)?);
        prev = (z, k);
    }
    // Z at the top degree is zero because d^0 is injective there
    b.diagonal(&simplicial_tensor_n(&prev.0, q)?, 0);
    b.finish(claim)
}

//! Functors induced on complexes and multicomplexes, simplicial tensor products and
//! the exterior-power filtration.

mod engine;
mod filtration;
mod oracle;

use std::collections::BTreeMap;

pub use engine::{Structure, Transport};
pub use filtration::{wedge_filtration, WedgeFiltration};
pub use oracle::{counterexample_complex, counterexample_h2, predicted_ranks, predicted_tensor_ranks, tensor_ranks_by_injections, PresentedComplex};

use crate::complexes::{BinaryMulticomplex, Cell, CellMap, ChainComplex, GradedObject, Multicomplex};
use crate::error::{Error, Result};
use crate::functor::FunctorSpec;

fn check_order(order: &[usize], dim: usize) -> Result<()> {
    let mut seen = vec![false; dim];
    for &d in order {
        if d >= dim || seen[d] {
            return Err(Error::DimensionMismatch(format!("direction order {order:?} is not a permutation of 0..{dim}")));
        }
        seen[d] = true;
    }
    if order.len() != dim {
        return Err(Error::DimensionMismatch(format!("direction order {order:?} is not a permutation of 0..{dim}")));
    }
    Ok(())
}

fn functor_transport(f: &FunctorSpec, objects: &GradedObject, order: Option<&[usize]>) -> Result<Transport> {
    if !f.is_zero_preserving() {
        return Err(Error::NotZeroPreserving);
    }
    let order = order.map_or_else(|| Transport::default_order(objects.dim()), <[usize]>::to_vec);
    check_order(&order, objects.dim())?;
    Ok(Transport::new(Structure::Functor(f.clone()), objects, BTreeMap::new(), &order))
}

/// `F_1(C) = N F Γ(C)`.
pub fn induced_f1(f: &FunctorSpec, c: &ChainComplex) -> Result<ChainComplex> {
    let x = Multicomplex::from_chain(c);
    Ok(induced_fn(f, &x, None)?.to_chain())
}

/// `F_n(X)`, peeling directions in `order` (outermost first; default: last direction first).
pub fn induced_fn(f: &FunctorSpec, x: &Multicomplex, order: Option<&[usize]>) -> Result<Multicomplex> {
    Ok(functor_transport(f, x.objects(), order)?.multicomplex(x.family()))
}

/// `F_n` applied to every choice multicomplex of a binary multicomplex, reassembled.
pub fn binary_functor(f: &FunctorSpec, b: &BinaryMulticomplex, order: Option<&[usize]>) -> Result<BinaryMulticomplex> {
    Ok(functor_transport(f, b.objects(), order)?.binary(b))
}

/// `Λ^r_n` on `n`-dimensional binary multicomplexes.
pub fn binary_lambda(r: u32, n: usize, b: &BinaryMulticomplex) -> Result<BinaryMulticomplex> {
    if b.dim() != n {
        return Err(Error::DimensionMismatch(format!("expected dimension {n}, got {}", b.dim())));
    }
    binary_functor(&FunctorSpec::Lambda(r), b, None)
}

/// Side tags `0` for `p`'s basis and `1` for `q`'s, cellwise on `p ⊕ q`.
pub(crate) fn sum_sides(p: &GradedObject, q: &GradedObject) -> BTreeMap<Cell, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut cells: Vec<Cell> = p.cells().map(|(c, _)| c.clone()).collect();
    cells.extend(q.cells().map(|(c, _)| c.clone()));
    for c in cells {
        let mut v = vec![0u8; p.rank(&c)];
        v.extend(std::iter::repeat(1u8).take(q.rank(&c)));
        out.insert(c, v);
    }
    out
}

/// Transport computing `F(ΓP) ⊗ G(ΓQ)` levelwise on `P ⊕ Q`.
pub fn tensor_transport(p: &BinaryMulticomplex, q: &BinaryMulticomplex, f: FunctorSpec, g: FunctorSpec) -> Result<(Transport, BinaryMulticomplex)> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", p.dim(), q.dim())));
    }
    let sum = p.direct_sum(q)?;
    let t = Transport::new(Structure::SideTensor(f, g), sum.objects(), sum_sides(p.objects(), q.objects()), &Transport::default_order(p.dim()));
    Ok((t, sum))
}

/// `P ⊗_{Δ,n} Q` for binary multicomplexes, per matched differential pair.
pub fn simplicial_tensor_n(p: &BinaryMulticomplex, q: &BinaryMulticomplex) -> Result<BinaryMulticomplex> {
    let (t, sum) = tensor_transport(p, q, FunctorSpec::Identity, FunctorSpec::Identity)?;
    Ok(t.binary(&sum))
}

/// `P ⊗_Δ Q = N diag(ΓP ⊗ ΓQ)`.
pub fn simplicial_tensor(p: &ChainComplex, q: &ChainComplex) -> ChainComplex {
    let p = Multicomplex::from_chain(p).as_binary();
    let q = Multicomplex::from_chain(q).as_binary();
    simplicial_tensor_n(&p, &q).expect("dimensions agree").top()
}

/// `f ⊗_Δ g: P ⊗_Δ Q -> P' ⊗_Δ Q'` from degreewise maps `f: P -> P'`, `g: Q -> Q'`.
pub fn simplicial_tensor_map(
    (p, q): (&BinaryMulticomplex, &BinaryMulticomplex),
    (p2, q2): (&BinaryMulticomplex, &BinaryMulticomplex),
    f: &CellMap,
    g: &CellMap,
) -> Result<CellMap> {
    let (src, _) = tensor_transport(p, q, FunctorSpec::Identity, FunctorSpec::Identity)?;
    let (dst, _) = tensor_transport(p2, q2, FunctorSpec::Identity, FunctorSpec::Identity)?;
    let mut cells: Vec<Cell> = p.objects().cells().map(|(c, _)| c.clone()).collect();
    cells.extend(q.objects().cells().map(|(c, _)| c.clone()));
    cells.sort();
    cells.dedup();
    let mut sum_map = CellMap::new();
    for c in cells {
        let fm = f.get(&c).cloned().unwrap_or_else(|| crate::linalg::IntMatrix::zeros(p2.objects().rank(&c), p.objects().rank(&c)));
        let gm = g.get(&c).cloned().unwrap_or_else(|| crate::linalg::IntMatrix::zeros(q2.objects().rank(&c), q.objects().rank(&c)));
        sum_map.insert(c, fm.block_diag(&gm));
    }
    Ok(src.induced_map(&dst, &sum_map))
}

/// `NΛ^rΓ(C)` written in the cross-effect bases `cr(C_0⟨η⟩, C_1⟨η'⟩, ...)`: each wedge of `Γ`
/// generators is ordered by summand degree ascending (then `η`, then index) instead of the
/// `Γ` label order, which changes basis vectors by the sign of the reordering.
pub fn lambda_cross_effect_form(r: u32, c: &ChainComplex) -> Result<ChainComplex> {
    use crate::dold_kan::{apply_functor_simplicial, gamma, gamma_labels, normalized_moore};
    use crate::functor::{basis_elements, leaf_alphabet};
    let f = FunctorSpec::Lambda(r);
    let level = r as usize * c.length() + 1;
    let a = apply_functor_simplicial(&f, &gamma(c, level));
    let n = normalized_moore(&a)?;
    let mut signs = Vec::with_capacity(level + 1);
    for m in 0..=level {
        let labels = gamma_labels(c, m);
        let basis = basis_elements(&f, &leaf_alphabet(labels.len()));
        let key = |l: u32| {
            let g = &labels[l as usize];
            (g.eta.target(), g.eta.clone(), g.k)
        };
        let mut s = Vec::with_capacity(n.inclusion[m].cols());
        for j in 0..n.inclusion[m].cols() {
            let col = n.inclusion[m].column(j);
            let nz: Vec<usize> = (0..col.len()).filter(|&i| !num_traits::Zero::is_zero(&col[i])).collect();
            let [i] = nz[..] else {
                return Err(Error::Validation { cell: format!("[{m}]"), message: "normalized basis is not coordinate".into() });
            };
            let leaves = basis[i].leaves();
            let inversions = (0..leaves.len())
                .flat_map(|x| (x + 1..leaves.len()).map(move |y| (x, y)))
                .filter(|&(x, y)| key(leaves[x]) > key(leaves[y]))
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            s.push(&col[i] * sign);
        }
        signs.push(s);
    }
    let diffs = (1..n.complex.ranks().len())
        .map(|m| {
            let d = n.complex.d(m);
            crate::linalg::IntMatrix::from_fn(d.rows(), d.cols(), |i, j| d.get(i, j) * &signs[m - 1][i] * &signs[m][j])
        })
        .collect();
    Ok(ChainComplex::from_parts(n.complex.ranks().to_vec(), diffs))
}

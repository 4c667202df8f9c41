use std::collections::BTreeMap;

use num_traits::One;

use super::engine::{Structure, Transport};
use crate::complexes::{BinaryMulticomplex, Cell, CellMap, DiffMap, GradedObject, ShortExactSequence};
use crate::error::{Error, Result};
use crate::functor::{Basis, FunctorSpec};
use crate::linalg::{inverse_unimodular, split_surjection, IntMatrix};

/// `Λ^r(P') = F_0 ⊂ F_1 ⊂ ⋯ ⊂ F_r = Λ^r(P)` with `F_i / F_{i-1} ≅ Λ^{r-i}(P') ⊗_Δ Λ^i(P'')`.
#[derive(Clone, Debug)]
pub struct WedgeFiltration {
    /// `F_0, …, F_r`, each a subobject of `Λ^r` of the adapted complex.
    pub stages: Vec<BinaryMulticomplex>,
    /// `0 -> F_{i-1} -> F_i -> Λ^{r-i}(P') ⊗_Δ Λ^i(P'') -> 0` for `i = 0..=r` (with `F_{-1} = 0`).
    pub sequences: Vec<ShortExactSequence>,
    /// `Λ^r` of the total complex in its own basis, and the isomorphism `F_r -> Λ^r(P)`.
    pub lambda_total: BinaryMulticomplex,
    pub total_iso: CellMap,
}

fn restrict_coords(b: &BinaryMulticomplex, keep: &BTreeMap<Cell, Vec<usize>>) -> BinaryMulticomplex {
    let n = b.dim();
    let objects = GradedObject::from_ranks(n, keep.iter().map(|(c, v)| (c.clone(), v.len())));
    let sel = |c: &Cell| keep.get(c).cloned().unwrap_or_default();
    let mut fams = Vec::new();
    for tilde in [false, true] {
        let mut fam = vec![DiffMap::new(); n];
        for (c, cols) in keep {
            for (dir, slot) in fam.iter_mut().enumerate() {
                if c[dir] == 0 {
                    continue;
                }
                let mut below = c.clone();
                below[dir] -= 1;
                let m = b.diff(tilde, dir, c).select_rows(&sel(&below)).select_cols(cols);
                slot.insert(c.clone(), m);
            }
        }
        fams.push(fam);
    }
    let dt = fams.pop().unwrap();
    let d = fams.pop().unwrap();
    BinaryMulticomplex::new(objects, d, dt).expect("restricted shapes are consistent")
}

/// Filtration of `Λ^r(P)` induced by `0 -> P' -> P -> P'' -> 0`, for binary multicomplexes of
/// any dimension (dimension 0 is a sequence of free modules).
pub fn wedge_filtration(r: u32, ses: &ShortExactSequence) -> Result<WedgeFiltration> {
    if let Some((cell, why)) = ses.first_failure() {
        return Err(Error::NotExact(format!("at {}: {why}", crate::json::cell_key(&cell))));
    }
    let (p1, p) = (&ses.sub, &ses.total);
    let n = p.dim();
    let order = Transport::default_order(n);

    // adapted basis [i | t] with t a section of the projection
    let mut change = CellMap::new();
    let mut change_inv = CellMap::new();
    let mut sides: BTreeMap<Cell, Vec<u8>> = BTreeMap::new();
    for (c, rank) in p.objects().cells() {
        let a = p1.objects().rank(c);
        let i = ses.inclusion.get(c).cloned().unwrap_or_else(|| IntMatrix::zeros(rank, a));
        let proj = ses.projection.get(c).cloned().unwrap_or_else(|| IntMatrix::zeros(rank - a, rank));
        let t = split_surjection(&proj).map_err(|e| Error::NotExact(e.to_string()))?;
        let b = i.hstack(&t);
        let b_inv = inverse_unimodular(&b).ok_or_else(|| Error::NotExact(format!("at {}: no adapted basis", crate::json::cell_key(c))))?;
        change.insert(c.clone(), b);
        change_inv.insert(c.clone(), b_inv);
        let mut s = vec![0u8; a];
        s.extend(std::iter::repeat(1u8).take(rank - a));
        sides.insert(c.clone(), s);
    }
    let conj = |tilde: bool, split: bool| -> Vec<DiffMap> {
        (0..n)
            .map(|dir| {
                let mut m = DiffMap::new();
                for (c, _) in p.objects().cells() {
                    if c[dir] == 0 {
                        continue;
                    }
                    let mut below = c.clone();
                    below[dir] -= 1;
                    let Some(bi) = change_inv.get(&below) else { continue };
                    let mut x = &(bi * &p.diff(tilde, dir, c)) * &change[c];
                    if split {
                        // drop the block from the quotient part to the sub part
                        let (ra, ca) = (p1.objects().rank(&below), p1.objects().rank(c));
                        for row in 0..ra {
                            for col in ca..x.cols() {
                                x.set(row, col, num_bigint::BigInt::from(0));
                            }
                        }
                    }
                    m.insert(c.clone(), x);
                }
                m
            })
            .collect()
    };
    let adapted = BinaryMulticomplex::new(p.objects().clone(), conj(false, false), conj(true, false))?;
    let split = BinaryMulticomplex::new(p.objects().clone(), conj(false, true), conj(true, true))?;

    let lambda = Transport::new(Structure::Functor(FunctorSpec::Lambda(r)), adapted.objects(), sides.clone(), &order);
    let whole = lambda.binary(&adapted);
    let out_objects = whole.objects().clone();
    let count = |c: &Cell, b: &Basis| b.leaves().iter().filter(|&&l| lambda.leaf_side(c, l) == 1).count();

    let coords = |pred: &dyn Fn(usize) -> bool| -> BTreeMap<Cell, Vec<usize>> {
        out_objects
            .cells()
            .map(|(c, _)| (c.clone(), lambda.basis(c).iter().enumerate().filter(|(_, b)| pred(count(c, b))).map(|(k, _)| k).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect()
    };
    let stage_coords: Vec<BTreeMap<Cell, Vec<usize>>> = (0..=r as usize).map(|i| coords(&|k| k <= i)).collect();
    let stages: Vec<BinaryMulticomplex> = stage_coords.iter().map(|k| restrict_coords(&whole, k)).collect();

    let mut sequences = Vec::new();
    for i in 0..=r as usize {
        let tensor = Transport::new(
            Structure::SideTensor(FunctorSpec::Lambda(r - i as u32), FunctorSpec::Lambda(i as u32)),
            split.objects(),
            sides.clone(),
            &order,
        );
        let quotient = tensor.binary(&split);
        let sub = if i == 0 { BinaryMulticomplex::zero(n) } else { stages[i - 1].clone() };
        let mut inclusion = CellMap::new();
        let mut projection = CellMap::new();
        for (c, cols) in &stage_coords[i] {
            if i > 0 {
                let below = stage_coords[i - 1].get(c).cloned().unwrap_or_default();
                let pos: Vec<usize> = below.iter().map(|x| cols.binary_search(x).expect("stages are nested")).collect();
                inclusion.insert(c.clone(), IntMatrix::identity(cols.len()).select_cols(&pos));
            }
            let target = tensor.basis(c);
            let mut m = IntMatrix::zeros(target.len(), cols.len());
            for (j, &k) in cols.iter().enumerate() {
                let b = &lambda.basis(c)[k];
                if count(c, b) != i {
                    continue;
                }
                let Basis::Seq(xs) = b else { unreachable!() };
                let (left, right): (Vec<Basis>, Vec<Basis>) = xs.iter().cloned().partition(|x| {
                    let Basis::Leaf(l) = x else { unreachable!() };
                    lambda.leaf_side(c, *l) == 0
                });
                let pair = Basis::Pair(Box::new(Basis::Seq(left)), Box::new(Basis::Seq(right)));
                let row = target.iter().position(|y| *y == pair).expect("quotient basis matches the tensor basis");
                m.set(row, j, One::one());
            }
            projection.insert(c.clone(), m);
        }
        sequences.push(ShortExactSequence { sub, total: stages[i].clone(), quotient, inclusion, projection });
    }

    // F_r is Λ^r of the adapted complex; transport the change of basis back to P
    let direct = Transport::new(Structure::Functor(FunctorSpec::Lambda(r)), p.objects(), BTreeMap::new(), &order);
    let lambda_total = direct.binary(p);
    let total_iso = lambda.induced_map(&direct, &change);
    Ok(WedgeFiltration { stages, sequences, lambda_total, total_iso })
}

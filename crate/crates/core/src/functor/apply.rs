use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::basis::{basis_elements, leaf_alphabet, Basis};
use super::spec::FunctorSpec;
use crate::linalg::IntMatrix;

/// Commutative coefficient ring for multilinear expansion.
pub trait Coeff: Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn from_bigint(x: BigInt) -> Self;
}

impl Coeff for BigInt {
    fn from_bigint(x: BigInt) -> Self {
        x
    }
}

/// Sparse linear combination of basis elements.
pub type Lin<C> = BTreeMap<Basis, C>;

pub fn add_term<C: Coeff>(v: &mut Lin<C>, b: Basis, c: C) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&b) {
        Some(x) => {
            let s = x.clone() + c;
            if s.is_zero() {
                v.remove(&b);
            } else {
                *x = s;
            }
        }
        None => {
            v.insert(b, c);
        }
    }
}

fn binom_big(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Wedge, symmetric, or tensor product of linear forms, accumulated on canonical sequences.
fn products<C: Coeff>(factors: &[Lin<C>], kind: SeqKind) -> Lin<C> {
    let mut acc: BTreeMap<Vec<Basis>, C> = BTreeMap::new();
    acc.insert(vec![], C::one());
    for v in factors {
        let mut next: BTreeMap<Vec<Basis>, C> = BTreeMap::new();
        for (seq, c) in &acc {
            for (y, a) in v {
                let mut s = seq.clone();
                let mut coeff = c.clone() * a.clone();
                match kind {
                    SeqKind::Tensor => s.push(y.clone()),
                    SeqKind::Sym => {
                        let pos = s.partition_point(|z| z <= y);
                        s.insert(pos, y.clone());
                    }
                    SeqKind::Wedge => {
                        let pos = s.partition_point(|z| z < y);
                        if s.get(pos) == Some(y) {
                            continue;
                        }
                        if (s.len() - pos) % 2 == 1 {
                            coeff = -coeff;
                        }
                        s.insert(pos, y.clone());
                    }
                }
                let e = next.entry(s).or_insert_with(C::zero);
                *e = e.clone() + coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc.into_iter().map(|(s, c)| (Basis::Seq(s), c)).collect()
}

#[derive(Clone, Copy)]
enum SeqKind {
    Wedge,
    Sym,
    Tensor,
}

/// `φ(x_1)^{[a_1]} ⋯ φ(x_k)^{[a_k]}` in the divided power algebra.
fn divided_products<C: Coeff>(runs: &[(Lin<C>, u32)]) -> Lin<C> {
    // multisets are kept as sorted Vec<(Basis, multiplicity)>
    type Mono = Vec<(Basis, u32)>;
    let mut acc: BTreeMap<Mono, C> = BTreeMap::new();
    acc.insert(vec![], C::one());
    for (v, a) in runs {
        let terms: Vec<(&Basis, &C)> = v.iter().collect();
        // compositions of `a` over the support of v
        let mut expansion: Vec<(Mono, C)> = Vec::new();
        fn comps<C: Coeff>(
            terms: &[(&Basis, &C)],
            left: u32,
            i: usize,
            cur: &mut Vec<(Basis, u32)>,
            c: C,
            out: &mut Vec<(Vec<(Basis, u32)>, C)>,
        ) {
            if i == terms.len() {
                if left == 0 {
                    out.push((cur.clone(), c));
                }
                return;
            }
            let mut cc = c;
            for k in 0..=left {
                if k > 0 {
                    cc = cc * terms[i].1.clone();
                    cur.push((terms[i].0.clone(), k));
                }
                comps(terms, left - k, i + 1, cur, cc.clone(), out);
                if k > 0 {
                    cur.pop();
                }
            }
        }
        if terms.is_empty() {
            if *a == 0 {
                continue;
            }
            return Lin::new();
        }
        comps(&terms, *a, 0, &mut Vec::new(), C::one(), &mut expansion);
        let mut next: BTreeMap<Mono, C> = BTreeMap::new();
        for (m1, c1) in &acc {
            for (m2, c2) in &expansion {
                let mut merged: BTreeMap<Basis, u32> = m1.iter().cloned().collect();
                let mut coeff = c1.clone() * c2.clone();
                for (b, k) in m2 {
                    let e = merged.entry(b.clone()).or_insert(0);
                    if *e > 0 {
                        coeff = coeff * C::from_bigint(binom_big(u64::from(*e + k), u64::from(*k)));
                    }
                    *e += k;
                }
                let key: Mono = merged.into_iter().collect();
                let e = next.entry(key).or_insert_with(C::zero);
                *e = e.clone() + coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc.into_iter()
        .map(|(m, c)| {
            let seq = m.into_iter().flat_map(|(b, k)| std::iter::repeat(b).take(k as usize)).collect();
            (Basis::Seq(seq), c)
        })
        .collect()
}

fn runs(xs: &[Basis]) -> Vec<(&Basis, u32)> {
    let mut out: Vec<(&Basis, u32)> = Vec::new();
    for x in xs {
        match out.last_mut() {
            Some((y, k)) if *y == x => *k += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// `F(φ)(b)`, where `φ` sends each element of the argument's alphabet to a linear combination.
pub fn apply<C: Coeff>(spec: &FunctorSpec, b: &Basis, phi: &dyn Fn(&Basis) -> Lin<C>) -> Lin<C> {
    use FunctorSpec::*;
    match spec {
        Identity => phi(b),
        Zero => Lin::new(),
        Lambda(_) | Sym(_) | TensorPower(_) | DividedPower(_) => {
            let Basis::Seq(xs) = b else { panic!("basis element {b:?} does not belong to {spec}") };
            match spec {
                Lambda(_) => products(&xs.iter().map(phi).collect::<Vec<_>>(), SeqKind::Wedge),
                Sym(_) => products(&xs.iter().map(phi).collect::<Vec<_>>(), SeqKind::Sym),
                TensorPower(_) => products(&xs.iter().map(phi).collect::<Vec<_>>(), SeqKind::Tensor),
                _ => {
                    let rs: Vec<(Lin<C>, u32)> = runs(xs).into_iter().map(|(x, k)| (phi(x), k)).collect();
                    divided_products(&rs)
                }
            }
        }
        DirectSum(f, g) => match b {
            Basis::Inl(x) => apply(f, x, phi).into_iter().map(|(y, c)| (Basis::Inl(Box::new(y)), c)).collect(),
            Basis::Inr(x) => apply(g, x, phi).into_iter().map(|(y, c)| (Basis::Inr(Box::new(y)), c)).collect(),
            _ => panic!("basis element {b:?} does not belong to {spec}"),
        },
        TensorProduct(f, g) => {
            let Basis::Pair(x, y) = b else { panic!("basis element {b:?} does not belong to {spec}") };
            let (u, v) = (apply(f, x, phi), apply(g, y, phi));
            let mut out = Lin::new();
            for (p, c) in &u {
                for (q, d) in &v {
                    add_term(&mut out, Basis::Pair(Box::new(p.clone()), Box::new(q.clone())), c.clone() * d.clone());
                }
            }
            out
        }
        Compose(f, g) => {
            let inner = |x: &Basis| apply(g, x, phi);
            apply(f, b, &inner)
        }
    }
}

/// Rank of `F(Z^n)`.
pub fn apply_to_module(spec: &FunctorSpec, n: usize) -> usize {
    super::basis::rank_of(spec, n)
}

/// Matrix of `F(A)` in the sorted bases of `F(Z^cols)` and `F(Z^rows)`.
pub fn apply_to_hom(spec: &FunctorSpec, a: &IntMatrix) -> IntMatrix {
    let (m, n) = a.shape();
    let src = basis_elements(spec, &leaf_alphabet(n));
    let dst = basis_elements(spec, &leaf_alphabet(m));
    let index: HashMap<&Basis, usize> = dst.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let columns: Vec<Lin<BigInt>> = (0..n)
        .map(|j| {
            (0..m)
                .filter(|&i| !a.get(i, j).is_zero())
                .map(|i| (Basis::Leaf(i as u32), a.get(i, j).clone()))
                .collect()
        })
        .collect();
    let phi = |x: &Basis| -> Lin<BigInt> {
        let Basis::Leaf(j) = x else { unreachable!() };
        columns[*j as usize].clone()
    };
    let mut out = IntMatrix::zeros(dst.len(), src.len());
    for (col, b) in src.iter().enumerate() {
        for (y, c) in apply(spec, b, &phi) {
            out.set(index[&y], col, c);
        }
    }
    out
}

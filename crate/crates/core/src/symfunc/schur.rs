use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::functor::{apply, apply_to_hom, basis_elements, leaf_alphabet, Basis, FunctorSpec, Homogeneity, Lin};
use crate::linalg::IntMatrix;

/// Elementary matrix `E_{ij}`.
pub type Unit = (usize, usize);

/// `Γ^d Mat(n, ℤ)`: symmetric tensors in `Mat(n)^{⊗d}`, with basis the orbit sums of
/// sorted words of elementary matrices.
#[derive(Clone, Debug)]
pub struct SchurAlgebra {
    n: usize,
    d: usize,
    basis: Vec<Vec<Unit>>,
    index: HashMap<Vec<Unit>, usize>,
}

/// Coefficients over the orbit-sum basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurAlgebraElement {
    pub n: usize,
    pub d: usize,
    pub coeffs: Vec<BigInt>,
}

fn multisets(items: &[Unit], d: usize) -> Vec<Vec<Unit>> {
    fn go(items: &[Unit], start: usize, d: usize, cur: &mut Vec<Unit>, out: &mut Vec<Vec<Unit>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, i, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of a sorted word.
fn orbit(word: &[Unit]) -> Vec<Vec<Unit>> {
    let mut w = word.to_vec();
    w.sort();
    let mut out = vec![w.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else { break };
        let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
        w.swap(i - 1, j);
        w[i..].reverse();
        out.push(w.clone());
    }
    out
}

/// Multiplicities of the distinct letters of a sorted word.
fn runs(word: &[Unit]) -> Vec<(Unit, u32)> {
    let mut out: Vec<(Unit, u32)> = Vec::new();
    for &u in word {
        match out.last_mut() {
            Some((v, k)) if *v == u => *k += 1,
            _ => out.push((u, 1)),
        }
    }
    out
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl SchurAlgebra {
    pub fn new(n: usize, d: usize) -> Self {
        let units: Vec<Unit> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let basis = multisets(&units, d);
        let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        SchurAlgebra { n, d, basis, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `C(n² + d - 1, d)`, the number of size-`d` multisets of elementary matrices.
    pub fn expected_rank(n: usize, d: usize) -> usize {
        binom(n * n + d - 1, d)
    }

    pub fn basis(&self) -> &[Vec<Unit>] {
        &self.basis
    }

    pub fn basis_element(&self, i: usize) -> SchurAlgebraElement {
        let mut coeffs = vec![BigInt::zero(); self.rank()];
        coeffs[i] = BigInt::one();
        SchurAlgebraElement { n: self.n, d: self.d, coeffs }
    }

    pub fn zero(&self) -> SchurAlgebraElement {
        SchurAlgebraElement { n: self.n, d: self.d, coeffs: vec![BigInt::zero(); self.rank()] }
    }

    /// `Γ^d(1) = 1^{⊗d}`: the orbit sums of diagonal words.
    pub fn unit(&self) -> SchurAlgebraElement {
        self.gamma(&IntMatrix::identity(self.n))
    }

    /// `Γ^d(A) = A^{⊗d}`, whose coefficient on a multiset is the product of the matching entries.
    pub fn gamma(&self, a: &IntMatrix) -> SchurAlgebraElement {
        let coeffs = self.basis.iter().map(|w| w.iter().map(|&(i, j)| a.get(i, j).clone()).product()).collect();
        SchurAlgebraElement { n: self.n, d: self.d, coeffs }
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, a: usize, b: usize) -> BTreeMap<usize, BigInt> {
        let mut counts: BTreeMap<usize, BigInt> = BTreeMap::new();
        let wb = orbit(&self.basis[b]);
        for w in orbit(&self.basis[a]) {
            for v in &wb {
                if w.iter().zip(v).any(|(x, y)| x.1 != y.0) {
                    continue;
                }
                let mut u: Vec<Unit> = w.iter().zip(v).map(|(x, y)| (x.0, y.1)).collect();
                u.sort();
                *counts.entry(self.index[&u]).or_default() += 1;
            }
        }
        // each word of an orbit occurs equally often
        counts
            .into_iter()
            .map(|(k, c)| {
                let size = BigInt::from(orbit(&self.basis[k]).len());
                debug_assert!((&c % &size).is_zero());
                (k, c / size)
            })
            .collect()
    }

    pub fn mul(&self, x: &SchurAlgebraElement, y: &SchurAlgebraElement) -> SchurAlgebraElement {
        let mut out = self.zero();
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in self.mul_basis(i, j) {
                    out.coeffs[k] += a * b * c;
                }
            }
        }
        out
    }

    /// Associativity on `samples` random basis triples and the unit law on every basis element.
    pub fn check_axioms(&self, rng: &mut impl Rng, samples: usize) -> bool {
        let one = self.unit();
        let unital = (0..self.rank()).all(|i| {
            let e = self.basis_element(i);
            self.mul(&one, &e) == e && self.mul(&e, &one) == e
        });
        let idx: Vec<usize> = (0..self.rank()).collect();
        let assoc = (0..samples).all(|_| {
            let pick = |rng: &mut dyn rand::RngCore| self.basis_element(*idx.choose(rng).unwrap());
            let (a, b, c) = (pick(rng), pick(rng), pick(rng));
            self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
        });
        unital && assoc
    }
}

/// `F(ℤ^n)` as a `Γ^d Mat(n, ℤ)`-module: one action matrix per basis element.
#[derive(Clone, Debug)]
pub struct SchurModule {
    pub algebra: SchurAlgebra,
    pub functor: FunctorSpec,
    pub rank: usize,
    pub actions: Vec<IntMatrix>,
}

/// The action of each orbit sum on `F(ℤ^n)`: for a word with distinct letters `B_l` of
/// multiplicities `m_l`, the coefficient of `Π t_l^{m_l}` in `F(Σ t_l B_l)`.
pub fn truncate_to_schur_module(f: &FunctorSpec, n: usize) -> Result<SchurModule> {
    let d = match f.homogeneity() {
        Homogeneity::Degree(d) => d as usize,
        other => return Err(Error::DegreeMismatch { expected: f.degree(), found: format!("{other:?}") }),
    };
    if n < d {
        return Err(Error::InsufficientVariables { needed: d, have: n });
    }
    let algebra = SchurAlgebra::new(n, d);
    let src = basis_elements(f, &leaf_alphabet(n));
    let pos: HashMap<&Basis, usize> = src.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let rank = src.len();
    let mut actions = Vec::with_capacity(algebra.rank());
    for word in algebra.basis() {
        let letters = runs(word);
        let target: Vec<u32> = letters.iter().map(|(_, k)| *k).collect();
        let phi = |x: &Basis| -> Lin<Poly> {
            let Basis::Leaf(j) = x else { unreachable!() };
            let mut out = Lin::new();
            for (l, ((a, b), _)) in letters.iter().enumerate() {
                if *b == *j as usize {
                    crate::functor::add_term(&mut out, Basis::Leaf(*a as u32), Poly::var(l));
                }
            }
            out
        };
        let mut m = IntMatrix::zeros(rank, rank);
        for (col, b) in src.iter().enumerate() {
            for (y, c) in apply(f, b, &phi) {
                let v = c.coeff(&target);
                if !v.is_zero() {
                    m.set(pos[&y], col, v);
                }
            }
        }
        actions.push(m);
    }
    Ok(SchurModule { algebra, functor: f.clone(), rank, actions })
}

impl SchurModule {
    pub fn act(&self, x: &SchurAlgebraElement) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rank, self.rank);
        for (c, m) in x.coeffs.iter().zip(&self.actions) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// `act(xy) = act(x) act(y)` on every pair of basis elements (or `samples` random pairs if
    /// there are more), and the unit acts as the identity.
    pub fn check_module_axioms(&self, rng: &mut impl Rng, samples: usize) -> bool {
        let a = &self.algebra;
        if !self.act(&a.unit()).is_identity() {
            return false;
        }
        let r = a.rank();
        let pairs: Vec<(usize, usize)> = if r * r <= samples {
            (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect()
        } else {
            (0..samples).map(|_| (rng.gen_range(0..r), rng.gen_range(0..r))).collect()
        };
        pairs.into_iter().all(|(i, j)| {
            let prod = a.mul(&a.basis_element(i), &a.basis_element(j));
            self.act(&prod) == &self.actions[i] * &self.actions[j]
        })
    }

    /// `Γ^d(A)` acts as `F(A)`.
    pub fn gamma_acts_as_functor(&self, m: &IntMatrix) -> bool {
        self.act(&self.algebra.gamma(m)) == apply_to_hom(&self.functor, m)
    }

    /// Rank of the weight-`λ` projection (the orbit sum of a diagonal word) for every weight,
    /// as a polynomial `Σ rank · x^λ`.
    pub fn weight_polynomial(&self) -> Poly {
        let mut out = Poly::default();
        for (word, m) in self.algebra.basis().iter().zip(&self.actions) {
            if word.iter().any(|(i, j)| i != j) {
                continue;
            }
            let mut mono = vec![0u32; self.algebra.n()];
            for &(i, _) in word {
                mono[i] += 1;
            }
            let rank = crate::linalg::rank(m);
            out.add_term(mono, BigInt::from(rank));
        }
        out
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::functor::Coeff;

/// Exponent vector with trailing zeros trimmed, so the variable count is implicit.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

/// Integer polynomial in `x_0, x_1, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Poly::default();
        p.add_term(vec![], c.into());
        p
    }

    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::monomial(m, BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Poly::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> BigInt {
        self.terms.get(&trim(m.to_vec())).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of variables actually occurring (highest index + 1).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Largest `Σ weights[i]·a_i` over the support.
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.terms.keys().map(|m| m.iter().zip(weights).map(|(a, w)| a * w).sum()).max().unwrap_or(0)
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        let mut it = self.terms.keys().map(|m| m.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Lexicographically largest monomial.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Poly::default();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &[u32], c: &BigInt) -> Self {
        let mut out = Poly::default();
        for (a, x) in &self.terms {
            out.terms.insert(mono_mul(a, m), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::constant(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, xs: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &a) in m.iter().enumerate() {
                t *= xs.get(i).cloned().unwrap_or_default().pow(a);
            }
            total += t;
        }
        total
    }

    /// `p(images[0], images[1], ...)`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut out = Poly::default();
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &a) in m.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let img = images.get(i).cloned().unwrap_or_default();
                let pw = cache.entry((i, a)).or_insert_with(|| img.pow(a)).clone();
                t = &t * &pw;
            }
            out = &out + &t;
        }
        out
    }

    /// Swap variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let need = i.max(j) + 1;
            if m2.len() < need {
                m2.resize(need, 0);
            }
            m2.swap(i, j);
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Human-readable form with variable names from `name`.
    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { name(i) } else { format!("{}^{a}", name(i)) })
                .collect();
            if factors.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&format!("{mag}*"));
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

pub(crate) fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("x{}", i + 1)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(mono_mul(a, b), x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(1)
    }
}

impl Coeff for Poly {
    fn from_bigint(x: BigInt) -> Self {
        Poly::constant(x)
    }
}

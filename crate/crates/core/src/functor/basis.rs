use std::collections::BTreeSet;

use super::spec::FunctorSpec;

/// A basis element of `F(Z^n)`, as a tree over the leaves `0..n`.
///
/// `Seq` holds a strictly increasing list for exterior powers, a weakly
/// increasing list for symmetric and divided powers, and an arbitrary tuple for
/// tensor powers. The derived order is the global basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Leaf(u32),
    Seq(Vec<Basis>),
    Inl(Box<Basis>),
    Inr(Box<Basis>),
    Pair(Box<Basis>, Box<Basis>),
}

impl Basis {
    /// Leaves with multiplicity, in tree order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Basis::Leaf(i) => out.push(*i),
            Basis::Seq(xs) => xs.iter().for_each(|x| x.collect_leaves(out)),
            Basis::Inl(x) | Basis::Inr(x) => x.collect_leaves(out),
            Basis::Pair(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.leaves().into_iter().collect()
    }

    /// Renames leaves through `f`; the caller keeps `f` order-preserving so canonical forms survive.
    pub fn map_leaves(&self, f: &impl Fn(u32) -> u32) -> Basis {
        match self {
            Basis::Leaf(i) => Basis::Leaf(f(*i)),
            Basis::Seq(xs) => Basis::Seq(xs.iter().map(|x| x.map_leaves(f)).collect()),
            Basis::Inl(x) => Basis::Inl(Box::new(x.map_leaves(f))),
            Basis::Inr(x) => Basis::Inr(Box::new(x.map_leaves(f))),
            Basis::Pair(a, b) => Basis::Pair(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f))),
        }
    }
}

fn combinations(alphabet: &[Basis], r: usize, repeat: bool) -> Vec<Vec<Basis>> {
    fn go(a: &[Basis], r: usize, start: usize, repeat: bool, cur: &mut Vec<Basis>, out: &mut Vec<Vec<Basis>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..a.len() {
            cur.push(a[i].clone());
            go(a, r, if repeat { i } else { i + 1 }, repeat, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(alphabet, r, 0, repeat, &mut Vec::new(), &mut out);
    out
}

fn tuples(alphabet: &[Basis], r: usize) -> Vec<Vec<Basis>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for t in &out {
            for a in alphabet {
                let mut t2 = t.clone();
                t2.push(a.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Sorted basis of `F(V)` where `V` has the (sorted) basis `alphabet`.
pub fn basis_elements(spec: &FunctorSpec, alphabet: &[Basis]) -> Vec<Basis> {
    use FunctorSpec::*;
    let mut out: Vec<Basis> = match spec {
        Lambda(r) => combinations(alphabet, *r as usize, false).into_iter().map(Basis::Seq).collect(),
        Sym(r) | DividedPower(r) => combinations(alphabet, *r as usize, true).into_iter().map(Basis::Seq).collect(),
        TensorPower(r) => tuples(alphabet, *r as usize).into_iter().map(Basis::Seq).collect(),
        Identity => alphabet.to_vec(),
        Zero => vec![],
        DirectSum(a, b) => basis_elements(a, alphabet)
            .into_iter()
            .map(|x| Basis::Inl(Box::new(x)))
            .chain(basis_elements(b, alphabet).into_iter().map(|x| Basis::Inr(Box::new(x))))
            .collect(),
        TensorProduct(a, b) => {
            let (ba, bb) = (basis_elements(a, alphabet), basis_elements(b, alphabet));
            let mut v = Vec::with_capacity(ba.len() * bb.len());
            for x in &ba {
                for y in &bb {
                    v.push(Basis::Pair(Box::new(x.clone()), Box::new(y.clone())));
                }
            }
            v
        }
        Compose(f, g) => {
            let inner = basis_elements(g, alphabet);
            basis_elements(f, &inner)
        }
    };
    out.sort();
    out
}

pub fn leaf_alphabet(n: usize) -> Vec<Basis> {
    (0..n as u32).map(Basis::Leaf).collect()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rank of `F(Z^n)` from the closed-form counts.
pub fn rank_of(spec: &FunctorSpec, n: usize) -> usize {
    use FunctorSpec::*;
    match spec {
        Lambda(r) => binom(n, *r as usize),
        Sym(r) | DividedPower(r) => {
            if n == 0 {
                usize::from(*r == 0)
            } else {
                binom(n + *r as usize - 1, *r as usize)
            }
        }
        TensorPower(r) => n.pow(*r),
        Identity => n,
        Zero => 0,
        DirectSum(a, b) => rank_of(a, n) + rank_of(b, n),
        TensorProduct(a, b) => rank_of(a, n) * rank_of(b, n),
        Compose(f, g) => rank_of(f, rank_of(g, n)),
    }
}

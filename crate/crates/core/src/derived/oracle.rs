use std::collections::BTreeMap;

use crate::complexes::{Cell, GradedObject};
use crate::dold_kan::monotone_surjections;
use crate::functor::{apply_to_module, FunctorSpec};
use crate::linalg::{presented_homology, FgAbGroup, IntMatrix, Presentation};

fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Rank of the levelwise module of iterated Γ at multidegree `m`.
fn gamma_rank(objects: &GradedObject, m: &[usize]) -> usize {
    objects
        .cells()
        .map(|(c, r)| r * c.iter().zip(m).map(|(&p, &mm)| binom(mm, p) as usize).product::<usize>())
        .sum()
}

/// Inverts `rank A_m = Σ_k C(m, k) rank N_k` in every direction.
fn invert(levelwise: impl Fn(&[usize]) -> i128, bound: &[usize]) -> BTreeMap<Cell, i128> {
    let mut out = BTreeMap::new();
    for m in GradedObject::box_cells(bound) {
        let mut acc = 0i128;
        for k in GradedObject::box_cells(&m) {
            let mut coeff = 1i128;
            for (&mm, &kk) in m.iter().zip(&k) {
                coeff *= binom(mm, kk) * if (mm - kk) % 2 == 0 { 1 } else { -1 };
            }
            acc += coeff * levelwise(&k);
        }
        out.insert(m, acc);
    }
    out
}

/// Ranks of `N F(Γ⋯Γ X)` from rank counts alone, on the box up to one past `deg · length`
/// in every direction.
pub fn predicted_ranks(f: &FunctorSpec, objects: &GradedObject) -> BTreeMap<Cell, i128> {
    let deg = f.degree() as usize;
    let bound: Vec<usize> = objects.support_bound().iter().map(|b| b * deg + 1).collect();
    invert(|m| apply_to_module(f, gamma_rank(objects, m)) as i128, &bound)
}

/// Ranks of `P ⊗_{Δ,n} Q` by the same inversion, on the box up to one past the sum of lengths.
pub fn predicted_tensor_ranks(p: &GradedObject, q: &GradedObject) -> BTreeMap<Cell, i128> {
    let bound: Vec<usize> = p.support_bound().iter().zip(q.support_bound()).map(|(a, b)| a + b + 1).collect();
    invert(|m| (gamma_rank(p, m) * gamma_rank(q, m)) as i128, &bound)
}

/// Ranks of `P ⊗_Δ Q` for chain complexes, counting pairs of surjections
/// `[n] ↠ [i]`, `[n] ↠ [j]` that combine to an injection `[n] ↪ [i] × [j]`.
pub fn tensor_ranks_by_injections(p: &[usize], q: &[usize]) -> Vec<usize> {
    let top = p.len().saturating_sub(1) + q.len().saturating_sub(1);
    (0..=top)
        .map(|n| {
            let mut total = 0;
            for (i, &a) in p.iter().enumerate() {
                for (j, &b) in q.iter().enumerate() {
                    if a * b == 0 {
                        continue;
                    }
                    let mut count = 0;
                    for s in monotone_surjections(n, i) {
                        for t in monotone_surjections(n, j) {
                            let pairs: Vec<(usize, usize)> = s.values().iter().copied().zip(t.values().iter().copied()).collect();
                            if pairs.windows(2).all(|w| w[0] != w[1]) {
                                count += 1;
                            }
                        }
                    }
                    total += count * a * b;
                }
            }
            total
        })
        .collect()
}

/// Bounded complex of finitely presented abelian groups; `diffs[i - 1]` maps generators
/// of degree `i` to generators of degree `i - 1`.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    pub objects: Vec<Presentation>,
    pub diffs: Vec<IntMatrix>,
}

impl PresentedComplex {
    fn d(&self, i: usize) -> IntMatrix {
        let gens = |k: usize| self.objects.get(k).map_or(0, |p| p.gens);
        if i == 0 || i >= self.objects.len() {
            IntMatrix::zeros(if i == 0 { 0 } else { gens(i - 1) }, gens(i))
        } else {
            self.diffs[i - 1].clone()
        }
    }

    /// `Tot(self ⊗ other)`, with `d(x ⊗ y) = dx ⊗ y + (-1)^i x ⊗ dy` and summands ordered by
    /// increasing first degree. Presentations of tensor products come from right exactness.
    pub fn tensor(&self, other: &PresentedComplex) -> PresentedComplex {
        let (lp, lq) = (self.objects.len(), other.objects.len());
        if lp == 0 || lq == 0 {
            return PresentedComplex { objects: vec![], diffs: vec![] };
        }
        let top = lp + lq - 2;
        let pieces = |n: usize| -> Vec<(usize, usize)> { (0..=n).filter(|&i| i < lp && n - i < lq).map(|i| (i, n - i)).collect() };
        let objects: Vec<Presentation> = (0..=top)
            .map(|n| {
                pieces(n)
                    .into_iter()
                    .map(|(i, j)| self.objects[i].tensor(&other.objects[j]))
                    .fold(Presentation::free(0), |acc, p| acc.direct_sum(&p))
            })
            .collect();
        let size = |i: usize, j: usize| self.objects[i].gens * other.objects[j].gens;
        let diffs = (1..=top)
            .map(|n| {
                let src = pieces(n);
                let dst = pieces(n - 1);
                let offset = |list: &[(usize, usize)], i: usize| list.iter().take_while(|p| p.0 < i).map(|&(a, b)| size(a, b)).sum::<usize>();
                let mut m = IntMatrix::zeros(objects[n - 1].gens, objects[n].gens);
                for &(i, j) in &src {
                    let col = offset(&src, i);
                    if i > 0 {
                        m.paste(offset(&dst, i - 1), col, &self.d(i).kronecker(&IntMatrix::identity(other.objects[j].gens)));
                    }
                    if j > 0 {
                        let b = IntMatrix::identity(self.objects[i].gens).kronecker(&other.d(j));
                        m.paste(offset(&dst, i), col, &if i % 2 == 1 { -&b } else { b });
                    }
                }
                m
            })
            .collect();
        PresentedComplex { objects, diffs }
    }

    pub fn homology(&self, i: usize) -> FgAbGroup {
        let Some(b) = self.objects.get(i) else { return FgAbGroup::zero() };
        let c = if i == 0 { Presentation::free(0) } else { self.objects[i - 1].clone() };
        let g = if i + 1 < self.objects.len() { self.d(i + 1) } else { IntMatrix::zeros(b.gens, 0) };
        presented_homology(b, &c, &g, &self.d(i))
    }

    pub fn homology_all(&self) -> Vec<FgAbGroup> {
        (0..self.objects.len()).map(|i| self.homology(i)).collect()
    }
}

/// `0 -> Z --2--> Z -> Z/2 -> 0` in degrees 2, 1, 0.
pub fn counterexample_complex() -> PresentedComplex {
    PresentedComplex {
        objects: vec![Presentation::cyclic(2), Presentation::free(1), Presentation::free(1)],
        diffs: vec![IntMatrix::scalar(1), IntMatrix::scalar(2)],
    }
}

/// `H_2(Tot(C ⊗ C))` for the complex above.
pub fn counterexample_h2() -> FgAbGroup {
    let c = counterexample_complex();
    c.tensor(&c).homology(2)
}

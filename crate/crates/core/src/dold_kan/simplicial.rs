use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::simplex::{epi_monic_factor, monotone_surjections, MonotoneMap};
use crate::complexes::{ChainComplex, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::functor::{apply_to_hom, apply_to_module, FunctorSpec};
use crate::linalg::{lattice_basis, snf, split_summand, IntMatrix};

/// Simplicial free module truncated at level `M`.
///
/// `faces[m][i]` is `δ_i: A_m -> A_{m-1}` (empty for `m = 0`), `degens[m][j]` is
/// `σ_j: A_m -> A_{m+1}` (empty for `m = M`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialModule {
    ranks: Vec<usize>,
    faces: Vec<Vec<IntMatrix>>,
    degens: Vec<Vec<IntMatrix>>,
}

impl SimplicialModule {
    pub fn new(ranks: Vec<usize>, faces: Vec<Vec<IntMatrix>>, degens: Vec<Vec<IntMatrix>>) -> Result<Self> {
        let top = ranks.len().checked_sub(1).ok_or_else(|| Error::DimensionMismatch("no levels".into()))?;
        if faces.len() != top + 1 || degens.len() != top + 1 {
            return Err(Error::DimensionMismatch("face/degeneracy tables do not match the levels".into()));
        }
        for m in 0..=top {
            let nf = if m == 0 { 0 } else { m + 1 };
            let nd = if m == top { 0 } else { m + 1 };
            if faces[m].len() != nf || degens[m].len() != nd {
                return Err(Error::DimensionMismatch(format!("level {m}: wrong number of structure maps")));
            }
            if faces[m].iter().any(|f| f.shape() != (ranks[m - 1], ranks[m])) {
                return Err(Error::DimensionMismatch(format!("level {m}: face of wrong shape")));
            }
            if degens[m].iter().any(|s| s.shape() != (ranks[m + 1], ranks[m])) {
                return Err(Error::DimensionMismatch(format!("level {m}: degeneracy of wrong shape")));
            }
        }
        Ok(SimplicialModule { ranks, faces, degens })
    }

    /// Truncation level `M`.
    pub fn level(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, m: usize) -> usize {
        self.ranks[m]
    }

    pub fn face(&self, m: usize, i: usize) -> &IntMatrix {
        &self.faces[m][i]
    }

    pub fn degeneracy(&self, m: usize, j: usize) -> &IntMatrix {
        &self.degens[m][j]
    }

    /// All simplicial identities that can be evaluated below the truncation level.
    pub fn check_identities(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let top = self.level();
        let mut fail = |m: usize, rule: String| report.violations.push(Violation::new(vec![m], rule, "identity fails"));
        let d = |m: usize, i: usize| &self.faces[m][i];
        let s = |m: usize, j: usize| &self.degens[m][j];
        for m in 2..=top {
            for j in 1..=m {
                for i in 0..j {
                    if d(m - 1, i) * d(m, j) != d(m - 1, j - 1) * d(m, i) {
                        fail(m, format!("d{i} d{j} = d{} d{i}", j - 1));
                    }
                }
            }
        }
        for m in 0..top {
            let id = IntMatrix::identity(self.ranks[m]);
            for j in 0..=m {
                let up = s(m, j);
                if d(m + 1, j) * up != id || d(m + 1, j + 1) * up != id {
                    fail(m, format!("d{j} s{j} = d{} s{j} = 1", j + 1));
                }
                for i in 0..=m + 1 {
                    if i < j {
                        if d(m + 1, i) * up != s(m - 1, j - 1) * d(m, i) {
                            fail(m, format!("d{i} s{j} = s{} d{i}", j - 1));
                        }
                    } else if i > j + 1 && d(m + 1, i) * up != s(m - 1, j) * d(m, i - 1) {
                        fail(m, format!("d{i} s{j} = s{j} d{}", i - 1));
                    }
                }
            }
        }
        for m in 0..top.saturating_sub(1) {
            for j in 0..=m {
                for i in 0..=j {
                    if s(m + 1, i) * s(m, j) != s(m + 1, j + 1) * s(m, i) {
                        fail(m, format!("s{i} s{j} = s{} s{i}", j + 1));
                    }
                }
            }
        }
        report
    }
}

/// One basis vector of `Γ(C)_m`: the summand `C_p⟨η⟩` and the index inside `C_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaLabel {
    pub eta: MonotoneMap,
    pub k: usize,
}

/// Labels of `Γ(C)_m` in basis order: `p` descending, then `η` lexicographic, then `k`.
pub fn gamma_labels(c: &ChainComplex, m: usize) -> Vec<GammaLabel> {
    let mut out = Vec::new();
    for p in (0..=m.min(c.length())).rev() {
        for eta in monotone_surjections(m, p) {
            for k in 0..c.rank(p) {
                out.push(GammaLabel { eta: eta.clone(), k });
            }
        }
    }
    out
}

/// `Γ(α): Γ(C)_m -> Γ(C)_k` for `α: [k] -> [m]`, by the three-case rule on `ηα = ε η'`.
pub fn gamma_map(c: &ChainComplex, alpha: &MonotoneMap) -> IntMatrix {
    let (k, m) = (alpha.source(), alpha.target());
    let src = gamma_labels(c, m);
    let dst = gamma_labels(c, k);
    let index: HashMap<&GammaLabel, usize> = dst.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut out = IntMatrix::zeros(dst.len(), src.len());
    for (col, label) in src.iter().enumerate() {
        let p = label.eta.target();
        let (eta2, eps) = epi_monic_factor(&label.eta.compose(alpha));
        if eta2.target() == p {
            out.set(index[&GammaLabel { eta: eta2, k: label.k }], col, One::one());
        } else if eta2.target() + 1 == p && eps == MonotoneMap::coface(p, p) {
            let d = c.d(p);
            for r in 0..d.rows() {
                let x = d.get(r, label.k);
                if !x.is_zero() {
                    out.set(index[&GammaLabel { eta: eta2.clone(), k: r }], col, x.clone());
                }
            }
        }
    }
    out
}

/// `Γ(C)` truncated at level `M`.
pub fn gamma(c: &ChainComplex, level: usize) -> SimplicialModule {
    let ranks: Vec<usize> = (0..=level).map(|m| gamma_labels(c, m).len()).collect();
    let faces = (0..=level)
        .map(|m| if m == 0 { vec![] } else { (0..=m).map(|i| gamma_map(c, &MonotoneMap::coface(m, i))).collect() })
        .collect();
    let degens = (0..=level)
        .map(|m| {
            if m == level {
                vec![]
            } else {
                (0..=m).map(|j| gamma_map(c, &MonotoneMap::codegeneracy(m, j))).collect()
            }
        })
        .collect();
    SimplicialModule::new(ranks, faces, degens).expect("gamma shapes are consistent")
}

/// `F` applied levelwise to objects, faces and degeneracies.
pub fn apply_functor_simplicial(f: &FunctorSpec, a: &SimplicialModule) -> SimplicialModule {
    let ranks = a.ranks.iter().map(|&r| apply_to_module(f, r)).collect();
    let lift = |t: &Vec<Vec<IntMatrix>>| t.iter().map(|ms| ms.iter().map(|x| apply_to_hom(f, x)).collect()).collect();
    SimplicialModule::new(ranks, lift(&a.faces), lift(&a.degens)).expect("functor preserves shapes")
}

/// The alternating-face complex `d_m = Σ (-1)^i δ_i`, up to the truncation level.
pub fn associated_chain(a: &SimplicialModule) -> ChainComplex {
    let diffs = (1..=a.level()).map(|m| alternating_face(a, m)).collect();
    ChainComplex::from_parts(a.ranks.clone(), diffs)
}

fn alternating_face(a: &SimplicialModule, m: usize) -> IntMatrix {
    let mut acc = IntMatrix::zeros(a.ranks[m - 1], a.ranks[m]);
    for (i, f) in a.faces[m].iter().enumerate() {
        acc = if i % 2 == 0 { &acc + f } else { &acc - f };
    }
    acc
}

/// Basis (columns) of `D(A)_m`, the span of the degeneracy images.
pub fn degenerate_subcomplex(a: &SimplicialModule) -> Vec<IntMatrix> {
    (0..=a.level())
        .map(|m| {
            if m == 0 {
                return IntMatrix::zeros(a.ranks[0], 0);
            }
            let gens = a.degens[m - 1].iter().fold(IntMatrix::zeros(a.ranks[m], 0), |acc, s| acc.hstack(s));
            lattice_basis(&gens)
        })
        .collect()
}

/// How the complement of the degenerate summand is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complement {
    /// Coordinate complement when every degeneracy sends basis vectors to signed basis
    /// vectors, Smith-form complement otherwise.
    Auto,
    /// Always read the complement off the Smith form of the degenerate inclusion.
    Smith,
}

/// `N(A)` realised as a summand of each `A_m`.
#[derive(Clone, Debug)]
pub struct NormalizedComplex {
    pub complex: ChainComplex,
    /// `N_m -> A_m`.
    pub inclusion: Vec<IntMatrix>,
    /// `A_m -> N_m`, vanishing on `D_m`.
    pub projection: Vec<IntMatrix>,
    /// Basis of `D_m` as columns.
    pub degenerate: Vec<IntMatrix>,
}

fn coordinate_degeneracies(a: &SimplicialModule, m: usize) -> Option<Vec<usize>> {
    let mut hit = vec![false; a.ranks[m]];
    for s in &a.degens[m - 1] {
        for j in 0..s.cols() {
            let nz: Vec<usize> = (0..s.rows()).filter(|&i| !s.get(i, j).is_zero()).collect();
            if nz.len() != 1 || !s.get(nz[0], j).abs().is_one() {
                return None;
            }
            hit[nz[0]] = true;
        }
    }
    Some((0..a.ranks[m]).filter(|&i| hit[i]).collect())
}

/// Normalised Moore complex with the sign `(-1)^m Σ (-1)^i δ_i`, which makes `NΓ(C) = C`.
pub fn normalized_moore(a: &SimplicialModule) -> Result<NormalizedComplex> {
    normalized_moore_with(a, Complement::Auto)
}

pub fn normalized_moore_with(a: &SimplicialModule, how: Complement) -> Result<NormalizedComplex> {
    let top = a.level();
    let mut inclusion = Vec::with_capacity(top + 1);
    let mut projection = Vec::with_capacity(top + 1);
    let mut degenerate = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let r = a.ranks[m];
        let coords = if m == 0 { Some(vec![]) } else if how == Complement::Auto { coordinate_degeneracies(a, m) } else { None };
        match coords {
            Some(deg) => {
                let rest: Vec<usize> = (0..r).filter(|i| deg.binary_search(i).is_err()).collect();
                let id = IntMatrix::identity(r);
                inclusion.push(id.select_cols(&rest));
                projection.push(id.select_rows(&rest));
                degenerate.push(id.select_cols(&deg));
            }
            None => {
                let gens = a.degens[m - 1].iter().fold(IntMatrix::zeros(r, 0), |acc, s| acc.hstack(s));
                let dm = lattice_basis(&gens);
                split_summand(&dm)?;
                let sd = snf(&dm);
                let rest: Vec<usize> = (sd.rank..r).collect();
                inclusion.push(sd.u.select_cols(&rest));
                projection.push(sd.u_inv.select_rows(&rest));
                degenerate.push(dm);
            }
        }
    }
    let ranks: Vec<usize> = inclusion.iter().map(IntMatrix::cols).collect();
    let diffs = (1..=top)
        .map(|m| {
            let d = alternating_face(a, m);
            let d = if m % 2 == 1 { -&d } else { d };
            &(&projection[m - 1] * &d) * &inclusion[m]
        })
        .collect();
    Ok(NormalizedComplex { complex: ChainComplex::from_parts(ranks, diffs), inclusion, projection, degenerate })
}

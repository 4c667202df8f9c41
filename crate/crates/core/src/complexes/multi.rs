use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use super::chain::ChainComplex;
use super::graded::{Cell, GradedObject};
use super::validate::{ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::json::cell_key;
use crate::linalg::IntMatrix;

/// Per-cell matrices of one differential family in one direction, keyed by source cell.
pub type DiffMap = BTreeMap<Cell, IntMatrix>;

/// Degreewise maps between two graded objects, keyed by cell.
pub type CellMap = BTreeMap<Cell, IntMatrix>;

fn below(cell: &[usize], dir: usize) -> Option<Cell> {
    if cell[dir] == 0 {
        None
    } else {
        let mut c = cell.to_vec();
        c[dir] -= 1;
        Some(c)
    }
}

fn diff_at(objects: &GradedObject, map: &DiffMap, dir: usize, cell: &[usize]) -> IntMatrix {
    match map.get(cell) {
        Some(m) => m.clone(),
        None => IntMatrix::zeros(objects.rank_below(cell, dir), objects.rank(cell)),
    }
}

fn normalize_family(objects: &GradedObject, fam: Vec<DiffMap>, name: &str) -> Result<Vec<DiffMap>> {
    let n = objects.dim();
    if fam.len() != n {
        return Err(Error::DimensionMismatch(format!("{name}: {} directions for dimension {n}", fam.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (dir, map) in fam.into_iter().enumerate() {
        let mut clean = DiffMap::new();
        for (cell, m) in map {
            if cell.len() != n {
                return Err(Error::Validation { cell: cell_key(&cell), message: format!("{name}: wrong dimension") });
            }
            let expected = (objects.rank_below(&cell, dir), objects.rank(&cell));
            if m.shape() != expected {
                if m.is_zero() && cell[dir] == 0 && objects.rank(&cell) == m.cols() {
                    continue;
                }
                return Err(Error::Validation {
                    cell: cell_key(&cell),
                    message: format!("{name}^{} has shape {:?}, expected {:?}", dir + 1, m.shape(), expected),
                });
            }
            if !m.is_zero() {
                clean.insert(cell, m);
            }
        }
        out.push(clean);
    }
    Ok(out)
}

/// Binary multicomplex: one graded object with a pair of differentials per direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMulticomplex {
    objects: GradedObject,
    d: Vec<DiffMap>,
    d_tilde: Vec<DiffMap>,
}

/// A binary chain complex is the one-dimensional case.
pub type BinaryComplex = BinaryMulticomplex;

/// A (non-binary) multicomplex with commuting differentials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multicomplex {
    objects: GradedObject,
    d: Vec<DiffMap>,
}

impl Multicomplex {
    pub fn new(objects: GradedObject, d: Vec<DiffMap>) -> Result<Self> {
        let d = normalize_family(&objects, d, "d")?;
        Ok(Multicomplex { objects, d })
    }

    pub fn zero(dim: usize) -> Self {
        Multicomplex { objects: GradedObject::new(dim), d: vec![DiffMap::new(); dim] }
    }

    pub fn from_chain(c: &ChainComplex) -> Self {
        let mut map = DiffMap::new();
        for i in 1..=c.length() {
            map.insert(vec![i], c.d(i));
        }
        Self::new(c.graded(), vec![map]).expect("chain complex shapes are consistent")
    }

    /// The one-dimensional case as a chain complex.
    pub fn to_chain(&self) -> ChainComplex {
        assert_eq!(self.dim(), 1, "to_chain needs dimension 1");
        let top = self.objects.support_bound()[0];
        if self.objects.is_zero() {
            return ChainComplex::zero();
        }
        let ranks: Vec<usize> = (0..=top).map(|i| self.objects.rank(&[i])).collect();
        let diffs = (1..=top).map(|i| self.diff(0, &[i])).collect();
        ChainComplex::from_parts(ranks, diffs)
    }

    pub fn dim(&self) -> usize {
        self.objects.dim()
    }

    pub fn objects(&self) -> &GradedObject {
        &self.objects
    }

    pub fn family(&self) -> &[DiffMap] {
        &self.d
    }

    pub fn diff(&self, dir: usize, cell: &[usize]) -> IntMatrix {
        diff_at(&self.objects, &self.d[dir], dir, cell)
    }

    pub fn as_binary(&self) -> BinaryMulticomplex {
        BinaryMulticomplex { objects: self.objects.clone(), d: self.d.clone(), d_tilde: self.d.clone() }
    }

    pub fn validate(&self) -> ValidationReport {
        self.as_binary().validate()
    }

    /// The complex along direction `dir` through `cell` (whose `dir` coordinate is ignored).
    pub fn line(&self, dir: usize, cell: &[usize]) -> ChainComplex {
        line_of(&self.objects, &self.d[dir], dir, cell)
    }

    /// Every line in every direction is acyclic.
    pub fn is_acyclic(&self) -> bool {
        (0..self.dim()).all(|dir| transverse_cells(&self.objects, dir).iter().all(|c| self.line(dir, c).is_acyclic()))
    }

    pub fn length(&self) -> Vec<usize> {
        self.objects.support_bound()
    }
}

fn transverse_cells(objects: &GradedObject, dir: usize) -> Vec<Cell> {
    let set: BTreeSet<Cell> = objects
        .cells()
        .map(|(c, _)| {
            let mut c = c.clone();
            c[dir] = 0;
            c
        })
        .collect();
    set.into_iter().collect()
}

fn line_of(objects: &GradedObject, map: &DiffMap, dir: usize, cell: &[usize]) -> ChainComplex {
    let top = objects.support_bound()[dir];
    let at = |i: usize| {
        let mut c = cell.to_vec();
        c[dir] = i;
        c
    };
    let ranks: Vec<usize> = (0..=top).map(|i| objects.rank(&at(i))).collect();
    let diffs = (1..=top).map(|i| diff_at(objects, map, dir, &at(i))).collect();
    ChainComplex::from_parts(ranks, diffs)
}

impl BinaryMulticomplex {
    pub fn new(objects: GradedObject, d: Vec<DiffMap>, d_tilde: Vec<DiffMap>) -> Result<Self> {
        let d = normalize_family(&objects, d, "d")?;
        let d_tilde = normalize_family(&objects, d_tilde, "d~")?;
        Ok(BinaryMulticomplex { objects, d, d_tilde })
    }

    pub fn zero(dim: usize) -> Self {
        Multicomplex::zero(dim).as_binary()
    }

    /// One-dimensional binary complex from two chain complexes on the same graded object.
    pub fn from_chain_pair(top: &ChainComplex, bottom: &ChainComplex) -> Result<Self> {
        if top.ranks() != bottom.ranks() {
            return Err(Error::GradedMismatch(format!("{:?} vs {:?}", top.ranks(), bottom.ranks())));
        }
        let a = Multicomplex::from_chain(top);
        let b = Multicomplex::from_chain(bottom);
        Ok(BinaryMulticomplex { objects: a.objects, d: a.d, d_tilde: b.d })
    }

    /// `Z ⇉ Z` with differentials `x` and `y`, in degrees `top`, `top - 1`.
    pub fn two_term(x: i64, y: i64, top: usize) -> Self {
        Self::from_chain_pair(&ChainComplex::two_term(x, top), &ChainComplex::two_term(y, top)).unwrap()
    }

    /// Binary multicomplex whose `d` family is `a` and whose `d~` family is `b`.
    pub fn from_families(a: &Multicomplex, b: &Multicomplex) -> Result<Self> {
        if a.objects != b.objects {
            return Err(Error::GradedMismatch("families live on different graded objects".into()));
        }
        Ok(BinaryMulticomplex { objects: a.objects.clone(), d: a.d.clone(), d_tilde: b.d.clone() })
    }

    pub fn dim(&self) -> usize {
        self.objects.dim()
    }

    pub fn objects(&self) -> &GradedObject {
        &self.objects
    }

    pub fn d_family(&self) -> &[DiffMap] {
        &self.d
    }

    pub fn d_tilde_family(&self) -> &[DiffMap] {
        &self.d_tilde
    }

    pub fn d(&self, dir: usize, cell: &[usize]) -> IntMatrix {
        diff_at(&self.objects, &self.d[dir], dir, cell)
    }

    pub fn d_tilde(&self, dir: usize, cell: &[usize]) -> IntMatrix {
        diff_at(&self.objects, &self.d_tilde[dir], dir, cell)
    }

    /// `tilde = false` selects `d`, `true` selects `d~`.
    pub fn diff(&self, tilde: bool, dir: usize, cell: &[usize]) -> IntMatrix {
        if tilde {
            self.d_tilde(dir, cell)
        } else {
            self.d(dir, cell)
        }
    }

    /// The choice multicomplex using `d~^i` exactly where `sel[i]` is true.
    pub fn choice(&self, sel: &[bool]) -> Multicomplex {
        assert_eq!(sel.len(), self.dim());
        let d = sel.iter().enumerate().map(|(i, &t)| if t { self.d_tilde[i].clone() } else { self.d[i].clone() }).collect();
        Multicomplex { objects: self.objects.clone(), d }
    }

    /// All `2^n` selections in binary counting order.
    pub fn all_choices(dim: usize) -> Vec<Vec<bool>> {
        (0..1usize << dim).map(|m| (0..dim).map(|i| m >> i & 1 == 1).collect()).collect()
    }

    pub fn top(&self) -> ChainComplex {
        self.choice(&[false]).to_chain()
    }

    pub fn bottom(&self) -> ChainComplex {
        self.choice(&[true]).to_chain()
    }

    pub fn is_diagonal_in(&self, dir: usize) -> bool {
        self.d[dir] == self.d_tilde[dir]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| self.is_diagonal_in(i))
    }

    pub fn is_zero(&self) -> bool {
        self.objects.is_zero()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim();
        for (cell, _) in self.objects.cells() {
            for dir in 0..n {
                for tilde in [false, true] {
                    let m = self.diff(tilde, dir, cell);
                    if cell[dir] == 0 {
                        continue;
                    }
                    if let Some(b) = below(cell, dir) {
                        let next = self.diff(tilde, dir, &b);
                        if !(&next * &m).is_zero() {
                            let name = if tilde { "d~" } else { "d" };
                            report.violations.push(Violation::new(
                                cell.clone(),
                                format!("{name}^{k} {name}^{k} = 0", k = dir + 1),
                                "composite of consecutive differentials is nonzero",
                            ));
                        }
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let (Some(ci), Some(cj)) = (below(cell, i), below(cell, j)) else { continue };
                    for (ti, tj) in [(false, false), (false, true), (true, false), (true, true)] {
                        // A^i B^j versus B^j A^i, starting at `cell`
                        let path1 = &self.diff(ti, i, &cj) * &self.diff(tj, j, cell);
                        let path2 = &self.diff(tj, j, &ci) * &self.diff(ti, i, cell);
                        if path1 != path2 {
                            let a = if ti { "d~" } else { "d" };
                            let b = if tj { "d~" } else { "d" };
                            report.violations.push(Violation::new(
                                cell.clone(),
                                format!(
                                    "{a}^{i1}{b}^{j1} = {b}^{j1}{a}^{i1}",
                                    i1 = i + 1,
                                    j1 = j + 1
                                ),
                                "square does not commute",
                            ));
                        }
                    }
                }
            }
        }
        report
    }

    pub fn line(&self, tilde: bool, dir: usize, cell: &[usize]) -> ChainComplex {
        let fam = if tilde { &self.d_tilde } else { &self.d };
        line_of(&self.objects, &fam[dir], dir, cell)
    }

    /// Every line of every choice multicomplex is acyclic.
    pub fn is_acyclic(&self) -> bool {
        (0..self.dim()).all(|dir| {
            transverse_cells(&self.objects, dir)
                .iter()
                .all(|c| self.line(false, dir, c).is_acyclic() && self.line(true, dir, c).is_acyclic())
        })
    }

    /// `N[k]` in direction `dir`: objects move up by `k`, that direction's differentials get `(-1)^k`.
    pub fn shift(&self, dir: usize, k: usize) -> Self {
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let move_cell = |c: &Cell| {
            let mut c = c.clone();
            c[dir] += k;
            c
        };
        let remap = |fam: &Vec<DiffMap>| -> Vec<DiffMap> {
            fam.iter()
                .enumerate()
                .map(|(i, m)| {
                    m.iter()
                        .map(|(c, x)| (move_cell(c), if i == dir { x.scale(&sign) } else { x.clone() }))
                        .collect()
                })
                .collect()
        };
        BinaryMulticomplex { objects: self.objects.shifted(dir, k), d: remap(&self.d), d_tilde: remap(&self.d_tilde) }
    }

    /// Mapping cone of the identity along `dir`: `cone_i = N_{i-1} ⊕ N_i` with
    /// differential `[[-d, 0], [-1, d]]`; other directions act diagonally.
    pub fn cone(&self, dir: usize) -> Self {
        let n = self.dim();
        let mut objects = GradedObject::new(n);
        let bound = self.objects.support_bound();
        let mut cbound = bound.clone();
        if !self.objects.is_zero() {
            cbound[dir] += 1;
        } else {
            return self.clone();
        }
        let lower = |c: &[usize]| below(c, dir).map_or(0, |b| self.objects.rank(&b));
        for c in GradedObject::box_cells(&cbound) {
            let r = lower(&c) + self.objects.rank(&c);
            objects.set_rank(c, r);
        }
        let mut fams = Vec::new();
        for tilde in [false, true] {
            let mut fam = vec![DiffMap::new(); n];
            for c in GradedObject::box_cells(&cbound) {
                let (a, b) = (lower(&c), self.objects.rank(&c));
                if a + b == 0 {
                    continue;
                }
                for (j, slot) in fam.iter_mut().enumerate() {
                    let Some(cj) = below(&c, j) else { continue };
                    let (a2, b2) = (lower(&cj), self.objects.rank(&cj));
                    let mut m = IntMatrix::zeros(a2 + b2, a + b);
                    if j == dir {
                        // source (x in N_{i-1}, y in N_i), target (N_{i-2}, N_{i-1})
                        if let Some(cm) = below(&c, dir) {
                            m.paste(0, 0, &-&self.diff(tilde, dir, &cm));
                        }
                        m.paste(a2, 0, &-&IntMatrix::identity(a));
                        m.paste(a2, a, &self.diff(tilde, dir, &c));
                    } else {
                        if let Some(cm) = below(&c, dir) {
                            m.paste(0, 0, &self.diff(tilde, j, &cm));
                        }
                        m.paste(a2, a, &self.diff(tilde, j, &c));
                    }
                    slot.insert(c.clone(), m);
                }
            }
            fams.push(fam);
        }
        let d_tilde = fams.pop().unwrap();
        let d = fams.pop().unwrap();
        Self::new(objects, d, d_tilde).expect("cone shapes are consistent")
    }

    /// Keep the cells whose `dir` coordinate lies in `[lo, hi]`.
    pub fn restrict(&self, dir: usize, lo: usize, hi: usize) -> Self {
        let keep = |c: &Cell| c[dir] >= lo && c[dir] <= hi;
        let objects = GradedObject::from_ranks(self.dim(), self.objects.cells().filter(|(c, _)| keep(c)).map(|(c, r)| (c.clone(), r)));
        let filt = |fam: &Vec<DiffMap>| -> Vec<DiffMap> {
            fam.iter()
                .enumerate()
                .map(|(j, m)| {
                    m.iter()
                        .filter(|(c, _)| keep(c) && (j != dir || c[dir] > lo))
                        .map(|(c, x)| (c.clone(), x.clone()))
                        .collect()
                })
                .collect()
        };
        BinaryMulticomplex { objects, d: filt(&self.d), d_tilde: filt(&self.d_tilde) }
    }

    /// The slice at `dir`-degree `j`, moved to degree `at`, with no `dir` differential.
    pub fn slice(&self, dir: usize, j: usize, at: usize) -> Self {
        let moved = |c: &Cell| {
            let mut c = c.clone();
            c[dir] = at;
            c
        };
        let objects = GradedObject::from_ranks(self.dim(), self.objects.cells().filter(|(c, _)| c[dir] == j).map(|(c, r)| (moved(c), r)));
        let pick = |fam: &Vec<DiffMap>| -> Vec<DiffMap> {
            fam.iter()
                .enumerate()
                .map(|(k, m)| {
                    if k == dir {
                        return DiffMap::new();
                    }
                    m.iter().filter(|(c, _)| c[dir] == j).map(|(c, x)| (moved(c), x.clone())).collect()
                })
                .collect()
        };
        BinaryMulticomplex { objects, d: pick(&self.d), d_tilde: pick(&self.d_tilde) }
    }

    /// Two copies of the slice at `dir`-degree `j`, in degrees `top` and `top - 1`, joined by
    /// `scalar` times the identity in both families.
    pub fn doubled_slice(&self, dir: usize, j: usize, top: usize, scalar: i64) -> Self {
        assert!(top >= 1, "doubled slice needs top >= 1");
        let upper = self.slice(dir, j, top);
        let lower = self.slice(dir, j, top - 1);
        let mut objects = upper.objects.clone();
        for (c, r) in lower.objects.cells() {
            objects.set_rank(c.clone(), r);
        }
        let join: DiffMap = upper.objects.cells().map(|(c, r)| (c.clone(), IntMatrix::identity(r).scale(&BigInt::from(scalar)))).collect();
        let merge = |a: &Vec<DiffMap>, b: &Vec<DiffMap>| -> Vec<DiffMap> {
            (0..self.dim())
                .map(|k| if k == dir { join.clone() } else { a[k].iter().chain(b[k].iter()).map(|(c, x)| (c.clone(), x.clone())).collect() })
                .collect()
        };
        let d = merge(&upper.d, &lower.d);
        let d_tilde = merge(&upper.d_tilde, &lower.d_tilde);
        Self::new(objects, d, d_tilde).expect("doubled slice shapes are consistent")
    }

    /// Forget the top slice in direction `dir`.
    pub fn truncate_top(&self, dir: usize) -> Self {
        let top = self.objects.support_bound()[dir];
        if self.objects.is_zero() || top == 0 {
            return Self::zero(self.dim());
        }
        self.restrict(dir, 0, top - 1)
    }

    /// Replaces the `dir` differentials by those of `other` on the same graded object
    /// (used to build diagonal complexes).
    pub fn with_direction_from(&self, dir: usize, tilde_source: bool) -> Self {
        let mut out = self.clone();
        if tilde_source {
            out.d[dir] = self.d_tilde[dir].clone();
        } else {
            out.d_tilde[dir] = self.d[dir].clone();
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), other.dim())));
        }
        let n = self.dim();
        let mut bound = self.objects.support_bound();
        for (b, o) in bound.iter_mut().zip(other.objects.support_bound()) {
            *b = (*b).max(o);
        }
        let mut objects = GradedObject::new(n);
        for c in GradedObject::box_cells(&bound) {
            objects.set_rank(c.clone(), self.objects.rank(&c) + other.objects.rank(&c));
        }
        let mut fams = Vec::new();
        for tilde in [false, true] {
            let mut fam = vec![DiffMap::new(); n];
            for c in GradedObject::box_cells(&bound) {
                for (j, slot) in fam.iter_mut().enumerate() {
                    if c[j] == 0 {
                        continue;
                    }
                    slot.insert(c.clone(), self.diff(tilde, j, &c).block_diag(&other.diff(tilde, j, &c)));
                }
            }
            fams.push(fam);
        }
        let d_tilde = fams.pop().unwrap();
        let d = fams.pop().unwrap();
        Self::new(objects, d, d_tilde)
    }

    /// Is `maps` a morphism `self -> other` commuting with both families?
    pub fn first_noncommuting_cell(&self, other: &Self, maps: &CellMap) -> Option<(Cell, String)> {
        let get = |c: &Cell| maps.get(c).cloned().unwrap_or_else(|| IntMatrix::zeros(other.objects.rank(c), self.objects.rank(c)));
        let mut cells: BTreeSet<Cell> = self.objects.cells().map(|(c, _)| c.clone()).collect();
        cells.extend(other.objects.cells().map(|(c, _)| c.clone()));
        for c in &cells {
            if get(c).shape() != (other.objects.rank(c), self.objects.rank(c)) {
                return Some((c.clone(), "map has the wrong shape".into()));
            }
        }
        for c in &cells {
            for dir in 0..self.dim() {
                let Some(b) = below(c, dir) else { continue };
                for tilde in [false, true] {
                    let lhs = &other.diff(tilde, dir, c) * &get(c);
                    let rhs = &get(&b) * &self.diff(tilde, dir, c);
                    if lhs != rhs {
                        let name = if tilde { "d~" } else { "d" };
                        return Some((c.clone(), format!("map does not commute with {name}^{}", dir + 1)));
                    }
                }
            }
        }
        None
    }
}

//! `N F(Γ⋯Γ X)` computed on nondegenerate basis elements only.
//!
//! A basis vector of the iterated Γ of a multicomplex is a label: the source cell,
//! one surjection per direction and an index inside the cell. `F` of the levelwise
//! module has a monomial basis over these labels, every degeneracy sends monomials
//! to monomials, and a monomial is degenerate exactly when, in some direction, its
//! surjections all fail to jump at a common position. The normalised complex is
//! therefore the span of the covering monomials, and faces are computed by applying
//! `F` to the face of each label and discarding degenerate terms.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complexes::{BinaryMulticomplex, Cell, CellMap, DiffMap, GradedObject, Multicomplex};
use crate::dold_kan::monotone_surjections;
use crate::functor::{apply, basis_elements, Basis, FunctorSpec, Lin};
use crate::linalg::IntMatrix;

/// What is applied levelwise to the iterated Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `F(V)` for the whole levelwise module.
    Functor(FunctorSpec),
    /// `F(V_0) ⊗ G(V_1)` where the levelwise module splits by side as `V_0 ⊕ V_1`.
    SideTensor(FunctorSpec, FunctorSpec),
}

impl Structure {
    fn degree(&self) -> usize {
        match self {
            Structure::Functor(f) => f.degree() as usize,
            Structure::SideTensor(f, g) => (f.degree() + g.degree()) as usize,
        }
    }

    fn elements(&self, t: &[u32], sides: &[u8]) -> Vec<Basis> {
        let full = |f: &FunctorSpec, leaves: &[u32]| -> Vec<Basis> {
            let alphabet: Vec<Basis> = leaves.iter().map(|&i| Basis::Leaf(i)).collect();
            basis_elements(f, &alphabet).into_iter().filter(|b| b.support().len() == leaves.len()).collect()
        };
        match self {
            Structure::Functor(f) => full(f, t),
            Structure::SideTensor(f, g) => {
                let t0: Vec<u32> = t.iter().copied().filter(|&i| sides[i as usize] == 0).collect();
                let t1: Vec<u32> = t.iter().copied().filter(|&i| sides[i as usize] == 1).collect();
                let (xs, ys) = (full(f, &t0), full(g, &t1));
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for x in &xs {
                    for y in &ys {
                        out.push(Basis::Pair(Box::new(x.clone()), Box::new(y.clone())));
                    }
                }
                out
            }
        }
    }

    fn apply(&self, b: &Basis, phi: &dyn Fn(&Basis) -> Lin<BigInt>) -> Lin<BigInt> {
        match self {
            Structure::Functor(f) => apply(f, b, phi),
            Structure::SideTensor(f, g) => apply(&FunctorSpec::tensor(f.clone(), g.clone()), b, phi),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Label {
    side: u8,
    cell: Cell,
    eta: Vec<Vec<u8>>,
    k: usize,
}

type LabelKey = (Cell, Vec<Vec<u8>>, usize);

struct LabelTable {
    labels: Vec<Label>,
    masks: Vec<Vec<u64>>,
    index: HashMap<LabelKey, usize>,
}

struct Level {
    table: LabelTable,
    basis: Vec<Basis>,
    basis_index: HashMap<Basis, usize>,
}

fn jump_mask(eta: &[u8]) -> u64 {
    (1..eta.len()).filter(|&j| eta[j] != eta[j - 1]).fold(0, |m, j| m | (1 << j))
}

fn full_mask(m: usize) -> u64 {
    ((1u64 << (m + 1)) - 1) & !1
}

/// Shared label and basis data for one graded object; differentials are supplied per call.
pub struct Transport {
    structure: Structure,
    dim: usize,
    objects: GradedObject,
    sides: BTreeMap<Cell, Vec<u8>>,
    key_dirs: Vec<usize>,
    levels: BTreeMap<Cell, Level>,
}

impl Transport {
    /// `order` lists directions in the order they are peeled (first = outermost Γ).
    pub fn new(structure: Structure, objects: &GradedObject, sides: BTreeMap<Cell, Vec<u8>>, order: &[usize]) -> Self {
        let dim = objects.dim();
        assert_eq!(order.len(), dim, "direction order must be a permutation");
        let mut key_dirs = order.to_vec();
        key_dirs.reverse();
        let mut t = Transport { structure, dim, objects: objects.clone(), sides, key_dirs, levels: BTreeMap::new() };
        if !objects.is_zero() || t.structure.degree() == 0 {
            let deg = t.structure.degree();
            let bound: Vec<usize> = objects.support_bound().iter().map(|b| b * deg).collect();
            for m in GradedObject::box_cells(&bound) {
                let table = t.label_table(&m);
                let basis = t.nondegenerate(&m, &table);
                if basis.is_empty() {
                    continue;
                }
                let basis_index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
                t.levels.insert(m, Level { table, basis, basis_index });
            }
        }
        t
    }

    pub fn default_order(dim: usize) -> Vec<usize> {
        (0..dim).rev().collect()
    }

    fn side(&self, cell: &Cell, k: usize) -> u8 {
        self.sides.get(cell).map_or(0, |v| v[k])
    }

    fn label_table(&self, m: &[usize]) -> LabelTable {
        let mut labels = Vec::new();
        for (cell, r) in self.objects.cells() {
            if cell.iter().zip(m).any(|(c, mm)| c > mm) {
                continue;
            }
            let mut etas: Vec<Vec<Vec<u8>>> = vec![vec![]];
            for d in 0..self.dim {
                let choices: Vec<Vec<u8>> = monotone_surjections(m[d], cell[d])
                    .iter()
                    .map(|s| s.values().iter().map(|&v| v as u8).collect())
                    .collect();
                etas = etas
                    .into_iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |c| {
                            let mut p = prefix.clone();
                            p.push(c.clone());
                            p
                        })
                    })
                    .collect();
            }
            for eta in etas {
                for k in 0..r {
                    labels.push(Label { side: self.side(cell, k), cell: cell.clone(), eta: eta.clone(), k });
                }
            }
        }
        labels.sort_by(|a, b| self.compare(a, b));
        let masks = labels.iter().map(|l| l.eta.iter().map(|e| jump_mask(e)).collect()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| ((l.cell.clone(), l.eta.clone(), l.k), i)).collect();
        LabelTable { labels, masks, index }
    }

    fn compare(&self, a: &Label, b: &Label) -> Ordering {
        a.side.cmp(&b.side).then_with(|| {
            for &d in &self.key_dirs {
                let o = Reverse(a.cell[d]).cmp(&Reverse(b.cell[d])).then_with(|| a.eta[d].cmp(&b.eta[d]));
                if o != Ordering::Equal {
                    return o;
                }
            }
            a.k.cmp(&b.k)
        })
    }

    /// Every covering monomial at multidegree `m`, sorted.
    fn nondegenerate(&self, m: &[usize], table: &LabelTable) -> Vec<Basis> {
        let n = table.labels.len();
        let deg = self.structure.degree();
        let full: Vec<u64> = m.iter().map(|&x| full_mask(x)).collect();
        let max_p: Vec<usize> = (0..self.dim).map(|d| table.labels.iter().map(|l| l.cell[d]).max().unwrap_or(0)).collect();
        let mut suffix = vec![vec![0u64; self.dim]; n + 1];
        for i in (0..n).rev() {
            for d in 0..self.dim {
                suffix[i][d] = suffix[i + 1][d] | table.masks[i][d];
            }
        }
        let sides: Vec<u8> = table.labels.iter().map(|l| l.side).collect();
        let mut out = Vec::new();
        let mut chosen: Vec<u32> = Vec::new();
        let mut covered = vec![0u64; self.dim];
        self.search(0, deg, &full, &max_p, &suffix, table, &sides, &mut chosen, &mut covered, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        start: usize,
        left: usize,
        full: &[u64],
        max_p: &[usize],
        suffix: &[Vec<u64>],
        table: &LabelTable,
        sides: &[u8],
        chosen: &mut Vec<u32>,
        covered: &mut Vec<u64>,
        out: &mut Vec<Basis>,
    ) {
        if covered.iter().zip(full).all(|(c, f)| c == f) {
            out.extend(self.structure.elements(chosen, sides));
        }
        if left == 0 {
            return;
        }
        for i in start..table.labels.len() {
            let mut ok = true;
            for d in 0..self.dim {
                let missing = full[d] & !covered[d];
                if missing & !suffix[i][d] != 0 || missing.count_ones() as usize > left * max_p[d] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                return;
            }
            let saved = covered.clone();
            for d in 0..self.dim {
                covered[d] |= table.masks[i][d];
            }
            chosen.push(i as u32);
            self.search(i + 1, left - 1, full, max_p, suffix, table, sides, chosen, covered, out);
            chosen.pop();
            *covered = saved;
        }
    }

    fn is_degenerate(&self, table: &LabelTable, m: &[usize], b: &Basis) -> bool {
        let mut covered = vec![0u64; self.dim];
        for i in b.leaves() {
            for d in 0..self.dim {
                covered[d] |= table.masks[i as usize][d];
            }
        }
        (0..self.dim).any(|d| covered[d] != full_mask(m[d]))
    }

    /// Graded object of the output.
    pub fn output_objects(&self) -> GradedObject {
        GradedObject::from_ranks(self.dim, self.levels.iter().map(|(c, l)| (c.clone(), l.basis.len())))
    }

    /// Basis of the output at `cell`.
    pub fn basis(&self, cell: &[usize]) -> &[Basis] {
        self.levels.get(cell).map_or(&[], |l| &l.basis)
    }

    /// Side of a label of the output at `cell`, by leaf index.
    pub fn leaf_side(&self, cell: &[usize], leaf: u32) -> u8 {
        self.levels[cell].table.labels[leaf as usize].side
    }

    fn in_family(family: &[DiffMap], objects: &GradedObject, dir: usize, cell: &[usize]) -> IntMatrix {
        match family[dir].get(cell) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(objects.rank_below(cell, dir), objects.rank(cell)),
        }
    }

    /// Face `t` in direction `dir` of every label at `m`, as combinations of labels at `m - e_dir`.
    fn label_faces(&self, family: &[DiffMap], m: &[usize], dir: usize, t: usize, target: &LabelTable) -> Vec<Lin<BigInt>> {
        let src = &self.levels[m].table;
        let mut diff_cache: HashMap<Cell, IntMatrix> = HashMap::new();
        src.labels
            .iter()
            .map(|l| {
                let eta = &l.eta[dir];
                let v = eta[t];
                let singleton = (t == 0 || eta[t - 1] != v) && (t + 1 == eta.len() || eta[t + 1] != v);
                let mut eta2 = l.eta.clone();
                eta2[dir].remove(t);
                let mut out = Lin::new();
                if !singleton {
                    let i = target.index[&(l.cell.clone(), eta2, l.k)];
                    out.insert(Basis::Leaf(i as u32), BigInt::one());
                } else if v as usize == l.cell[dir] {
                    let d = diff_cache
                        .entry(l.cell.clone())
                        .or_insert_with(|| Self::in_family(family, &self.objects, dir, &l.cell));
                    let mut below = l.cell.clone();
                    below[dir] -= 1;
                    for r in 0..d.rows() {
                        let x = d.get(r, l.k);
                        if !x.is_zero() {
                            let i = target.index[&(below.clone(), eta2.clone(), r)];
                            out.insert(Basis::Leaf(i as u32), x.clone());
                        }
                    }
                }
                out
            })
            .collect()
    }

    /// Output differential family for the input differential family `family`.
    pub fn differentials(&self, family: &[DiffMap]) -> Vec<DiffMap> {
        let mut out = vec![DiffMap::new(); self.dim];
        for (m, level) in &self.levels {
            for dir in 0..self.dim {
                if m[dir] == 0 {
                    continue;
                }
                let mut mb = m.clone();
                mb[dir] -= 1;
                let below = self.levels.get(&mb);
                let target_table;
                let target = match below {
                    Some(l) => &l.table,
                    None => {
                        target_table = self.label_table(&mb);
                        &target_table
                    }
                };
                let rows = below.map_or(0, |l| l.basis.len());
                let mut mat = IntMatrix::zeros(rows, level.basis.len());
                for t in 0..=m[dir] {
                    let faces = self.label_faces(family, m, dir, t, target);
                    let phi = |x: &Basis| {
                        let Basis::Leaf(i) = x else { unreachable!() };
                        faces[*i as usize].clone()
                    };
                    let sign = if (t + m[dir]) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    for (col, b) in level.basis.iter().enumerate() {
                        for (y, c) in self.structure.apply(b, &phi) {
                            match below.and_then(|l| l.basis_index.get(&y)) {
                                Some(&row) => {
                                    let e = mat.get_mut(row, col);
                                    *e += &sign * c;
                                }
                                None => assert!(self.is_degenerate(target, &mb, &y), "face of a basis element left the basis"),
                            }
                        }
                    }
                }
                if !mat.is_zero() {
                    out[dir].insert(m.clone(), mat);
                }
            }
        }
        out
    }

    pub fn multicomplex(&self, family: &[DiffMap]) -> Multicomplex {
        Multicomplex::new(self.output_objects(), self.differentials(family)).expect("transported shapes are consistent")
    }

    pub fn binary(&self, b: &BinaryMulticomplex) -> BinaryMulticomplex {
        BinaryMulticomplex::new(self.output_objects(), self.differentials(b.d_family()), self.differentials(b.d_tilde_family()))
            .expect("transported shapes are consistent")
    }

    /// Output map induced by degreewise maps `f: self.objects -> target.objects`.
    pub fn induced_map(&self, target: &Transport, f: &CellMap) -> CellMap {
        assert_eq!(self.structure, target.structure, "induced maps need one structure");
        let mut out = CellMap::new();
        for (m, level) in &self.levels {
            let dst = target.levels.get(m);
            let table_owned;
            let table = match dst {
                Some(l) => &l.table,
                None => {
                    table_owned = target.label_table(m);
                    &table_owned
                }
            };
            let images: Vec<Lin<BigInt>> = level
                .table
                .labels
                .iter()
                .map(|l| {
                    let mut v = Lin::new();
                    if let Some(fm) = f.get(&l.cell) {
                        for r in 0..fm.rows() {
                            let x = fm.get(r, l.k);
                            if !x.is_zero() {
                                v.insert(Basis::Leaf(table.index[&(l.cell.clone(), l.eta.clone(), r)] as u32), x.clone());
                            }
                        }
                    }
                    v
                })
                .collect();
            let phi = |x: &Basis| {
                let Basis::Leaf(i) = x else { unreachable!() };
                images[*i as usize].clone()
            };
            let rows = dst.map_or(0, |l| l.basis.len());
            let mut mat = IntMatrix::zeros(rows, level.basis.len());
            for (col, b) in level.basis.iter().enumerate() {
                for (y, c) in self.structure.apply(b, &phi) {
                    match dst.and_then(|l| l.basis_index.get(&y)) {
                        Some(&row) => mat.set(row, col, c),
                        None => assert!(target.is_degenerate(table, m, &y), "image of a basis element left the basis"),
                    }
                }
            }
            out.insert(m.clone(), mat);
        }
        out
    }
}

use super::chain::ChainComplex;
use super::graded::GradedObject;
use super::multi::{DiffMap, Multicomplex};
use super::validate::{ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Bicomplex with anticommuting squares: `d_ver` lowers the first index, `d_hor` the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomplex {
    inner: Multicomplex,
}

impl Bicomplex {
    pub fn new(objects: GradedObject, d_ver: DiffMap, d_hor: DiffMap) -> Result<Self> {
        if objects.dim() != 2 {
            return Err(Error::DimensionMismatch(format!("bicomplex needs dimension 2, got {}", objects.dim())));
        }
        Ok(Bicomplex { inner: Multicomplex::new(objects, vec![d_ver, d_hor])? })
    }

    /// `Q ⊗ R` with `(i, j)` object `Q_i ⊗ R_j`, `d_ver = d_Q ⊗ (-1)^j`, `d_hor = 1 ⊗ d_R`.
    pub fn tensor(q: &ChainComplex, r: &ChainComplex) -> Self {
        let mut objects = GradedObject::new(2);
        let (lq, lr) = (q.ranks().len(), r.ranks().len());
        for i in 0..lq {
            for j in 0..lr {
                objects.set_rank(vec![i, j], q.rank(i) * r.rank(j));
            }
        }
        let mut d_ver = DiffMap::new();
        let mut d_hor = DiffMap::new();
        for i in 0..lq {
            for j in 0..lr {
                let idr = IntMatrix::identity(r.rank(j));
                if i > 0 {
                    let m = q.d(i).kronecker(&idr);
                    let m = if j % 2 == 1 { -&m } else { m };
                    d_ver.insert(vec![i, j], m);
                }
                if j > 0 {
                    d_hor.insert(vec![i, j], IntMatrix::identity(q.rank(i)).kronecker(&r.d(j)));
                }
            }
        }
        Self::new(objects, d_ver, d_hor).expect("tensor shapes are consistent")
    }

    pub fn objects(&self) -> &GradedObject {
        self.inner.objects()
    }

    pub fn d_ver(&self, cell: &[usize]) -> IntMatrix {
        self.inner.diff(0, cell)
    }

    pub fn d_hor(&self, cell: &[usize]) -> IntMatrix {
        self.inner.diff(1, cell)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let objects = self.inner.objects();
        for (c, _) in objects.cells() {
            let (i, j) = (c[0], c[1]);
            if i >= 2 && !(&self.d_ver(&[i - 1, j]) * &self.d_ver(c)).is_zero() {
                report.violations.push(Violation::new(c.clone(), "d_ver^2 = 0", "column is not a complex"));
            }
            if j >= 2 && !(&self.d_hor(&[i, j - 1]) * &self.d_hor(c)).is_zero() {
                report.violations.push(Violation::new(c.clone(), "d_hor^2 = 0", "row is not a complex"));
            }
            if i >= 1 && j >= 1 {
                let a = &self.d_ver(&[i, j - 1]) * &self.d_hor(c);
                let b = &self.d_hor(&[i - 1, j]) * &self.d_ver(c);
                if a != -&b {
                    report.violations.push(Violation::new(
                        c.clone(),
                        "d_ver d_hor = -d_hor d_ver",
                        "square does not anticommute",
                    ));
                }
            }
        }
        report
    }

    /// Total complex: `Tot_n = ⊕_{i+j=n} B_{i,j}` ordered by increasing `i`.
    pub fn tot(&self) -> Result<ChainComplex> {
        let report = self.validate();
        if let Some(v) = report.first() {
            return Err(Error::Validation { cell: crate::json::cell_key(&v.cell), message: v.rule.clone() });
        }
        let objects = self.inner.objects();
        let top = objects.top_total_degree();
        if objects.is_zero() {
            return Ok(ChainComplex::zero());
        }
        let pieces = |n: usize| -> Vec<(usize, usize, usize)> {
            (0..=n).map(|i| (i, n - i, objects.rank(&[i, n - i]))).collect()
        };
        let ranks: Vec<usize> = (0..=top).map(|n| pieces(n).iter().map(|p| p.2).sum()).collect();
        let mut diffs = Vec::new();
        for n in 1..=top {
            let src = pieces(n);
            let dst = pieces(n - 1);
            let offset = |list: &[(usize, usize, usize)], i: usize| list.iter().take_while(|p| p.0 < i).map(|p| p.2).sum::<usize>();
            let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for &(i, j, r) in &src {
                if r == 0 {
                    continue;
                }
                let col = offset(&src, i);
                if i > 0 {
                    m.paste(offset(&dst, i - 1), col, &self.d_ver(&[i, j]));
                }
                if j > 0 {
                    m.paste(offset(&dst, i), col, &self.d_hor(&[i, j]));
                }
            }
            diffs.push(m);
        }
        let c = ChainComplex::new(ranks, diffs)?;
        debug_assert!(c.validate().is_valid());
        Ok(c)
    }
}

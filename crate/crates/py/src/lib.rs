//! Python bindings: `import kops_py`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use kops::complexes::{ChainComplex as CoreChain, ComplexData};
use kops::derived::{binary_functor, counterexample_h2, induced_f1, induced_fn, lambda_cross_effect_form};
use kops::functor::FunctorSpec;
use kops::linalg::{invariant_factors, kernel_basis, rank, IntMatrix as CoreMatrix};
use kops::symfunc::{lambda_universal_check, truncate_to_schur_module, universal_prs, SchurAlgebra};
use kops::witness::{product_vanishing_witness, shift_witness, WitnessChain};

fn err(e: kops::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec(s: &str) -> PyResult<FunctorSpec> {
    s.parse().map_err(err)
}

/// Integer matrix with arbitrary-precision entries.
#[pyclass(name = "IntMatrix", module = "kops_py", from_py_object)]
#[derive(Clone)]
struct PyIntMatrix(CoreMatrix);

#[pymethods]
impl PyIntMatrix {
    #[new]
    #[pyo3(signature = (rows, cols=None))]
    fn new(rows: Vec<Vec<BigInt>>, cols: Option<usize>) -> PyResult<Self> {
        let c = cols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
        if rows.iter().any(|r| r.len() != c) {
            return Err(PyValueError::new_err("rows have different lengths"));
        }
        let n = rows.len();
        CoreMatrix::from_entries(n, c, rows.into_iter().flatten().collect()).map(Self).map_err(err)
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    fn to_list(&self) -> Vec<Vec<BigInt>> {
        (0..self.0.rows()).map(|i| self.0.row(i).to_vec()).collect()
    }

    fn rank(&self) -> usize {
        rank(&self.0)
    }

    /// Nonzero diagonal entries of the Smith normal form.
    fn invariant_factors(&self) -> Vec<BigInt> {
        invariant_factors(&self.0)
    }

    /// Columns form a basis of the integer kernel.
    fn kernel_basis(&self) -> Self {
        Self(kernel_basis(&self.0))
    }

    fn __matmul__(&self, other: &Self) -> PyResult<Self> {
        if self.0.cols() != other.0.rows() {
            return Err(PyValueError::new_err("shape mismatch"));
        }
        Ok(Self(&self.0 * &other.0))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("IntMatrix({:?})", self.to_list().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

/// Bounded chain complex of free abelian groups in degrees `0..=length`.
#[pyclass(name = "ChainComplex", module = "kops_py", from_py_object)]
#[derive(Clone)]
struct PyChainComplex(CoreChain);

#[pymethods]
impl PyChainComplex {
    /// `ranks[i]` is the rank in degree `i`; `diffs[i]` is `d_{i+1}: C_{i+1} -> C_i`.
    #[new]
    fn new(ranks: Vec<usize>, diffs: Vec<PyIntMatrix>) -> PyResult<Self> {
        CoreChain::new(ranks, diffs.into_iter().map(|m| m.0).collect()).map(Self).map_err(err)
    }

    /// `ℤ --x--> ℤ` in degrees `top` and `top - 1`.
    #[staticmethod]
    #[pyo3(signature = (x, top=1))]
    fn two_term(x: i64, top: usize) -> PyResult<Self> {
        if top == 0 {
            return Err(PyValueError::new_err("top degree must be at least 1"));
        }
        Ok(Self(CoreChain::two_term(x, top)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match ComplexData::parse(text).map_err(err)? {
            ComplexData::Plain(m) if m.dim() == 1 => Ok(Self(m.to_chain())),
            _ => Err(PyValueError::new_err("expected a one-dimensional complex without d_tilde")),
        }
    }

    fn to_json(&self) -> String {
        ComplexData::from(&self.0).to_json().to_string()
    }

    #[getter]
    fn ranks(&self) -> Vec<usize> {
        self.0.ranks().to_vec()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    /// `d_i: C_i -> C_{i-1}`.
    fn differential(&self, i: usize) -> PyIntMatrix {
        PyIntMatrix(self.0.d(i))
    }

    /// Homology groups as strings such as `"Z^2 + Z/3"`.
    fn homology(&self) -> Vec<String> {
        self.0.homology_all().iter().map(ToString::to_string).collect()
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    /// `NFΓ(C)` for a functor spec such as `"L2"`, `"S3"` or `"L2@L2"`.
    fn apply(&self, functor: &str) -> PyResult<Self> {
        induced_f1(&spec(functor)?, &self.0).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("ChainComplex(ranks={:?})", self.0.ranks())
    }
}

/// Multicomplex or binary multicomplex in the JSON interchange format.
#[pyclass(name = "Complex", module = "kops_py", from_py_object)]
#[derive(Clone)]
struct PyComplex(ComplexData);

#[pymethods]
impl PyComplex {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ComplexData::parse(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn is_binary(&self) -> bool {
        matches!(self.0, ComplexData::Binary(_))
    }

    /// Acyclic in every direction (for binary complexes, for every choice of differentials).
    fn is_acyclic(&self) -> bool {
        match &self.0 {
            ComplexData::Plain(m) => m.is_acyclic(),
            ComplexData::Binary(b) => b.is_acyclic(),
        }
    }

    /// Apply a functor in every direction at once.
    fn apply(&self, functor: &str) -> PyResult<Self> {
        let f = spec(functor)?;
        let out = match &self.0 {
            ComplexData::Plain(m) => ComplexData::Plain(induced_fn(&f, m, None).map_err(err)?),
            ComplexData::Binary(b) => ComplexData::Binary(binary_functor(&f, b, None).map_err(err)?),
        };
        Ok(Self(out))
    }

    fn __repr__(&self) -> String {
        format!("Complex(dimension={}, binary={})", self.dimension(), self.is_binary())
    }
}

/// Serialized derivation of a relation in the K-group presentation.
#[pyclass(name = "Witness", module = "kops_py")]
struct PyWitness(WitnessChain);

#[pymethods]
impl PyWitness {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        WitnessChain::parse(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    /// Replay every step; returns the failure messages (empty when valid).
    fn check(&self) -> Vec<String> {
        self.0.check().messages()
    }

    fn is_valid(&self) -> bool {
        self.0.check().is_valid()
    }

    #[getter]
    fn claim(&self) -> String {
        self.0.claim.to_string()
    }

    #[getter]
    fn object_count(&self) -> usize {
        self.0.objects.len()
    }

    #[getter]
    fn sequence_count(&self) -> usize {
        self.0.ses_count()
    }

    #[getter]
    fn diagonal_count(&self) -> usize {
        self.0.diagonal_count()
    }
}

fn binary_of(c: &PyComplex) -> kops::complexes::BinaryMulticomplex {
    c.0.clone().into_binary()
}

/// Witness for `[N[k]] = (-1)^k [N]`, shifting in direction `direction` (0-based).
#[pyfunction]
#[pyo3(signature = (complex, k=1, direction=0))]
fn shift_witness_for(complex: &PyComplex, k: usize, direction: usize) -> PyResult<PyWitness> {
    let b = binary_of(complex);
    if direction >= b.dim() {
        return Err(PyValueError::new_err(format!("direction {direction} out of range for dimension {}", b.dim())));
    }
    shift_witness(&b, k, direction).map(PyWitness).map_err(err)
}

/// Witness that the exterior product of two binary complexes vanishes.
#[pyfunction]
fn product_witness_for(p: &PyComplex, q: &PyComplex) -> PyResult<PyWitness> {
    product_vanishing_witness(&binary_of(p), &binary_of(q)).map(PyWitness).map_err(err)
}

/// `Λ^r` of a complex, with differentials in the cross-effect bases.
#[pyfunction]
fn exterior_power_cross_effect(r: u32, c: &PyChainComplex) -> PyResult<PyChainComplex> {
    lambda_cross_effect_form(r, &c.0).map(PyChainComplex).map_err(err)
}

/// `H_2` of the total complex of `C ⊗ C` for `0 -> ℤ --2--> ℤ -> ℤ/2 -> 0`.
#[pyfunction]
fn tensor_counterexample_h2() -> String {
    counterexample_h2().to_string()
}

/// `P_{r,s}` in the variables `X1, X2, ...` (the elementary symmetric functions).
#[pyfunction]
fn plethysm(r: usize, s: usize) -> PyResult<String> {
    if r == 0 || s == 0 || r * s > 9 {
        return Err(PyValueError::new_err("need r, s >= 1 and rs <= 9"));
    }
    Ok(universal_prs(r, s).display_with(&|i| format!("X{}", i + 1)))
}

/// `P_{r,s}` as `(exponent vector, coefficient)` pairs.
#[pyfunction]
fn plethysm_terms(r: usize, s: usize) -> PyResult<Vec<(Vec<u32>, BigInt)>> {
    plethysm(r, s)?;
    Ok(universal_prs(r, s).terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect())
}

/// λ-ring axioms on the universal ring as `(axiom, passed, total)`, with axiom 0 for `λ^1 = id`.
#[pyfunction]
fn lambda_check(max_degree: usize) -> PyResult<Vec<(u8, usize, usize)>> {
    if max_degree == 0 || max_degree > 8 {
        return Err(PyValueError::new_err("max_degree must be in 1..=8"));
    }
    let report = lambda_universal_check(max_degree);
    Ok((0..=3).map(|a| {
        let (p, n) = report.passed_for(a);
        (a, p, n)
    }).collect())
}

/// Rank of `Γ^d Mat(n, ℤ)`.
#[pyfunction]
fn schur_algebra_rank(n: usize, d: usize) -> usize {
    SchurAlgebra::new(n, d).rank()
}

/// Build `F(ℤ^n)` as a Schur-algebra module and check the module laws on sampled pairs.
#[pyfunction]
#[pyo3(signature = (functor, n, seed=0, samples=50))]
fn schur_module_check(functor: &str, n: usize, seed: u64, samples: usize) -> PyResult<bool> {
    let m = truncate_to_schur_module(&spec(functor)?, n).map_err(err)?;
    let mut rng = kops::random::rng(seed);
    Ok(m.check_module_axioms(&mut rng, samples))
}

#[pyfunction]
fn functor_rank(functor: &str, n: usize) -> PyResult<usize> {
    Ok(kops::functor::rank_of(&spec(functor)?, n))
}

#[pymodule]
fn kops_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntMatrix>()?;
    m.add_class::<PyChainComplex>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(shift_witness_for, m)?)?;
    m.add_function(wrap_pyfunction!(product_witness_for, m)?)?;
    m.add_function(wrap_pyfunction!(exterior_power_cross_effect, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_counterexample_h2, m)?)?;
    m.add_function(wrap_pyfunction!(plethysm, m)?)?;
    m.add_function(wrap_pyfunction!(plethysm_terms, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_check, m)?)?;
    m.add_function(wrap_pyfunction!(schur_algebra_rank, m)?)?;
    m.add_function(wrap_pyfunction!(schur_module_check, m)?)?;
    m.add_function(wrap_pyfunction!(functor_rank, m)?)?;
    Ok(())
}

//! Exact computations with exterior power operations on binary multicomplexes:
//! Dold–Kan transport of polynomial functors, simplicial tensor products,
//! certificates for relations in Grayson's presentation of higher K-groups,
//! and the symmetric-function side of the λ-ring axioms.

pub mod complexes;
pub mod derived;
pub mod dold_kan;
pub mod error;
pub mod functor;
pub mod json;
pub mod linalg;
pub mod random;
pub mod symfunc;
pub mod witness;

pub use error::{Error, Result};

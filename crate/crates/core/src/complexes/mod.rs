mod bicomplex;
mod chain;
mod graded;
mod json;
mod multi;
mod ses;
mod validate;

pub use bicomplex::Bicomplex;
pub use chain::ChainComplex;
pub use graded::{Cell, GradedObject};
pub use json::ComplexData;
pub use multi::{BinaryComplex, BinaryMulticomplex, CellMap, DiffMap, Multicomplex};
pub use ses::ShortExactSequence;
pub use validate::{ValidationReport, Violation};

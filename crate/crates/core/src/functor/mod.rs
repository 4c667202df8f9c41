mod apply;
mod basis;
mod cross;
mod spec;

pub use apply::{add_term, apply, apply_to_hom, apply_to_module, Coeff, Lin};
pub use basis::{basis_elements, leaf_alphabet, rank_of, Basis};
pub use cross::{cross_effect, degree_of, verify_degree, CrossEffect};
pub use spec::{FunctorSpec, Homogeneity};

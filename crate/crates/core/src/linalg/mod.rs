mod abelian;
mod elim;
mod matrix;
mod snf;

pub use abelian::{cokernel, is_well_defined, lattice_basis, presented_homology, FgAbGroup, Presentation};
pub use elim::{invariant_factors, rank, rank_over};
pub use matrix::{CoeffDomain, IntMatrix};
pub use snf::{
    image_saturation_basis, inverse_unimodular, kernel_basis, snf, snf_in, solve_integer, split_summand,
    split_surjection, SmithDecomposition,
};

//! Simplicial modules, the functor Γ and the normalised Moore complex.

mod simplex;
mod simplicial;

pub use simplex::{epi_monic_factor, monotone_surjections, MonotoneMap};
pub use simplicial::{
    apply_functor_simplicial, associated_chain, degenerate_subcomplex, gamma, gamma_labels, gamma_map, normalized_moore,
    normalized_moore_with, Complement, GammaLabel, NormalizedComplex, SimplicialModule,
};

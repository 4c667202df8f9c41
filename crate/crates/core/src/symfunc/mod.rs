//! Symmetric polynomials, the universal λ-ring polynomials, plethysm, characters of
//! polynomial functors and the Schur algebra.

mod lambda;
mod poly;
mod schur;
mod sym;

pub use lambda::{lambda_universal_check, LambdaCheck, LambdaReport};
pub use poly::{Monomial, Poly};
pub use schur::{truncate_to_schur_module, SchurAlgebra, SchurAlgebraElement, SchurModule, Unit};
pub use sym::{
    alphabet_elementary, char_functor, complete, e_monomials_independent, e_to_sym, e_weighted_degree, elementary,
    expand_in_e, expand_in_e_blocks, is_symmetric, lambda_op, lambda_t_multiplicative, partitions, plethysm_e,
    power_sum, pr_substitution_identity, universal_pr, universal_prs, verify_axiom3_char,
};

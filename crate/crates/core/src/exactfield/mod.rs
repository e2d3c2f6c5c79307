//! Exact arithmetic kernel: prime-field scalars, sparse multivariate
//! polynomials, univariate squarefree testing and dense elimination.

mod field;
mod matrix;
mod poly;
mod upoly;

pub use field::{is_prime_u64, Fp, PrimeField, DEFAULT_PRIME};
pub use matrix::{ExactMatrix, KernelInfo};
pub use poly::{exponents_of_degree, indexed_vars, MultiPoly, Term};
pub use upoly::{binary_form_squarefree, UniPoly};

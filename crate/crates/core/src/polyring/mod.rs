//! Sparse multivariate polynomials over the integers.

mod factor;
mod modgcd;
mod monomial;
mod poly;
mod text;

pub use factor::{
    content_in, find_factorization, gcd, poly_sqrt, prime_factors, primitive_in, pseudo_rem,
    split_quadratic, square_free_step,
};
pub use monomial::{Monomial, Var, VarSet, MAX_EXP, MAX_VARS};
pub use poly::{
    delta_of, delta_of_pair, int_gcd, linear_split, resultant_linear, Coeff, DeltaInfo,
    LinearSplit, Polynomial,
};

/// Shorthand for variable `a<i>`; panics when `i` is out of range.
pub fn var(i: u32) -> Var {
    Var::new(i).expect("variable index in range")
}

/// Shorthand polynomial for variable `a<i>`.
pub fn x(i: u32) -> Polynomial {
    Polynomial::var(var(i))
}

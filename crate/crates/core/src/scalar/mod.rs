//! Exact coefficient arithmetic: Gaussian rationals, Laurent polynomials and
//! rational functions in `q` and declared parameters.

mod gauss;
mod gcd;
mod parse;
mod poly;
mod ratfun;
mod var;

pub use gauss::GaussRational;
pub use gcd::gcd;
pub use parse::{annotate, parse_scalar};
pub use poly::{Monomial, Poly};
pub use ratfun::{Point, Scalar};
pub use var::{Var, MAX_VARS};

#[cfg(test)]
mod proptests;

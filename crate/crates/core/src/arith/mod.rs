//! Exact arithmetic: rationals, exponent vectors, polynomials.

pub mod monomial;
pub mod polynomial;
pub mod rational;

pub use monomial::{ExponentVector, MonomialOrder};
pub use polynomial::{Ring, Polynomial};
pub use rational::Rational;

//! Hodge ideals of Q-divisors on affine space over the rationals.
//!
//! Polynomials live in [`arith`], ideals and Gröbner bases in [`ideal`].
//! [`compute::compute_hodge_ideal`] is the main entry point.

pub mod arith;
pub mod certificates;
pub mod closed_forms;
pub mod compute;
pub mod divisor;
pub mod error;
pub mod ideal;
pub mod parser;
pub mod recursion;
pub mod verifier;

pub use arith::{ExponentVector, MonomialOrder, Polynomial, Rational, Ring};
pub use compute::{compute_chain, compute_hodge_ideal, ComputeOptions, MethodSelector};
pub use divisor::{Component, HodgeIdealResult, Method, QDivisor};
pub use error::{HodgeError, Result};
pub use ideal::{IdealPresentation, ReducedGroebnerBasis};
pub use recursion::{CertificateSource, ChainResult, GenerationCertificate};

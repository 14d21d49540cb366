//! Certified zero counting for harmonic polynomials of the form
//! `h(z) = eps z^n + q(z) + conj(q(z))`.
//!
//! `Im h = eps Im z^n` vanishes exactly on `n` lines through the origin, so
//! the zeros of `h` are the real zeros of `n` univariate restrictions of
//! `Re h`. This crate builds those restrictions with rigorous interval
//! coefficients, certifies lower bounds on their zero counts by sign
//! alternation, runs Monte Carlo experiments over the complex Kostlan
//! ensemble, and searches for explicit instances with many certified zeros.
//!
//! Polynomials are generic over [`Scalar`]; the aliases below fix the
//! coefficient types used throughout.

pub mod certify;
pub mod cli;
pub mod dyadic;
pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod instance;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod search;
pub mod valence;

pub use certify::interval::RigorousInterval;
pub use certify::CertifiedSign;
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use instance::{LineRestriction, WilmshurstInstance};
pub use poly::{ComplexPolynomial, Polynomial};
pub use scalar::Scalar;
pub use valence::{LineCount, ValenceCertificate};

/// Exact real polynomial with dyadic coefficients.
pub type RealPolynomial = Polynomial<Dyadic>;
/// Double-precision polynomial used for root estimation.
pub type FloatPolynomial = Polynomial<f64>;
/// Single-precision polynomial.
pub type FloatPolynomial32 = Polynomial<f32>;
/// Complex polynomial with dyadic real and imaginary parts.
pub type DyadicComplexPolynomial = ComplexPolynomial<Dyadic>;
/// Complex polynomial in double precision.
pub type FloatComplexPolynomial = ComplexPolynomial<f64>;

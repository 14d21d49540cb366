//! Descartes' rule of signs and the resulting per-family zero bound.

use crate::error::{param, Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Sign changes in the nonzero coefficients: an upper bound on the number of
/// positive roots counted with multiplicity.
pub fn descartes_positive_bound<T: Scalar>(poly: &Polynomial<T>) -> Result<usize> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(poly.sign_changes())
}

/// `(s_plus, s_minus, s_zero)` for a nonzero polynomial: sign changes of
/// `f(r)`, of `f(-r)`, and the multiplicity of `0` as a root. For degree `m`
/// the sum never exceeds `m`.
pub fn sign_count_identity<T: Scalar>(poly: &Polynomial<T>) -> Result<(usize, usize, usize)> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok((
        poly.sign_changes(),
        poly.reflect().sign_changes(),
        poly.lowest_order().unwrap_or(0),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyBounds {
    /// `n (m + 2)`: at most `m + 2` zeros on each of the `n` lines.
    pub descartes_total: u64,
    /// `2m(n - 1) + n`.
    pub conjectured_bound: u64,
}

/// Upper bound on the zero count of `eps z^n + q + conj(q)` with `deg q = m`.
pub fn family_upper_bound(n: u64, m: u64) -> Result<FamilyBounds> {
    if m < 1 || n <= m {
        return Err(param(format!("need n > m >= 1, got n = {n}, m = {m}")));
    }
    let bounds = FamilyBounds {
        descartes_total: n * (m + 2),
        conjectured_bound: 2 * m * (n - 1) + n,
    };
    if n >= 4 && m >= 2 {
        // (m-1)(n-2) >= 2 gives n(m+2) <= 2m(n-1) + n
        assert!(bounds.descartes_total <= bounds.conjectured_bound);
    }
    Ok(bounds)
}

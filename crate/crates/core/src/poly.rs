//! Dense univariate polynomials over a [`Scalar`], plus complex polynomials
//! stored as pairs of real coefficients.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dyadic::{Dyadic, Rounding};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients in ascending order: `coeffs[k]` multiplies `x^k`.
///
/// Trailing zero coefficients are kept as given; [`Polynomial::degree`]
/// reports the true degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Largest `k` with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn leading(&self) -> Option<&T> {
        self.degree().map(|d| &self.coeffs[d])
    }

    /// Drop trailing zero coefficients.
    pub fn trimmed(&self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        Polynomial {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_usize_exact(k))
            .collect();
        Polynomial { coeffs }
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Polynomial { coeffs }
    }

    /// Multiplicity of 0 as a root: the index of the lowest nonzero coefficient.
    pub fn lowest_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Sign changes in the sequence of nonzero coefficients.
    pub fn sign_changes(&self) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for c in &self.coeffs {
            let s = c.sign();
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product of linear factors `(x - r)`.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut coeffs = vec![T::one()];
        for r in roots {
            let mut next = vec![T::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - c.clone() * r.clone();
            }
            coeffs = next;
        }
        Polynomial { coeffs }
    }
}

impl Polynomial<Dyadic> {
    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map(Dyadic::to_f64)
    }
}

/// Cauchy bound `1 + max_{k<d} |c_k| / |c_d|`, rounded up to a dyadic.
/// Every real root lies strictly inside `(-R, R)`.
pub fn cauchy_root_bound(poly: &Polynomial<Dyadic>) -> Result<Dyadic> {
    let d = poly.degree().ok_or(Error::ZeroPolynomial)?;
    let last = poly.coeffs().len() - 1;
    if d == 0 || d != last {
        return Err(Error::Degenerate(format!(
            "cauchy bound needs degree >= 1 and a nonzero leading coefficient (degree {d}, {} coefficients)",
            last + 1
        )));
    }
    let lead = poly.coeffs()[d].abs();
    let max = poly.coeffs()[..d]
        .iter()
        .map(Dyadic::abs)
        .max()
        .unwrap_or_else(Dyadic::zero);
    Ok(Dyadic::from_int(1) + max.div_rounded(&lead, 64, Rounding::Up))
}

/// `c_k = a_k + i b_k` stored as `(a_k, b_k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexPolynomial<T> {
    coeffs: Vec<(T, T)>,
}

impl<T: Scalar> ComplexPolynomial<T> {
    pub fn new(coeffs: Vec<(T, T)>) -> Self {
        ComplexPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[(T, T)] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|(a, b)| !a.is_zero() || !b.is_zero())
    }

    /// Complex Horner evaluation at `x + i y`, returning `(re, im)`.
    pub fn eval(&self, x: &T, y: &T) -> (T, T) {
        let mut re = T::zero();
        let mut im = T::zero();
        for (a, b) in self.coeffs.iter().rev() {
            let nre = re.clone() * x.clone() - im.clone() * y.clone() + a.clone();
            let nim = re * y.clone() + im * x.clone() + b.clone();
            re = nre;
            im = nim;
        }
        (re, im)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ComplexPolynomial<U> {
        ComplexPolynomial {
            coeffs: self.coeffs.iter().map(|(a, b)| (f(a), f(b))).collect(),
        }
    }
}

/// `(x + i y)^n` by repeated squaring.
pub fn complex_pow<T: Scalar>(x: &T, y: &T, n: u32) -> (T, T) {
    let mut result = (T::one(), T::zero());
    let mut base = (x.clone(), y.clone());
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = complex_mul(&result, &base);
        }
        base = complex_mul(&base, &base);
        e >>= 1;
    }
    result
}

fn complex_mul<T: Scalar>(a: &(T, T), b: &(T, T)) -> (T, T) {
    (
        a.0.clone() * b.0.clone() - a.1.clone() * b.1.clone(),
        a.0.clone() * b.1.clone() + a.1.clone() * b.0.clone(),
    )
}

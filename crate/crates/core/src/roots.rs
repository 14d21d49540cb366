//! Approximate real roots in floating point.
//!
//! Roots of `p` are separated by the roots of `p'`, so the real roots of the
//! derivative (found recursively) split `[lo, hi]` into monotone pieces, each
//! holding at most one root, which bisection then locates. This only
//! proposes sample points; nothing downstream trusts it for correctness.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::instance::LineRestriction;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

const MAX_BISECTIONS: usize = 2200;

fn trimmed<F: Float + Scalar>(coeffs: &[F]) -> Vec<F> {
    let len = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .map_or(0, |d| d + 1);
    coeffs[..len].to_vec()
}

fn bisect<F: Float + Scalar>(p: &Polynomial<F>, mut a: F, mut b: F, fa: F) -> F {
    let two = F::one() + F::one();
    let a_neg = fa < F::zero();
    for _ in 0..MAX_BISECTIONS {
        let mid = a + (b - a) / two;
        if mid <= a || mid >= b {
            break;
        }
        let fm = p.eval(&mid);
        if fm.is_zero() {
            return mid;
        }
        if (fm < F::zero()) == a_neg {
            a = mid;
        } else {
            b = mid;
        }
    }
    a + (b - a) / two
}

fn roots_in<F: Float + Scalar>(coeffs: &[F], lo: F, hi: F) -> Result<Vec<F>> {
    let c = trimmed(coeffs);
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::RootEstimation("non-finite coefficient".into()));
    }
    if c.len() == 2 {
        let r = -c[0] / c[1];
        return Ok(if lo < r && r < hi {
            vec![r]
        } else {
            Vec::new()
        });
    }
    let poly = Polynomial::new(c);
    let deriv = poly.derivative();
    let critical = roots_in(deriv.coeffs(), lo, hi)?;

    let mut knots = Vec::with_capacity(critical.len() + 2);
    knots.push(lo);
    knots.extend(critical.iter().copied());
    knots.push(hi);
    let values: Vec<F> = knots.iter().map(|x| poly.eval(x)).collect();
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::RootEstimation("evaluation overflowed".into()));
    }

    let mut roots = Vec::new();
    for i in 0..knots.len() - 1 {
        let (a, b) = (knots[i], knots[i + 1]);
        let (fa, fb) = (values[i], values[i + 1]);
        if i > 0 && fa.is_zero() {
            // a critical point that is itself a root (tangency)
            roots.push(a);
            continue;
        }
        if fb.is_zero() || fa.is_zero() {
            continue;
        }
        if (fa < F::zero()) != (fb < F::zero()) {
            roots.push(bisect(&poly, a, b, fa));
        }
    }
    roots.dedup();
    Ok(roots)
}

/// Real roots of `poly` strictly inside `(lo, hi)`, ascending.
pub fn real_roots<F: Float + Scalar>(poly: &Polynomial<F>, lo: F, hi: F) -> Result<Vec<F>> {
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidInterval(
            "root bracket must satisfy lo < hi".into(),
        ));
    }
    let mut roots = roots_in(poly.coeffs(), lo, hi)?;
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

/// Approximate real roots of the restriction's midpoint polynomial, sorted.
pub fn float_root_estimate(restriction: &LineRestriction) -> Result<Vec<f64>> {
    let bound = restriction.cauchy_bound()?.to_f64();
    if !bound.is_finite() {
        return Err(Error::RootEstimation("root bound overflows f64".into()));
    }
    let mid = restriction.midpoint_polynomial().to_f64();
    real_roots(&mid, -bound, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;

    fn restriction(cs: &[i64]) -> LineRestriction {
        LineRestriction::from_polynomial(&Polynomial::new(
            cs.iter().map(|&c| Dyadic::from_int(c)).collect(),
        ))
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn examples() {
        assert!(close(
            &float_root_estimate(&restriction(&[0, 2, 1])).unwrap(),
            &[-2.0, 0.0]
        ));
        assert!(float_root_estimate(&restriction(&[1, 0, 1]))
            .unwrap()
            .is_empty());
        assert!(close(
            &float_root_estimate(&restriction(&[0, -1, 0, 1])).unwrap(),
            &[-1.0, 0.0, 1.0]
        ));
    }

    #[test]
    fn tangency_is_reported_once() {
        assert!(close(
            &float_root_estimate(&restriction(&[0, 0, 1])).unwrap(),
            &[0.0]
        ));
        assert!(close(
            &float_root_estimate(&restriction(&[1, -2, 1])).unwrap(),
            &[1.0]
        ));
    }

    #[test]
    fn degenerate_leading_coefficient() {
        assert!(float_root_estimate(&restriction(&[1, 1, 0])).is_err());
    }

    #[test]
    fn wide_dynamic_range() {
        // 2^-40 r^6 + r^4 - 3 r^2 + 1: small roots near the quartic's, large ones absent
        let eps = 2f64.powi(-40);
        let p = Polynomial::new(vec![1.0, 0.0, -3.0, 0.0, 1.0, 0.0, eps]);
        let roots = real_roots(&p, -1e13, 1e13).unwrap();
        assert_eq!(roots.len(), 4);
        // - r^4 flips the large-root picture: two extra real roots near +-2^20
        let p = Polynomial::new(vec![1.0, 0.0, -3.0, 0.0, -1.0, 0.0, eps]);
        let roots = real_roots(&p, -1e13, 1e13).unwrap();
        assert_eq!(roots.len(), 4);
        assert!((roots[3] / 2f64.powi(20) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn generic_f32() {
        let p = Polynomial::<f32>::new(vec![-2.0, 0.0, 1.0]);
        let roots = real_roots(&p, -10.0, 10.0).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[1] - 2f32.sqrt()).abs() < 1e-6);
    }
}

//! Exact Sturm chains over the integers.
//!
//! The input is scaled to integer coefficients and the chain is built with
//! pseudo-remainders multiplied only by positive factors, each element
//! reduced to its primitive part. Positive scaling leaves all sign
//! variations unchanged.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Polynomial<Dyadic>>,
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

/// `|lc(b)|^k * a mod b` for the minimal `k`; the factor is always positive.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    let lead_abs = lead.abs();
    let lead_sign = lead.signum();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = &r[dr] * &lead_sign;
        let shift = dr - db;
        for x in r.iter_mut() {
            *x *= &lead_abs;
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &factor * bi;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

fn to_integer_coeffs(poly: &Polynomial<Dyadic>) -> Vec<BigInt> {
    let min_exp = poly
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(Dyadic::exponent)
        .min()
        .unwrap_or(0);
    poly.coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else {
                c.mantissa() << (c.exponent() - min_exp) as u64
            }
        })
        .collect()
}

fn sign_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    pub fn new(poly: &Polynomial<Dyadic>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = primitive(to_integer_coeffs(poly));
        let mut chain = vec![p0.clone()];
        if p0.len() > 1 {
            let deriv: Vec<BigInt> = p0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect();
            let mut prev = p0;
            let mut cur = primitive(deriv);
            loop {
                chain.push(cur.clone());
                if cur.len() <= 1 {
                    break;
                }
                let rem = pseudo_remainder(&prev, &cur);
                if rem.is_empty() {
                    break;
                }
                let next: Vec<BigInt> = primitive(rem).into_iter().map(|c| -c).collect();
                prev = cur;
                cur = next;
            }
        }
        let chain = chain
            .into_iter()
            .map(|c| Polynomial::new(c.into_iter().map(Dyadic::from).collect()))
            .collect();
        Ok(SturmChain { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn variations_at(&self, x: &Dyadic) -> usize {
        sign_variations(self.chain.iter().map(|p| p.eval(x).sign()))
    }

    /// Variations at `+inf` (`positive`) or `-inf`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        sign_variations(self.chain.iter().map(|p| {
            let d = p.degree().unwrap_or(0);
            let s = p.leading().map_or(Ordering::Equal, Scalar::sign);
            if !positive && d % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Variations just to the right (`right`) or left of `x`. Each chain
    /// element takes the sign of its first nonvanishing derivative at `x`,
    /// flipped on the left for odd order.
    pub fn variations_beside(&self, x: &Dyadic, right: bool) -> usize {
        sign_variations(self.chain.iter().map(|p| one_sided_sign(p, x, right)))
    }

    /// Distinct real roots in the open interval `(lo, hi)`; `None` bounds are infinite.
    pub fn count(&self, lo: Option<&Dyadic>, hi: Option<&Dyadic>) -> Result<usize> {
        if let (Some(a), Some(b)) = (lo, hi) {
            if a >= b {
                return Err(Error::InvalidInterval(format!(
                    "need a < b, got ({a}, {b})"
                )));
            }
        }
        let v_lo = match lo {
            None => self.variations_at_infinity(false),
            Some(a) => self.variations_beside(a, true),
        };
        let v_hi = match hi {
            None => self.variations_at_infinity(true),
            Some(b) => self.variations_beside(b, false),
        };
        Ok(v_lo.saturating_sub(v_hi))
    }
}

fn one_sided_sign(p: &Polynomial<Dyadic>, x: &Dyadic, right: bool) -> Ordering {
    let mut f = p.clone();
    let mut order = 0;
    while !f.is_zero() {
        let s = f.eval(x).sign();
        if s != Ordering::Equal {
            return if !right && order % 2 == 1 {
                s.reverse()
            } else {
                s
            };
        }
        f = f.derivative();
        order += 1;
    }
    Ordering::Equal
}

/// Exact number of distinct real roots of `poly` in `(a, b)`.
pub fn sturm_count(poly: &Polynomial<Dyadic>, a: &Dyadic, b: &Dyadic) -> Result<usize> {
    SturmChain::new(poly)?.count(Some(a), Some(b))
}

/// Like [`sturm_count`], with `None` standing for an infinite endpoint.
pub fn sturm_count_extended(
    poly: &Polynomial<Dyadic>,
    a: Option<&Dyadic>,
    b: Option<&Dyadic>,
) -> Result<usize> {
    SturmChain::new(poly)?.count(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Polynomial<Dyadic> {
        Polynomial::new(cs.iter().map(|&c| Dyadic::from_int(c)).collect())
    }

    fn dy(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            sturm_count(&p(&[-1, 0, 1]), &dy("-2"), &dy("2")).unwrap(),
            2
        );
        assert_eq!(
            sturm_count(&p(&[1, 0, 1]), &dy("-10"), &dy("10")).unwrap(),
            0
        );
        assert_eq!(
            sturm_count(&p(&[-6, 11, -6, 1]), &dy("2^-1"), &dy("5*2^-1")).unwrap(),
            2
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            sturm_count(&p(&[]), &dy("0"), &dy("1")),
            Err(Error::ZeroPolynomial)
        ));
        assert!(matches!(
            sturm_count(&p(&[1, 1]), &dy("1"), &dy("1")),
            Err(Error::InvalidInterval(_))
        ));
    }

    #[test]
    fn whole_line_and_multiple_roots() {
        // (x-1)^2 (x+2): two distinct roots
        let q = Polynomial::from_roots(&[dy("1"), dy("1"), dy("-2")]);
        assert_eq!(sturm_count_extended(&q, None, None).unwrap(), 2);
        assert_eq!(sturm_count_extended(&p(&[5]), None, None).unwrap(), 0);
        assert_eq!(
            sturm_count_extended(&p(&[0, 1]), None, Some(&dy("0"))).unwrap(),
            0
        );
    }

    #[test]
    fn endpoints_at_roots_are_excluded() {
        let q = p(&[-1, 0, 1]);
        assert_eq!(sturm_count(&q, &dy("-1"), &dy("1")).unwrap(), 0);
        assert_eq!(sturm_count(&q, &dy("-1"), &dy("2")).unwrap(), 1);
        assert_eq!(sturm_count(&q, &dy("-3"), &dy("1")).unwrap(), 1);
    }

    #[test]
    fn endpoint_root_with_close_neighbour() {
        let q = Polynomial::from_roots(&[dy("1"), dy("1") + dy("2^-80"), dy("-1")]);
        assert_eq!(sturm_count(&q, &dy("1"), &dy("2")).unwrap(), 1);
        assert_eq!(sturm_count(&q, &dy("-1"), &dy("1")).unwrap(), 0);
        assert_eq!(sturm_count(&q, &dy("-1"), &dy("2")).unwrap(), 2);
        // (x-1)^2 (x-3) with the double root on the boundary
        let q = Polynomial::from_roots(&[dy("1"), dy("1"), dy("3")]);
        assert_eq!(sturm_count(&q, &dy("1"), &dy("4")).unwrap(), 1);
        assert_eq!(sturm_count(&q, &dy("0"), &dy("1")).unwrap(), 0);
        assert_eq!(sturm_count(&q, &dy("1"), &dy("3")).unwrap(), 0);
    }

    #[test]
    fn dyadic_roots_and_fractions() {
        let roots = [dy("3*2^-7"), dy("-5*2^-3"), dy("1*2^-20"), dy("9")];
        let q = Polynomial::from_roots(&roots);
        assert_eq!(sturm_count_extended(&q, None, None).unwrap(), 4);
        assert_eq!(sturm_count(&q, &dy("0"), &dy("1")).unwrap(), 2);
    }
}

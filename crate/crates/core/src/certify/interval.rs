use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::dyadic::{Dyadic, Rounding};

/// A closed interval `[lo, hi]` with dyadic endpoints.
///
/// `+`, `-` and `*` are computed exactly; callers bound mantissa growth with
/// [`RigorousInterval::round_outward`].
#[derive(Clone, PartialEq, Eq)]
pub struct RigorousInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl RigorousInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        RigorousInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        RigorousInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::point(Dyadic::one())
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    /// Half the width.
    pub fn radius(&self) -> Dyadic {
        self.width().mul_pow2(-1)
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &RigorousInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn strict_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RigorousInterval) -> Self {
        RigorousInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &RigorousInterval) -> Self {
        RigorousInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        RigorousInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &RigorousInterval) -> Self {
        if self.is_point() {
            return other.scale(&self.lo);
        }
        if other.is_point() {
            return self.scale(&other.lo);
        }
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RigorousInterval { lo, hi }
    }

    /// Multiply by an exact scalar.
    pub fn scale(&self, c: &Dyadic) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            RigorousInterval { lo: b, hi: a }
        } else {
            RigorousInterval { lo: a, hi: b }
        }
    }

    /// Divide by a positive integer, rounding outward to `bits` bits.
    pub fn div_int(&self, q: u64, bits: u64) -> Self {
        assert!(q > 0);
        let q = Dyadic::new(q.into(), 0);
        RigorousInterval {
            lo: self.lo.div_rounded(&q, bits, Rounding::Down),
            hi: self.hi.div_rounded(&q, bits, Rounding::Up),
        }
    }

    /// Round endpoint mantissas to `bits` bits, away from the interior.
    pub fn round_outward(&self, bits: u64) -> Self {
        RigorousInterval {
            lo: self.lo.round_to_bits(bits, Rounding::Down),
            hi: self.hi.round_to_bits(bits, Rounding::Up),
        }
    }

    pub fn intersect(&self, other: &RigorousInterval) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RigorousInterval { lo, hi })
    }
}

impl fmt::Debug for RigorousInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

//! The scalar abstraction shared by exact and floating-point polynomials.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Zero};

use crate::dyadic::Dyadic;

/// Ring-like coefficient type: closed under `+`, `-`, `*`, ordered, and able
/// to represent small integers. Division is deliberately not required.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Sign relative to zero; NaN compares as `Equal`.
    fn sign(&self) -> Ordering {
        self.partial_cmp(&Self::zero()).unwrap_or(Ordering::Equal)
    }

    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("integer representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for i64 {}
impl Scalar for BigInt {}
impl Scalar for Dyadic {
    fn sign(&self) -> Ordering {
        self.signum()
    }
}

//! Exact dyadic rationals `mantissa * 2^exponent`.
//!
//! Ring operations (`+`, `-`, `*`) are exact. Division is only offered with an
//! explicit rounding direction and a target mantissa width, which is what the
//! interval code needs for outward rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

/// A dyadic rational in canonical form: the mantissa is odd, or the value is
/// zero with exponent 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// `2^exponent`.
    pub fn pow2(exponent: i64) -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent,
        }
    }

    /// Exact conversion of a finite float. Returns `None` for NaN and infinities.
    pub fn from_f64_exact(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let mut m = BigInt::from(mant);
        if negative {
            m = -m;
        }
        Some(Dyadic::new(m, exp))
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        if let Some(tz) = self.mantissa.trailing_zeros() {
            if tz > 0 {
                self.mantissa >>= tz;
                self.exponent += tz as i64;
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn signum(&self) -> Ordering {
        match self.mantissa.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Multiply by `2^shift` exactly.
    pub fn mul_pow2(&self, shift: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + shift,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Dyadic::one();
        }
        Dyadic {
            mantissa: num_traits::pow(self.mantissa.clone(), k as usize),
            exponent: self.exponent * k as i64,
        }
    }

    /// Exponent `e` of the smallest power of two with `2^e >= |self|`; `None` for zero.
    pub fn ceil_log2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let b = self.mantissa.bits() as i64;
        // |mantissa| is odd, so it is a power of two only when it equals 1
        let is_pow2 = self.mantissa.abs().is_one();
        Some(self.exponent + if is_pow2 { 0 } else { b })
    }

    /// Round the mantissa to at most `bits` significant bits in the given direction.
    pub fn round_to_bits(&self, bits: u64, dir: Rounding) -> Self {
        let have = self.mantissa.bits();
        if have <= bits {
            return self.clone();
        }
        let shift = have - bits;
        let divisor = BigInt::one() << shift;
        let m = match dir {
            Rounding::Down => self.mantissa.div_floor(&divisor),
            Rounding::Up => self.mantissa.div_ceil(&divisor),
        };
        Dyadic::new(m, self.exponent + shift as i64)
    }

    /// `self / other` rounded in direction `dir`, with roughly `bits` bits of
    /// relative precision. Panics on division by zero.
    pub fn div_rounded(&self, other: &Dyadic, bits: u64, dir: Rounding) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut num = self.mantissa.clone();
        let mut den = other.mantissa.clone();
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let grow = (bits + den.bits() + 1).saturating_sub(num.bits());
        num <<= grow;
        let q = match dir {
            Rounding::Down => num.div_floor(&den),
            Rounding::Up => num.div_ceil(&den),
        };
        Dyadic::new(q, self.exponent - other.exponent - grow as i64)
    }

    /// Nearest-ish double. Values out of range saturate to +-inf or 0.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (&self.mantissa >> s, self.exponent + s as i64)
        } else {
            (self.mantissa.clone(), self.exponent)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        scale_f64(mf, e)
    }

    /// Midpoint `(a + b) / 2`, exact.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).mul_pow2(-1)
    }
}

fn scale_f64(mut v: f64, mut e: i64) -> f64 {
    while e > 600 {
        v *= 2f64.powi(600);
        e -= 600;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -600 {
        v *= 2f64.powi(-600);
        e += 600;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }
}

impl FromPrimitive for Dyadic {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Dyadic::from_int(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Dyadic::new(BigInt::from(n), 0))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Dyadic::from_f64_exact(n)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Ordering::Equal {
            return Ordering::Equal;
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_ref(a: &Dyadic, b: &Dyadic) -> Dyadic {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let e = a.exponent.min(b.exponent);
    let ma = &a.mantissa << (a.exponent - e) as u64;
    let mb = &b.mantissa << (b.exponent - e) as u64;
    Dyadic::new(ma + mb, e)
}

fn mul_ref(a: &Dyadic, b: &Dyadic) -> Dyadic {
    if a.is_zero() || b.is_zero() {
        return Dyadic::zero();
    }
    // product of odd mantissas is odd
    Dyadic {
        mantissa: &a.mantissa * &b.mantissa,
        exponent: a.exponent + b.exponent,
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl<'a> $trait<&'a Dyadic> for &'a Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &'a Dyadic) -> Dyadic {
                $f(self, rhs)
            }
        }
        impl $trait<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                $f(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &'a Dyadic) -> Dyadic {
                $f(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Sub, sub, |a: &Dyadic, b: &Dyadic| add_ref(a, &-b));

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{})", self, self.to_f64())
    }
}

/// Accepts `M*2^E`, `2^E`, `-2^E`, and plain integers.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let t = s.trim();
        let parse_exp = |e: &str| e.trim().parse::<i64>().map_err(|_| bad());
        let parse_int = |m: &str| m.trim().parse::<BigInt>().map_err(|_| bad());
        if let Some((m, e)) = t.split_once('*') {
            let e = e.trim().strip_prefix("2^").ok_or_else(bad)?;
            return Ok(Dyadic::new(parse_int(m)?, parse_exp(e)?));
        }
        if let Some(e) = t.strip_prefix("2^") {
            return Ok(Dyadic::pow2(parse_exp(e)?));
        }
        if let Some(e) = t.strip_prefix("-2^") {
            return Ok(-Dyadic::pow2(parse_exp(e)?));
        }
        Ok(Dyadic::new(parse_int(t)?, 0))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

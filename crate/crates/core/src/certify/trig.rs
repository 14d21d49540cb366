//! Enclosures of `cos(k j pi / n)` and `sin(k j pi / n)`.
//!
//! The angle is reduced exactly (it is a rational multiple of pi) to the
//! octant `(0, pi/4]`, then evaluated by Taylor series in interval
//! arithmetic with an explicit tail bound.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::interval::RigorousInterval;
use crate::dyadic::Dyadic;

const GUARD_BITS: u64 = 16;

fn pi_cache() -> &'static Mutex<HashMap<u64, RigorousInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, RigorousInterval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Sum of `floor(S / (x^(2k+1) (2k+1)))` with alternating signs, and the number
/// of terms used.
fn atan_inv_scaled(x: u64, scale: &BigInt) -> (BigInt, u64) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, k)
}

/// An interval containing pi, of width at most `2^-bits`.
pub fn pi_enclosure(bits: u64) -> RigorousInterval {
    if let Some(hit) = pi_cache().lock().unwrap().get(&bits) {
        return hit.clone();
    }
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239). Each truncated term is off
    // by less than 2 units and each tail is below 2 units.
    let s = bits + 16;
    let scale = BigInt::one() << s;
    let (a5, k5) = atan_inv_scaled(5, &scale);
    let (a239, k239) = atan_inv_scaled(239, &scale);
    let approx = a5 * 16 - a239 * 4;
    let err = BigInt::from(16 * (2 * k5 + 2) + 4 * (2 * k239 + 2));
    let pi = RigorousInterval::new(
        Dyadic::new(&approx - &err, -(s as i64)),
        Dyadic::new(&approx + &err, -(s as i64)),
    );
    pi_cache().lock().unwrap().insert(bits, pi.clone());
    pi
}

/// Taylor enclosures of `(cos x, sin x)` for `x` in `(0, 1)`.
fn taylor_cos_sin(x: &RigorousInterval, bits: u64) -> (RigorousInterval, RigorousInterval) {
    let threshold = Dyadic::pow2(-(bits as i64));
    let mut cos = RigorousInterval::one();
    let mut sin = RigorousInterval::zero();
    let mut term = RigorousInterval::one();
    let mut i = 1u64;
    loop {
        term = term.mul(x).div_int(i, bits).round_outward(bits);
        if term.hi() < &threshold {
            break;
        }
        let signed = if (i / 2).is_multiple_of(2) {
            term.clone()
        } else {
            term.neg()
        };
        if i.is_multiple_of(2) {
            cos = cos.add(&signed).round_outward(bits);
        } else {
            sin = sin.add(&signed).round_outward(bits);
        }
        i += 1;
    }
    // terms decrease for x < 1, so both tails are bounded by the first omitted term
    let tail = RigorousInterval::new(-term.hi(), term.hi().clone());
    (cos.add(&tail), sin.add(&tail))
}

fn exact(c: i64, s: i64) -> (RigorousInterval, RigorousInterval) {
    (
        RigorousInterval::point(Dyadic::from_int(c)),
        RigorousInterval::point(Dyadic::from_int(s)),
    )
}

/// Enclosures `(cos, sin)` of the angle `k j pi / n`, each of width at most
/// `2^(1 - precision_bits)`. Angles that are multiples of `pi/2` come back as
/// exact points.
pub fn trig_enclose(
    k: u64,
    j: u64,
    n: u64,
    precision_bits: u32,
) -> (RigorousInterval, RigorousInterval) {
    assert!(n >= 1, "trig_enclose needs n >= 1");
    let n128 = n as u128;
    let t = (k as u128 * j as u128) % (2 * n128);
    if (2 * t).is_multiple_of(n128) {
        return match (2 * t) / n128 {
            0 => exact(1, 0),
            1 => exact(0, 1),
            2 => exact(-1, 0),
            _ => exact(0, -1),
        };
    }

    // angle = pi * p / den with den = 4n
    let den = 4 * n128;
    let mut p = 4 * t;
    let mut cos_neg = false;
    let mut sin_neg = false;
    if p >= den {
        p -= den;
        cos_neg = !cos_neg;
        sin_neg = !sin_neg;
    }
    if 2 * p > den {
        p = den - p;
        cos_neg = !cos_neg;
    }
    let swap = 4 * p > den;
    if swap {
        p = den / 2 - p;
    }

    let bits = precision_bits as u64 + GUARD_BITS;
    let pi = pi_enclosure(bits + 8);
    let numer = Dyadic::from(BigInt::from(p));
    let angle = pi.scale(&numer);
    let angle = RigorousInterval::new(
        angle.lo().div_rounded(
            &Dyadic::from(BigInt::from(den)),
            bits,
            crate::dyadic::Rounding::Down,
        ),
        angle.hi().div_rounded(
            &Dyadic::from(BigInt::from(den)),
            bits,
            crate::dyadic::Rounding::Up,
        ),
    );
    let (mut c, mut s) = taylor_cos_sin(&angle, bits);
    if swap {
        std::mem::swap(&mut c, &mut s);
    }
    if cos_neg {
        c = c.neg();
    }
    if sin_neg {
        s = s.neg();
    }
    let unit = RigorousInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1));
    let c = c.intersect(&unit).expect("cos enclosure meets [-1, 1]");
    let s = s.intersect(&unit).expect("sin enclosure meets [-1, 1]");
    (c, s)
}

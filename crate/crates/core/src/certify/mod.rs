//! Rigorous numerics: interval evaluation of line restrictions, certified
//! signs, sign-alternation lower bounds, exact Sturm counting and Descartes
//! bounds.
//!
//! The lower-bound argument is the intermediate value theorem: if every
//! polynomial consistent with the coefficient enclosures is certified
//! positive at `a` and negative at `b` (or vice versa), each of them has a
//! zero in `(a, b)`. Disjoint brackets give disjoint zeros.

pub mod descartes;
pub mod interval;
pub mod sturm;
pub mod trig;

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::dyadic::Dyadic;
use crate::error::{param, Result};
use crate::instance::LineRestriction;
use interval::RigorousInterval;

pub use descartes::{
    descartes_positive_bound, family_upper_bound, sign_count_identity, FamilyBounds,
};
pub use sturm::{sturm_count, sturm_count_extended, SturmChain};
pub use trig::trig_enclose;

/// Starting precision for certified sign refinement.
pub const BASE_PRECISION_BITS: u32 = 64;
/// Default cap on the trig precision used by certification.
pub const DEFAULT_MAX_PRECISION_BITS: u32 = 4096;

/// A sign that is either proven or explicitly left open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifiedSign {
    Negative,
    Positive,
    /// The evaluation interval still contained zero; carries its width.
    Undetermined(Dyadic),
}

impl CertifiedSign {
    pub fn symbol(&self) -> &'static str {
        match self {
            CertifiedSign::Negative => "-",
            CertifiedSign::Positive => "+",
            CertifiedSign::Undetermined(_) => "?",
        }
    }

    pub fn strict(&self) -> Option<Ordering> {
        match self {
            CertifiedSign::Negative => Some(Ordering::Less),
            CertifiedSign::Positive => Some(Ordering::Greater),
            CertifiedSign::Undetermined(_) => None,
        }
    }

    pub fn is_determined(&self) -> bool {
        self.strict().is_some()
    }
}

impl fmt::Display for CertifiedSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

fn working_bits(restriction: &LineRestriction) -> u64 {
    restriction.precision_bits().max(BASE_PRECISION_BITS) as u64 + 32
}

/// Interval Horner evaluation. The result contains `g(r)` for every
/// coefficient vector inside the stored enclosures. Point restrictions are
/// evaluated exactly.
pub fn interval_eval(restriction: &LineRestriction, r: &Dyadic) -> RigorousInterval {
    let exact = restriction.is_exact();
    let bits = working_bits(restriction);
    let mut acc = RigorousInterval::zero();
    for c in restriction.coefficients().iter().rev() {
        acc = acc.scale(r).add(c);
        if !exact {
            acc = acc.round_outward(bits);
        }
    }
    acc
}

/// Certify the sign of the restriction at `r`, doubling the trig precision
/// until the enclosure excludes zero or `max_precision_bits` is reached.
pub fn certified_sign(
    restriction: &LineRestriction,
    r: &Dyadic,
    max_precision_bits: u32,
) -> CertifiedSign {
    let mut current = Cow::Borrowed(restriction);
    loop {
        let value = interval_eval(&current, r);
        match value.strict_sign() {
            Some(Ordering::Greater) => return CertifiedSign::Positive,
            Some(Ordering::Less) => return CertifiedSign::Negative,
            _ => {}
        }
        if current.is_exact() {
            return CertifiedSign::Undetermined(value.width());
        }
        let next = current
            .precision_bits()
            .max(BASE_PRECISION_BITS / 2)
            .saturating_mul(2);
        if next > max_precision_bits {
            return CertifiedSign::Undetermined(value.width());
        }
        match current.refined(next) {
            Some(finer) => current = Cow::Owned(finer),
            None => return CertifiedSign::Undetermined(value.width()),
        }
    }
}

/// Number of adjacent sample pairs with opposite strict signs. When
/// `split_at_origin` is set, pairs whose closed bracket contains `0` are not
/// counted, so a zero at the origin is never attributed to the line.
pub fn count_alternations(
    samples: &[Dyadic],
    signs: &[CertifiedSign],
    split_at_origin: bool,
) -> usize {
    samples
        .windows(2)
        .zip(signs.windows(2))
        .filter(|(x, s)| {
            if split_at_origin && !x[0].is_positive() && !x[1].is_negative() {
                return false;
            }
            matches!(
                (s[0].strict(), s[1].strict()),
                (Some(a), Some(b)) if a != b
            )
        })
        .count()
}

pub(crate) fn check_increasing(samples: &[Dyadic]) -> Result<()> {
    if samples.windows(2).any(|w| w[0] >= w[1]) {
        return Err(param("samples must be strictly increasing"));
    }
    Ok(())
}

/// Rigorous lower bound on the number of zeros in `(min samples, max samples)`
/// of every polynomial consistent with the restriction's enclosures.
pub fn sign_change_lower_bound(
    restriction: &LineRestriction,
    samples: &[Dyadic],
    max_precision_bits: u32,
) -> Result<usize> {
    check_increasing(samples)?;
    let signs: Vec<CertifiedSign> = samples
        .iter()
        .map(|r| certified_sign(restriction, r, max_precision_bits))
        .collect();
    Ok(count_alternations(samples, &signs, false))
}

/// True when the sample list avoids `r = 0`.
pub(crate) fn avoids_origin(samples: &[Dyadic]) -> bool {
    samples.iter().all(|s| !s.is_zero())
}

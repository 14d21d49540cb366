//! The harmonic polynomial `h(z) = eps z^n + q(z) + conj(q(z))` and its
//! restrictions to the `n` lines through the origin on which `Im z^n = 0`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::certify::interval::RigorousInterval;
use crate::certify::trig::trig_enclose;
use crate::dyadic::{Dyadic, Rounding};
use crate::error::{param, Error, Result};
use crate::poly::{complex_pow, ComplexPolynomial, Polynomial};

/// `(n, m, eps, q)` with `n > m >= 1`, `eps > 0` and `deg q = m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct WilmshurstInstance {
    n: usize,
    m: usize,
    epsilon: Dyadic,
    q: ComplexPolynomial<Dyadic>,
}

#[derive(Deserialize)]
struct RawInstance {
    n: usize,
    m: usize,
    epsilon: Dyadic,
    q: ComplexPolynomial<Dyadic>,
}

impl TryFrom<RawInstance> for WilmshurstInstance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Self> {
        WilmshurstInstance::new(raw.n, raw.m, raw.epsilon, raw.q)
    }
}

impl WilmshurstInstance {
    pub fn new(n: usize, m: usize, epsilon: Dyadic, q: ComplexPolynomial<Dyadic>) -> Result<Self> {
        if m < 1 {
            return Err(param("m must be at least 1"));
        }
        if n <= m {
            return Err(param(format!("need n > m, got n = {n}, m = {m}")));
        }
        if !epsilon.is_positive() {
            return Err(param(format!("epsilon must be positive, got {epsilon}")));
        }
        if q.coeffs().len() != m + 1 || q.degree() != Some(m) {
            return Err(param(format!(
                "q must have exactly {} coefficients with a nonzero leading one",
                m + 1
            )));
        }
        Ok(WilmshurstInstance { n, m, epsilon, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn epsilon(&self) -> &Dyadic {
        &self.epsilon
    }

    pub fn q(&self) -> &ComplexPolynomial<Dyadic> {
        &self.q
    }

    pub fn with_epsilon(&self, epsilon: Dyadic) -> Result<Self> {
        WilmshurstInstance::new(self.n, self.m, epsilon, self.q.clone())
    }

    /// `h(0) = 2 a_0` vanishes exactly.
    pub fn origin_is_zero(&self) -> bool {
        self.q.coeffs()[0].0.is_zero()
    }
}

/// `(Re h(z), Im h(z))` at `z = re + i im`, exactly.
pub fn eval_harmonic(inst: &WilmshurstInstance, z: (&Dyadic, &Dyadic)) -> (Dyadic, Dyadic) {
    let (zr, zi) = complex_pow(z.0, z.1, inst.n as u32);
    let (qr, _) = inst.q.eval(z.0, z.1);
    let re = &inst.epsilon * &zr + qr.mul_pow2(1);
    let im = &inst.epsilon * &zi;
    (re, im)
}

/// `g_j(r) = eps r^n + f_j(r)` with interval coefficients, where
/// `f_j(r) = 2 sum_k (-1)^j [a_k cos(k theta_j) - b_k sin(k theta_j)] r^k`
/// and `theta_j = j pi / n`.
#[derive(Debug, Clone)]
pub struct LineRestriction {
    j: usize,
    n: usize,
    coefficients: Vec<RigorousInterval>,
    precision_bits: u32,
    source: Option<Arc<WilmshurstInstance>>,
}

impl LineRestriction {
    /// A restriction with no backing instance; it cannot be refined.
    pub fn from_intervals(coefficients: Vec<RigorousInterval>) -> Self {
        let n = coefficients.len().saturating_sub(1);
        LineRestriction {
            j: 0,
            n,
            coefficients,
            precision_bits: 0,
            source: None,
        }
    }

    pub fn from_polynomial(poly: &Polynomial<Dyadic>) -> Self {
        Self::from_intervals(
            poly.coeffs()
                .iter()
                .cloned()
                .map(RigorousInterval::point)
                .collect(),
        )
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// The angle `theta_j = j pi / n` as the pair `(j, n)`.
    pub fn theta(&self) -> (usize, usize) {
        (self.j, self.n)
    }

    pub fn coefficients(&self) -> &[RigorousInterval] {
        &self.coefficients
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn source(&self) -> Option<&WilmshurstInstance> {
        self.source.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.coefficients.iter().all(RigorousInterval::is_point)
    }

    /// The same line re-enclosed at a higher precision, if there is a source
    /// instance to rebuild from.
    pub fn refined(&self, precision_bits: u32) -> Option<LineRestriction> {
        let src = self.source.as_ref()?;
        Some(restrict_shared(src.clone(), self.j, precision_bits))
    }

    pub fn midpoint_polynomial(&self) -> Polynomial<Dyadic> {
        Polynomial::new(
            self.coefficients
                .iter()
                .map(RigorousInterval::midpoint)
                .collect(),
        )
    }

    /// The constant coefficient is exactly zero, so every consistent
    /// polynomial vanishes at `r = 0`.
    pub fn vanishes_at_origin(&self) -> bool {
        self.coefficients
            .first()
            .is_none_or(|c| c.is_point() && c.lo().is_zero())
    }

    /// Cauchy bound valid for every polynomial consistent with the enclosures:
    /// `1 + max_k mag(c_k) / mig(c_d)`.
    pub fn cauchy_bound(&self) -> Result<Dyadic> {
        let (lead, rest) = self
            .coefficients
            .split_last()
            .ok_or(Error::ZeroPolynomial)?;
        if lead.contains_zero() || rest.is_empty() {
            return Err(Error::Degenerate(
                "leading coefficient enclosure contains zero".into(),
            ));
        }
        let max = rest
            .iter()
            .map(RigorousInterval::mag)
            .max()
            .unwrap_or_else(Dyadic::zero);
        Ok(Dyadic::one() + max.div_rounded(&lead.mig(), 64, Rounding::Up))
    }
}

fn restrict_shared(
    inst: Arc<WilmshurstInstance>,
    j: usize,
    precision_bits: u32,
) -> LineRestriction {
    let n = inst.n;
    let sign = if j.is_multiple_of(2) {
        Dyadic::from_int(2)
    } else {
        Dyadic::from_int(-2)
    };
    let mut coefficients = Vec::with_capacity(n + 1);
    for (k, (a, b)) in inst.q.coeffs().iter().enumerate() {
        let (cos, sin) = trig_enclose(k as u64, j as u64, n as u64, precision_bits);
        let alpha = cos.scale(a).sub(&sin.scale(b));
        coefficients.push(alpha.scale(&sign));
    }
    coefficients.resize(n, RigorousInterval::zero());
    coefficients.push(RigorousInterval::point(inst.epsilon.clone()));
    LineRestriction {
        j,
        n,
        coefficients,
        precision_bits,
        source: Some(inst),
    }
}

/// Restrict `Re h` to line `j`, normalised by `(-1)^j` so the top coefficient is `eps`.
pub fn restrict_to_line(
    inst: &WilmshurstInstance,
    j: usize,
    precision_bits: u32,
) -> Result<LineRestriction> {
    if j >= inst.n {
        return Err(param(format!("line index {j} out of range 0..{}", inst.n)));
    }
    if precision_bits == 0 {
        return Err(param("precision_bits must be positive"));
    }
    Ok(restrict_shared(Arc::new(inst.clone()), j, precision_bits))
}

//! Per-line zero counting and certificate assembly.
//!
//! Every zero of `h` lies on one of the `n` lines `Im z^n = 0`, and distinct
//! lines only meet at the origin. Each line is counted with a rigorous
//! sign-alternation lower bound; the origin is handled separately so it is
//! counted at most once.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::certify::{
    avoids_origin, certified_sign, check_increasing, count_alternations, CertifiedSign,
    BASE_PRECISION_BITS,
};
use crate::dyadic::{Dyadic, Rounding};
use crate::error::{param, Error, Result};
use crate::instance::{restrict_to_line, LineRestriction, WilmshurstInstance};
use crate::poly::ComplexPolynomial;
use crate::roots::float_root_estimate;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct LineCount {
    pub j: usize,
    pub certified_lower: usize,
    /// Approximate real roots found in floating point, under the same origin
    /// convention as `certified_lower` (0 if the grid fallback was used).
    pub float_estimate: usize,
    pub samples_used: Vec<Dyadic>,
    pub signs: Vec<CertifiedSign>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateMetadata {
    pub seed: Option<u64>,
    pub version: String,
    pub precision_bits: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValenceCertificate {
    pub instance: WilmshurstInstance,
    pub per_line: Vec<LineCount>,
    pub origin_is_zero: bool,
    pub total_certified: usize,
    pub metadata: CertificateMetadata,
}

impl ValenceCertificate {
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.metadata.seed = seed;
        self
    }

    /// Total implied by the floating-point root estimates.
    pub fn float_total(&self) -> usize {
        self.per_line
            .iter()
            .map(|l| l.float_estimate)
            .sum::<usize>()
            + usize::from(self.origin_is_zero)
    }
}

fn grid_samples(bound: &Dyadic, points: usize) -> Vec<Dyadic> {
    let span = bound.mul_pow2(1);
    let steps = Dyadic::from_int(points as i64 - 1);
    (0..points)
        .map(|i| {
            let offset =
                (&span * &Dyadic::from_int(i as i64)).div_rounded(&steps, 64, Rounding::Down);
            &offset - bound
        })
        .collect()
}

fn samples_from_roots(bound: &Dyadic, roots: &[f64], origin: bool) -> Vec<Dyadic> {
    let bf = bound.to_f64();
    let mut knots: Vec<f64> = roots.to_vec();
    if origin {
        knots.push(0.0);
    }
    knots.push(-bf);
    knots.push(bf);
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    knots.dedup();

    let neg_bound = -bound;
    let mut samples = vec![neg_bound.clone(), bound.clone()];
    for w in knots.windows(2) {
        let mid = w[0] + (w[1] - w[0]) / 2.0;
        if let Some(d) = Dyadic::from_f64_exact(mid) {
            if d > neg_bound && &d < bound {
                samples.push(d);
            }
        }
    }
    samples.sort();
    samples.dedup();
    samples.retain(|s| !s.is_zero());
    samples
}

fn deflate_origin(restriction: &LineRestriction) -> LineRestriction {
    let coeffs = restriction.coefficients();
    let skip = coeffs
        .iter()
        .take_while(|c| c.is_point() && c.lo().is_zero())
        .count()
        .min(coeffs.len().saturating_sub(1));
    LineRestriction::from_intervals(coeffs[skip..].to_vec())
}

/// Certified lower bound and float estimate for the real zeros of one line
/// restriction, a zero at `r = 0` included.
pub fn count_line_zeros(
    restriction: &LineRestriction,
    max_precision_bits: u32,
) -> Result<LineCount> {
    count_line(restriction, max_precision_bits, false)
}

/// As [`count_line_zeros`], but a zero at the origin is never counted: sample
/// pairs bracketing `r = 0` contribute nothing when the restriction vanishes there.
pub fn count_line_zeros_off_origin(
    restriction: &LineRestriction,
    max_precision_bits: u32,
) -> Result<LineCount> {
    count_line(restriction, max_precision_bits, true)
}

fn count_line(
    restriction: &LineRestriction,
    max_precision_bits: u32,
    exclude_origin: bool,
) -> Result<LineCount> {
    let bound = restriction.cauchy_bound()?;
    let split = exclude_origin && restriction.vanishes_at_origin();
    let estimate = if split {
        float_root_estimate(&deflate_origin(restriction))
            .map(|roots| roots.into_iter().filter(|r| *r != 0.0).collect::<Vec<_>>())
    } else {
        float_root_estimate(restriction)
    };
    let (samples, float_estimate) = match estimate {
        Ok(roots) => (samples_from_roots(&bound, &roots, split), roots.len()),
        Err(_) => {
            let degree = restriction.coefficients().len().saturating_sub(1);
            let mut grid = grid_samples(&bound, 4 * (degree + 1));
            grid.retain(|s| !s.is_zero());
            (grid, 0)
        }
    };
    debug_assert!(check_increasing(&samples).is_ok() && avoids_origin(&samples));
    let signs: Vec<CertifiedSign> = samples
        .iter()
        .map(|r| certified_sign(restriction, r, max_precision_bits))
        .collect();
    let certified_lower = count_alternations(&samples, &signs, split);
    Ok(LineCount {
        j: restriction.j(),
        certified_lower,
        float_estimate,
        samples_used: samples,
        signs,
    })
}

fn check_upper_bounds(inst: &WilmshurstInstance, total: usize) -> Result<()> {
    let (n, m) = (inst.n(), inst.m());
    if total > n * n {
        return Err(Error::Invariant(format!(
            "certified total {total} exceeds n^2 = {}",
            n * n
        )));
    }
    if total > n * (m + 2) {
        return Err(Error::Invariant(format!(
            "certified total {total} exceeds n(m+2) = {}",
            n * (m + 2)
        )));
    }
    Ok(())
}

/// Count all `n` lines and assemble a certificate.
pub fn certified_valence(
    inst: &WilmshurstInstance,
    max_precision_bits: u32,
) -> Result<ValenceCertificate> {
    if max_precision_bits == 0 {
        return Err(param("precision cap must be positive"));
    }
    let start = BASE_PRECISION_BITS.min(max_precision_bits);
    let per_line = (0..inst.n())
        .map(|j| {
            let g = restrict_to_line(inst, j, start)?;
            count_line_zeros_off_origin(&g, max_precision_bits)
        })
        .collect::<Result<Vec<_>>>()?;
    let origin_is_zero = inst.origin_is_zero();
    let total =
        per_line.iter().map(|l| l.certified_lower).sum::<usize>() + usize::from(origin_is_zero);
    check_upper_bounds(inst, total)?;
    Ok(ValenceCertificate {
        instance: inst.clone(),
        per_line,
        origin_is_zero,
        total_certified: total,
        metadata: CertificateMetadata {
            seed: None,
            version: VERSION.to_string(),
            precision_bits: max_precision_bits,
        },
    })
}

/// `2^(-10 t)` for `t = 1..=6`.
pub fn default_schedule() -> Vec<Dyadic> {
    (1..=6).map(|t| Dyadic::pow2(-10 * t)).collect()
}

/// Evaluate every epsilon in `schedule`; keep the largest certified total,
/// preferring the larger epsilon on ties.
pub fn choose_epsilon(
    q: &ComplexPolynomial<Dyadic>,
    n: usize,
    schedule: &[Dyadic],
    max_precision_bits: u32,
) -> Result<(Dyadic, ValenceCertificate)> {
    if schedule.is_empty() {
        return Err(param("epsilon schedule is empty"));
    }
    if let Some(bad) = schedule.iter().find(|e| !e.is_positive()) {
        return Err(param(format!(
            "schedule entries must be positive, got {bad}"
        )));
    }
    let m = q
        .degree()
        .ok_or_else(|| param("q is the zero polynomial"))?;
    let mut best: Option<(Dyadic, ValenceCertificate)> = None;
    for eps in schedule {
        let inst = WilmshurstInstance::new(n, m, eps.clone(), q.clone())?;
        let cert = certified_valence(&inst, max_precision_bits)?;
        let better = match &best {
            None => true,
            Some((best_eps, best_cert)) => {
                cert.total_certified > best_cert.total_certified
                    || (cert.total_certified == best_cert.total_certified && eps > best_eps)
            }
        };
        if better {
            best = Some((eps.clone(), cert));
        }
    }
    Ok(best.expect("schedule is nonempty"))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineJson {
    j: usize,
    samples: Vec<Dyadic>,
    signs: Vec<String>,
    lower: usize,
    #[serde(default)]
    float_estimate: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    n: usize,
    m: usize,
    epsilon: Dyadic,
    q: ComplexPolynomial<Dyadic>,
    lines: Vec<LineJson>,
    origin_is_zero: bool,
    total: usize,
    seed: Option<u64>,
    version: String,
    precision_bits: u32,
}

fn parse_sign(s: &str) -> Result<CertifiedSign> {
    match s {
        "+" => Ok(CertifiedSign::Positive),
        "-" => Ok(CertifiedSign::Negative),
        "?" => Ok(CertifiedSign::Undetermined(Dyadic::zero())),
        other => Err(Error::Schema(format!("unknown sign symbol {other:?}"))),
    }
}

impl ValenceCertificate {
    fn to_json_struct(&self) -> CertificateJson {
        CertificateJson {
            n: self.instance.n(),
            m: self.instance.m(),
            epsilon: self.instance.epsilon().clone(),
            q: self.instance.q().clone(),
            lines: self
                .per_line
                .iter()
                .map(|l| LineJson {
                    j: l.j,
                    samples: l.samples_used.clone(),
                    signs: l.signs.iter().map(|s| s.symbol().to_string()).collect(),
                    lower: l.certified_lower,
                    float_estimate: l.float_estimate,
                })
                .collect(),
            origin_is_zero: self.origin_is_zero,
            total: self.total_certified,
            seed: self.metadata.seed,
            version: self.metadata.version.clone(),
            precision_bits: self.metadata.precision_bits,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_struct()).expect("certificate serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_struct()).expect("certificate serializes")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let raw: CertificateJson =
            serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_json_struct(raw)
    }

    /// Parse a certificate file. Any structural problem is a schema error.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_json_struct(raw)
    }

    fn from_json_struct(raw: CertificateJson) -> Result<Self> {
        let instance = WilmshurstInstance::new(raw.n, raw.m, raw.epsilon, raw.q)
            .map_err(|e| Error::Schema(format!("invalid instance: {e}")))?;
        if raw.precision_bits == 0 {
            return Err(Error::Schema("precision_bits must be positive".into()));
        }
        let per_line = raw
            .lines
            .into_iter()
            .map(|l| {
                if l.samples.len() != l.signs.len() {
                    return Err(Error::Schema(format!(
                        "line {}: {} samples but {} signs",
                        l.j,
                        l.samples.len(),
                        l.signs.len()
                    )));
                }
                let signs = l
                    .signs
                    .iter()
                    .map(|s| parse_sign(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(LineCount {
                    j: l.j,
                    certified_lower: l.lower,
                    float_estimate: l.float_estimate,
                    samples_used: l.samples,
                    signs,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ValenceCertificate {
            instance,
            per_line,
            origin_is_zero: raw.origin_is_zero,
            total_certified: raw.total,
            metadata: CertificateMetadata {
                seed: raw.seed,
                version: raw.version,
                precision_bits: raw.precision_bits,
            },
        })
    }
}

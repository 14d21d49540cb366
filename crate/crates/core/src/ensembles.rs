//! Real and complex Kostlan ensembles, and the Edelman–Kostlan expected
//! zero count.
//!
//! Sampling uses ChaCha8 keyed by `seed` with `stream_index` as the ChaCha
//! stream, so every trial owns an independent, reproducible substream no
//! matter how trials are scheduled. Gaussians are drawn in `f64` and the
//! resulting doubles are taken as exact dyadic coefficients.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dyadic::Dyadic;
use crate::error::{param, Error, Result};
use crate::poly::{ComplexPolynomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KostlanSampler {
    pub m: usize,
    pub seed: u64,
    pub stream_index: u64,
}

impl KostlanSampler {
    pub fn new(m: usize, seed: u64, stream_index: u64) -> Self {
        KostlanSampler {
            m,
            seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        stream_rng(self.seed, self.stream_index)
    }
}

/// The generator for substream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `C(m, k)` as a double. Exact up to the point where it exceeds 2^53.
pub fn binomial(m: usize, k: usize) -> f64 {
    if k > m {
        return 0.0;
    }
    let k = k.min(m - k);
    if m <= 120 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (m - i) as u128 / (i + 1) as u128;
        }
        acc as f64
    } else {
        let ln: f64 = (0..k)
            .map(|i| ((m - i) as f64).ln() - ((i + 1) as f64).ln())
            .sum();
        ln.exp()
    }
}

/// Standard deviations `sqrt(C(m, k) * scale)` for `k = 0..=m`.
pub fn coefficient_scales(m: usize, variance_factor: f64) -> Vec<f64> {
    (0..=m)
        .map(|k| (binomial(m, k) * variance_factor).sqrt())
        .collect()
}

fn snap(v: f64) -> Dyadic {
    Dyadic::from_f64_exact(v).expect("gaussian sample is finite")
}

/// `f(x) = sum alpha_k x^k` with `alpha_k ~ N(0, C(m, k))`.
pub fn sample_real_kostlan(sampler: &KostlanSampler) -> Result<Polynomial<Dyadic>> {
    if sampler.m < 1 {
        return Err(param("Kostlan degree m must be at least 1"));
    }
    let mut rng = sampler.rng();
    let coeffs = coefficient_scales(sampler.m, 1.0)
        .into_iter()
        .map(|sd| {
            let z: f64 = rng.sample(StandardNormal);
            snap(sd * z)
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

/// `q(z) = sum c_k z^k` with `c_k = a_k + i b_k`, `a_k, b_k ~ N(0, C(m, k) / 2)`.
/// The leading pair is redrawn in the (measure-zero) event that it snaps to zero.
pub fn sample_complex_kostlan(sampler: &KostlanSampler) -> Result<ComplexPolynomial<Dyadic>> {
    if sampler.m < 1 {
        return Err(param("Kostlan degree m must be at least 1"));
    }
    let mut rng = sampler.rng();
    let scales = coefficient_scales(sampler.m, 0.5);
    let mut coeffs: Vec<(Dyadic, Dyadic)> = scales
        .iter()
        .map(|sd| {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            (snap(sd * a), snap(sd * b))
        })
        .collect();
    let sd = scales[sampler.m];
    while coeffs[sampler.m].0.is_zero() && coeffs[sampler.m].1.is_zero() {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        coeffs[sampler.m] = (snap(sd * a), snap(sd * b));
    }
    Ok(ComplexPolynomial::new(coeffs))
}

/// Expected number of real zeros in `(a, b)` of a degree-`m` real Kostlan
/// polynomial: `sqrt(m) / pi * (atan b - atan a)`. Infinite endpoints are allowed.
pub fn ek_expected_count(m: usize, a: f64, b: f64) -> Result<f64> {
    if m < 1 {
        return Err(param("m must be at least 1"));
    }
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::InvalidInterval(format!(
            "need a < b, got ({a}, {b})"
        )));
    }
    Ok((m as f64).sqrt() * ((b.atan() - a.atan()) / std::f64::consts::PI))
}

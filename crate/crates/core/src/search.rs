//! Witness search: random restarts over the complex Kostlan ensemble with an
//! optional hill-climbing pass, plus independent re-verification of
//! certificates.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::json;

use crate::certify::{certified_sign, check_increasing, count_alternations, BASE_PRECISION_BITS};
use crate::certify::{CertifiedSign, DEFAULT_MAX_PRECISION_BITS};
use crate::dyadic::Dyadic;
use crate::ensembles::{binomial, sample_complex_kostlan, stream_rng, KostlanSampler};
use crate::error::{param, Result};
use crate::instance::{restrict_to_line, WilmshurstInstance};
use crate::poly::ComplexPolynomial;
use crate::valence::{certified_valence, choose_epsilon, default_schedule, ValenceCertificate};

/// Trials evaluated concurrently per round of the restart loop.
const CHUNK: usize = 16;
/// ChaCha stream reserved for refinement; restart trials use streams `0..budget`.
const REFINE_STREAM: u64 = u64::MAX;

fn check_family(n: usize, m: usize) -> Result<()> {
    if m < 1 || n <= m {
        return Err(param(format!("need n > m >= 1, got n = {n}, m = {m}")));
    }
    Ok(())
}

/// `ceil(n * sqrt(m))`, computed as the least `v` with `v^2 >= n^2 m`.
pub fn target_valence(n: usize, m: usize) -> Result<u64> {
    check_family(n, m)?;
    let square = (n as u128) * (n as u128) * (m as u128);
    let root = square.isqrt();
    let v = if root * root == square {
        root
    } else {
        root + 1
    };
    Ok(v as u64)
}

/// `3n - 2 + m(m - 1)`.
pub fn wilmshurst_conjecture_value(n: usize, m: usize) -> Result<u64> {
    check_family(n, m)?;
    let (n, m) = (n as u64, m as u64);
    Ok(3 * n - 2 + m * (m - 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub budget_trials: usize,
    pub seed: u64,
    pub schedule: Vec<Dyadic>,
    pub max_precision_bits: u32,
    /// Hill-climbing steps applied to the incumbent when restarts miss the target.
    pub refine_steps: usize,
}

impl SearchConfig {
    pub fn new(budget_trials: usize, seed: u64) -> Self {
        SearchConfig {
            budget_trials,
            seed,
            schedule: default_schedule(),
            max_precision_bits: DEFAULT_MAX_PRECISION_BITS,
            refine_steps: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub target: u64,
    pub best_certificate: ValenceCertificate,
    /// Index of the restart trial that produced the incumbent.
    pub best_trial: usize,
    pub trials_used: usize,
    pub improvement_steps: usize,
    pub achieved: bool,
    pub seed: u64,
    pub budget_trials: usize,
}

impl SearchReport {
    pub fn total(&self) -> usize {
        self.best_certificate.total_certified
    }

    /// `n * m`, reported but never required.
    pub fn stretch_target(&self) -> u64 {
        (self.best_certificate.instance.n() * self.best_certificate.instance.m()) as u64
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let inst = &self.best_certificate.instance;
        let (n, m) = (inst.n(), inst.m());
        json!({
            "n": n,
            "m": m,
            "seed": self.seed,
            "budget_trials": self.budget_trials,
            "target": self.target,
            "achieved": self.achieved,
            "total": self.total(),
            "trials_used": self.trials_used,
            "best_trial": self.best_trial,
            "improvement_steps": self.improvement_steps,
            "comparison": {
                "wilmshurst": wilmshurst_conjecture_value(n, m).expect("valid family"),
                "bezout": (n * n) as u64,
                "descartes": (n * (m + 2)) as u64,
                "stretch": self.stretch_target(),
                "stretch_reached": self.total() as u64 >= self.stretch_target(),
            },
            "certificate": self.best_certificate.to_json_value(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }
}

fn restart_trial(
    n: usize,
    m: usize,
    config: &SearchConfig,
    t: usize,
) -> Result<ValenceCertificate> {
    let q = sample_complex_kostlan(&KostlanSampler::new(m, config.seed, t as u64))?;
    let (_, cert) = choose_epsilon(&q, n, &config.schedule, config.max_precision_bits)?;
    Ok(cert.with_seed(Some(config.seed)))
}

/// Random restarts until a certificate reaches `ceil(n sqrt(m))` or the
/// budget runs out, then optional refinement of the incumbent. The result
/// depends only on the parameters, not on scheduling: the incumbent is the
/// lowest-index maximum among trials up to the first hit.
pub fn hunt_witness(n: usize, m: usize, config: &SearchConfig) -> Result<SearchReport> {
    let target = target_valence(n, m)?;
    if config.budget_trials < 1 {
        return Err(param("search budget must be at least 1 trial"));
    }
    let mut best: Option<(usize, ValenceCertificate)> = None;
    let mut trials_used = 0;
    let mut start = 0;
    'rounds: while start < config.budget_trials {
        let end = (start + CHUNK).min(config.budget_trials);
        let results = (start..end)
            .into_par_iter()
            .map(|t| restart_trial(n, m, config, t))
            .collect::<Result<Vec<_>>>()?;
        for (offset, cert) in results.into_iter().enumerate() {
            let t = start + offset;
            trials_used = t + 1;
            let better = best
                .as_ref()
                .is_none_or(|(_, b)| cert.total_certified > b.total_certified);
            if better {
                best = Some((t, cert));
            }
            if best.as_ref().unwrap().1.total_certified as u64 >= target {
                break 'rounds;
            }
        }
        start = end;
    }
    let (best_trial, mut certificate) = best.expect("budget is at least one trial");

    let mut improvement_steps = 0;
    if (certificate.total_certified as u64) < target && config.refine_steps > 0 {
        let mut rng = stream_rng(config.seed, REFINE_STREAM);
        let refined = local_refine(
            &certificate.instance,
            config.refine_steps,
            &mut rng,
            &config.schedule,
            config.max_precision_bits,
        )?;
        if refined.certificate.total_certified > certificate.total_certified {
            certificate = refined.certificate.with_seed(Some(config.seed));
        }
        improvement_steps = refined.accepted;
    }
    let achieved = certificate.total_certified as u64 >= target;
    Ok(SearchReport {
        target,
        best_certificate: certificate,
        best_trial,
        trials_used,
        improvement_steps,
        achieved,
        seed: config.seed,
        budget_trials: config.budget_trials,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub instance: WilmshurstInstance,
    pub certificate: ValenceCertificate,
    /// Number of accepted perturbations.
    pub accepted: usize,
}

/// Coordinate-wise hill climbing over `(a_0, b_0, ..., a_m, b_m)`.
///
/// Step `t` perturbs coordinate `t mod 2(m+1)` by a Gaussian with standard
/// deviation `0.1 sqrt(C(m,k)/2) 2^(-t/10)`, scored at the current epsilon.
/// A move is kept only if the certified total strictly increases, after
/// which epsilon is re-chosen from `schedule`.
pub fn local_refine(
    inst: &WilmshurstInstance,
    steps: usize,
    rng: &mut ChaCha8Rng,
    schedule: &[Dyadic],
    max_precision_bits: u32,
) -> Result<Refinement> {
    if steps < 1 {
        return Err(param("refinement needs at least one step"));
    }
    let (n, m) = (inst.n(), inst.m());
    let mut current = inst.clone();
    let mut cert = certified_valence(&current, max_precision_bits)?;
    let mut accepted = 0;
    for t in 0..steps {
        let coord = t % (2 * (m + 1));
        let (k, imaginary) = (coord / 2, coord % 2 == 1);
        let sigma = 0.1 * (binomial(m, k) / 2.0).sqrt() * 2f64.powf(-(t as f64) / 10.0);
        let z: f64 = rng.sample(StandardNormal);
        let delta = Dyadic::from_f64_exact(sigma * z).expect("finite perturbation");

        let mut coeffs = current.q().coeffs().to_vec();
        let slot = if imaginary {
            &mut coeffs[k].1
        } else {
            &mut coeffs[k].0
        };
        *slot = &*slot + &delta;
        let q = ComplexPolynomial::new(coeffs);
        let Ok(candidate) = WilmshurstInstance::new(n, m, current.epsilon().clone(), q) else {
            continue;
        };
        let candidate_cert = certified_valence(&candidate, max_precision_bits)?;
        if candidate_cert.total_certified <= cert.total_certified {
            continue;
        }
        accepted += 1;
        let (_, reselected) = choose_epsilon(candidate.q(), n, schedule, max_precision_bits)?;
        if reselected.total_certified >= candidate_cert.total_certified {
            current = reselected.instance.clone();
            cert = reselected;
        } else {
            current = candidate;
            cert = candidate_cert;
        }
    }
    Ok(Refinement {
        instance: current,
        certificate: cert,
        accepted,
    })
}

/// Re-check a certificate from its instance alone.
///
/// Every strict recorded sign is re-certified at the recorded precision cap
/// (an undetermined re-check fails); `?` entries are accepted but never
/// count. The alternation count is recomputed from the recorded signs and
/// must cover every recorded line count and the recorded total.
pub fn verify_certificate(cert: &ValenceCertificate) -> Result<bool> {
    let inst = &cert.instance;
    let n = inst.n();
    let prec = cert.metadata.precision_bits;
    if cert.per_line.len() != n || cert.origin_is_zero != inst.origin_is_zero() {
        return Ok(false);
    }
    let mut seen = HashSet::new();
    let mut total = usize::from(inst.origin_is_zero());
    for line in &cert.per_line {
        if line.j >= n || !seen.insert(line.j) {
            return Ok(false);
        }
        if line.samples_used.len() != line.signs.len()
            || check_increasing(&line.samples_used).is_err()
        {
            return Ok(false);
        }
        let g = restrict_to_line(inst, line.j, BASE_PRECISION_BITS.min(prec))?;
        for (r, recorded) in line.samples_used.iter().zip(&line.signs) {
            if let Some(expected) = recorded.strict() {
                match certified_sign(&g, r, prec) {
                    CertifiedSign::Undetermined(_) => return Ok(false),
                    again if again.strict() != Some(expected) => return Ok(false),
                    _ => {}
                }
            }
        }
        let lower = count_alternations(&line.samples_used, &line.signs, g.vanishes_at_origin());
        if lower < line.certified_lower {
            return Ok(false);
        }
        total += lower;
    }
    Ok(total >= cert.total_certified)
}

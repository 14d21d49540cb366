//! Monte Carlo experiments over the Kostlan ensembles and comparison of the
//! observed zero counts against the classical valence bounds.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::certify::sturm_count_extended;
use crate::dyadic::Dyadic;
use crate::ensembles::{
    ek_expected_count, sample_complex_kostlan, sample_real_kostlan, KostlanSampler,
};
use crate::error::{param, Error, Result};
use crate::instance::WilmshurstInstance;
use crate::search::{target_valence, wilmshurst_conjecture_value};
use crate::valence::certified_valence;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroCountStats {
    pub n: usize,
    pub m: usize,
    pub epsilon: Dyadic,
    pub trials: usize,
    pub seed: u64,
    pub mean_total: f64,
    pub se_total: f64,
    pub mean_per_line: Vec<f64>,
    pub se_per_line: Vec<f64>,
    /// Fraction of trials whose certified total equals the float total.
    pub certified_fraction: f64,
    /// Fraction of trials with `h(0) = 0`.
    pub origin_frequency: f64,
    pub max_total: usize,
    pub min_total: usize,
}

/// Mean and standard error (sample standard deviation over `sqrt(len)`).
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

struct TrialOutcome {
    per_line: Vec<usize>,
    total: usize,
    float_total: usize,
    origin: bool,
}

/// Sample `q` from the complex Kostlan ensemble once per trial (stream =
/// trial index) and certify `eps z^n + q + conj(q)`. Deterministic in
/// `(seed, trials)` regardless of thread count.
pub fn run_expectation_experiment(
    n: usize,
    m: usize,
    epsilon: &Dyadic,
    trials: usize,
    seed: u64,
    max_precision_bits: u32,
) -> Result<ZeroCountStats> {
    if m < 1 || n <= m {
        return Err(param(format!("need n > m >= 1, got n = {n}, m = {m}")));
    }
    if trials < 1 {
        return Err(param("trials must be at least 1"));
    }
    if !epsilon.is_positive() {
        return Err(param("epsilon must be positive"));
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let q = sample_complex_kostlan(&KostlanSampler::new(m, seed, t as u64))?;
            let inst = WilmshurstInstance::new(n, m, epsilon.clone(), q)?;
            let cert = certified_valence(&inst, max_precision_bits)?;
            Ok(TrialOutcome {
                per_line: cert.per_line.iter().map(|l| l.certified_lower).collect(),
                total: cert.total_certified,
                float_total: cert.float_total(),
                origin: cert.origin_is_zero,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let totals: Vec<f64> = outcomes.iter().map(|o| o.total as f64).collect();
    let (mean_total, se_total) = mean_and_se(&totals);
    let (mean_per_line, se_per_line) = (0..n)
        .map(|j| {
            let xs: Vec<f64> = outcomes.iter().map(|o| o.per_line[j] as f64).collect();
            mean_and_se(&xs)
        })
        .unzip();
    let agree = outcomes.iter().filter(|o| o.total == o.float_total).count();
    let origins = outcomes.iter().filter(|o| o.origin).count();
    Ok(ZeroCountStats {
        n,
        m,
        epsilon: epsilon.clone(),
        trials,
        seed,
        mean_total,
        se_total,
        mean_per_line,
        se_per_line,
        certified_fraction: agree as f64 / trials as f64,
        origin_frequency: origins as f64 / trials as f64,
        max_total: outcomes.iter().map(|o| o.total).max().unwrap_or(0),
        min_total: outcomes.iter().map(|o| o.total).min().unwrap_or(0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EkResult {
    pub m: usize,
    pub trials: usize,
    pub empirical_mean: f64,
    pub standard_error: f64,
    pub oracle: f64,
}

impl EkResult {
    /// `|empirical - oracle|` in units of the standard error. An exact match
    /// scores 0 even when the counts never vary (degree 1 on the whole line).
    pub fn z_score(&self) -> f64 {
        let diff = (self.empirical_mean - self.oracle).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.standard_error
        }
    }
}

fn finite_endpoint(x: f64) -> Result<Option<Dyadic>> {
    if x.is_infinite() {
        Ok(None)
    } else {
        Dyadic::from_f64_exact(x)
            .map(Some)
            .ok_or_else(|| Error::InvalidInterval(format!("bad endpoint {x}")))
    }
}

/// Exact real-root counts of real Kostlan polynomials in `(a, b)` against
/// the Edelman–Kostlan expectation.
pub fn run_ek_experiment(m: usize, trials: usize, seed: u64, a: f64, b: f64) -> Result<EkResult> {
    let oracle = ek_expected_count(m, a, b)?;
    if trials < 1 {
        return Err(param("trials must be at least 1"));
    }
    let lo = finite_endpoint(a)?;
    let hi = finite_endpoint(b)?;
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let f = sample_real_kostlan(&KostlanSampler::new(m, seed, t as u64))?;
            Ok(sturm_count_extended(&f, lo.as_ref(), hi.as_ref())? as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (empirical_mean, standard_error) = mean_and_se(&counts);
    Ok(EkResult {
        m,
        trials,
        empirical_mean,
        standard_error,
        oracle,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub name: &'static str,
    pub formula: &'static str,
    pub value: u64,
    pub mean_exceeds: bool,
    pub max_exceeds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub mean_total: f64,
    pub max_total: usize,
    pub rows: Vec<BoundRow>,
}

/// The reference values for `(n, m)`: the witness target, Wilmshurst's
/// conjectured maximum, the Bezout bound, the per-family Descartes bound,
/// the conjectured `2m(n-1)+n` bound, and the known `m^2+n+m` construction.
pub fn reference_values(n: usize, m: usize) -> Result<Vec<(&'static str, &'static str, u64)>> {
    let (n64, m64) = (n as u64, m as u64);
    Ok(vec![
        ("target", "ceil(n*sqrt(m))", target_valence(n, m)?),
        (
            "wilmshurst",
            "3n-2+m(m-1)",
            wilmshurst_conjecture_value(n, m)?,
        ),
        ("bezout", "n^2", n64 * n64),
        ("descartes", "n(m+2)", n64 * (m64 + 2)),
        ("conjectured", "2m(n-1)+n", 2 * m64 * (n64 - 1) + n64),
        ("known", "m^2+n+m", m64 * m64 + n64 + m64),
    ])
}

pub fn compare_to_bounds(stats: &ZeroCountStats) -> Result<BoundsReport> {
    let rows = reference_values(stats.n, stats.m)?
        .into_iter()
        .map(|(name, formula, value)| BoundRow {
            name,
            formula,
            value,
            mean_exceeds: stats.mean_total > value as f64,
            max_exceeds: stats.max_total as u64 > value,
        })
        .collect();
    Ok(BoundsReport {
        n: stats.n,
        m: stats.m,
        mean_total: stats.mean_total,
        max_total: stats.max_total,
        rows,
    })
}

impl BoundsReport {
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "n = {}, m = {}, mean certified total = {:.4}, max certified total = {}\n",
            self.n, self.m, self.mean_total, self.max_total
        );
        out.push_str(&format!(
            "{:<12} {:<16} {:>10} {:>8} {:>8}\n",
            "bound", "formula", "value", "mean>", "max>"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<12} {:<16} {:>10} {:>8} {:>8}\n",
                r.name,
                r.formula,
                r.value,
                if r.mean_exceeds { "yes" } else { "no" },
                if r.max_exceeds { "yes" } else { "no" }
            ));
        }
        out
    }
}

/// One CSV header plus one data row, preceded by `# ` provenance lines.
pub fn write_stats_csv<W: Write>(
    mut out: W,
    stats: &ZeroCountStats,
    provenance: &[String],
) -> Result<()> {
    for line in provenance {
        writeln!(out, "# {line}")?;
    }
    let mut header: Vec<String> = [
        "n",
        "m",
        "epsilon",
        "trials",
        "seed",
        "mean_total",
        "se_total",
        "certified_fraction",
        "origin_frequency",
        "max_total",
        "min_total",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut row = vec![
        stats.n.to_string(),
        stats.m.to_string(),
        stats.epsilon.to_string(),
        stats.trials.to_string(),
        stats.seed.to_string(),
        stats.mean_total.to_string(),
        stats.se_total.to_string(),
        stats.certified_fraction.to_string(),
        stats.origin_frequency.to_string(),
        stats.max_total.to_string(),
        stats.min_total.to_string(),
    ];
    for (j, (mean, se)) in stats
        .mean_per_line
        .iter()
        .zip(&stats.se_per_line)
        .enumerate()
    {
        header.push(format!("mean_line_{j}"));
        header.push(format!("se_line_{j}"));
        row.push(mean.to_string());
        row.push(se.to_string());
    }
    let mut writer = csv::Writer::from_writer(&mut out);
    writer.write_record(&header)?;
    writer.write_record(&row)?;
    writer.flush()?;
    Ok(())
}

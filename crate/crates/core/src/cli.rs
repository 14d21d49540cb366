//! The `hvalence` command line.
//!
//! Exit status: 0 on success, 1 when a search misses its target, a
//! certificate fails verification or an internal invariant trips, and 2 for
//! usage, parameter, parse and schema errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::certify::DEFAULT_MAX_PRECISION_BITS;
use crate::dyadic::Dyadic;
use crate::ensembles::ek_expected_count;
use crate::error::{Error, Result};
use crate::experiments::{compare_to_bounds, run_expectation_experiment, write_stats_csv};
use crate::instance::WilmshurstInstance;
use crate::search::{hunt_witness, verify_certificate, SearchConfig};
use crate::valence::{certified_valence, default_schedule, ValenceCertificate, VERSION};

const TOOL: &str = "hvalence";

#[derive(Debug, Parser)]
#[command(
    name = "hvalence",
    version,
    about = "Certified zero counts for eps*z^n + q(z) + conj(q(z))"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Base seed for every random stream.
    #[arg(long, global = true, env = "HVALENCE_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Write the primary artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; defaults to csv for tables and json for certificates.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Precision cap in bits for sign certification.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PRECISION_BITS)]
    pub precision: u32,

    /// Worker threads for concurrent trials (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected number of real zeros in (a, b) of a degree-m Kostlan polynomial.
    Oracle {
        /// Polynomial degree
        #[arg(long)]
        m: usize,
        /// Left endpoint, may be -inf
        #[arg(long, default_value = "-inf", allow_hyphen_values = true)]
        a: f64,
        /// Right endpoint, may be inf
        #[arg(long, default_value = "inf", allow_hyphen_values = true)]
        b: f64,
    },
    /// Monte Carlo estimate of the certified zero count over random q.
    Expect {
        /// Degree of the z^n term
        #[arg(long)]
        n: usize,
        /// Degree of q, below n
        #[arg(long)]
        m: usize,
        /// Perturbation size, e.g. 2^-40 or 3*2^-7.
        #[arg(long, allow_hyphen_values = true)]
        eps: Dyadic,
        /// Number of random instances
        #[arg(long)]
        trials: usize,
    },
    /// Search for an instance with at least ceil(n sqrt(m)) certified zeros.
    Search {
        /// Degree of the z^n term
        #[arg(long)]
        n: usize,
        /// Degree of q, below n
        #[arg(long)]
        m: usize,
        /// Maximum number of random restarts
        #[arg(long)]
        budget: usize,
        /// Hill-climbing steps on the incumbent if restarts miss the target.
        #[arg(long, default_value_t = 0)]
        refine_steps: usize,
        /// Comma-separated epsilon candidates (default 2^-10, 2^-20, ..., 2^-60).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        schedule: Vec<Dyadic>,
    },
    /// Certify the zero count of an instance file.
    Count {
        /// JSON instance with n, m, epsilon and q
        file: PathBuf,
    },
    /// Re-check a certificate, or the certificate inside a search report.
    Verify {
        /// Certificate or search report JSON
        path: PathBuf,
    },
}

enum Outcome {
    Success,
    Failure,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Invariant(_) | Error::RootEstimation(_) => 1,
        _ => 2,
    }
}

fn provenance(command: &str, global: &GlobalArgs, config: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "seed": global.seed,
        "precision_bits": global.precision,
        "config": config,
    })
}

fn emit(global: &GlobalArgs, bytes: &[u8]) -> Result<()> {
    match &global.output {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes(value: &Value) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("json serializes");
    text.push('\n');
    text.into_bytes()
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))
}

fn cmd_oracle(global: &GlobalArgs, m: usize, a: f64, b: f64) -> Result<Outcome> {
    let value = ek_expected_count(m, a, b)?;
    let out = match global.format {
        None => format!("{value:?}\n").into_bytes(),
        Some(Format::Json) => json_bytes(&json!({
            "provenance": provenance("oracle", global, json!({"m": m, "a": a.to_string(), "b": b.to_string()})),
            "expected_count": value,
        })),
        Some(Format::Csv) => {
            format!("# {TOOL} {VERSION} oracle m={m} a={a} b={b}\nm,a,b,expected_count\n{m},{a},{b},{value:?}\n")
                .into_bytes()
        }
    };
    emit(global, &out)?;
    Ok(Outcome::Success)
}

fn cmd_expect(
    global: &GlobalArgs,
    n: usize,
    m: usize,
    eps: &Dyadic,
    trials: usize,
) -> Result<Outcome> {
    let stats = run_expectation_experiment(n, m, eps, trials, global.seed, global.precision)?;
    let report = compare_to_bounds(&stats)?;
    let config = json!({"n": n, "m": m, "eps": eps.to_string(), "trials": trials});
    let out = match global.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = vec![
                format!("{TOOL} {VERSION} expect"),
                format!(
                    "config {}",
                    serde_json::to_string(&provenance("expect", global, config))?
                ),
            ];
            let mut buf = Vec::new();
            write_stats_csv(&mut buf, &stats, &header)?;
            buf
        }
        Format::Json => json_bytes(&json!({
            "provenance": provenance("expect", global, config),
            "stats": stats,
            "bounds": report,
        })),
    };
    emit(global, &out)?;
    let table = report.to_table();
    if global.output.is_some() {
        print!("{table}");
    } else {
        eprint!("{table}");
    }
    Ok(Outcome::Success)
}

fn cmd_search(
    global: &GlobalArgs,
    n: usize,
    m: usize,
    budget: usize,
    refine_steps: usize,
    schedule: &[Dyadic],
) -> Result<Outcome> {
    let schedule = if schedule.is_empty() {
        default_schedule()
    } else {
        schedule.to_vec()
    };
    let config = SearchConfig {
        budget_trials: budget,
        seed: global.seed,
        schedule: schedule.clone(),
        max_precision_bits: global.precision,
        refine_steps,
    };
    let report = hunt_witness(n, m, &config)?;
    let mut value = report.to_json_value();
    value["provenance"] = provenance(
        "search",
        global,
        json!({
            "n": n,
            "m": m,
            "budget": budget,
            "refine_steps": refine_steps,
            "schedule": schedule.iter().map(Dyadic::to_string).collect::<Vec<_>>(),
        }),
    );
    emit(global, &json_bytes(&value))?;
    eprintln!(
        "n = {n}, m = {m}: certified total {} against target {} after {} trials ({})",
        report.total(),
        report.target,
        report.trials_used,
        if report.achieved {
            "achieved"
        } else {
            "not achieved"
        }
    );
    Ok(if report.achieved {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn cmd_count(global: &GlobalArgs, file: &Path) -> Result<Outcome> {
    let text = read_file(file)?;
    let inst: WilmshurstInstance = serde_json::from_str(&text).map_err(|e| {
        if e.is_data() {
            Error::Parameter(format!("invalid instance: {e}"))
        } else {
            Error::Schema(e.to_string())
        }
    })?;
    let cert = certified_valence(&inst, global.precision)?;
    let mut text = cert.to_json_string();
    text.push('\n');
    emit(global, text.as_bytes())?;
    Ok(Outcome::Success)
}

/// Accept a bare certificate or a search report carrying one.
fn parse_certificate(text: &str) -> Result<ValenceCertificate> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    match value {
        Value::Object(mut map) if map.contains_key("target") && map.contains_key("certificate") => {
            ValenceCertificate::from_json_value(map.remove("certificate").unwrap())
        }
        other => ValenceCertificate::from_json_value(other),
    }
}

fn cmd_verify(path: &Path) -> Result<Outcome> {
    let cert = parse_certificate(&read_file(path)?)?;
    let ok = verify_certificate(&cert)?;
    println!(
        "{}: total {} {}",
        path.display(),
        cert.total_certified,
        if ok { "verified" } else { "REJECTED" }
    );
    Ok(if ok {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let global = &cli.global;
    if global.precision == 0 {
        return Err(Error::Parameter("--precision must be positive".into()));
    }
    match &cli.command {
        Command::Oracle { m, a, b } => cmd_oracle(global, *m, *a, *b),
        Command::Expect { n, m, eps, trials } => cmd_expect(global, *n, *m, eps, *trials),
        Command::Search {
            n,
            m,
            budget,
            refine_steps,
            schedule,
        } => cmd_search(global, *n, *m, *budget, *refine_steps, schedule),
        Command::Count { file } => cmd_count(global, file),
        Command::Verify { path } => cmd_verify(path),
    }
}

/// Run a parsed command line and map the result to an exit status.
pub fn run(cli: Cli) -> ExitCode {
    let outcome = match cli.global.threads {
        Some(0) => Err(Error::Parameter("--threads must be positive".into())),
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Parameter(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{TOOL}: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

pub fn main() -> ExitCode {
    run(Cli::parse())
}

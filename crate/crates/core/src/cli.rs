//! Command implementations behind the `lqu` binary. Argument parsing lives
//! in `main.rs`; everything here takes plain values and writes to a sink
//! so it can be driven from tests.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::analytic::AnalyticFamily;
use crate::density_json::{read_density_matrix, to_json_string, FormatError};
use crate::measure::{LquError, LquReport, SqrtDensity};
use crate::states::{mix_white_noise, random_pure, DensityMatrix, Family, StateError, StateSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// Significant digits for every number the CLI prints.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Lqu(#[from] LquError),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lqu(LquError::NumericalContractViolation(_))
            | CliError::Lqu(LquError::Linalg(crate::linalg::LinalgError::NoConvergence { .. })) => {
                EXIT_NUMERICAL
            }
            _ => EXIT_INPUT,
        }
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped,
/// exponent notation only for very small or very large magnitudes.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIG_DIGITS as i32 {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// "A/BC", "B/CA", … for measured qubit `k` of `n`.
pub fn bipartition_label(k: usize, n: usize) -> String {
    let letter = |i: usize| (b'A' + (i % 26) as u8) as char;
    let rest: String = (1..n).map(|d| letter((k + d) % n)).collect();
    format!("{}/{}", letter(k), rest)
}

pub fn render_report(report: &LquReport) -> String {
    let n = report.per_bipartition.len();
    let mut out = String::new();
    for (k, q) in report.per_bipartition.iter().enumerate() {
        out.push_str(&format!("q{k} Q({}) = {}\n", bipartition_label(k, n), format_sig(*q)));
    }
    out.push_str(&format!("mean = {}\n", format_sig(report.mean)));
    out
}

/// `compute <file>`.
pub fn cmd_compute(input: &Path, out: &mut impl Write) -> Result<LquReport, CliError> {
    let rho = read_density_matrix(input)?;
    let report = SqrtDensity::new(&rho)?.lqu_all()?;
    write_stdout(out, &render_report(&report))?;
    Ok(report)
}

fn write_stdout(out: &mut impl Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(|source| CliError::Output {
        path: "<stdout>".into(),
        source,
    })
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Family plus register size and seed; `param` is ignored.
    pub spec: StateSpec,
    pub param_from: f64,
    pub param_to: f64,
    pub steps: usize,
    pub output_path: PathBuf,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let fam = self.spec.family;
        let (lo, hi) = fam.param_domain();
        if self.steps < 2 {
            return Err(CliError::Config(format!("--steps must be at least 2, got {}", self.steps)));
        }
        for (name, v) in [("--from", self.param_from), ("--to", self.param_to)] {
            if !fam.param_in_domain(v) {
                return Err(CliError::Config(format!(
                    "{name} {v} is outside the {fam} domain [{lo}, {hi}]"
                )));
            }
        }
        if self.param_from > self.param_to {
            return Err(CliError::Config(format!(
                "--from {} is greater than --to {}",
                self.param_from, self.param_to
            )));
        }
        Ok(())
    }

    /// Grid point `i`; the last point is `param_to` exactly.
    pub fn param_at(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.param_to
        } else {
            self.param_from + i as f64 * (self.param_to - self.param_from) / (self.steps - 1) as f64
        }
    }
}

pub fn csv_header(n_qubits: usize) -> String {
    let qs: Vec<String> = (0..n_qubits).map(|k| format!("q{k}")).collect();
    format!("param,{},mean,analytic\n", qs.join(","))
}

fn csv_row(spec: &StateSpec) -> Result<String, CliError> {
    let rho = spec.build()?;
    let report = SqrtDensity::new(&rho)?.lqu_all()?;
    let analytic = match AnalyticFamily::for_family(spec.family) {
        Some(f) => format_sig(f.lqu(spec.param).map_err(|e| CliError::Config(e.to_string()))?),
        None => String::new(),
    };
    let qs: Vec<String> = report.per_bipartition.iter().map(|&q| format_sig(q)).collect();
    Ok(format!(
        "{},{},{},{}\n",
        format_sig(spec.param),
        qs.join(","),
        format_sig(report.mean),
        analytic
    ))
}

/// Full CSV text for a sweep. Points are evaluated in parallel and emitted in parameter order.
pub fn sweep_csv(config: &SweepConfig) -> Result<String, CliError> {
    config.validate()?;
    let rows = (0..config.steps)
        .into_par_iter()
        .map(|i| {
            let spec = StateSpec {
                param: config.param_at(i),
                ..config.spec
            };
            csv_row(&spec)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = csv_header(config.spec.n_qubits());
    for r in rows {
        csv.push_str(&r);
    }
    Ok(csv)
}

/// `sweep`: writes the CSV atomically, so a failed run leaves no partial file behind.
pub fn cmd_sweep(config: &SweepConfig) -> Result<(), CliError> {
    let csv = sweep_csv(config)?;
    write_file_atomic(&config.output_path, &csv)
}

fn write_file_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let result = fs::write(&tmp, contents).and_then(|_| fs::rename(&tmp, path));
    result.map_err(|source| {
        let _ = fs::remove_file(&tmp);
        CliError::Output {
            path: path.display().to_string(),
            source,
        }
    })
}

#[derive(Debug, Clone)]
pub struct RandomConfig {
    pub n_qubits: usize,
    pub seed: u64,
    pub pure_fraction: f64,
    pub dump: Option<PathBuf>,
    /// Also print each qubit's 3×3 correlation matrix and spectrum.
    pub show_matrices: bool,
}

pub fn random_state(config: &RandomConfig) -> Result<DensityMatrix, CliError> {
    let p = config.pure_fraction;
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Config(format!("--pure-fraction {p} is outside [0, 1]")));
    }
    let psi = random_pure(config.n_qubits, config.seed)?;
    Ok(mix_white_noise(&psi, 1.0 - p)?)
}

/// `random`: report for a seeded random pure state mixed with white noise.
pub fn cmd_random(config: &RandomConfig, out: &mut impl Write) -> Result<LquReport, CliError> {
    let rho = random_state(config)?;
    let sqrt = SqrtDensity::new(&rho)?;
    let mut text = String::new();
    if config.show_matrices {
        for k in 0..rho.n_qubits() {
            let m = sqrt.m_matrix(k)?;
            let ev = m.eigenvalues()?;
            text.push_str(&format!("M[{}]\n", bipartition_label(k, rho.n_qubits())));
            for row in m.entries {
                let cells: Vec<String> = row.iter().map(|&x| format_sig(x)).collect();
                text.push_str(&format!("  {}\n", cells.join(" ")));
            }
            let ev: Vec<String> = ev.iter().rev().map(|&x| format_sig(x)).collect();
            text.push_str(&format!("  eigenvalues {}\n", ev.join(" ")));
        }
    }
    let report = sqrt.lqu_all()?;
    text.push_str(&render_report(&report));
    if let Some(path) = &config.dump {
        write_file_atomic(path, &to_json_string(&rho))?;
    }
    write_stdout(out, &text)?;
    Ok(report)
}

pub fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("{e} (expected one of {})", names.join(", "))
    })
}

//! Command-line front end: parse arrangement or form-system files, run the
//! verification suites, and emit JSON reports.
//!
//! Exit codes: 0 success, 1 input or computation error, 2 expectation
//! mismatch under --expect-paper, 3 stage timeout.

use arralg::arrangement::{random_arrangement, Arrangement};
use arralg::error::Error;
use arralg::forms::FormSystem;
use arralg::monomial::MonomialOrder;
use arralg::report::{self, ReportOptions};
use arralg::{FieldSpec, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Duration;

#[derive(Parser)]
#[command(name = "arralg", version, about = "Exact invariants of central hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis of one arrangement file.
    Analyze {
        path: PathBuf,
        /// Coefficient field override, e.g. Q, F2, or a bare prime.
        #[arg(long)]
        field: Option<String>,
        /// Check the theorem-level expectations and exit 2 on mismatch.
        #[arg(long)]
        expect_paper: bool,
        /// Attach wall-clock stage timings (output is no longer stable).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Conjecture verdicts for a file (one arrangement or an array) or a
    /// seeded random suite.
    Conjectures {
        path: Option<PathBuf>,
        /// Random suite: N M COUNT and optionally the seed.
        #[arg(long, num_args = 3..=4, value_names = ["N", "M", "COUNT", "SEED"])]
        random: Option<Vec<u64>>,
        /// Seed for --random when not given inline.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Coefficient field for --random, e.g. Q, F2, or a bare prime.
        #[arg(long)]
        field: Option<String>,
        /// Exit 2 unless every asserted instance holds.
        #[arg(long)]
        expect_paper: bool,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Higher-degree-forms suite for a form-system file.
    Forms {
        path: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Debug: the reduced Groebner basis of the Jacobian ideal.
    Gb {
        path: PathBuf,
        #[arg(long)]
        field: Option<String>,
        /// Truncate the basis at this degree.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Monomial order: degrevlex or lex.
        #[arg(long, default_value = "degrevlex")]
        order: String,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Limits {
    /// Largest reduction number to attempt; 0 means rank - 1.
    #[arg(long, default_value_t = 0)]
    kmax: u32,
    /// Groebner stage timeout in seconds; 0 disables.
    #[arg(long, env = "ARRALG_TIMEOUT_GB", default_value_t = 60.0)]
    timeout_gb: f64,
    /// Resolution stage timeout in seconds; 0 disables.
    #[arg(long, env = "ARRALG_TIMEOUT_RESOLUTION", default_value_t = 120.0)]
    timeout_resolution: f64,
    /// Rees elimination timeout in seconds; 0 disables.
    #[arg(long, env = "ARRALG_TIMEOUT_REES", default_value_t = 300.0)]
    timeout_rees: f64,
}

#[derive(Args)]
struct Output {
    /// Compact JSON on stdout (the default).
    #[arg(long)]
    json: bool,
    /// Pretty-printed JSON instead.
    #[arg(long, conflicts_with = "json")]
    pretty: bool,
}

impl Limits {
    fn to_options(&self, expect_paper: bool, timings: bool) -> ReportOptions {
        let secs = |s: f64| (s > 0.0).then(|| Duration::from_secs_f64(s));
        ReportOptions {
            kmax: self.kmax,
            expect_paper,
            timings,
            timeout_gb: secs(self.timeout_gb),
            timeout_resolution: secs(self.timeout_resolution),
            timeout_rees: secs(self.timeout_rees),
        }
    }
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    if let Ok(p) = s.parse::<u64>() {
        return FieldSpec::prime(p);
    }
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|e| Error::InvalidInput(format!("unknown field '{s}': {e}")))
}

fn load_json(path: &Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: invalid JSON: {e}", path.display())))
}

fn override_field(v: &mut serde_json::Value, field: &Option<String>) -> Result<()> {
    if let Some(name) = field {
        let spec = parse_field(name)?;
        let obj = v
            .as_object_mut()
            .ok_or_else(|| Error::InvalidInput("the input must be a JSON object".into()))?;
        obj.insert("field".into(), serde_json::to_value(spec).expect("field serializes"));
    }
    Ok(())
}

fn load_arrangement(path: &Path, field: &Option<String>) -> Result<Arrangement> {
    let mut v = load_json(path)?;
    override_field(&mut v, field)?;
    Arrangement::from_json(&v)
}

fn print_report<T: Serialize>(report: &T, out: &Output) {
    let text = if out.pretty {
        serde_json::to_string_pretty(report).expect("report serializes")
    } else {
        serde_json::to_string(report).expect("report serializes")
    };
    println!("{text}");
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Analyze { path, field, expect_paper, timings, limits, output } => {
            let arr = load_arrangement(&path, &field)?;
            let opts = limits.to_options(expect_paper, timings);
            let rep = report::analyze(&arr, &opts)?;
            print_report(&rep, &output);
            Ok(if rep.expectation_mismatches().is_empty() { 0 } else { 2 })
        }
        Cmd::Conjectures { path, random, seed, field, expect_paper, limits, output } => {
            let opts = limits.to_options(expect_paper, false);
            let mut rows = Vec::new();
            match (path, random) {
                (Some(p), None) => {
                    let mut v = load_json(&p)?;
                    let name = p.display().to_string();
                    match v {
                        serde_json::Value::Array(ref mut items) => {
                            for (k, item) in items.iter_mut().enumerate() {
                                override_field(item, &field)?;
                                let arr = Arrangement::from_json(item)?;
                                rows.push(report::conjecture_row(
                                    format!("{name}#{k}"),
                                    &arr,
                                    &opts,
                                )?);
                            }
                        }
                        _ => {
                            override_field(&mut v, &field)?;
                            let arr = Arrangement::from_json(&v)?;
                            rows.push(report::conjecture_row(name, &arr, &opts)?);
                        }
                    }
                }
                (None, Some(spec)) => {
                    let n = spec[0] as usize;
                    let m = spec[1] as usize;
                    let count = spec[2];
                    let seed = spec.get(3).copied().unwrap_or(seed);
                    if n > 4 || m > 7 || count > 500 {
                        return Err(Error::InvalidInput(
                            "the random suite is budgeted for rank <= 4, m <= 7, and \
                             at most 500 instances"
                                .into(),
                        ));
                    }
                    let fs = match &field {
                        Some(name) => parse_field(name)?,
                        None => FieldSpec::Rationals,
                    };
                    for k in 0..count {
                        let arr = random_arrangement(fs, n, m, seed.wrapping_add(k), 9)?;
                        rows.push(report::conjecture_row(
                            format!("random({n},{m})#{k} seed {}", seed.wrapping_add(k)),
                            &arr,
                            &opts,
                        )?);
                    }
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "pass exactly one of a file path or --random N M COUNT [SEED]".into(),
                    ));
                }
            }
            let rep = report::conjecture_report(rows, &opts);
            print_report(&rep, &output);
            Ok(if expect_paper && !rep.all_hold { 2 } else { 0 })
        }
        Cmd::Forms { path, field, limits, output } => {
            let mut v = load_json(&path)?;
            override_field(&mut v, &field)?;
            let fs = FormSystem::from_json(&v)?;
            let opts = limits.to_options(false, false);
            let rep = report::forms_report(&fs, &opts)?;
            print_report(&rep, &output);
            Ok(0)
        }
        Cmd::Gb { path, field, max_degree, order, limits, output } => {
            let ord = match order.as_str() {
                "degrevlex" => MonomialOrder::DegRevLex,
                "lex" => MonomialOrder::Lex,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown order '{other}' (expected degrevlex or lex)"
                    )))
                }
            };
            let mut v = load_json(&path)?;
            override_field(&mut v, &field)?;
            let is_text_forms = v
                .get("forms")
                .and_then(|f| f.as_array())
                .and_then(|a| a.first())
                .is_some_and(|x| x.is_string());
            let ideal = if is_text_forms {
                FormSystem::from_json(&v)?.jacobian_ideal()
            } else {
                Arrangement::from_json(&v)?.jacobian_ideal()
            };
            let opts = limits.to_options(false, false);
            let rep = report::gb_report(&ideal, ord, max_degree, &opts)?;
            print_report(&rep, &output);
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Timeout { .. } => 3,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

//! Command-line front end: run scenario verifications, regenerate the
//! published tables, diff them against the print baselines, run the numeric
//! cross-validation, and check user-supplied scenario files.
//!
//! Exit codes: 0 = all computations consistent (and, when diffing, all cells
//! match); 1 = internally consistent but baseline mismatches found; 2 =
//! internal consistency failure or invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use burniat_core::checker;
use burniat_core::hodge;
use burniat_core::scenario;
use burniat_core::tables::{self, Format, TableId};
use burniat_core::theta_num::{self, SignTableOptions};

#[derive(Parser)]
#[command(name = "burniat")]
#[command(about = "Exact recomputation and audit of generalized Burniat surface invariants")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Md,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Md => Format::Md,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline on built-in scenarios
    Verify {
        /// One scenario name (S1..S16 or sicilian)
        #[arg(long, conflicts_with = "all")]
        family: Option<String>,
        /// All sixteen families plus the Sicilian scenario
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: OutputFormat,
        /// Write output to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a table from the computation pipeline
    Tables {
        /// Which table: 1, 2, 3, theta, hodge-x, checker
        #[arg(long)]
        which: String,
        #[arg(long, value_enum, default_value = "md")]
        format: OutputFormat,
        /// Diff the recomputed table against the print baseline
        #[arg(long)]
        diff_paper: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric cross-validation of the symbolic sign model
    Numeric {
        /// Modulus of the first factor, as "a+bi"
        #[arg(long, default_value = "i")]
        tau1: String,
        #[arg(long, default_value = "i")]
        tau2: String,
        #[arg(long, default_value = "i")]
        tau3: String,
        /// Sample points per factor
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Sign-decision tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Seed for the deterministic sample stream
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Validate and verify a scenario file
    Check {
        /// Path to a scenario JSON file
        file: PathBuf,
    },
}

fn parse_complex(text: &str) -> Result<num_complex::Complex64, String> {
    // accepts "i", "2i", "0.3+1.2i", "-0.5+2i", "1.5"
    let t = text.trim().replace(' ', "");
    let t = t.strip_prefix('+').unwrap_or(&t).to_string();
    if !t.ends_with('i') {
        return t
            .parse::<f64>()
            .map(|re| num_complex::Complex64::new(re, 0.0))
            .map_err(|e| format!("bad complex value {text:?}: {e}"));
    }
    let body = &t[..t.len() - 1];
    let mut split = None;
    for (idx, ch) in body.char_indices().skip(1) {
        if (ch == '+' || ch == '-') && !matches!(body.as_bytes()[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    let (re_s, im_s) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("0", body),
    };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s
            .parse::<f64>()
            .map_err(|e| format!("bad complex value {text:?}: {e}"))?,
    };
    let re = re_s
        .parse::<f64>()
        .map_err(|e| format!("bad complex value {text:?}: {e}"))?;
    Ok(num_complex::Complex64::new(re, im))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path:?}: {e}")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run_verify(
    family: Option<String>,
    all: bool,
    format: Format,
    out: Option<PathBuf>,
) -> Result<u8, String> {
    let names: Vec<String> = match family {
        Some(name) if !all => vec![name],
        _ => scenario::builtin_names()
            .into_iter()
            .map(String::from)
            .collect(),
    };
    let mut reports = Vec::new();
    let mut audits = Vec::new();
    for name in &names {
        let s = scenario::builtin(name).map_err(|e| e.to_string())?;
        let audit = hodge::consistency_suite(&s).map_err(|e| e.to_string())?;
        let report = checker::full_report(&s).map_err(|e| e.to_string())?;
        audits.push(audit);
        reports.push(report);
    }
    let consistent = audits.iter().all(|a| a.all_pass());

    let text = match format {
        Format::Json => {
            let arr: Vec<serde_json::Value> = reports
                .iter()
                .zip(&audits)
                .map(|(r, a)| {
                    let mut v = r.to_json();
                    v["consistency"] = json!(a
                        .checks
                        .iter()
                        .map(|c| json!({"id": c.id, "pass": c.pass, "detail": c.detail}))
                        .collect::<Vec<_>>());
                    v
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "schema": "1",
                "reports": arr,
            }))
            .unwrap()
        }
        Format::Md | Format::Csv => {
            let mut lines = Vec::new();
            if format == Format::Csv {
                lines
                    .push("scenario,route,condition3,condition5,mult_chiA,consistency".to_string());
            }
            for (r, a) in reports.iter().zip(&audits) {
                let line = if format == Format::Csv {
                    format!(
                        "{},{},{},{},{},{}",
                        r.scenario,
                        r.route.as_str(),
                        r.condition3.status.as_str(),
                        r.condition5.status.as_str(),
                        r.mult_chi_a,
                        if a.all_pass() { "pass" } else { "fail" }
                    )
                } else {
                    format!(
                        "- {}: route {}, condition3 {}, condition5 {}, mult(chi_A) = {}, consistency {}",
                        r.scenario,
                        r.route.as_str(),
                        r.condition3.status.as_str(),
                        r.condition5.status.as_str(),
                        r.mult_chi_a,
                        if a.all_pass() { "pass" } else { "FAIL" }
                    )
                };
                lines.push(line);
            }
            lines.join("\n")
        }
    };
    emit(&out, &text)?;
    Ok(if consistent { 0 } else { 2 })
}

fn run_tables(
    which: &str,
    format: Format,
    diff_paper: bool,
    out: Option<PathBuf>,
) -> Result<u8, String> {
    let id = TableId::parse(which).map_err(|e| e.to_string())?;
    if !diff_paper {
        let table = tables::render(id).map_err(|e| e.to_string())?;
        emit(&out, &table.to_format(format))?;
        return Ok(0);
    }
    let diff = tables::diff(id).map_err(|e| e.to_string())?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&diff.to_json()).unwrap(),
        _ => diff.to_text(),
    };
    emit(&out, &text)?;
    if diff.mismatches().is_empty() {
        Ok(0)
    } else if diff.all_mismatches_witnessed() {
        // errata mode: recomputation is consistent where print is not
        Ok(1)
    } else {
        Ok(2)
    }
}

fn run_numeric(
    tau1: &str,
    tau2: &str,
    tau3: &str,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<u8, String> {
    let moduli = [
        parse_complex(tau1)?,
        parse_complex(tau2)?,
        parse_complex(tau3)?,
    ];
    let opts = SignTableOptions {
        samples,
        tol,
        truncation_tol: (tol * 1e-3).min(1e-12),
        seed,
    };
    let report = theta_num::verify_sign_table(moduli, &opts).map_err(|e| e.to_string())?;
    let mut lines = vec![format!(
        "sign table: {} (56 entries checked, max deviation {:.3e})",
        if report.all_pass() { "PASS" } else { "FAIL" },
        report.max_deviation
    )];
    for note in &report.factor_notes {
        lines.push(format!("  {note}"));
    }
    for (r, c) in report.failed_entries() {
        lines.push(format!("  mismatch at basis row {r}, generator column {c}"));
    }
    println!("{}", lines.join("\n"));
    Ok(if report.all_pass() { 0 } else { 2 })
}

fn run_check(file: &PathBuf) -> Result<u8, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("cannot read {file:?}: {e}"))?;
    let s = scenario::parse_scenario(&text).map_err(|e| e.to_string())?;
    let audit = hodge::consistency_suite(&s).map_err(|e| e.to_string())?;
    let report = checker::full_report(&s).map_err(|e| e.to_string())?;
    println!("scenario {} validated", s.name());
    for a in s.assumptions() {
        println!("  assumption: {a}");
    }
    for c in &audit.checks {
        println!(
            "  consistency {}: {}",
            c.id,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    println!(
        "  route {}, condition3 {}, condition5 {}, mult(chi_A) = {}",
        report.route.as_str(),
        report.condition3.status.as_str(),
        report.condition5.status.as_str(),
        report.mult_chi_a
    );
    Ok(if audit.all_pass() { 0 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            family,
            all,
            format,
            out,
        } => run_verify(family, all, format.into(), out),
        Command::Tables {
            which,
            format,
            diff_paper,
            out,
        } => run_tables(&which, format.into(), diff_paper, out),
        Command::Numeric {
            tau1,
            tau2,
            tau3,
            samples,
            tol,
            seed,
        } => run_numeric(&tau1, &tau2, &tau3, samples, tol, seed),
        Command::Check { file } => run_check(&file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

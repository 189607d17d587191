//! Command-line front end. Parsing lives here so tests can drive it
//! without spawning a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::bound_report;
use crate::certificate::{verify_theorem, Certificate, Status, VerifyOptions};
use crate::error::Result;
use crate::laurent::{quartic_roots, Precision, DEFAULT_ORDER, DEFAULT_PRECISION_CAP};
use crate::ring::QuarticRing;
use crate::search::{search_units, solution_classes, TRIVIAL_TRIPLES};

pub const PRECISION_CAP_ENV: &str = "THUEFF_PRECISION_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the four Laurent roots of f_λ at infinity
    Roots,
    /// Print the closed-form bound report for a given 𝔞
    Bounds,
    /// Run the exponent search and list the triples it finds
    Search,
    /// Print the solution classes
    Solve,
    /// Run every check and print the certificate
    Verify,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "thueff",
    version,
    about = "Solve F_λ(X, Y) = ξ for the simple quartic family"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation order of the Laurent expansions
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER,
          value_parser = clap::value_parser!(i64).range(1..))]
    pub order: i64,
    /// Degree of λ, used by `bounds`
    #[arg(long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(i64).range(1..))]
    pub a: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for the search (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl CliConfig {
    pub fn new(command: Command) -> Self {
        CliConfig {
            command,
            order: DEFAULT_ORDER,
            a: 1,
            format: Format::Text,
            jobs: 0,
            out: None,
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }
}

/// Precision cap from the environment, falling back to the default.
pub fn precision_cap() -> i64 {
    std::env::var(PRECISION_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<i64>().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

/// Pretty JSON with keys in sorted order, so output is canonical.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

/// Runs one command and returns the exit status with the report text.
pub fn run(config: &CliConfig) -> (i32, String) {
    match dispatch(config) {
        Ok(out) => out,
        Err(e) => (1, format!("error: {e}\n")),
    }
}

fn dispatch(config: &CliConfig) -> Result<(i32, String)> {
    let json = config.format == Format::Json;
    match config.command {
        Command::Roots => {
            let roots = quartic_roots(config.order)?;
            if json {
                let v = json!({ "order": config.order, "roots": roots });
                return Ok((0, to_canonical_json(&v)));
            }
            let mut s = String::new();
            for (i, r) in roots.iter().enumerate() {
                let _ = writeln!(s, "α{} = {}", i + 1, r);
            }
            Ok((0, s))
        }
        Command::Bounds => {
            let r = bound_report(config.a)?;
            if json {
                return Ok((0, to_canonical_json(&r)));
            }
            let rows = [
                ("a", r.a),
                ("rK_bound", r.rk_bound),
                ("genus_bound", r.genus_bound),
                ("W_bound", r.w_bound),
                ("W_bound_unramified", r.w_bound_unramified),
                ("siegel_height_bound", r.siegel_height_bound),
                ("beta_ratio_bound", r.beta_ratio_bound),
                ("exponent_budget", r.exponent_budget),
                ("exponent_budget_at_a", r.exponent_budget_at_a),
            ];
            let mut s = String::new();
            for (k, v) in rows {
                let _ = writeln!(s, "{k:<22}{v:>6}");
            }
            Ok((0, s))
        }
        Command::Search => {
            let ring = QuarticRing::standard();
            let outcome = search_units(ring, crate::bounds::EXPONENT_BUDGET, config.jobs)?;
            let found = outcome.triples();
            let ok = found == TRIVIAL_TRIPLES;
            if json {
                let v = json!({
                    "budget": outcome.budget,
                    "triples_searched": outcome.triples_searched,
                    "triples_found": found,
                    "status": if ok { "pass" } else { "fail" },
                });
                return Ok((i32::from(!ok), to_canonical_json(&v)));
            }
            let mut s = format!(
                "budget {}: searched {} admissible triples\n",
                outcome.budget, outcome.triples_searched
            );
            for t in &found {
                let _ = writeln!(s, "{t}");
            }
            Ok((i32::from(!ok), s))
        }
        Command::Solve => {
            let ring = QuarticRing::standard();
            let outcome = search_units(ring, crate::bounds::EXPONENT_BUDGET, config.jobs)?;
            let classes = solution_classes(ring.modulus(), &outcome.found);
            let ok = classes.len() == 4 && classes.iter().all(|c| c.verify(ring.modulus()));
            if json {
                let v = json!({ "classes": classes });
                return Ok((i32::from(!ok), to_canonical_json(&v)));
            }
            let mut s = String::new();
            for c in &classes {
                let _ = writeln!(s, "{c}");
            }
            Ok((i32::from(!ok), s))
        }
        Command::Verify => {
            let opts = VerifyOptions {
                jobs: config.jobs,
                precision: Precision {
                    start: config.order,
                    cap: precision_cap(),
                },
                ..VerifyOptions::default()
            };
            let cert = verify_theorem(&opts);
            let code = i32::from(!cert.passed());
            if json {
                return Ok((code, to_canonical_json(&cert)));
            }
            Ok((code, certificate_text(&cert)))
        }
    }
}

pub fn certificate_text(cert: &Certificate) -> String {
    let mut s = String::new();
    for c in &cert.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(s, "[{tag}] {:<28} {}", c.name, c.detail);
    }
    let _ = writeln!(
        s,
        "searched {} triples at budget {}; found {}",
        cert.triples_searched,
        cert.budget,
        cert.triples_found
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    for c in &cert.classes {
        let _ = writeln!(s, "  {c}");
    }
    let verdict = if cert.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "{verdict}");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        let c = CliConfig::try_parse_from(["thueff", "roots", "--order", "4", "--format", "json"])
            .unwrap();
        assert_eq!(c.command, Command::Roots);
        assert_eq!((c.order, c.format), (4, Format::Json));
        assert!(CliConfig::try_parse_from(["thueff", "roots", "--order", "0"]).is_err());
        assert!(CliConfig::try_parse_from(["thueff", "bounds", "--a", "0"]).is_err());
        assert!(CliConfig::try_parse_from(["thueff", "frobnicate"]).is_err());
    }

    #[test]
    fn roots_text() {
        let mut c = CliConfig::new(Command::Roots);
        c.order = 4;
        let (code, out) = run(&c);
        assert_eq!(code, 0);
        assert!(out
            .lines()
            .next()
            .unwrap()
            .starts_with("α1 = 1 - 2/λ + 2/λ^2 + 8/λ^3"));
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn bounds_json() {
        let (code, out) = run(&CliConfig::new(Command::Bounds).with_format(Format::Json));
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["siegel_height_bound"], 6);
        assert_eq!(v["beta_ratio_bound"], 7);
        assert_eq!(to_canonical_json(&v), out);
    }
}

//! Command line front end: parse fan files, run the analyses, emit
//! machine-readable reports.
//!
//! Exit codes: 0 on success, 1 when a check verb (validate, cragged) reaches a
//! negative verdict, 2 on input errors. All errors go to standard error as
//! structured JSON.

mod report;

use clap::{Parser, Subcommand};
use cragged_core::homtheta::{self, Character};
use cragged_core::lattice::IntMatrix;
use cragged_core::stackyfan::{self, FanJson, StackyFan};
use cragged_core::{craggedness, lattice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::process::ExitCode;

/// Print to stdout, exiting quietly if the reading end of a pipe went away.
fn print_out(text: &str) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

#[derive(Parser)]
#[command(name = "cragged")]
#[command(about = "Exact decision procedures for stacky fans: validation, \
craggedness, conical Lagrangian fibers, and hom dimensions between theta \
generators")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the stacky fan axioms and completeness
    Validate {
        /// Fan JSON file; "-" reads standard input
        #[arg(long, default_value = "-")]
        fan: String,
    },
    /// Decide whether the fan is cragged (exhaustive and unimodular)
    Cragged {
        #[arg(long, default_value = "-")]
        fan: String,
        /// Also verify every integrality pattern's fiber convexity and check
        /// agreement with the definition-based verdict
        #[arg(long)]
        cross_check: bool,
    },
    /// Fiber of the conical Lagrangian over a rational covector
    Fiber {
        #[arg(long, default_value = "-")]
        fan: String,
        /// Comma-separated rational entries, e.g. "1/2,1/2"
        #[arg(long)]
        phi: String,
    },
    /// Enumerate all realizable integrality patterns
    Patterns {
        #[arg(long, default_value = "-")]
        fan: String,
    },
    /// Hom dimension between two generators (cone, character)
    Hom {
        #[arg(long, default_value = "-")]
        fan: String,
        /// Source generator as coneId:v1,v2,...
        #[arg(long)]
        source: String,
        /// Target generator as coneId:v1,v2,...
        #[arg(long)]
        target: String,
        /// Box bound: lattice points with all coordinates in [-box, box]
        #[arg(long = "box", value_name = "BOX", default_value_t = 5)]
        box_bound: u64,
    },
    /// Matrix of hom dimensions over a generator list
    Hommatrix {
        #[arg(long, default_value = "-")]
        fan: String,
        /// Semicolon-separated generators, each coneId:v1,v2,...
        #[arg(long)]
        gens: String,
        #[arg(long = "box", value_name = "BOX", default_value_t = 5)]
        box_bound: u64,
    },
    /// Construct a fake weighted projective space fan; prints fan JSON
    Fwps {
        /// Comma-separated positive weights with gcd 1, e.g. "1,2,3"
        #[arg(long)]
        weights: String,
    },
    /// Quotient by a finite torus subgroup; prints fan JSON
    Quotient {
        #[arg(long, default_value = "-")]
        fan: String,
        /// Semicolon-separated rational generators, e.g. "1/3,2/3;1/2,0"
        #[arg(long)]
        gens: String,
    },
    /// Gale dual (cokernel presentation) of the fan's beta matrix
    Gale {
        #[arg(long, default_value = "-")]
        fan: String,
    },
    /// Print a named catalog fan, or list all catalog entries
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
}

struct CliError {
    kind: &'static str,
    message: String,
    detail: Option<Value>,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> CliError {
        CliError {
            kind,
            message: message.into(),
            detail: None,
        }
    }

    fn with_detail(kind: &'static str, message: impl Into<String>, detail: Value) -> CliError {
        CliError {
            kind,
            message: message.into(),
            detail: Some(detail),
        }
    }

    fn emit(&self) {
        let v = json!({
            "error": {
                "kind": self.kind,
                "message": self.message,
                "detail": self.detail,
            }
        });
        eprintln!("{}", serde_json::to_string_pretty(&v).unwrap());
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::new("io_error", format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::new("io_error", format!("reading {path}: {e}")))
    }
}

/// Parse a fan file (or inline JSON from stdin) into a structurally sound fan.
fn parse_fan_text(text: &str) -> Result<StackyFan, CliError> {
    let parsed: FanJson = serde_json::from_str(text).map_err(|e| {
        let kind = if e.is_data() { "schema_error" } else { "parse_error" };
        CliError::new(kind, format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    parsed
        .into_fan()
        .map_err(|e| CliError::new("validation_error", e.to_string()))
}

fn load_fan(path: &str) -> Result<StackyFan, CliError> {
    parse_fan_text(&read_input(path)?)
}

/// Load and insist on the fan axioms; the failures are embedded as witnesses.
fn load_valid_fan(path: &str) -> Result<StackyFan, CliError> {
    let fan = load_fan(path)?;
    let rep = fan.validate();
    if !rep.ok {
        let detail = serde_json::to_value(&rep.failures).unwrap();
        return Err(CliError::with_detail(
            "validation_error",
            "fan violates the stacky fan axioms",
            detail,
        ));
    }
    Ok(fan)
}

fn parse_rational(tok: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::new("bad_argument", format!("not a rational number: {tok:?}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = tok.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from(n))
        }
    }
}

fn parse_rational_vector(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',').map(parse_rational).collect()
}

fn parse_character(fan: &StackyFan, s: &str) -> Result<Character, CliError> {
    let (id, values) = s
        .split_once(':')
        .ok_or_else(|| CliError::new("bad_argument", format!("expected coneId:v1,v2,... got {s:?}")))?;
    let id: usize = id
        .trim()
        .parse()
        .map_err(|_| CliError::new("bad_argument", format!("bad cone id in {s:?}")))?;
    let values: Vec<BigInt> = if values.trim().is_empty() {
        Vec::new()
    } else {
        values
            .split(',')
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| CliError::new("bad_argument", format!("bad value in {s:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    Character::new(fan, id, values).map_err(|e| CliError::new("bad_argument", e.to_string()))
}

fn craggedness_error(e: craggedness::CraggednessError) -> CliError {
    use craggedness::CraggednessError::*;
    match e {
        IncompleteFan => CliError::new("incomplete_fan", e.to_string()),
        InvalidFan => CliError::new("validation_error", e.to_string()),
        DimensionMismatch { .. } => CliError::new("bad_argument", e.to_string()),
    }
}

fn run(cmd: &Command) -> Result<u8, CliError> {
    match cmd {
        Command::Validate { fan } => {
            let fan = load_fan(fan)?;
            let rep = fan.validate();
            let digest = report::input_digest(&fan);
            let payload = json!({
                "ok": rep.ok,
                "failures": serde_json::to_value(&rep.failures).unwrap(),
                "is_complete": rep.is_complete,
                "rank": fan.rank(),
                "rays": fan.num_rays(),
                "cones": fan.all_cones().len(),
            });
            let witnesses = rep
                .failures
                .iter()
                .map(|f| json!({"kind": "fan_axiom", "failure": serde_json::to_value(f).unwrap()}))
                .collect();
            print_out(&report::report(&digest, "validate", payload, witnesses));
            Ok(if rep.ok { 0 } else { 1 })
        }
        Command::Cragged { fan, cross_check } => {
            let fan = load_valid_fan(fan)?;
            let rep = craggedness::is_cragged(&fan, *cross_check).map_err(craggedness_error)?;
            let digest = report::input_digest(&fan);
            let payload = report::craggedness_value(&rep);
            let mut witnesses = Vec::new();
            if let Some(w) = &rep.exhaustiveness_witness {
                witnesses.push(json!({"kind": "exhaustiveness", "ray_set": w}));
            }
            if let Some(w) = &rep.unimodularity_witness {
                witnesses.push(json!({
                    "kind": "unimodularity",
                    "ray_indices": w.ray_indices,
                    "n_t_basis": report::int_rows_value(&w.n_t_basis),
                    "index": report::index_value(&w.index),
                }));
            }
            if let Some(f) = &rep.fiber_witness {
                witnesses.push(json!({"kind": "fiber", "fiber": report::fiber_value(f)}));
            }
            print_out(&report::report(&digest, "cragged", payload, witnesses));
            Ok(if rep.cragged { 0 } else { 1 })
        }
        Command::Fiber { fan, phi } => {
            let fan = load_valid_fan(fan)?;
            let phi = parse_rational_vector(phi)?;
            let fiber = craggedness::lambda_fiber(&fan, &phi).map_err(craggedness_error)?;
            let digest = report::input_digest(&fan);
            let payload = report::fiber_value(&fiber);
            print_out(&report::report(&digest, "fiber", payload, Vec::new()));
            Ok(0)
        }
        Command::Patterns { fan } => {
            let fan = load_valid_fan(fan)?;
            let pats = craggedness::enumerate_integrality_patterns(&fan);
            let digest = report::input_digest(&fan);
            let payload = json!({
                "count": pats.len(),
                "patterns": pats.iter().map(report::pattern_value).collect::<Vec<_>>(),
            });
            print_out(&report::report(&digest, "patterns", payload, Vec::new()));
            Ok(0)
        }
        Command::Hom {
            fan,
            source,
            target,
            box_bound,
        } => {
            let fan = load_valid_fan(fan)?;
            let src = parse_character(&fan, source)?;
            let dst = parse_character(&fan, target)?;
            let h = homtheta::hom_dimension(&fan, src.cone, &src, dst.cone, &dst, *box_bound)
                .map_err(|e| CliError::new("bad_argument", e.to_string()))?;
            let digest = report::input_digest(&fan);
            let payload = report::hom_value(&h);
            print_out(&report::report(&digest, "hom", payload, Vec::new()));
            Ok(0)
        }
        Command::Hommatrix {
            fan,
            gens,
            box_bound,
        } => {
            let fan = load_valid_fan(fan)?;
            let generators: Vec<Character> = gens
                .split(';')
                .map(|g| parse_character(&fan, g))
                .collect::<Result<_, _>>()?;
            let m = homtheta::hom_matrix(&fan, &generators, *box_bound)
                .map_err(|e| CliError::new("bad_argument", e.to_string()))?;
            let digest = report::input_digest(&fan);
            let payload = json!({
                "generators": generators.iter().map(|g| json!({
                    "cone": g.cone,
                    "values": report::int_vec_value(&g.values),
                })).collect::<Vec<_>>(),
                "box_bound": box_bound,
                "entries": m.iter()
                    .map(|row| row.iter().map(report::hom_value).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            print_out(&report::report(&digest, "hommatrix", payload, Vec::new()));
            Ok(0)
        }
        Command::Fwps { weights } => {
            let w: Vec<i64> = weights
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| CliError::new("bad_argument", format!("bad weight {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let fan = stackyfan::make_fwps(&w)
                .map_err(|e| CliError::new("bad_argument", e.to_string()))?;
            print_out(&report::canonical_fan_text(&fan));
            Ok(0)
        }
        Command::Quotient { fan, gens } => {
            let fan = load_valid_fan(fan)?;
            let gens: Vec<Vec<BigRational>> = gens
                .split(';')
                .map(parse_rational_vector)
                .collect::<Result<_, _>>()?;
            let q = stackyfan::quotient_by_subgroup(&fan, &gens)
                .map_err(|e| CliError::new("bad_argument", e.to_string()))?;
            print_out(&report::canonical_fan_text(&q));
            Ok(0)
        }
        Command::Gale { fan } => {
            let fan = load_valid_fan(fan)?;
            // beta as the rank x r matrix with the beta vectors as columns
            let rows: Vec<Vec<BigInt>> = (0..fan.rank())
                .map(|row| fan.beta().iter().map(|b| b[row].clone()).collect())
                .collect();
            let beta = IntMatrix::from_rows(&rows);
            let g = lattice::gale_dual(&beta)
                .map_err(|e| CliError::new("bad_argument", e.to_string()))?;
            let digest = report::input_digest(&fan);
            let payload = report::gale_value(&g);
            print_out(&report::report(&digest, "gale", payload, Vec::new()));
            Ok(0)
        }
        Command::Catalog { name } => match name {
            Some(n) => {
                let fan = stackyfan::catalog(n)
                    .map_err(|e| CliError::new("unknown_name", e.to_string()))?;
                print_out(&report::canonical_fan_text(&fan));
                Ok(0)
            }
            None => {
                let list: Vec<Value> = stackyfan::catalog_names()
                    .iter()
                    .map(|n| {
                        json!({
                            "name": n,
                            "description": stackyfan::catalog_info(n).unwrap_or(""),
                        })
                    })
                    .collect();
                print_out(&serde_json::to_string_pretty(&Value::Array(list)).unwrap());
                Ok(0)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            e.emit();
            ExitCode::from(2)
        }
    }
}

//! conelab — batch front end over the cone library. One command per
//! process, JSON in, exactly one JSON document out (stdout, or --output).
//!
//! Exit codes, so shell scripts can branch without parsing:
//!   0  success (including an unfalsified check)
//!   1  a checked property was falsified
//!   2  input error (bad flags, malformed JSON, invalid descriptor)
//!   3  solver failure (non-convergence, blowup, consistency defect)
//!
//! Every argument that takes JSON also accepts `@path` to read the JSON
//! from a file. All randomness comes from the mandatory --seed flags; two
//! runs with the same flags produce byte-identical documents.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use conelab::cone::{ConeDescriptor, Tolerance};
use conelab::ncp::{self, NcpInstance, NcpMap};
use conelab::{
    check_duality, check_invariance, check_isotone, check_subadditive, dual, lattice_op,
    moreau_decompose, project, ConeError, OpKind, Verdict,
};

#[derive(Parser)]
#[command(name = "conelab", version, about = "Cone projections, order properties, complementarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the output document to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Relative tolerance for set-membership verdicts
    #[arg(long, global = true, default_value_t = 1e-8)]
    membership_tol: f64,

    /// Stopping tolerance of the iterative solvers
    #[arg(long, global = true, default_value_t = 1e-10)]
    solver_tol: f64,

    /// Iteration cap shared by all solvers
    #[arg(long, global = true, default_value_t = 100_000)]
    max_iter: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Project a point onto a cone
    Project {
        /// Cone descriptor as JSON (or @file)
        #[arg(long)]
        cone: String,
        /// Point as a JSON array (or @file)
        #[arg(long)]
        x: String,
    },
    /// Split x into its cone part and dual-cone part (x = p − q, ⟨p,q⟩ = 0)
    Decompose {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        x: String,
    },
    /// Apply one lattice-like operation to a pair of points
    Lattice {
        /// One of meet_k, join_k, meet_l, join_l
        #[arg(long, value_parser = parse_op)]
        op: OpKind,
        #[arg(long)]
        cone: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Search for a violation of projection isotonicity
    CheckIsotone {
        /// Cone being projected onto, as JSON (or @file)
        #[arg(long)]
        proj_cone: String,
        /// Order cone: "same", "dual", or JSON (or @file)
        #[arg(long, default_value = "same")]
        order_cone: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Search for a violation of projection subadditivity
    CheckSubadditive {
        #[arg(long)]
        proj_cone: String,
        /// Order cone: "same", "dual", or JSON (or @file)
        #[arg(long, default_value = "same")]
        order_cone: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Search for a pair that the lattice-like operations push out of a set
    CheckInvariance {
        /// The set whose closure under the operations is being tested
        #[arg(long)]
        set_cone: String,
        /// Cone defining the operations: "same", "dual", or JSON (or @file)
        #[arg(long, default_value = "same")]
        order_cone: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Run the isotone and (dual) subadditive falsifiers and compare verdicts
    CheckDuality {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Iterate x ← P_K(x − α f(x)) on a complementarity problem
    SolveNcp {
        /// Problem instance as JSON (or @file):
        /// {"cone":{...},"f":{"type":"affine","M":[[...]],"q":[...]},"step":1.0,"x0":[...]}
        #[arg(long)]
        problem: String,
        /// Override the instance step: a number, or "auto" for 1/λ_max(M)
        /// estimated by 50 power-iteration steps
        #[arg(long)]
        step: Option<String>,
    },
    /// Print the built-in cone collection (one descriptor per variant)
    Catalog,
}

fn parse_op(s: &str) -> Result<OpKind, String> {
    match s {
        "meet_k" => Ok(OpKind::MeetK),
        "join_k" => Ok(OpKind::JoinK),
        "meet_l" => Ok(OpKind::MeetL),
        "join_l" => Ok(OpKind::JoinL),
        other => Err(format!("unknown operation '{other}' (expected meet_k, join_k, meet_l or join_l)")),
    }
}

/// A failure that becomes the output document: {"error":{"kind":...,"message":...}}.
struct Failure {
    kind: &'static str,
    message: String,
    exit: u8,
}

impl Failure {
    fn input(kind: &'static str, message: String) -> Self {
        Failure { kind, message, exit: 2 }
    }

    fn document(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        let (kind, exit) = match &e {
            ConeError::DimensionMismatch { .. } => ("dimension_mismatch", 2),
            ConeError::InvalidDescriptor(_) => ("invalid_descriptor", 2),
            ConeError::InvalidTolerance(_) => ("invalid_tolerance", 2),
            ConeError::NonFiniteInput(_) => ("non_finite_input", 2),
            ConeError::NonConvergence { .. } => ("non_convergence", 3),
            ConeError::NumericalBlowup { .. } => ("numerical_blowup", 3),
            ConeError::ConsistencyFailure(_) => ("consistency_failure", 3),
        };
        Failure { kind, message: e.to_string(), exit }
    }
}

/// Resolves a JSON-or-@file argument.
fn arg_text(raw: &str) -> Result<String, Failure> {
    if let Some(path) = raw.strip_prefix('@') {
        fs::read_to_string(path)
            .map_err(|e| Failure::input("io", format!("cannot read '{path}': {e}")))
    } else {
        Ok(raw.to_string())
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(raw: &str, what: &str) -> Result<T, Failure> {
    let text = arg_text(raw)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input("parse", format!("malformed {what}: {e}")))
}

fn parse_cone(raw: &str) -> Result<ConeDescriptor, Failure> {
    let k: ConeDescriptor = parse_json(raw, "cone descriptor")?;
    k.validate()?;
    Ok(k)
}

/// "same" | "dual" | explicit JSON, relative to an already-parsed cone.
fn parse_order_cone(raw: &str, base: &ConeDescriptor) -> Result<ConeDescriptor, Failure> {
    match raw {
        "same" => Ok(base.clone()),
        "dual" => Ok(dual(base)),
        other => parse_cone(other),
    }
}

fn verdict_exit(v: Verdict) -> u8 {
    match v {
        Verdict::Unfalsified => 0,
        Verdict::Falsified => 1,
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serialization cannot fail")
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let tol = Tolerance::new(cli.membership_tol, cli.solver_tol, cli.max_iter)?;
    match &cli.command {
        Command::Project { cone, x } => {
            let k = parse_cone(cone)?;
            let x: Vec<f64> = parse_json(x, "point")?;
            let r = project(&x, &k, &tol)?;
            Ok((to_value(&r), 0))
        }
        Command::Decompose { cone, x } => {
            let k = parse_cone(cone)?;
            let x: Vec<f64> = parse_json(x, "point")?;
            let (p, q) = moreau_decompose(&x, &k, &tol)?;
            let ip: f64 = p.iter().zip(&q).map(|(a, b)| a * b).sum();
            Ok((json!({ "cone_part": p, "dual_part": q, "inner_product": ip }), 0))
        }
        Command::Lattice { op, cone, x, y } => {
            let k = parse_cone(cone)?;
            let x: Vec<f64> = parse_json(x, "point x")?;
            let y: Vec<f64> = parse_json(y, "point y")?;
            let result = lattice_op(*op, &x, &y, &k, &tol)?;
            Ok((json!({ "op": to_value(op), "result": result }), 0))
        }
        Command::CheckIsotone { proj_cone, order_cone, samples, seed } => {
            let c = parse_cone(proj_cone)?;
            let k = parse_order_cone(order_cone, &c)?;
            let rep = check_isotone(&c, &k, *samples, *seed, &tol)?;
            Ok((to_value(&rep), verdict_exit(rep.verdict)))
        }
        Command::CheckSubadditive { proj_cone, order_cone, samples, seed } => {
            let c = parse_cone(proj_cone)?;
            let k = parse_order_cone(order_cone, &c)?;
            let rep = check_subadditive(&c, &k, *samples, *seed, &tol)?;
            Ok((to_value(&rep), verdict_exit(rep.verdict)))
        }
        Command::CheckInvariance { set_cone, order_cone, samples, seed } => {
            let c = parse_cone(set_cone)?;
            let k = parse_order_cone(order_cone, &c)?;
            let rep = check_invariance(&c, &k, *samples, *seed, &tol)?;
            Ok((to_value(&rep), verdict_exit(rep.verdict)))
        }
        Command::CheckDuality { cone, samples, seed } => {
            let k = parse_cone(cone)?;
            let rep = check_duality(&k, *samples, *seed, &tol)?;
            Ok((to_value(&rep), verdict_exit(rep.verdict)))
        }
        Command::SolveNcp { problem, step } => {
            let instance: NcpInstance = parse_json(problem, "problem instance")?;
            let (mut prob, x0) = instance.into_parts();
            if let Some(s) = step {
                prob.step = resolve_step(s, &prob.f)?;
            }
            let sol = ncp::solve(&prob, &x0, cli.max_iter, &tol)?;
            let exit = if sol.converged { 0 } else { 3 };
            Ok((json!({ "step": prob.step, "solution": to_value(&sol) }), exit))
        }
        Command::Catalog => {
            let cones = conelab::catalog();
            Ok((to_value(&cones), 0))
        }
    }
}

fn resolve_step(raw: &str, f: &NcpMap) -> Result<f64, Failure> {
    if raw == "auto" {
        let NcpMap::Affine { m, .. } = f else {
            return Err(Failure::input(
                "invalid_step",
                "--step auto needs an affine map".to_string(),
            ));
        };
        let lambda = ncp::lambda_max_estimate(m, 50);
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Failure::input(
                "invalid_step",
                format!("power iteration estimated λ_max = {lambda}; cannot derive a step"),
            ));
        }
        Ok(1.0 / lambda)
    } else {
        raw.parse::<f64>()
            .map_err(|_| Failure::input("invalid_step", format!("not a number: '{raw}'")))
    }
}

fn emit(document: &Value, target: &Option<PathBuf>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(document).expect("documents are plain trees");
    text.push('\n');
    match target {
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write '{}': {e}", path.display())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (document, exit) = match run(&cli) {
        Ok((doc, exit)) => (doc, exit),
        Err(failure) => (failure.document(), failure.exit),
    };
    match emit(&document, &cli.output) {
        Ok(()) => ExitCode::from(exit),
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}

//! `qhg`: evaluate, verify and sweep the |q| = 1 hypergeometric integrals.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or domain error,
//! 3 accuracy failure.

mod report;
mod targets;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use qhyper::numerics::QuadratureConfig;
use qhyper::verify::{run_suite, Suite, VerifyConfig};
use qhyper::Error;

use report::{Format, Output};
use targets::{evaluate, Params, Target};

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ACCURACY: u8 = 3;

/// Default quadrature tolerance when neither `--tol` nor `QHG_DEFAULT_TOL` is given.
const DEFAULT_TOL: f64 = 1e-11;

/// An evaluation whose error estimate exceeds this many tolerances counts as an accuracy failure.
const ACCURACY_SLACK: f64 = 1e3;

#[derive(Debug, Parser)]
#[command(name = "qhg", version, about = "Integral solutions of the hypergeometric q-difference equation with |q| = 1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Quadrature tolerance for eval and sweep; tolerance factor for verify.
    #[arg(long)]
    tol: Option<f64>,
    /// Omit timestamps and timings so identical runs give identical output.
    #[arg(long)]
    reproducible: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a target once.
    Eval {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite: all, doublesine, qgamma, barnes, euler or oracles.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a target over a grid of one or two scalar inputs.
    Sweep {
        #[arg(value_enum)]
        target: Target,
        /// `NAME=START:STOP:COUNT` or `NAME=V1,V2,...`; at most two, combined as a product.
        #[arg(long = "grid", required = true)]
        grid: Vec<String>,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        common: Common,
    },
}

fn input_error(out: &Output, err: &Error) -> ExitCode {
    eprintln!("qhg: {err}");
    let _ = out.emit(vec![report::error_record(err)], Map::new());
    ExitCode::from(exit_code_for(err))
}

fn exit_code_for(err: &Error) -> u8 {
    if err.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_ACCURACY
    }
}

fn default_tol() -> std::result::Result<f64, Error> {
    match std::env::var("QHG_DEFAULT_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| Error::Parameter(format!("QHG_DEFAULT_TOL = '{s}' is not a positive number"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn quadrature_for(tol: f64) -> QuadratureConfig {
    QuadratureConfig { abs_tol: 0.1 * tol, rel_tol: tol, ..QuadratureConfig::default() }
}

fn resolve_tol(common: &Common) -> std::result::Result<f64, Error> {
    match common.tol {
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Error::Parameter(format!("--tol must be positive, got {t}"))),
        None => default_tol(),
    }
}

fn configure_threads() -> std::result::Result<(), Error> {
    if let Ok(s) = std::env::var("QHG_THREADS") {
        let n = s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| Error::Parameter(format!("QHG_THREADS = '{s}' is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn meta(common: &Common, extra: Map<String, Value>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("seed".into(), json!(common.seed));
    m.insert("versions".into(), json!({ "qhg": env!("CARGO_PKG_VERSION"), "qhyper": qhyper::VERSION }));
    m.extend(extra);
    if !common.reproducible {
        let now = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        m.insert("timestamp".into(), json!(now));
    }
    m
}

/// One evaluation as a record, with the exit code it implies.
fn eval_record(target: Target, params: &Params, tol: f64) -> (Value, u8) {
    let mut rec = Map::new();
    rec.insert("target".into(), json!(target.name()));
    rec.extend(params.fields());
    match evaluate(target, params, &quadrature_for(tol)) {
        Ok(o) => {
            rec.insert("value_re".into(), json!(o.value.re));
            rec.insert("value_im".into(), json!(o.value.im));
            rec.insert("error_estimate".into(), json!(o.error_estimate));
            if let Some(r) = o.residual {
                rec.insert("residual".into(), json!(r));
            }
            rec.insert("warnings".into(), json!(o.warnings));
            let code = if o.error_estimate > ACCURACY_SLACK * tol * o.value.norm().max(1.0) {
                rec.insert("accuracy_failure".into(), json!(true));
                EXIT_ACCURACY
            } else {
                EXIT_OK
            };
            (Value::Object(rec), code)
        }
        Err(e) => {
            rec.insert("error".into(), report::error_value(&e));
            (Value::Object(rec), exit_code_for(&e))
        }
    }
}

fn cmd_eval(target: Target, params: Params, common: Common) -> ExitCode {
    let out = Output::new(common.format, common.out.clone());
    let tol = match resolve_tol(&common) {
        Ok(t) => t,
        Err(e) => return input_error(&out, &e),
    };
    let (rec, code) = eval_record(target, &params, tol);
    if let Some(err) = rec.get("error") {
        eprintln!("qhg: {}", err["message"].as_str().unwrap_or("evaluation failed"));
    }
    let m = meta(&common, tolerance_meta(tol));
    if let Err(e) = out.emit(vec![rec], m) {
        eprintln!("qhg: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    ExitCode::from(code)
}

fn tolerance_meta(tol: f64) -> Map<String, Value> {
    let q = quadrature_for(tol);
    let mut m = Map::new();
    m.insert("tolerances".into(), json!({ "quadrature_abs": q.abs_tol, "quadrature_rel": q.rel_tol }));
    m
}

fn cmd_verify(suite: &str, common: Common) -> ExitCode {
    let out = Output::new(common.format, common.out.clone());
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return input_error(&out, &e),
    };
    let factor = match common.tol {
        Some(t) if t > 0.0 && t.is_finite() => t,
        Some(t) => return input_error(&out, &Error::Parameter(format!("--tol must be positive, got {t}"))),
        None => 1.0,
    };
    let cfg = VerifyConfig { seed: common.seed, tolerance_factor: factor };
    let t = Instant::now();
    let records = run_suite(suite, &cfg);
    let all_pass = records.iter().all(|r| r.pass);
    for r in &records {
        eprintln!(
            "{} {:30} deviation {:.3e} tolerance {:.1e}",
            if r.pass { "pass" } else { "FAIL" },
            r.check_id,
            r.max_deviation,
            r.tolerance
        );
    }
    let values: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).unwrap_or(Value::Null);
            if common.reproducible {
                if let Some(o) = v.as_object_mut() {
                    o.remove("runtime_secs");
                }
            }
            v
        })
        .collect();
    let mut extra = Map::new();
    extra.insert("suite".into(), json!(suite));
    extra.insert("tolerances".into(), json!({ "factor": factor }));
    extra.insert("all_pass".into(), json!(all_pass));
    if !common.reproducible {
        extra.insert("runtime_secs".into(), json!(t.elapsed().as_secs_f64()));
    }
    if let Err(e) = out.emit(values, meta(&common, extra)) {
        eprintln!("qhg: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    ExitCode::from(if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Parses `NAME=START:STOP:COUNT` or `NAME=V1,V2,...`.
fn parse_axis(arg: &str) -> std::result::Result<(String, Vec<f64>), Error> {
    let bad = || Error::Parameter(format!("grid '{arg}' is not NAME=START:STOP:COUNT or NAME=V1,V2,..."));
    let (name, rest) = arg.split_once('=').ok_or_else(bad)?;
    let values = if rest.contains(':') {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        match count {
            0 => Vec::new(),
            1 => vec![start],
            n => (0..n).map(|k| start + (stop - start) * k as f64 / (n - 1) as f64).collect(),
        }
    } else if rest.trim().is_empty() {
        Vec::new()
    } else {
        rest.split(',').map(|v| v.trim().parse::<f64>().map_err(|_| bad())).collect::<std::result::Result<_, _>>()?
    };
    Ok((name.trim().to_string(), values))
}

fn cmd_sweep(target: Target, grid: Vec<String>, params: Params, common: Common) -> ExitCode {
    let out = Output::new(common.format, common.out.clone());
    let tol = match resolve_tol(&common) {
        Ok(t) => t,
        Err(e) => return input_error(&out, &e),
    };
    if grid.len() > 2 {
        return input_error(&out, &Error::Parameter("at most two grid axes".into()));
    }
    let mut axes = Vec::new();
    for g in &grid {
        match parse_axis(g) {
            Ok(a) => axes.push(a),
            Err(e) => return input_error(&out, &e),
        }
    }
    // build the product grid in row-major order
    let mut points: Vec<Params> = vec![params];
    for (name, values) in &axes {
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in values {
                let mut q = p.clone();
                if let Err(e) = q.set(name, *v) {
                    return input_error(&out, &e);
                }
                next.push(q);
            }
        }
        points = next;
    }
    if points.is_empty() {
        return input_error(&out, &Error::Parameter("empty grid".into()));
    }
    let results: Vec<(Value, u8)> = points.par_iter().map(|p| eval_record(target, p, tol)).collect();
    let succeeded = results.iter().filter(|(r, _)| r.get("error").is_none()).count();
    let first_code = results.iter().map(|(_, c)| *c).find(|c| *c != EXIT_OK).unwrap_or(EXIT_OK);
    let records: Vec<Value> = results.into_iter().map(|(r, _)| r).collect();
    let mut extra = tolerance_meta(tol);
    extra.insert("points".into(), json!(records.len()));
    extra.insert("succeeded".into(), json!(succeeded));
    if let Err(e) = out.emit(records, meta(&common, extra)) {
        eprintln!("qhg: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    ExitCode::from(if succeeded > 0 { EXIT_OK } else { first_code })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("qhg: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    match cli.command {
        Command::Eval { target, params, common } => cmd_eval(target, params, common),
        Command::Verify { suite, common } => cmd_verify(&suite, common),
        Command::Sweep { target, grid, params, common } => cmd_sweep(target, grid, params, common),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_forms() {
        let (n, v) = parse_axis("z-re=-0.5:-0.05:10").unwrap();
        assert_eq!(n, "z-re");
        assert_eq!(v.len(), 10);
        assert!((v[9] + 0.05).abs() < 1e-15);
        assert_eq!(parse_axis("z-im=5,10,20,40").unwrap().1, vec![5.0, 10.0, 20.0, 40.0]);
        assert!(parse_axis("z-im=").unwrap().1.is_empty());
        assert!(parse_axis("z-im=1:2").is_err());
        assert!(parse_axis("nonsense").is_err());
    }
}

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use twistcalc::chern::{charge_for, gamma_rep};
use twistcalc::expr::parse_expr;
use twistcalc::haar::Haar;
use twistcalc::ncalg::Ctx;
use twistcalc::oracle::{numeric_charge, Locus, Oracle, OracleConfig};
use twistcalc::qphase::{DeformationContext, ExactScalar};
use twistcalc::sphere::{hodge_sphere, integrate, reduce_with_quotient};
use twistcalc::suite::{run_suite, SuiteOptions};

#[derive(Parser)]
#[command(name = "twistcalc", version, about = "Exact calculus on twisted quantum planes and spheres")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Ambient dimension D.
    #[arg(long, global = true, default_value_t = 5)]
    dim: usize,
    /// Instanton index n (sphere S^{2n}).
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Torus moduli, one per deformation parameter, e.g. `13,17`. Extra values
    /// are ignored and missing ones are filled with default primes.
    #[arg(long, global = true, value_delimiter = ',')]
    moduli: Option<Vec<u32>>,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant suites.
    Suite {
        #[command(subcommand)]
        action: SuiteAction,
    },
    /// The pairing of the instanton projector with the sphere cycle.
    Charge {
        /// Also evaluate the charge in the numeric torus models.
        #[arg(long)]
        numeric_check: bool,
    },
    /// The Haar functional of a plane function.
    Haar {
        #[arg(long)]
        expr: String,
        /// Phase angles used for the numeric value, one per parameter.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Option<Vec<f64>>,
    },
    /// Hodge star of a k-form on the sphere S^N.
    Hodge {
        #[arg(long)]
        sphere: usize,
        #[arg(long)]
        expr: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Option<Vec<f64>>,
    },
    /// Integral of an N-form over the sphere S^N.
    Integrate {
        #[arg(long)]
        sphere: usize,
        #[arg(long)]
        expr: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Option<Vec<f64>>,
    },
    /// Checks that an element vanishes in the numeric torus models.
    Oracle {
        #[arg(long)]
        expr: String,
        /// Check modulo the sphere relations instead of on the plane.
        #[arg(long)]
        on_sphere: bool,
        /// Number of sample points.
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

#[derive(Subcommand)]
enum SuiteAction {
    /// Runs one suite: qphase, ncalg, tensor, haar, sphere, hodge, chern, oracle or all.
    Run { name: String },
}

#[derive(Serialize)]
struct Numeric {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Output {
    exact: String,
    numeric: Option<Numeric>,
    degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    models: Option<Vec<Numeric>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_magnitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
}

impl Output {
    fn new(exact: String, numeric: Option<(f64, f64)>, degree: usize) -> Self {
        Output {
            exact,
            numeric: numeric.map(|(re, im)| Numeric { re, im }),
            degree,
            models: None,
            max_magnitude: None,
            evaluations: None,
            passed: None,
        }
    }
}

type Failure = Box<dyn std::error::Error>;

fn context(dim: usize) -> Result<Ctx, Failure> {
    Ok(Arc::new(DeformationContext::new(dim)?))
}

fn sphere_context(n: usize) -> Result<Ctx, Failure> {
    context(n + 1)
}

/// Phase angles `theta_p`, defaulting to a fixed generic choice.
fn angles(ctx: &Ctx, theta: Option<Vec<f64>>) -> Result<Vec<f64>, Failure> {
    let k = ctx.num_params();
    match theta {
        Some(t) if t.len() != k => Err(format!("--theta needs {k} values, got {}", t.len()).into()),
        Some(t) => Ok(t),
        None => Ok((0..k).map(|p| 0.7 + 0.3 * p as f64).collect()),
    }
}

fn numeric(s: &ExactScalar, theta: &[f64]) -> (f64, f64) {
    let z = s.eval(theta);
    (z.re, z.im)
}

fn show(ctx: &Ctx, s: &ExactScalar) -> String {
    s.display(ctx.params()).to_string()
}

fn print_output(o: &Output, json: bool, label: &str) {
    if json {
        println!("{}", serde_json::to_string(o).expect("serialisable output"));
        return;
    }
    println!("{label} = {}", o.exact);
    if let Some(n) = &o.numeric {
        println!("numeric = {:.15} {:+.15}i", n.re, n.im);
    }
    if let Some(ms) = &o.models {
        for (k, n) in ms.iter().enumerate() {
            println!("model {k}: {:.15} {:+.15}i", n.re, n.im);
        }
    }
    if let (Some(m), Some(e)) = (o.max_magnitude, o.evaluations) {
        println!("max magnitude {m:.3e} over {e} evaluations");
    }
    if let Some(p) = o.passed {
        println!("{}", if p { "PASS" } else { "FAIL" });
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let g = cli.global;
    let config =
        |points: usize| OracleConfig { moduli: g.moduli.clone(), seed: g.seed, points, ..OracleConfig::default() };
    match cli.command {
        Command::Suite { action: SuiteAction::Run { name } } => {
            let opts = SuiteOptions { dim: g.dim, n: g.n, seed: g.seed, moduli: g.moduli.clone() };
            let report = run_suite(&name, &opts)?;
            if g.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for f in &report.failures {
                    println!("FAIL {}: expected {}, got {}", f.expression, f.expected, f.got);
                }
                println!(
                    "suite {}: {} cases, {} failures, seed {}, {} ms",
                    report.name,
                    report.cases,
                    report.failures.len(),
                    report.seed,
                    report.wall_time_ms
                );
            }
            Ok(report.passed())
        }
        Command::Charge { numeric_check } => {
            let rep = gamma_rep(g.n)?;
            let ctx = rep.ctx().clone();
            let exact = charge_for(&rep)?;
            let mut out = Output::new(show(&ctx, &exact), Some(numeric(&exact, &angles(&ctx, None)?)), 2 * g.n);
            let mut ok = exact.is_one();
            if numeric_check {
                let cfg = config(20);
                let oracle = Oracle::new(&ctx, cfg.clone())?;
                let values = oracle.models().iter().map(|t| numeric_charge(&rep, t)).collect::<Result<Vec<_>, _>>()?;
                let worst = values.iter().map(|v| (v - 1.0).norm()).fold(0.0, f64::max);
                ok &= worst < cfg.tol;
                out.models = Some(values.iter().map(|v| Numeric { re: v.re, im: v.im }).collect());
                out.max_magnitude = Some(worst);
                out.evaluations = Some(values.len());
                out.passed = Some(worst < cfg.tol);
            }
            print_output(&out, g.json, "charge");
            Ok(ok)
        }
        Command::Haar { expr, theta } => {
            let ctx = context(g.dim)?;
            let f = parse_expr(&ctx, &expr)?;
            let v = Haar::new(&ctx).eval(&f)?;
            let out = Output::new(show(&ctx, &v), Some(numeric(&v, &angles(&ctx, theta)?)), 0);
            print_output(&out, g.json, "h");
            Ok(true)
        }
        Command::Hodge { sphere, expr, theta } => {
            let ctx = sphere_context(sphere)?;
            let beta = parse_expr(&ctx, &expr)?;
            let k = beta.form_degree()?.unwrap_or(0);
            let star = reduce_with_quotient(&hodge_sphere(&beta)?).1;
            // numeric value: the norm-type scalar integral of beta^* ^ *beta
            let norm = integrate(&(&beta.star() * &star))?;
            let out = Output::new(star.to_string(), Some(numeric(&norm, &angles(&ctx, theta)?)), sphere - k);
            print_output(&out, g.json, "*");
            Ok(true)
        }
        Command::Integrate { sphere, expr, theta } => {
            let ctx = sphere_context(sphere)?;
            let omega = parse_expr(&ctx, &expr)?;
            let v = integrate(&omega)?;
            let out = Output::new(show(&ctx, &v), Some(numeric(&v, &angles(&ctx, theta)?)), sphere);
            print_output(&out, g.json, "integral");
            Ok(true)
        }
        Command::Oracle { expr, on_sphere, points } => {
            let ctx = context(g.dim)?;
            let f = parse_expr(&ctx, &expr)?;
            let degree = f.form_degree()?.unwrap_or(0);
            let oracle = Oracle::new(&ctx, config(points))?;
            let locus = if on_sphere { Locus::Sphere } else { Locus::Plane };
            let r = oracle.check_identity(&f, locus)?;
            let mut out = Output::new(f.to_string(), Some((r.max_magnitude, 0.0)), degree);
            out.max_magnitude = Some(r.max_magnitude);
            out.evaluations = Some(r.evaluations);
            out.passed = Some(r.passed);
            print_output(&out, g.json, "expr");
            Ok(r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

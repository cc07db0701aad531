//! Command-line front end: every subcommand prints one JSON object
//! `{value, error_estimate, provenance, config}`.
//!
//! Exit status is 0 on success, 2 when a check fails and 1 on bad input.

mod tau;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use siegel_volume::fiber::{enumerate_solutions, ProjectivePointFp};
use siegel_volume::forms::{eval, fourier_coefficient, FormName, FormSpec, DEFAULT_GRID, DEFAULT_Y};
use siegel_volume::identities::{boundary_suite, igusa_suite, invariance_suite, splitting_suite, DEFAULT_SEED};
use siegel_volume::numerics::{Basis, PrecisionConfig};
use siegel_volume::quadrature::{
    integrate_a1, rohrlich_rhs, term_b_numeric, A1Integrand, IntegrationConfig, QuadratureMode,
};
use siegel_volume::symplectic::{reduce1, reduce2, CandidateSet};
use siegel_volume::theta::SiegelPoint;
use siegel_volume::volume::assemble;
use siegel_volume::Error;

use tau::{cx_json, parse_tau, tau_json};

const ROHRLICH_TOL: f64 = 1e-4;
const TERM_B_TOL: f64 = 1e-3;
const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "siegel-volume", version, about = "Siegel modular forms and the arithmetic volume of A2")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    /// Target absolute error for quadrature.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    /// Height above which the cusp of the modular curve is handled analytically.
    #[arg(long, global = true, default_value_t = 10.0)]
    cusp_cutoff: f64,
    /// Quadrature mode: adaptive or monte_carlo.
    #[arg(long, global = true, default_value = "adaptive")]
    mode: QuadratureMode,
    /// Seed for the random test points and Monte Carlo sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value of a form at a point given as JSON.
    Eval { form: FormName, tau: String },
    /// Reduce a point into the fundamental domain.
    Reduce { tau: String },
    /// Igusa relation, diagonal splitting, boundary behaviour and modular invariance.
    Identities {
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Fourier coefficient a(n, l, m) of a degree-2 form.
    Fourier {
        form: FormName,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        l: i64,
        #[arg(allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Integral over the modular curve: `1`, `log_pet_E4` or `log_pet_E6`.
    Integrate { integrand: A1Integrand },
    /// Closed form of the integral of log ||f|| against its quadrature value.
    Rohrlich { form: FormName },
    /// Common zeros of the fiber system over F_p.
    Fiber {
        #[arg(long)]
        prime: u64,
    },
    /// Exact assembly of the archimedean arithmetic volume.
    Volume,
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::QuadratureDiverged { .. } | Error::Reconstruction(_) | Error::ReductionDiverged { .. } => {
                Failure::Verification(json!({ "error": e.to_string() }))
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    value: Value,
    error_estimate: f64,
    provenance: &'static str,
    verified: bool,
}

impl Output {
    fn ok(value: Value, error_estimate: f64, provenance: &'static str) -> Self {
        Self { value, error_estimate, provenance, verified: true }
    }
}

fn precision(cli: &Cli) -> Result<PrecisionConfig, Failure> {
    PrecisionConfig::new(cli.digits, 10f64.powi(-(cli.digits as i32)), cli.tolerance.min(0.5)).map_err(Failure::from)
}

fn integration(cli: &Cli) -> Result<IntegrationConfig, Failure> {
    let c = IntegrationConfig {
        cusp_cutoff: cli.cusp_cutoff,
        target_tolerance: cli.tolerance,
        mode: cli.mode,
        rng_seed: cli.seed,
        ..IntegrationConfig::default()
    };
    c.validate()?;
    Ok(c)
}

fn run(cli: &Cli, cfg: &PrecisionConfig) -> Result<Output, Failure> {
    match &cli.command {
        Command::Eval { form, tau } => {
            let tau = parse_tau(tau, cfg.bits())?;
            let spec = FormSpec::new(*form, tau.degree())?;
            let v = eval(&spec, &tau, cfg)?;
            let err = v.abs().to_f64() * cfg.series_tolerance();
            Ok(Output::ok(json!({ "form": form.as_str(), "tau": tau_json(&tau), "f": cx_json(&v) }), err, "theta-constant series"))
        }
        Command::Reduce { tau } => {
            let tau = parse_tau(tau, cfg.bits())?;
            let value = match &tau {
                SiegelPoint::Degree1(t) => {
                    let r = reduce1(t);
                    let g = r.transformation;
                    json!({
                        "point": tau_json(&r.point.into()),
                        "transformation": [[g.a, g.b], [g.c, g.d]],
                        "steps": r.steps,
                    })
                }
                SiegelPoint::Degree2(t) => {
                    let r = reduce2(t, &CandidateSet::default(), 1000)?;
                    json!({
                        "point": tau_json(&r.point.into()),
                        "transformation": r.transformation.entries(),
                        "steps": r.steps,
                    })
                }
            };
            Ok(Output::ok(value, 0.0, "Gauss and Minkowski reduction with the determinant candidates"))
        }
        Command::Identities { points } => {
            let n = *points;
            let mut suites = vec![
                igusa_suite(n, cli.seed, cfg),
                splitting_suite(n, cli.seed, cfg),
                boundary_suite(n.min(20), 30.0, cli.seed, cfg),
            ];
            let (norms, rt) = invariance_suite(n.min(50), cli.seed, cfg)?;
            suites.extend([norms, rt]);
            let verified = suites.iter().all(|s| s.passed);
            let worst = suites.iter().map(|s| s.max_error).fold(0.0, f64::max);
            Ok(Output {
                value: json!({ "passed": verified, "suites": suites }),
                error_estimate: worst,
                provenance: "seeded random points, worst error per suite",
                verified,
            })
        }
        Command::Fourier { form, n, l, m, grid } => {
            let spec = FormSpec::new(*form, 2)?;
            let c = fourier_coefficient(&spec, (*n, *l, *m), DEFAULT_Y, *grid, cfg)?;
            let re = c.re.to_f64();
            let nearest = re.round();
            let off = (re - nearest).abs().max(c.im.to_f64().abs());
            Ok(Output {
                value: json!({ "coefficient": cx_json(&c), "nearest_integer": nearest, "integral": off < INTEGRALITY_TOL }),
                error_estimate: off,
                provenance: "discrete Fourier transform in x at fixed y",
                verified: off < INTEGRALITY_TOL,
            })
        }
        Command::Integrate { integrand } => {
            let r = integrate_a1(*integrand, &integration(cli)?)?;
            Ok(Output::ok(serde_json::to_value(r).expect("plain data"), r.error_estimate, "quadrature over the fundamental domain"))
        }
        Command::Rohrlich { form } => {
            let spec = FormSpec::new(*form, 1)?;
            let integrand = A1Integrand::LogPetersson(*form);
            let closed = rohrlich_rhs(&spec, cfg)?;
            let numeric = integrate_a1(integrand, &integration(cli)?)?;
            let diff = (closed - numeric.value).abs();
            Ok(Output {
                value: json!({ "closed_form": closed, "quadrature": numeric, "difference": diff }),
                error_estimate: numeric.error_estimate,
                provenance: "Rohrlich formula from the elliptic divisor",
                verified: diff < ROHRLICH_TOL,
            })
        }
        Command::Fiber { prime } => {
            let sols = enumerate_solutions(*prime)?;
            let lines: Vec<String> = sols.iter().map(ProjectivePointFp::to_string).collect();
            Ok(Output::ok(
                json!({ "prime": prime, "count": sols.len(), "solutions": lines }),
                0.0,
                "exhaustive search of P^4(F_p)",
            ))
        }
        Command::Volume => {
            let report = assemble(cfg)?;
            let b_num = term_b_numeric(&integration(cli)?, cfg)?;
            let diff = (report.numeric_values.term_b - b_num.value).abs();
            let mut value = serde_json::to_value(&report).expect("plain data");
            value["term_b_numeric"] = serde_json::to_value(&b_num).expect("plain data");
            value["term_b_difference"] = json!(diff);
            value["ratio"] = json!(report.normalization);
            let one = report.assembled.coefficient(Basis::One).to_string();
            value["assembled_one"] = json!(one);
            Ok(Output {
                value,
                error_estimate: b_num.error_estimate,
                provenance: "exact rational assembly; term B cross-checked by quadrature",
                verified: diff < TERM_B_TOL,
            })
        }
    }
}

fn emit(doc: &Value) {
    // a closed pipe is not an error worth a panic
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(doc).expect("valid JSON"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = precision(&cli).and_then(|cfg| run(&cli, &cfg).map(|o| (o, cfg)));
    match result {
        Ok((out, cfg)) => {
            let config = json!({
                "precision": cfg,
                "tolerance": cli.tolerance,
                "cusp_cutoff": cli.cusp_cutoff,
                "mode": cli.mode,
                "seed": cli.seed,
            });
            let doc = json!({
                "value": out.value,
                "error_estimate": out.error_estimate,
                "provenance": out.provenance,
                "config": config,
            });
            emit(&doc);
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(v)) => {
            emit(&json!({ "value": v, "error_estimate": null, "provenance": "failed", "config": null }));
            eprintln!("verification failed");
            ExitCode::from(2)
        }
    }
}

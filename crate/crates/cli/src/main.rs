use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use stiefel_geo::curve::{column_names, AnyCurve, CurveSpec};
use stiefel_geo::verify::{compare_metrics, run_suite, Suite, VerifyConfig};

const SEED_ENV: &str = "STIEFEL_GEO_SEED";

#[derive(Parser)]
#[command(name = "stiefel-geo", version, about = "Sample and verify extremal curves on Stiefel and Grassmann manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a curve to CSV or JSON.
    Sample {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run verification suites and print one JSON report per check.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate the four metric norms on seeded tangents.
    CompareMetrics {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample geodesic curvature of a curve and of its Grassmann image.
    Curvature {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// Curve spec file.
    #[arg(long, conflicts_with = "inline", required_unless_present = "inline")]
    spec: Option<PathBuf>,
    /// Curve spec as a JSON string.
    #[arg(long)]
    inline: Option<String>,
    #[arg(long, default_value_t = 11)]
    samples: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t1: f64,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per grid cell (per suite for isometry and compare-metrics).
    #[arg(long)]
    trials: Option<usize>,
    /// Tolerance for every upper-bound check.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Sample { curve, out } => {
            let c = load_curve(&curve)?;
            let samples = c.samples(curve.t0, curve.t1, curve.samples);
            let text = match out.format {
                Format::Json => {
                    let doc = json!({ "spec": c.spec(), "samples": samples });
                    serde_json::to_string_pretty(&doc)? + "\n"
                }
                Format::Csv => {
                    let (rows, cols) = samples.first().map_or((0, 0), |s| (s.rows, s.cols));
                    let mut header = vec!["t".to_string()];
                    header.extend(column_names(c.spec().algebra, rows, cols));
                    header.push("residual".into());
                    let mut text = header.join(",") + "\n";
                    for s in &samples {
                        let mut fields = vec![s.t.to_string()];
                        fields.extend(s.point.iter().map(f64::to_string));
                        fields.push(s.residual.to_string());
                        text += &(fields.join(",") + "\n");
                    }
                    text
                }
            };
            emit(out.output.as_ref(), &text)?;
            Ok(true)
        }
        Command::Curvature { curve, out } => {
            let c = load_curve(&curve)?;
            let mut rows = Vec::new();
            for s in c.samples(curve.t0, curve.t1, curve.samples) {
                rows.push((s.t, c.curvature(s.t)?, c.grassmann_curvature(s.t)?));
            }
            let text = match out.format {
                Format::Json => {
                    let doc: Vec<_> = rows
                        .iter()
                        .map(|(t, k, kg)| json!({ "t": t, "curvature": k, "grassmannCurvature": kg }))
                        .collect();
                    serde_json::to_string_pretty(&doc)? + "\n"
                }
                Format::Csv => {
                    let mut text = "t,curvature,grassmann_curvature\n".to_string();
                    for (t, k, kg) in rows {
                        text += &format!("{t},{k},{kg}\n");
                    }
                    text
                }
            };
            emit(out.output.as_ref(), &text)?;
            Ok(true)
        }
        Command::Verify { suite, run, output } => {
            let suites = match suite.as_str() {
                "all" => Suite::ALL.to_vec(),
                name => vec![Suite::parse(name)?],
            };
            let cfg = config(&run)?;
            let mut reports = Vec::new();
            for s in suites {
                reports.extend(run_suite(s, &cfg)?);
            }
            for r in &reports {
                eprintln!(
                    "{} {} max {:.3e} tol {:.1e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check,
                    r.max_residual,
                    r.tolerance
                );
            }
            emit(output.as_ref(), &(serde_json::to_string_pretty(&reports)? + "\n"))?;
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::CompareMetrics { run, out } => {
            let cfg = config(&run)?;
            let (rows, summary) = compare_metrics(&cfg)?;
            let text = match out.format {
                Format::Json => serde_json::to_string_pretty(&json!({ "rows": rows, "summary": summary }))? + "\n",
                Format::Csv => {
                    let mut text = "trial,algebra,n,k,a_zero,reduced,quasi,orthogonal,ambient\n".to_string();
                    for r in &rows {
                        text += &format!(
                            "{},{},{},{},{},{},{},{},{}\n",
                            r.trial,
                            r.algebra.name(),
                            r.n,
                            r.k,
                            r.a_zero,
                            r.reduced,
                            r.quasi,
                            r.orthogonal,
                            r.ambient
                        );
                    }
                    text
                }
            };
            eprintln!(
                "max |reduced-quasi| {:.3e}; |reduced-orthogonal|/reduced over A != 0 in [{:.3e}, {:.3e}]",
                summary.max_reduced_quasi, summary.min_reduced_orthogonal, summary.max_reduced_orthogonal
            );
            emit(out.output.as_ref(), &text)?;
            Ok(summary.pass)
        }
    }
}

fn config(run: &RunArgs) -> Result<VerifyConfig, UsageError> {
    let seed = match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| UsageError(format!("{SEED_ENV}={v} is not an unsigned integer")))?,
        Err(_) => run.seed,
    };
    if run.trials == Some(0) {
        return Err(UsageError("--trials must be positive".into()));
    }
    if run.tol.is_some_and(|t| !(t >= 0.0)) {
        return Err(UsageError("--tol must be nonnegative".into()));
    }
    let mut cfg = VerifyConfig::new(seed);
    cfg.trials = run.trials;
    cfg.tol = run.tol;
    Ok(cfg)
}

fn load_curve(args: &CurveArgs) -> Result<AnyCurve, UsageError> {
    let text = match (&args.spec, &args.inline) {
        (Some(path), _) => fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(UsageError("one of --spec or --inline is required".into())),
    };
    if !(args.t0.is_finite() && args.t1.is_finite()) {
        return Err(UsageError("--t0 and --t1 must be finite".into()));
    }
    Ok(AnyCurve::new(&CurveSpec::from_json(&text)?)?)
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(UsageError::from),
    }
}

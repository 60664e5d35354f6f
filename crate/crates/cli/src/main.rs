//! `germsplit`: analyze surface germs `z3^d = g(z1, z2)` from the command line.
//!
//! Exit codes: 0 success, 1 parse, usage or I/O error, 2 unsupported input,
//! 3 a numeric verification failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use germsplit::carousel::CarouselConfig;
use germsplit::graph::to_dot;
use germsplit::pipeline::{
    analyze_text, run_metrics, AnalysisConfig, AnalysisError, ChartChoice, MetricsRequest, VARIABLES,
};
use germsplit::poly::{parse_poly, parse_rational, Rational};
use germsplit::puiseux::{characteristic_data, puiseux_expand, PuiseuxConfig};
use germsplit::report::{
    build_report, from_json, graph_from_report, json, metrics_report, puiseux_report, render_metrics, render_puiseux,
    render_text,
};

#[derive(Parser)]
#[command(
    name = "germsplit",
    version,
    about = "Decompose surface germs z3^d = g(z1, z2) into metric pieces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a germ.
    Analyze(AnalyzeArgs),
    /// Puiseux expansion and characteristic data of a plane curve.
    Puiseux(PuiseuxArgs),
    /// Shrink exponents and identity checks for a model metric.
    Metrics(MetricsArgs),
    /// Render the decomposition graph of a saved report as DOT.
    Graph(GraphArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Polynomial, or a file containing one.
    #[arg(long)]
    input: String,
    /// Puiseux truncation order p/q.
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Comma-separated heights for the exponent fits.
    #[arg(long)]
    tsweep: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct PuiseuxArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    /// cone, hp, cn, annulus or mtc.
    #[arg(long)]
    chart: Option<String>,
    #[arg(long, default_value = "1")]
    nu: String,
    #[arg(long)]
    nuprime: Option<String>,
    #[arg(long)]
    tsweep: Option<String>,
    #[arg(long)]
    verify_cn: bool,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// JSON report written by `analyze --json`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Failure {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(input: &str) -> Result<String, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {input}: {e}")))
    } else {
        Ok(input.to_string())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::usage(format!("--{flag} {text:?}: {e}")))
}

fn tsweep(text: Option<&str>) -> Result<Option<Vec<f64>>, Failure> {
    text.map(|t| {
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|e| Failure::usage(format!("--tsweep {x:?}: {e}")))
            })
            .collect()
    })
    .transpose()
}

fn analyze(args: AnalyzeArgs) -> Outcome {
    let text = read_input(&args.input)?;
    let defaults = CarouselConfig::default();
    let cfg = AnalysisConfig {
        truncation_order: args.order.as_deref().map(|o| rational("order", o)).transpose()?,
        carousel: CarouselConfig {
            epsilon: args.epsilon.unwrap_or(defaults.epsilon),
            mu: args.mu.unwrap_or(defaults.mu),
            ..defaults
        },
        t_sweep: tsweep(args.tsweep.as_deref())?.unwrap_or_else(|| AnalysisConfig::default().t_sweep),
        cn_samples: args.samples,
        seed: args.seed,
        ..AnalysisConfig::default()
    };
    let analysis = analyze_text(text.trim(), &cfg)?;
    let report = build_report(&analysis);
    print!("{}", render_text(&report));
    if let Some(path) = &args.json {
        write_file(path, &json(&report))?;
    }
    if let Some(path) = &args.dot {
        write_file(path, &to_dot(&analysis.graph))?;
    }
    Ok(if report.verified { 0 } else { 3 })
}

fn puiseux(args: PuiseuxArgs) -> Outcome {
    let text = read_input(&args.input)?;
    let g = parse_poly(text.trim(), &VARIABLES).map_err(|e| Failure::usage(e.to_string()))?;
    let cfg = PuiseuxConfig {
        order: args.order.as_deref().map(|o| rational("order", o)).transpose()?,
        ..PuiseuxConfig::default()
    };
    let capability = |e: germsplit::puiseux::PuiseuxError| Failure::from(AnalysisError::from(e));
    let branches = puiseux_expand(&g, &cfg).map_err(capability)?;
    let data = branches
        .iter()
        .map(characteristic_data)
        .collect::<Result<Vec<_>, _>>()
        .map_err(capability)?;
    let report = puiseux_report(&g.to_string(), &branches, &data);
    print!("{}", render_puiseux(&report));
    if let Some(path) = &args.json {
        write_file(path, &json(&report))?;
    }
    Ok(0)
}

fn metrics(args: MetricsArgs) -> Outcome {
    let chart = match (&args.chart, args.verify_cn) {
        (Some(c), _) => c.parse::<ChartChoice>()?,
        (None, true) => ChartChoice::CheegerNagase,
        (None, false) => ChartChoice::HsiangPati,
    };
    let mut req = MetricsRequest {
        chart,
        nu: rational("nu", &args.nu)?,
        nu_prime: args.nuprime.as_deref().map(|p| rational("nuprime", p)).transpose()?,
        verify_cn: args.verify_cn,
        samples: args.samples,
        seed: args.seed,
        ..MetricsRequest::default()
    };
    if let Some(t) = tsweep(args.tsweep.as_deref())? {
        req.t_sweep = t;
    }
    let outcome = run_metrics(&req).map_err(|e| match e {
        AnalysisError::Metric(m) => Failure::usage(m.to_string()),
        other => other.into(),
    })?;
    let report = metrics_report(&req, &outcome);
    print!("{}", render_metrics(&report));
    if let Some(path) = &args.json {
        write_file(path, &json(&report))?;
    }
    Ok(if report.passed { 0 } else { 3 })
}

fn graph(args: GraphArgs) -> Outcome {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.input.display())))?;
    let report = from_json(&text).map_err(|e| Failure::usage(e.to_string()))?;
    let graph = graph_from_report(&report.graph).map_err(|e| Failure::usage(e.to_string()))?;
    let dot = to_dot(&graph);
    match &args.dot {
        Some(path) => write_file(path, &dot)?,
        None => print!("{dot}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("GERM_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Puiseux(a) => puiseux(a),
        Command::Metrics(a) => metrics(a),
        Command::Graph(a) => graph(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            log::debug!("exit code {}", f.code);
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

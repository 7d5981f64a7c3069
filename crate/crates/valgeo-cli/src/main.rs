//! `valgeo`: deviations of valuations on convex bodies, from the command
//! line. Bodies are JSON files `{"dim": 2|3, "vertices": [[x, y(, z)], …]}`;
//! valuations are spec strings (`vol`, `v1`, `v2`, `meanwidth`,
//! `firey:<polygon.json>`, `sum:<spec>+<spec>`).
//!
//! Exit codes: 0 success / all assertions passed, 1 assertion failure,
//! 2 usage or input error.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use valgeo::deviation::{Deviation, DeviationKind};
use valgeo::experiment::{
    lemma35_decay, prop22_decompose, triangle_demo, verify_thm1_backward_suite,
    verify_thm1_forward, verify_thm2, verify_thm3, verify_thm4_suite, Measurement, Report,
};
use valgeo::geom::{hausdorff_distance, Body};
use valgeo::path::{path_length, Path as BodyPath};
use valgeo::valuation::{
    default_radii, mcmullen_decompose, parse_phi_spec, steiner_fit, Valuation,
};
use valgeo::ToleranceConfig;

#[derive(Parser, Debug)]
#[command(name = "valgeo", version, about = "Valuation deviations on convex bodies")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Ambient dimension for operations that do not read it from a body file.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    dimension: u32,
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Stdout format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Write the structured report as JSON to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the measurement table as CSV to this file.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// The resolved configuration of an invocation. Its invariant — parsed
/// flags survive a JSON round trip unchanged — is tested below.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CliConfig {
    dimension: u32,
    tolerances: ToleranceConfig,
    seed: u64,
    output: OutputFormat,
}

impl CliConfig {
    fn from_args(g: &GlobalArgs) -> Self {
        CliConfig {
            dimension: g.dimension,
            tolerances: ToleranceConfig::default(),
            seed: g.seed,
            output: g.output,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a meet or join deviation between two bodies.
    Deviation {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Valuation spec, e.g. `vol`, `v1`, `sum:vol+v1`.
        #[arg(long)]
        phi: String,
        /// Path to the first body JSON file.
        #[arg(long)]
        a: PathBuf,
        /// Path to the second body JSON file.
        #[arg(long)]
        b: PathBuf,
    },
    /// Dyadic-refinement length of a piecewise-linear path of bodies.
    PathLength {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        phi: String,
        /// JSON file `{"bodies": [body, body, …]}` of path breakbodies.
        #[arg(long)]
        path: PathBuf,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Fit intrinsic volumes from parallel-body volumes.
    Steiner {
        #[arg(long)]
        body: PathBuf,
    },
    /// Split a valuation into its homogeneous components on a body.
    Decompose {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        body: PathBuf,
    },
    /// Hausdorff distance between two bodies.
    Hausdorff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Meet,
    Join,
}

impl From<KindArg> for DeviationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Meet => DeviationKind::Meet,
            KindArg::Join => DeviationKind::Join,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    /// Distant discs: translate bound beats every candidate path.
    Thm1f,
    /// Bridge constructions approach the meet deviation from above.
    Thm1b,
    /// Join paths realize the join deviation as a path length.
    Thm2,
    /// Join deviation scales linearly along interpolation segments.
    Thm3,
    /// Volume geodesics exist exactly when the join stays tight.
    Thm4,
    /// Triangle-inequality violation for the meet V1 deviation.
    Triangle,
    /// Capsule shrinking and bridge-excess halving diagnostics.
    Lem35,
    /// Homogeneous decomposition sanity checks.
    Mcmullen,
}

/// An input or computation problem, with the exit code it maps to.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn load_body(path: &Path) -> Result<Body, CliError> {
    let txt = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&txt).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct PathFile {
    bodies: Vec<Body>,
}

fn load_path(path: &Path) -> Result<Vec<Body>, CliError> {
    let txt = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let file: PathFile = serde_json::from_str(&txt)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(file.bodies)
}

fn parse_phi(spec: &str, dim: usize) -> Result<Valuation, CliError> {
    parse_phi_spec(spec, dim)
        .map_err(|e| CliError::input(format!("valuation spec `{spec}`: {e}")))
}

/// Emits the report to stdout in the chosen format and to the optional
/// file sinks, then converts its pass state into an exit code.
fn emit(report: &Report, config: &CliConfig, args: &GlobalArgs) -> Result<ExitCode, CliError> {
    write_sinks(report, args)?;
    match config.output {
        OutputFormat::Json => {
            let json = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::input(format!("serializing report: {e}")))?;
            println!("{json}");
        }
        OutputFormat::Csv => print!("{}", report.to_csv()),
        OutputFormat::Text => {
            for m in &report.measurements {
                if m.tolerance == f64::MAX {
                    println!("  {:<28} {:.12}", m.label, m.value);
                } else {
                    println!(
                        "  {:<28} {:.12}  (target {:.6} ± {:.1e})  [{}]",
                        m.label,
                        m.value,
                        m.target,
                        m.tolerance,
                        if m.pass { "pass" } else { "FAIL" },
                    );
                }
            }
            println!(
                "{}: {} in {} ms (seed {})",
                report.name,
                if report.passed() { "PASS" } else { "FAIL" },
                report.runtime_ms,
                report.seed,
            );
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// A single scalar result: printed bare in text mode (the number is the
/// contract), wrapped in a one-measurement report otherwise.
fn emit_scalar(
    name: &str,
    label: &str,
    value: f64,
    config: &CliConfig,
    args: &GlobalArgs,
) -> Result<ExitCode, CliError> {
    let mut report = Report::new(name, config.seed);
    report.push(Measurement::informational(label, value));
    if matches!(config.output, OutputFormat::Text) {
        write_sinks(&report, args)?;
        println!("{value:?}");
        Ok(ExitCode::SUCCESS)
    } else {
        emit(&report, config, args)
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let config = CliConfig::from_args(&cli.global);
    match &cli.command {
        Command::Deviation { kind, phi, a, b } => {
            let ka = load_body(a)?;
            let kb = load_body(b)?;
            if ka.dim() != kb.dim() {
                return Err(CliError::input(format!(
                    "bodies have different dimensions: {} vs {}",
                    ka.dim(),
                    kb.dim()
                )));
            }
            let valuation = parse_phi(phi, ka.dim())?;
            let dev = match kind {
                KindArg::Meet => Deviation::meet(valuation),
                KindArg::Join => Deviation::join(valuation),
            };
            let value = dev
                .eval(&ka, &kb)
                .map_err(|e| CliError::input(format!("deviation: {e}")))?;
            emit_scalar("deviation", &format!("{}_{}", kind_name(*kind), phi), value, &config, &cli.global)
        }
        Command::PathLength { kind, phi, path } => {
            let bodies = load_path(path)?;
            if bodies.is_empty() {
                return Err(CliError::input("path file contains no bodies"));
            }
            let valuation = parse_phi(phi, bodies[0].dim())?;
            let dev = match kind {
                KindArg::Meet => Deviation::meet(valuation),
                KindArg::Join => Deviation::join(valuation),
            };
            let body_path = BodyPath::from_bodies(&bodies)
                .map_err(|e| CliError::input(format!("path: {e}")))?;
            let est = path_length(&body_path, &dev)
                .map_err(|e| CliError::input(format!("length: {e}")))?;
            let mut report = Report::new("path-length", config.seed);
            report.input("kind", kind_name(*kind));
            report.input("phi", phi.as_str());
            report.input("converged", est.converged);
            report.input("refinement_depth", est.refinement_depth as u64);
            report.push(Measurement::informational("length", est.value));
            if matches!(config.output, OutputFormat::Text) {
                write_sinks(&report, &cli.global)?;
                println!("{:?}", est.value);
                Ok(ExitCode::SUCCESS)
            } else {
                emit(&report, &config, &cli.global)
            }
        }
        Command::Verify { suite } => {
            let seed = config.seed;
            let report = match suite {
                SuiteArg::Thm1f => verify_thm1_forward(4.0, 64, seed),
                SuiteArg::Thm1b => verify_thm1_backward_suite(seed),
                SuiteArg::Thm2 => verify_thm2(100, seed),
                SuiteArg::Thm3 => verify_thm3(50, seed),
                SuiteArg::Thm4 => verify_thm4_suite(seed),
                SuiteArg::Triangle => triangle_demo(seed),
                SuiteArg::Lem35 => lemma35_decay(seed),
                SuiteArg::Mcmullen => prop22_decompose(seed),
            };
            emit(&report, &config, &cli.global)
        }
        Command::Steiner { body } => {
            let k = load_body(body)?;
            let fit = steiner_fit(&k, &default_radii(k.dim()))
                .map_err(|e| CliError::input(format!("steiner: {e}")))?;
            let mut report = Report::new("steiner", config.seed);
            for (i, v) in fit.components().iter().enumerate() {
                report.push(Measurement::informational(format!("V{i}"), *v));
            }
            emit(&report, &config, &cli.global)
        }
        Command::Decompose { phi, body } => {
            let k = load_body(body)?;
            let valuation = parse_phi(phi, k.dim())?;
            let parts = mcmullen_decompose(&valuation, &k)
                .map_err(|e| CliError::input(format!("decompose: {e}")))?;
            let mut report = Report::new("decompose", config.seed);
            report.input("phi", phi.as_str());
            for (i, v) in parts.components().iter().enumerate() {
                report.push(Measurement::informational(format!("degree_{i}"), *v));
            }
            emit(&report, &config, &cli.global)
        }
        Command::Hausdorff { a, b } => {
            let ka = load_body(a)?;
            let kb = load_body(b)?;
            let d = hausdorff_distance(&ka, &kb)
                .map_err(|e| CliError::input(format!("hausdorff: {e}")))?;
            emit_scalar("hausdorff", "distance", d, &config, &cli.global)
        }
    }
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Meet => "meet",
        KindArg::Join => "join",
    }
}

fn write_sinks(report: &Report, args: &GlobalArgs) -> Result<(), CliError> {
    if let Some(path) = &args.out {
        let json = serde_json::to_string_pretty(report)
            .map_err(|e| CliError::input(format!("serializing report: {e}")))?;
        std::fs::write(path, json)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, report.to_csv())
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

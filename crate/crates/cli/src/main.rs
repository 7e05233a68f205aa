//! Command-line harness tying generators, incidence counting, fitting,
//! covering and detection into reproducible experiments.
//!
//! Every randomized step takes `--seed`; identical inputs and seeds produce
//! byte-identical reports. Exit codes: 0 success, 2 scene parse error,
//! 3 contract violation, 4 algorithm failure.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use incidence_lab::cover::{cover_collections, prune};
use incidence_lab::detect::find_structured_families;
use incidence_lab::gen::{self, RulingFamily};
use incidence_lab::geom::Scene;
use incidence_lab::incidence::{all_incidences, bound_report};
use incidence_lab::scalar::Rational;

use report::{CoverReport, FitReport, PruneSummary, VerifyReport};

const EXIT_HELP: &str = "Exit codes:\n  \
    0  success\n  \
    2  malformed scene JSON (message carries the location)\n  \
    3  contract violation (the violated precondition is named)\n  \
    4  algorithm failure (e.g. a sampling round exhausted its retries)";

#[derive(Parser)]
#[command(
    name = "incidence-lab",
    version,
    about = "Exact-arithmetic experiments on line-circle incidences in R^3",
    after_help = EXIT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SceneKind {
    Hyperboloid,
    Planar,
    Generic,
    QuarticCheck,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write a scene (or the complex-quartic verification report).
    Generate {
        #[arg(long, value_enum)]
        kind: SceneKind,
        /// Number of lines (hyperboloid: rulings).
        #[arg(long, default_value_t = 0)]
        lines: usize,
        /// Number of circles.
        #[arg(long, default_value_t = 0)]
        circles: usize,
        /// Ruling family for the hyperboloid generator.
        #[arg(long, default_value = "first", value_parser = parse_family)]
        family: RulingFamily,
        /// Seed for the generic generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid sizes for the quartic check (t and s values 1..=count).
        #[arg(long, default_value_t = 10)]
        t_count: usize,
        #[arg(long, default_value_t = 10)]
        s_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the deduplicated incidence set of a scene.
    Incidences {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit the minimal-degree surface through all curves of a scene.
    Fit {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized covering loop.
    Cover {
        #[arg(long)]
        scene: PathBuf,
        /// Incidence threshold A (integer or rational like 7/2).
        #[arg(long = "A", value_parser = parse_rational)]
        a: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(long, default_value_t = 20)]
        retry_cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detect planes and hyperboloid-class quadrics with many curves.
    Detect {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long = "A", value_parser = parse_rational)]
        a: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random seed triples tried when exhaustive enumeration is too big.
        #[arg(long, default_value_t = 2000)]
        seed_budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the incidence bound report on a scene.
    Report {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long = "A", value_parser = parse_rational)]
        a: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        seed_budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline: prune, incidences, detect, cover, bound report.
    Verify {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long = "A", value_parser = parse_rational)]
        a: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        seed_budget: usize,
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(long, default_value_t = 20)]
        retry_cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_rational(raw: &str) -> Result<Rational, String> {
    raw.parse()
}

fn parse_family(raw: &str) -> Result<RulingFamily, String> {
    raw.parse()
}

/// Failures mapped onto the documented exit-code taxonomy.
enum CliError {
    Parse(String),
    Contract(String),
    Algorithm(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Contract(_) => 3,
            CliError::Algorithm(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Contract(m) | CliError::Algorithm(m) | CliError::Io(m) => m,
        }
    }
}

impl From<incidence_lab::Error> for CliError {
    fn from(e: incidence_lab::Error) -> Self {
        use incidence_lab::Error;
        match e {
            Error::RoundFailed { .. } | Error::Internal(_) => CliError::Algorithm(e.to_string()),
            other => CliError::Contract(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    incidence_lab::init_thread_pool_from_env();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn load_scene(path: &PathBuf) -> Result<Scene, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    // serde_json errors carry "at line L column C".
    serde_json::from_str(&raw)
        .map_err(|e| CliError::Parse(format!("scene {}: {e}", path.display())))
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
    }
}

fn to_pretty_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))
}

/// Detection threshold used by report/verify: at least 3 (any two curves
/// admit a quadric, so smaller thresholds are vacuous).
fn detect_threshold(a: &Rational) -> Rational {
    let three = Rational::from(3);
    if *a < three {
        three
    } else {
        a.clone()
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            kind,
            lines,
            circles,
            family,
            seed,
            t_count,
            s_count,
            out,
        } => {
            let content = match kind {
                SceneKind::Hyperboloid => to_pretty_json(&gen::hyperboloid(lines, circles, family)?)?,
                SceneKind::Planar => to_pretty_json(&gen::planar(lines, circles)?)?,
                SceneKind::Generic => to_pretty_json(&gen::generic(lines, circles, seed)?)?,
                SceneKind::QuarticCheck => {
                    let ts: Vec<Rational> =
                        (1..=t_count as i64).map(Rational::from).collect();
                    let ss: Vec<Rational> =
                        (1..=s_count as i64).map(Rational::from).collect();
                    to_pretty_json(&gen::complex_quartic_check(&ts, &ss)?)?
                }
            };
            emit(out.as_ref(), &content)
        }

        Command::Incidences { scene, format, out } => {
            let scene = load_scene(&scene)?;
            let report = all_incidences(&scene.lines, &scene.circles);
            let content = match format {
                OutputFormat::Json => to_pretty_json(&report)?,
                OutputFormat::Csv => report.to_csv(),
            };
            emit(out.as_ref(), &content)
        }

        Command::Fit { scene, out } => {
            let scene = load_scene(&scene)?;
            let curves = scene.curves();
            let fit = incidence_lab::fitter::min_degree_surface(&curves)?;
            let report = FitReport::new(&scene, fit);
            emit(out.as_ref(), &to_pretty_json(&report)?)
        }

        Command::Cover {
            scene,
            a,
            seed,
            max_rounds,
            retry_cap,
            out,
        } => {
            let scene = load_scene(&scene)?;
            let result =
                cover_collections(&scene.lines, &scene.circles, &a, seed, max_rounds, retry_cap)?;
            let report = CoverReport::new(&scene, &a, result);
            emit(out.as_ref(), &to_pretty_json(&report)?)
        }

        Command::Detect {
            scene,
            a,
            seed,
            seed_budget,
            out,
        } => {
            let scene = load_scene(&scene)?;
            let families =
                find_structured_families(&scene.lines, &scene.circles, &a, seed, seed_budget)?;
            emit(out.as_ref(), &to_pretty_json(&families)?)
        }

        Command::Report {
            scene,
            a,
            seed,
            seed_budget,
            out,
        } => {
            let scene = load_scene(&scene)?;
            let incidences = all_incidences(&scene.lines, &scene.circles);
            let families = find_structured_families(
                &scene.lines,
                &scene.circles,
                &detect_threshold(&a),
                seed,
                seed_budget,
            )?;
            let bound = bound_report(&scene.lines, &scene.circles, &a, &incidences, &families);
            emit(out.as_ref(), &to_pretty_json(&bound)?)
        }

        Command::Verify {
            scene,
            a,
            seed,
            seed_budget,
            max_rounds,
            retry_cap,
            out,
        } => {
            if !a.is_positive() {
                return Err(CliError::Contract("verify requires A > 0".into()));
            }
            let scene = load_scene(&scene)?;
            let pruned = prune(&scene.lines, &scene.circles, &a);
            let incidences = all_incidences(&pruned.lines, &pruned.circles);
            let families = find_structured_families(
                &pruned.lines,
                &pruned.circles,
                &detect_threshold(&a),
                seed,
                seed_budget,
            )?;
            let cover =
                cover_collections(&pruned.lines, &pruned.circles, &a, seed, max_rounds, retry_cap)?;
            let bound = bound_report(&pruned.lines, &pruned.circles, &a, &incidences, &families);

            let report = VerifyReport {
                input_lines: scene.lines.len(),
                input_circles: scene.circles.len(),
                prune: PruneSummary::new(&pruned),
                bound,
                families,
                cover: CoverReport::from_pruned(&pruned, &a, cover),
            };
            emit(out.as_ref(), &to_pretty_json(&report)?)
        }
    }
}

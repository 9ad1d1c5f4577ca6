//! Command-line front end. [`run`] parses arguments, executes one command and
//! emits its report; exit codes are 0 when the checked property holds, 1 when
//! it fails (with a counterexample in the report) and 2 on input errors.

mod commands;
mod report;

use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::daft::ProfileKind;
use crate::error::{Error, Result};
use crate::presheaf::WeightClass;
use crate::weights::{TablePair, DEFAULT_BOUND};

pub use report::{ErrorReport, InputFile, Inputs, Report, Timing, Tool, Witness, SCHEMA, TOOL};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

fn parse_bound(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(b) if b >= 1 => Ok(b),
        _ => Err(format!("bound must be a positive integer, got '{s}'")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fincat",
    version,
    about = "Adjointness, admissibility and cocontinuity for finite categories"
)]
pub struct Cli {
    /// Print the JSON report on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing; the exit code carries the verdict.
    #[arg(long, global = true, conflicts_with = "json")]
    pub quiet: bool,
    /// Also write the JSON report to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for instance checks (default: all cores).
    #[arg(long, global = true, env = "FINCAT_JOBS")]
    pub jobs: Option<usize>,
    /// Record wall-clock time in the report. Reports with timing are not
    /// reproducible byte for byte.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct FunctorArgs {
    /// Source category (.fincat).
    pub source: PathBuf,
    /// Target category (.fincat).
    pub target: PathBuf,
    /// The functor (.fun).
    pub functor: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct DaftArgs {
    #[arg(long, requires = "phi", conflicts_with_all = ["profile", "instances"])]
    pub psi: Option<WeightClass>,
    #[arg(long, requires = "psi")]
    pub phi: Option<WeightClass>,
    /// Sampling profile; `lattice` runs every monotone map between lattices
    /// with at most four elements.
    #[arg(long, conflicts_with = "instances")]
    pub profile: Option<ProfileKind>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Total instances, handcrafted corpus members first.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Largest shape, in morphisms, used for cocompleteness and cocontinuity.
    #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = parse_bound)]
    pub bound: usize,
    /// Run these instance files (.inst) instead of generating.
    #[arg(long = "instance")]
    pub instances: Vec<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PosetAftArgs {
    /// Source poset (.poset).
    #[arg(required_unless_present = "exhaustive")]
    pub source: Option<PathBuf>,
    /// Target poset (.poset).
    #[arg(required_unless_present = "exhaustive")]
    pub target: Option<PathBuf>,
    /// Monotone map (.fun on the posets' elements).
    #[arg(required_unless_present = "exhaustive")]
    pub map: Option<PathBuf>,
    /// Check every monotone map between lattices with at most N elements.
    #[arg(long, value_name = "N", num_args = 0..=1, default_missing_value = "5",
          conflicts_with_all = ["source", "presentable"])]
    pub exhaustive: Option<usize>,
    /// Extend the map along the downset embedding of its source and check the
    /// extension.
    #[arg(long)]
    pub presentable: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Search for a right adjoint of a functor.
    CheckAdjoint(FunctorArgs),
    /// Classify a presheaf (.psh) over a category against weight classes.
    Classify {
        base: PathBuf,
        presheaf: PathBuf,
        /// Check only this class; all classes are reported otherwise.
        #[arg(long)]
        class: Option<WeightClass>,
    },
    /// Decide whether every hom-presheaf of a functor lies in a class.
    Admissible {
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long)]
        class: WeightClass,
    },
    /// Decide whether a functor preserves colimits of a class up to a bound.
    Cocontinuous {
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long)]
        class: WeightClass,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = parse_bound)]
        bound: usize,
    },
    /// Check both sides of the adjoint functor theorem on instances.
    Daft(DaftArgs),
    /// Compose a reflection with an adjunction. Both functors are left
    /// adjoints out of Y; their right adjoints are computed.
    ComposeAdjunctions {
        x: PathBuf,
        y: PathBuf,
        z: PathBuf,
        /// Left adjoint Y -> X of the first adjunction (.fun).
        first: PathBuf,
        /// Left adjoint Y -> Z of the second adjunction (.fun).
        second: PathBuf,
    },
    /// Join preservation versus left adjointness for monotone maps.
    PosetAft(PosetAftArgs),
    /// Write generated instances as .inst files.
    GenCorpus {
        #[arg(long)]
        profile: ProfileKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = parse_bound)]
        bound: usize,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckAdjoint(_) => "check-adjoint",
            Command::Classify { .. } => "classify",
            Command::Admissible { .. } => "admissible",
            Command::Cocontinuous { .. } => "cocontinuous",
            Command::Daft(_) => "daft",
            Command::ComposeAdjunctions { .. } => "compose-adjunctions",
            Command::PosetAft(_) => "poset-aft",
            Command::GenCorpus { .. } => "gen-corpus",
        }
    }
}

/// The resolved configuration of one run, echoed in its report. The output
/// path and worker count do not affect results and are not echoed.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub inputs: Vec<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<WeightClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<WeightClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<WeightClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub seed: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: usize,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig> {
        let mut c = RunConfig {
            command: cli.command.name(),
            inputs: Vec::new(),
            psi: None,
            phi: None,
            class: None,
            profile: None,
            size_bound: None,
            count: None,
            seed: 0,
            output: cli.output.clone(),
            jobs: cli.jobs.filter(|&j| j > 0).unwrap_or(0),
        };
        match &cli.command {
            Command::CheckAdjoint(f) => c.inputs = functor_inputs(f),
            Command::Classify { base, presheaf, class } => {
                c.inputs = vec![base.clone(), presheaf.clone()];
                c.class = *class;
            }
            Command::Admissible { functor, class } => {
                c.inputs = functor_inputs(functor);
                c.class = Some(*class);
            }
            Command::Cocontinuous { functor, class, bound } => {
                c.inputs = functor_inputs(functor);
                c.class = Some(*class);
                c.size_bound = Some(*bound);
            }
            Command::Daft(d) => {
                c.inputs = d.instances.clone();
                c.size_bound = Some(d.bound);
                c.seed = d.seed;
                if d.instances.is_empty() {
                    let kind = match (d.profile, d.psi, d.phi) {
                        (Some(k), _, _) => k,
                        (None, Some(psi), Some(phi)) => ProfileKind::for_pair(TablePair::new(psi, phi)?),
                        _ => {
                            return Err(Error::UnsupportedPair {
                                psi: "?".into(),
                                phi: "?".into(),
                            })
                        }
                    };
                    let pair = kind.pair();
                    c.psi = Some(pair.psi);
                    c.phi = Some(pair.phi);
                    c.profile = Some(kind);
                    c.count = (kind != ProfileKind::Lattice).then_some(d.count);
                }
            }
            Command::ComposeAdjunctions { x, y, z, first, second } => {
                c.inputs = vec![x.clone(), y.clone(), z.clone(), first.clone(), second.clone()];
            }
            Command::PosetAft(p) => {
                c.inputs = [&p.source, &p.target, &p.map].into_iter().flatten().cloned().collect();
                c.size_bound = p.exhaustive;
            }
            Command::GenCorpus {
                profile,
                seed,
                count,
                bound,
                ..
            } => {
                let pair = profile.pair();
                c.psi = Some(pair.psi);
                c.phi = Some(pair.phi);
                c.profile = Some(*profile);
                c.seed = *seed;
                c.count = Some(*count);
                c.size_bound = Some(*bound);
            }
        }
        Ok(c)
    }
}

fn functor_inputs(f: &FunctorArgs) -> Vec<PathBuf> {
    vec![f.source.clone(), f.target.clone(), f.functor.clone()]
}

/// The result of executing a parsed command line.
#[derive(Debug)]
pub struct Outcome {
    pub exit: i32,
    pub report: Option<Report>,
    pub error: Option<Error>,
}

/// Executes a parsed command line without printing anything.
pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        pool.install(|| commands::dispatch(&cli.command, config))
    });
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.timing = Some(Timing {
                    elapsed_ms: start.elapsed().as_millis(),
                });
            }
            Outcome {
                exit: if report.holds { EXIT_HOLDS } else { EXIT_FAILS },
                report: Some(report),
                error: None,
            }
        }
        Err(e) => Outcome {
            exit: EXIT_ERROR,
            report: None,
            error: Some(e),
        },
    }
}

/// Parses `argv`, executes, prints according to the output flags and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
        }
    };
    let outcome = execute(&cli);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match (&outcome.report, &outcome.error) {
        (Some(report), _) => {
            let json = report.to_json();
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_ERROR;
                }
            }
            if cli.json {
                let _ = out.write_all(json.as_bytes());
            } else if !cli.quiet {
                for line in &report.summary {
                    let _ = writeln!(out, "{line}");
                }
                for note in &report.notes {
                    let _ = writeln!(out, "note: {note}");
                }
            }
        }
        (None, Some(e)) => {
            eprintln!("error[{}]: {e}", e.kind());
            if cli.json {
                let doc = serde_json::json!({
                    "schema": SCHEMA,
                    "tool": TOOL,
                    "command": cli.command.name(),
                    "error": ErrorReport::new(e),
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serialises"));
            }
        }
        (None, None) => unreachable!("an outcome has a report or an error"),
    }
    outcome.exit
}

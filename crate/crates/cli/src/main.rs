//! `qdesign`: build codes, profile them, check designs and rerun the
//! reference computations.

mod commands;
mod output;
mod reproduce;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "qdesign", version, about = "q-ary and classical t-designs from linear codes")]
struct Cli {
    /// Write the report here instead of stdout; a `.manifest.json` with the
    /// digest and wall time is written next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Named code constructions.
    #[command(subcommand)]
    Zoo(ZooCommand),
    /// Parameters, weight distributions and radii of a code.
    Profile(ProfileArgs),
    /// Design checks on one weight class (or a block file).
    Design(DesignArgs),
    /// Design predictions from the general criteria.
    Criteria(CriteriaArgs),
    /// Recompute a group of reference results, one PASS/FAIL line per claim.
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand, Debug)]
enum ZooCommand {
    List,
    /// Print the generator matrix of a zoo code.
    Build {
        id: String,
        #[command(flatten)]
        params: ZooParamArgs,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct ZooParamArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Zoo code id (see `zoo list`).
    #[arg(long, conflicts_with = "file")]
    pub zoo: Option<String>,
    /// Generator matrix file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub params: ZooParamArgs,
    /// Work with the dual code.
    #[arg(long)]
    pub dual: bool,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Compute the exact covering radius by syndrome search.
    #[arg(long)]
    pub rho: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Distinct,
    Multiset,
}

#[derive(Args, Debug)]
pub struct DesignArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Block file instead of a code.
    #[arg(long, conflicts_with_all = ["zoo", "file", "weight"])]
    pub blocks: Option<PathBuf>,
    #[arg(long)]
    pub weight: Option<usize>,
    #[arg(long, conflicts_with = "max_strength")]
    pub t: Option<usize>,
    /// Scan t = 1, 2, … and report (T_qary, T_classical).
    #[arg(long)]
    pub max_strength: bool,
    /// Count only on fixed coordinates (default 0..t); needs transitivity.
    #[arg(long, requires = "t")]
    pub fixed_coords: bool,
    /// Coordinates for --fixed-coords, comma separated.
    #[arg(long, value_delimiter = ',', requires = "fixed_coords")]
    pub coords: Option<Vec<usize>>,
    /// Asserted t-transitivity of the automorphism group.
    #[arg(long)]
    pub assert_transitive: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Distinct)]
    pub mode: ModeArg,
    /// Which check decides the exit code for --t.
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Qary,
    Classical,
    Both,
}

#[derive(Args, Debug)]
pub struct CriteriaArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Coordinate for puncturing and shortening.
    #[arg(long, default_value_t = 0)]
    pub coordinate: usize,
    /// Confirm every prediction by counting.
    #[arg(long)]
    pub confirm: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tables,
    Golay,
    TwoWeight,
    Pless,
    Drs,
    Trace,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Field exponent for the trace suite, q = 2^m.
    #[arg(long, default_value_t = 5)]
    pub m: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = match &cli.command {
        Command::Zoo(ZooCommand::List) => commands::zoo_list(),
        Command::Zoo(ZooCommand::Build { id, params }) => commands::zoo_build(id, params),
        Command::Profile(a) => commands::profile(a),
        Command::Design(a) => commands::design(a),
        Command::Criteria(a) => commands::criteria(a),
        Command::Reproduce(a) => reproduce::run(a),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let elapsed = start.elapsed();
    if let Err(e) = output::emit(&report, cli.format, cli.out.as_deref(), &argv, elapsed) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    eprintln!("wall time: {elapsed:.2?}");
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// 2 for malformed input, 1 for everything else.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<qdesign::Error>() {
        Some(qdesign::Error::Parse { .. }) => 2,
        _ => 1,
    }
}

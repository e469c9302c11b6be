//! `monodt`: analysis, construction, conversion and synthesis for monotone
//! decision models, plus the self-test suite.
//!
//! Exit status is 0 on success or `EQUIV`, 1 when a check finds the two
//! sides differ and 2 on usage, parse or precondition errors.

mod artifact;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use monodt::boolfn::DEFAULT_MAX_N;
use monodt::gen::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "monodt",
    version,
    about = "Monotone decision trees, lists and negation-limited circuits"
)]
pub struct Cli {
    /// Largest arity accepted for exhaustive evaluation
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Seed for generated corpora
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for exhaustive sweeps
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Output file; the artifact is printed to stdout when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Alternation, uniformity and the optimal tree heights of a function
    Alt { file: PathBuf },
    /// Truth table of a named family: parity, threshold:<k>, candidate,
    /// point:<bits>, const0, const1
    Table {
        family: String,
        #[arg(short)]
        n: usize,
    },
    /// Monotone decomposition with its verification report
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "alt")]
        kind: DecompKind,
    },
    /// Build a model computing the function in a truth-table file
    Build {
        file: PathBuf,
        #[arg(long, value_enum)]
        model: BuildModel,
    },
    /// Convert a model into another kind
    Convert {
        file: PathBuf,
        /// Expected kind of the input; checked when given
        #[arg(long, value_enum)]
        from: Option<ModelKind>,
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
    /// Circuit and tree synthesis
    Synth {
        #[arg(value_enum)]
        target: SynthTarget,
        /// Input artifact (netlist, truth table or list, by target)
        file: Option<PathBuf>,
        /// Inverter width
        #[arg(long)]
        m: Option<usize>,
        /// Block count for block inverters
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Blocking levels for block inverters
        #[arg(long, default_value_t = 1)]
        levels: usize,
    },
    /// Randomized tree operations
    Rmdt {
        #[arg(value_enum)]
        op: RmdtOp,
        file: PathBuf,
        /// Target function for `computes`
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "half")]
        theta: Theta,
    },
    /// Exhaustive equivalence of two artifacts
    Verify { a: PathBuf, b: PathBuf },
    /// Run the acceptance criteria
    Selftest {
        #[arg(value_enum, default_value = "quick")]
        level: SelftestLevel,
        /// Comma-separated criterion numbers; all when omitted
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DecompKind {
    Alt,
    Threshold,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum BuildModel {
    Mdl,
    Mdt,
    Namdt,
    Nmdt,
    Nmdt2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Mdl,
    Mdt,
    Namdt,
    Nmdt1,
    Nmdt2,
    Rmdt,
    Wrmdt,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Mdl => "mdl",
            ModelKind::Mdt => "mdt",
            ModelKind::Namdt => "namdt",
            ModelKind::Nmdt1 => "nmdt1",
            ModelKind::Nmdt2 => "nmdt2",
            ModelKind::Rmdt => "rmdt",
            ModelKind::Wrmdt => "wrmdt",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ConvertTarget {
    Mdl,
    Mdt,
    Nmdt1,
    Nmdt2,
    Rmdt,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SynthTarget {
    #[value(name = "mdt_from_circuit")]
    MdtFromCircuit,
    Markov,
    #[value(name = "inverter_sorted")]
    InverterSorted,
    #[value(name = "inverter_fischer")]
    InverterFischer,
    #[value(name = "inverter_blocks")]
    InverterBlocks,
    #[value(name = "circuit_from_mdl")]
    CircuitFromMdl,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RmdtOp {
    Prob,
    Computes,
    Normalize,
    Derandomize,
    #[value(name = "from_wrmdt")]
    FromWrmdt,
    Majority,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Theta {
    Half,
    #[value(name = "two-thirds")]
    TwoThirds,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SelftestLevel {
    Quick,
    Full,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Differs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start {} workers: {e}", cli.jobs);
            return ExitCode::from(2);
        }
    };
    match pool.install(|| commands::run(&cli)) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Differs) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

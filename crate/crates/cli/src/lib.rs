//! File-driven construction and verification of weak bialgebra, comodule
//! and quantum transformation groupoid structures.

pub mod dump;
pub mod error;
pub mod input;
pub mod render;
pub mod suite;

use clap::{Args, Parser, Subcommand};

use weakhopf::CheckOptions;

pub use dump::dump;
pub use error::{CliError, Location};
pub use input::{parse_file, parse_str, Item, Resolved};
pub use render::{emit_report, Format};
pub use suite::{run_suite, Suite, SuiteReport};

/// Exit code for usage, parse, resolution and validation errors.
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "weakhopf", version, about = "Exact verification of weak bialgebra and comodule structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weak bialgebra axioms, counital maps and known closed forms.
    Wba(RunArgs),
    /// Weak Hopf antipode axioms.
    Wha(RunArgs),
    /// Right comodule axioms.
    Comodule(RunArgs),
    /// Comodule algebra axioms.
    ComoduleAlgebra(RunArgs),
    /// Comodule coalgebra axioms.
    ComoduleCoalgebra(RunArgs),
    /// Comodule Frobenius algebra axioms.
    ComoduleFrobenius(RunArgs),
    /// Round trips between formula and internal descriptions.
    InternalRoundtrip(RunArgs),
    /// Construction report of a quantum transformation groupoid.
    QtgFull(RunArgs),
    /// Monoidal structure of the bicomodule-to-comodule functor.
    GammaMonoidal(RunArgs),
    /// Print the input as an explicit structure file.
    Dump(DumpArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Structure file.
    pub input: String,
    /// Run only on these structures (repeatable).
    #[arg(long = "structure", short = 's')]
    pub structures: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o')]
    pub output: Option<String>,
    /// Sample this many tuples when an identity has more.
    #[arg(long)]
    pub sample_budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Witnesses kept per failing check.
    #[arg(long, default_value_t = 3)]
    pub max_witnesses: usize,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Print progress to standard error.
    #[arg(long, short = 'v')]
    pub verbose: bool,
}

#[derive(Args, Debug, Clone)]
pub struct DumpArgs {
    pub input: String,
    #[arg(long, short = 'o')]
    pub output: Option<String>,
}

impl RunArgs {
    pub fn options(&self) -> CheckOptions {
        CheckOptions { sample_budget: self.sample_budget, seed: self.seed, threads: self.threads, max_witnesses: self.max_witnesses }
    }
}

impl Command {
    fn suite(&self) -> Option<(Suite, &RunArgs)> {
        Some(match self {
            Command::Wba(a) => (Suite::Wba, a),
            Command::Wha(a) => (Suite::Wha, a),
            Command::Comodule(a) => (Suite::Comodule, a),
            Command::ComoduleAlgebra(a) => (Suite::ComoduleAlgebra, a),
            Command::ComoduleCoalgebra(a) => (Suite::ComoduleCoalgebra, a),
            Command::ComoduleFrobenius(a) => (Suite::ComoduleFrobenius, a),
            Command::InternalRoundtrip(a) => (Suite::InternalRoundtrip, a),
            Command::QtgFull(a) => (Suite::QtgFull, a),
            Command::GammaMonoidal(a) => (Suite::GammaMonoidal, a),
            Command::Dump(_) => return None,
        })
    }
}

fn write_out(path: &Option<String>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    match cli.command.suite() {
        Some((suite, args)) => {
            let opts = args.options();
            if args.verbose {
                eprintln!("resolving {}", args.input);
            }
            let resolved = opts.install(|| parse_file(&args.input, &opts))?;
            if args.verbose {
                eprintln!("running {} on {} declared structures", suite.name(), resolved.items.len());
            }
            let report = run_suite(suite, &resolved, &args.structures, &args.input, &opts, args.timing)?;
            write_out(&args.output, &emit_report(&report, args.format))?;
            Ok(report.exit_code())
        }
        None => {
            let Command::Dump(args) = &cli.command else { unreachable!() };
            let resolved = parse_file(&args.input, &CheckOptions::default())?;
            write_out(&args.output, &dump(&resolved))?;
            Ok(0)
        }
    }
}

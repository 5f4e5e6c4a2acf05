use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lamlab::bench::{self, Emit, Family, Order, Stage, Strategy, DEFAULT_FUEL};

/// Lambda-calculus reduction laboratory.
#[derive(Parser)]
#[command(name = "lamlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Step, transition or interaction budget.
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// File of `name = term;` definitions added to the prelude (I, two).
    #[arg(long)]
    defs: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    emit: Emit,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a term with one engine.
    Reduce {
        #[arg(long, default_value = "normal")]
        strategy: Strategy,
        /// Record wall time (makes output vary between runs).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Run a benchmark family across engines.
    Bench {
        #[arg(long, default_value = "term1")]
        family: Family,
        /// `5`, `2..8` or `2..=8`; both ends inclusive.
        #[arg(long, default_value = "1..8")]
        n: String,
        /// Comma-separated engines; all of them by default.
        #[arg(long, value_delimiter = ',')]
        strategy: Vec<Strategy>,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Count the redex families contracted on the way to normal form.
    Families {
        #[arg(long, default_value = "leftmost")]
        order: Order,
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Principal type, degree, and parallel steps against the degree bound.
    Degree {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Print the sharing graph of a term in Graphviz format.
    Dot {
        #[arg(long, default_value = "initial")]
        stage: Stage,
        #[command(flatten)]
        common: Common,
        term: String,
    },
}

fn env(common: &Common) -> Result<lamlab::DefinitionEnv, String> {
    let text = match &common.defs {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?),
        None => None,
    };
    bench::load_env(text.as_deref()).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<bench::CommandOutput, String> {
    Ok(match cli.command {
        Command::Reduce { strategy, timing, common, term } => {
            bench::cmd_reduce(&term, &env(&common)?, strategy, common.fuel, common.emit, timing)
        }
        Command::Bench { family, n, strategy, timing, common } => {
            let ns = bench::parse_n_range(&n)?;
            let strategies = if strategy.is_empty() { Strategy::ALL.to_vec() } else { strategy };
            bench::cmd_bench(family, ns, &strategies, common.fuel, common.emit, timing)
        }
        Command::Families { order, common, term } => {
            bench::cmd_families(&term, &env(&common)?, order, common.fuel, common.emit)
        }
        Command::Degree { common, term } => bench::cmd_degree(&term, &env(&common)?, common.fuel, common.emit),
        Command::Dot { stage, common, term } => bench::cmd_dot(&term, &env(&common)?, stage, common.fuel),
    })
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for fuel exhaustion, so usage errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out = run(cli).unwrap_or_else(|e| bench::CommandOutput { stderr: format!("error: {e}\n"), code: 1, ..Default::default() });
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}

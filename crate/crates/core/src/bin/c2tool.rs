use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use c2core::cli::{self, Command, GraphSource, Method, RunConfig};

#[derive(Parser)]
#[command(name = "c2tool", about = "c2 invariants of graphs over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Worker threads for point counts and summands.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// c2 residues of a graph.
    C2 {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma separated field orders.
        #[arg(long, default_value = "2,3,5,7")]
        q: String,
        /// bruteforce, three-valent, four-valent, denominator or slr.
        #[arg(long, default_value = "bruteforce")]
        method: String,
    },
    /// Run a verification suite: identities, counting, theorem3, slr or all.
    Verify { suite: String },
    /// Semilinear reduction of a graph's summands or of a polynomial target.
    Reduce {
        #[command(flatten)]
        graph: GraphArgs,
        /// One polynomial, or two separated by ';', written as `1*a1^2 + 1*a2^2`.
        #[arg(long, conflicts_with_all = ["graph", "gen"])]
        target: Option<String>,
        /// Where to write the JSON trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Graph JSON file.
    #[arg(long, conflicts_with = "gen")]
    graph: Option<PathBuf>,
    /// zigzag:h[:completed] or k:n.
    #[arg(long)]
    gen: Option<String>,
}

impl GraphArgs {
    fn source(self) -> Option<GraphSource> {
        self.graph.map(GraphSource::File).or(self.gen.map(GraphSource::Gen))
    }
}

fn config(cli: Cli) -> c2core::Result<RunConfig> {
    let mut cfg = RunConfig {
        threads: cli.threads,
        json: cli.json,
        ..RunConfig::default()
    };
    match cli.command {
        Cmd::C2 { graph, q, method } => {
            cfg.source = graph.source();
            cfg.qs = cli::parse_qs(&q)?;
            cfg.method = method.parse::<Method>()?;
        }
        Cmd::Verify { suite } => cfg.command = Command::Verify(suite),
        Cmd::Reduce { graph, target, trace } => {
            cfg.command = Command::Reduce;
            cfg.source = graph.source();
            cfg.target = target;
            cfg.trace = trace;
        }
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_USAGE as u8 } else { 0 });
        }
    };
    let outcome = match config(cli) {
        Ok(cfg) => cli::run(&cfg),
        Err(e) => cli::Outcome {
            code: cli::error_code(&e),
            output: format!("error: {e}\n"),
        },
    };
    // a closed pipe is not an error worth reporting
    let _ = if outcome.output.starts_with("error:") {
        io::stderr().write_all(outcome.output.as_bytes())
    } else {
        io::stdout().write_all(outcome.output.as_bytes())
    };
    ExitCode::from(outcome.code as u8)
}

use std::io::{self, Write};
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use fracvar::cli::{self, ExitStatus, DEFAULT_MODES};

/// Fractional calculus of variations: solve, sweep and verify.
#[derive(Parser)]
#[command(name = "fracvar", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the weighted v^2 problem on [0, 1] and check it against t^alpha.
    Example1 {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_MODES)]
        m: usize,
    },
    /// Show why the unweighted v^2 problem has no minimizer for alpha < 1.
    Example2 {
        #[arg(long)]
        alpha: f64,
    },
    /// Tabulate example1 over a list of orders into a CSV file.
    Sweep {
        /// Comma-separated orders in (0, 1].
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, default_value_t = DEFAULT_MODES)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a property suite: ops, lemma, byparts or all.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Solve the problem described by a spec file.
    Solve {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(command: Command, out: &mut dyn Write) -> cli::CliResult {
    match command {
        Command::Example1 { alpha, m } => cli::run_example1(alpha, m, out),
        Command::Example2 { alpha } => cli::run_example2(alpha, out),
        Command::Sweep { alphas, m, out: path } => {
            let alphas = cli::parse_alpha_list(&alphas)?;
            cli::run_sweep(&alphas, m, &path, out)
        }
        Command::Verify { suite } => cli::run_verify(&suite, out),
        Command::Solve { spec, out: path } => cli::run_solve(&spec, &path, out),
    }
}

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            process::exit(if e.use_stderr() { ExitStatus::Usage.code() } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = match run(args.command, &mut out) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("fracvar: {e}");
            e.status
        }
    };
    let _ = out.flush();
    process::exit(status.code());
}

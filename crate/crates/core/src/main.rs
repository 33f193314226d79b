use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ylab::algebra::{AlgebraKind, Basis};
use ylab::cli::{run, RunConfig, Suite};
use ylab::exact_core::Scalar;

#[derive(Parser)]
#[command(name = "ylab", version, about = "Exact checks of so/sp Yang-Baxter R-matrices, L-operators and fusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    So,
    Sp,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Delta,
    Split,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write a JSON report.
    Run {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "split")]
        basis: BasisArg,
        /// Occupation cutoff for bosonic oscillators.
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
        #[arg(long, default_value_t = 1)]
        js_degree: usize,
        /// Spectral parameter of the spinorial checks, as p/q.
        #[arg(long, default_value = "1/7", allow_hyphen_values = true)]
        u: Scalar,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<Scalar>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "YLAB_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Record wall times (the report is then not reproducible byte for byte).
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    let Command::Run { kind, n, basis, cutoff, js_degree, u, k_max, suite, lambda, mu, output, jobs, timings } =
        Cli::parse().command;
    let config = RunConfig {
        kind: match kind {
            KindArg::So => AlgebraKind::SO,
            KindArg::Sp => AlgebraKind::SP,
        },
        n,
        basis: match basis {
            BasisArg::Delta => Basis::Delta,
            BasisArg::Split => Basis::Split,
        },
        cutoff,
        js_degree,
        u,
        k_max,
        suite,
        lambda,
        mu,
        timings,
    };
    let report = match run(&config, jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    let written = match &output {
        Some(path) => std::fs::write(path, &json),
        None => {
            print!("{json}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    for c in report.checks.iter().filter(|c| c.status == ylab::cli::Status::Fail) {
        eprintln!("FAIL {} ({})", c.name, c.paper_ref);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

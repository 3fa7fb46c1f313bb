use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use picext::cli::{run, Options, EXIT_PARSE};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
}

/// Exact computations with length-3 complexes of abelian groups.
#[derive(Parser, Debug)]
#[command(name = "picext", version)]
struct Args {
    /// Document to load; `-` reads stdin.
    #[arg(long, short)]
    input: Option<String>,
    /// Seed for `selftest`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of cases for `selftest`.
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// One of cohomology, qis-check, cone, truncate, pullback, pushout, ker,
    /// coker, compose-roof, class-of-roof, ext, theta, psi, baer-sum,
    /// split-check, equiv-check, les-homotopy, les-hom, contrast-naive,
    /// selftest, validate, emit.
    command: String,
    /// Entity names and parameters of the command.
    args: Vec<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Format::Text = args.format;
    let text = match args.input.as_deref() {
        None => None,
        Some("-") => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                eprintln!("reading stdin: {e}");
                return ExitCode::from(EXIT_PARSE as u8);
            }
            Some(s)
        }
        Some(path) => match std::fs::read_to_string(path) {
            Ok(s) => Some(s),
            Err(e) => {
                eprintln!("{path}: {e}");
                return ExitCode::from(EXIT_PARSE as u8);
            }
        },
    };
    let opts = Options {
        seed: args.seed,
        count: args.count,
    };
    let out = run(text.as_deref(), &args.command, &args.args, &opts);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}

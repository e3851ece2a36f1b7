mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::CliError;

#[derive(Parser, Debug)]
#[command(name = "alcove", version, about = "Exact extended affine Weyl group combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Cartan type letter (A, B, C, D, E, F, G).
    #[arg(long = "type")]
    kind: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Full system label such as `A2` or `A1xB2`; repeatable for `verify`.
    #[arg(long)]
    system: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ElementArgs {
    /// Coweight in fundamental-coweight coordinates, e.g. `1,0`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Element as JSON `{"linear": ..., "translation": [...]}` or a bare
    /// automorphism name (`id`, `s1`, `w0`, `delta`, ...).
    #[arg(long)]
    theta: Option<String>,
    /// A generic point whose alcove is used instead of the fundamental one.
    #[arg(long, allow_hyphen_values = true)]
    alcove: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, Cartan matrix, facets of the fundamental alcove.
    Describe {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Length, reduced word and Omega part of `t_lambda theta`.
    Len {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        el: ElementArgs,
        /// Facet point; also evaluates the facet length formula.
        #[arg(long, allow_hyphen_values = true)]
        facet: Option<String>,
    },
    /// Lower Bruhat interval of `t_lambda theta`, optionally compared with
    /// another element.
    Bruhat {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        el: ElementArgs,
        /// Element (JSON or name) to compare against the top element.
        #[arg(long)]
        compare: Option<String>,
    },
    /// The admissible set of `lambda`, or its double cosets for `--facet`.
    Adm {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        el: ElementArgs,
        #[arg(long, allow_hyphen_values = true)]
        facet: Option<String>,
    },
    /// Newton point, Kottwitz invariant and membership in B(G, {mu}) of
    /// `theta`, with `lambda` as mu.
    Bgmu {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        el: ElementArgs,
        /// Diagram automorphism giving the Frobenius action.
        #[arg(long, default_value = "id")]
        diagram: String,
    },
    /// Good-position chamber for `(F, lambda, theta)` and its length and
    /// Bruhat certificate.
    Goodpos {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        el: ElementArgs,
        #[arg(long, allow_hyphen_values = true)]
        facet: String,
    },
    /// Property sweeps.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        /// Suite names, comma separated or repeated; `all` for every suite.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        theta_bound: i64,
        #[arg(long, default_value_t = 6)]
        ball_length: u64,
        /// Extra facet points, repeatable.
        #[arg(long, allow_hyphen_values = true)]
        facet: Vec<String>,
        /// Record every case, not only failures.
        #[arg(long)]
        keep_cases: bool,
        /// Include per-suite wall-clock times.
        #[arg(long)]
        timing: bool,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("ALCOVE_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .map_err(|_| CliError::Usage(format!("ALCOVE_THREADS must be a number, got {value:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let out = match cli.command {
        Command::Describe { sys } => commands::describe(&sys, cli.format)?,
        Command::Len { sys, el, facet } => commands::len(&sys, &el, facet.as_deref(), cli.format)?,
        Command::Bruhat { sys, el, compare } => commands::bruhat(&sys, &el, compare.as_deref(), cli.format)?,
        Command::Adm { sys, el, facet } => commands::adm(&sys, &el, facet.as_deref(), cli.format)?,
        Command::Bgmu { sys, el, diagram } => commands::bgmu(&sys, &el, &diagram, cli.format)?,
        Command::Goodpos { sys, el, facet } => commands::goodpos(&sys, &el, &facet, cli.format)?,
        Command::Verify {
            sys,
            suite,
            bound,
            theta_bound,
            ball_length,
            facet,
            keep_cases,
            timing,
            sequential,
        } => commands::verify(
            &sys,
            commands::VerifyOpts {
                suites: suite,
                bound,
                theta_bound,
                ball_length,
                facets: facet,
                keep_cases,
                timing,
                sequential,
            },
            cli.format,
        )?,
    };
    output::write(cli.out.as_deref(), &out.text)?;
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    ExitCode::from(exit_code(run(cli)))
}

/// 0 when every checked property held, 1 on a property failure, 2 on bad
/// input.
fn exit_code(result: Result<bool, CliError>) -> u8 {
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(Ok(true)), 0);
        assert_eq!(exit_code(Ok(false)), 1);
        assert_eq!(exit_code(Err(CliError::Usage("x".into()))), 2);
        assert_eq!(exit_code(Err(alcove::Error::NotAdjacent.into())), 2);
    }

    #[test]
    fn parses_spec_examples() {
        let cli = Cli::try_parse_from([
            "alcove", "verify", "--suite", "prop44", "--type", "A", "--rank", "2", "--bound", "2",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Verify { bound: 2, .. }));
        let cli = Cli::try_parse_from(["alcove", "adm", "--type", "A", "--rank", "2", "--lambda", "1,0"]).unwrap();
        assert!(matches!(cli.command, Command::Adm { .. }));
        assert!(Cli::try_parse_from(["alcove", "len", "--nope"]).is_err());
    }
}

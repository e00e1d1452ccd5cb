use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use skcl_core::cli::{self, Command, HilbertTarget};
use skcl_core::{Element, Error, Matrix, Result};

#[derive(Parser)]
#[command(name = "skcl", version, about = "Exact computations with skew Clifford algebras over Q")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Input {
    /// Presentation JSON file, or `-` for standard input.
    path: Option<String>,
    /// Presentation JSON given inline.
    #[arg(long, conflicts_with = "path")]
    inline: Option<String>,
}

impl Input {
    fn text(&self) -> Result<String> {
        match (&self.inline, self.path.as_deref()) {
            (Some(s), _) => Ok(s.clone()),
            (None, Some("-")) | (None, None) => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Input(format!("reading standard input: {e}")))?;
                Ok(s)
            }
            (None, Some(path)) => {
                std::fs::read_to_string(path).map_err(|e| Error::Input(format!("reading {path}: {e}")))
            }
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a presentation and list its linear consequences.
    Validate(Input),
    /// Dimension of the algebra.
    Dim(Input),
    /// Normal-word basis.
    Basis(Input),
    /// Normal form of an element.
    Nf {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        element: String,
    },
    /// Product of two elements.
    Mul {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The four equivalent conditions for full dimension.
    Tfae(Input),
    /// Reduce to a presentation satisfying the star condition.
    Reduce(Input),
    /// Compare the filtered profile with the associated graded algebra.
    Pbw {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: usize,
    },
    /// Centrality of the quadratic element q.
    Qcentral(Input),
    /// Even and odd dimensions.
    Z2(Input),
    /// Graded homogenizations.
    Homogenize {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "multi")]
        single: bool,
        #[arg(long)]
        multi: bool,
        /// JSON array of n×n matrices for `--multi`.
        #[arg(long, requires = "multi")]
        matrices: Option<String>,
    },
    /// Linearly independent μ-symmetric matrices summing to 2B.
    Partition(Input),
    /// Matrices giving an AS-regular graded skew Clifford algebra.
    Asreg(Input),
    /// Hilbert series prefix of a graded algebra built from the presentation.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        target: String,
        #[arg(long)]
        degree: usize,
    },
    /// Check that the degree-two candidates are central.
    CentralCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: usize,
    },
    /// Print a bundled presentation.
    Examples {
        #[arg(long)]
        which: String,
        /// Fixture parameter as key=value, e.g. a=2.
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

fn parse_json<T: serde::de::DeserializeOwned>(flag: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Input(format!("--{flag}: {e}")))
}

fn dispatch(cmd: Cmd) -> Result<cli::RunReport> {
    let (command, input) = match cmd {
        Cmd::Examples { which, params } => return cli::examples(&which, &cli::parse_params(&params)?),
        Cmd::Validate(i) => (Command::Validate, i),
        Cmd::Dim(i) => (Command::Dim, i),
        Cmd::Basis(i) => (Command::Basis, i),
        Cmd::Nf { input, element } => (Command::Nf { element: parse_json::<Element>("element", &element)? }, input),
        Cmd::Mul { input, a, b } => (Command::Mul { a: parse_json("a", &a)?, b: parse_json("b", &b)? }, input),
        Cmd::Tfae(i) => (Command::Tfae, i),
        Cmd::Reduce(i) => (Command::Reduce, i),
        Cmd::Pbw { input, degree } => (Command::Pbw { degree }, input),
        Cmd::Qcentral(i) => (Command::Qcentral, i),
        Cmd::Z2(i) => (Command::Z2, i),
        Cmd::Homogenize { input, single, multi, matrices } => {
            if single == multi {
                return Err(Error::Input("homogenize needs exactly one of --single or --multi".into()));
            }
            if single {
                (Command::HomogenizeSingle, input)
            } else {
                let matrices = matrices.map(|m| parse_json::<Vec<Matrix>>("matrices", &m)).transpose()?;
                (Command::HomogenizeMulti { matrices }, input)
            }
        }
        Cmd::Partition(i) => (Command::Partition, i),
        Cmd::Asreg(i) => (Command::Asreg, i),
        Cmd::Hilbert { input, target, degree } => {
            (Command::Hilbert { target: target.parse::<HilbertTarget>()?, degree }, input)
        }
        Cmd::CentralCheck { input, degree } => (Command::CentralCheck { degree }, input),
    };
    cli::execute(&command, &input.text()?)
}

// A closed pipe downstream is not our failure.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = Error::Input(e.render().to_string().trim().to_string());
            emit(&cli::error_json("skcl", &err));
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let name = std::env::args().nth(1).unwrap_or_default();
    match dispatch(args.command) {
        Ok(report) => {
            emit(&report.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&cli::error_json(&name, &e));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

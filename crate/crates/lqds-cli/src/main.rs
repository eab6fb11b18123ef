use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lqds_cli::exec::{self, CliError, Document};
use lqds_cli::problem::{parse_side, Backend};
use lqds_core::Side;

/// Determinants, inverses, spectra, exponentials, and closed-form ODE
/// solutions for quaternion matrices.
///
/// Every subcommand reads a TOML problem/matrix file and prints a
/// line-oriented `key = value` result document. Exit codes: 0 on success,
/// 2 when a mathematical precondition fails (singular matrix, unsupported
/// problem class, out-of-range anchor), 3 on unreadable or malformed input.
#[derive(Parser)]
#[command(name = "lqds", version, about, max_term_width = 80)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Noncommutative determinant of the matrix in FILE
    ///
    /// Without flags this is the real determinant of a Hermitian matrix.
    /// `--anchor row:N` computes the row determinant anchored there,
    /// `--anchor col:N` the column determinant; `--kind ddet` computes the
    /// double determinant det(A*A). Anchors are 1-based.
    Det {
        file: PathBuf,
        /// Expansion anchor, "row:N" or "col:N"
        #[arg(long)]
        anchor: Option<String>,
        /// One of: rdet, cdet, det, ddet (inferred from the anchor)
        #[arg(long)]
        kind: Option<String>,
        /// Scalar backend: "exact" or "float" (default exact)
        #[arg(long)]
        backend: Option<String>,
    },
    /// Two-sided inverse via determinantal Cramer columns
    Inv {
        file: PathBuf,
        /// Scalar backend: "exact" or "float" (default exact)
        #[arg(long)]
        backend: Option<String>,
    },
    /// Solve A·x = b (right) or x·A = b (left) by Cramer's rule
    Solve {
        file: PathBuf,
        /// Overrides the file's side: "right" or "left"
        #[arg(long)]
        side: Option<String>,
        /// Scalar backend: "exact" or "float" (default exact)
        #[arg(long)]
        backend: Option<String>,
    },
    /// Drazin inverse, index, and rank of a (possibly singular) matrix
    Drazin {
        file: PathBuf,
        /// Scalar backend: "exact" or "float" (default exact)
        #[arg(long)]
        backend: Option<String>,
    },
    /// Standard eigenvalues and diagonalization of a normal matrix
    ///
    /// With `--similarity T` the result describes A = T·N·T⁻¹ for the
    /// normal matrix N in FILE: the same standard eigenvalues, with the
    /// eigenvector columns transported through T.
    EigNormal {
        file: PathBuf,
        /// Matrix file with the similarity transform T
        #[arg(long)]
        similarity: Option<PathBuf>,
        /// Scalar backend: "exact" or "float" (default exact)
        #[arg(long)]
        backend: Option<String>,
    },
    /// Matrix exponential e^{At} (float backend only)
    Exp {
        file: PathBuf,
        /// Evaluation time t
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Scalar backend: only "float" is supported
        #[arg(long)]
        backend: Option<String>,
    },
    /// Closed-form solution of x′ = Ax + b(t) / x′ = xA + b(t)
    LqdsSolve {
        file: PathBuf,
        /// Scalar backend: "exact" or "float" (default exact)
        #[arg(long)]
        backend: Option<String>,
    },
    /// Residual report for the solved system
    ///
    /// Exact polynomial solutions are checked as a polynomial identity;
    /// anything else is sampled on the file's t_samples (default
    /// 0, 0.25, 0.5, 0.75, 1).
    LqdsVerify {
        file: PathBuf,
        /// Scalar backend: "exact" or "float" (default exact)
        #[arg(long)]
        backend: Option<String>,
    },
    /// Compare the closed-form solution against an RK4 integration
    Oracle {
        file: PathBuf,
        /// Scalar backend: "exact" or "float" (default float)
        #[arg(long)]
        backend: Option<String>,
    },
}

fn parse_backend_flag(flag: Option<&str>) -> Result<Option<Backend>, CliError> {
    Ok(flag.map(Backend::parse).transpose()?)
}

fn parse_side_flag(flag: Option<&str>) -> Result<Option<Side>, CliError> {
    Ok(flag.map(parse_side).transpose()?)
}

fn run(command: &Command) -> Result<Document, CliError> {
    match command {
        Command::Det {
            file,
            anchor,
            kind,
            backend,
        } => exec::cmd_det(
            file,
            anchor.as_deref(),
            kind.as_deref(),
            parse_backend_flag(backend.as_deref())?,
        ),
        Command::Inv { file, backend } => {
            exec::cmd_inv(file, parse_backend_flag(backend.as_deref())?)
        }
        Command::Solve {
            file,
            side,
            backend,
        } => exec::cmd_solve(
            file,
            parse_side_flag(side.as_deref())?,
            parse_backend_flag(backend.as_deref())?,
        ),
        Command::Drazin { file, backend } => {
            exec::cmd_drazin(file, parse_backend_flag(backend.as_deref())?)
        }
        Command::EigNormal {
            file,
            similarity,
            backend,
        } => exec::cmd_eig_normal(
            file,
            similarity.as_deref(),
            parse_backend_flag(backend.as_deref())?,
        ),
        Command::Exp { file, t, backend } => {
            exec::cmd_exp(file, *t, parse_backend_flag(backend.as_deref())?)
        }
        Command::LqdsSolve { file, backend } => {
            exec::cmd_lqds_solve(file, parse_backend_flag(backend.as_deref())?)
        }
        Command::LqdsVerify { file, backend } => {
            exec::cmd_lqds_verify(file, parse_backend_flag(backend.as_deref())?)
        }
        Command::Oracle { file, backend } => {
            exec::cmd_oracle(file, parse_backend_flag(backend.as_deref())?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes; everything else is a
            // command-line parse error.
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(doc) => {
            print!("{doc}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

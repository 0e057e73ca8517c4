//! `ntverify`: command-line front end over the verification crates. Each
//! subcommand runs one verification and prints a single report, JSON by
//! default (sorted keys, trailing newline) or `--text` for a line-per-check
//! rendering; `verify-all` runs the whole suite as one aggregate report.
//!
//! Exit codes: 0 every check passed, 1 a check failed or the computation
//! errored, 2 the outcome is honestly undecided, 64 usage.

mod commands;
mod suite;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use ntcore::report::{Status, VerificationReport};

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "ntverify",
    version,
    about = "Exact-arithmetic verification reports: group schemes, curves, class numbers"
)]
struct Cli {
    /// Print the report as a JSON document (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Print the report as readable text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The Honda system (L, M) of the group scheme at (p, r, delta).
    Honda {
        /// Odd prime of the scheme datum.
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Rank of the scheme datum.
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Comma list of "1"/"p" entries, e.g. "p,1".
        #[arg(long, default_value = "p,1")]
        delta: String,
        /// Also verify the covector comultiplication to this truncation depth.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Self-extension dimension over GF(p^K) with GF(p^F) coefficients.
    Ext {
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Residue-field degree K.
        #[arg(long = "k-deg", default_value_t = 1)]
        k_deg: usize,
        /// Coefficient-field degree F.
        #[arg(long = "f-deg", default_value_t = 1)]
        f_deg: usize,
    },
    /// The deformation module over a ramified base of degree e.
    Maprime {
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Ramification degree of the base (2 <= e <= p - 1).
        #[arg(long, default_value_t = 2)]
        e: usize,
        #[arg(long = "k-deg", default_value_t = 1)]
        k_deg: usize,
        #[arg(long = "f-deg", default_value_t = 1)]
        f_deg: usize,
    },
    /// Elliptic-curve inspections over Q or a quadratic field.
    Curve {
        #[command(subcommand)]
        op: CurveCommand,
    },
    /// Points of the genus-one modular curve over Q(sqrt(d)), d = 2 or 17.
    X015 {
        /// Quadratic field datum: 2 or 17.
        #[arg(long)]
        d: i64,
        /// Key=value file with the external rank records.
        #[arg(long, default_value = "assumptions.txt")]
        assume: String,
    },
    /// Class-number verification for "Q(sqrt(a))" or "Q(sqrt(a), sqrt(b))".
    Classno {
        /// Field spec, e.g. "Q(sqrt(2), sqrt(-3))".
        spec: String,
    },
    /// The 2-Sylow subgroup relations in GL_2(F_3).
    Sylow2,
    /// Run every verification and print one aggregate report.
    VerifyAll {
        /// Key=value file with the external rank records.
        #[arg(long, default_value = "assumptions.txt")]
        assume: String,
    },
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Weierstrass quantities with the discriminant identity recomputed.
    Invariants {
        /// Curve record "a1,a2,a3,a4,a6 over Q" or "... over Q(sqrt(d))".
        spec: String,
    },
    /// Reduction type and, when good, the local point data at a place over p.
    Reduce {
        spec: String,
        /// Rational prime under the place.
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Tame-inertia level from the Newton polygon of [p](t) on the formal
    /// group; with no curve record, runs the built-in ramified example.
    Inertia {
        spec: Option<String>,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Ramification of the completion (default: the place's own).
        #[arg(long)]
        e: Option<u64>,
    },
}

fn run(command: &Command) -> Result<VerificationReport, CliError> {
    match command {
        Command::Honda { p, r, delta, depth } => commands::cmd_honda(*p, *r, delta, *depth),
        Command::Ext { p, k_deg, f_deg } => commands::cmd_ext(*p, *k_deg, *f_deg),
        Command::Maprime { p, e, k_deg, f_deg } => {
            commands::cmd_maprime(*p, *e, *k_deg, *f_deg)
        }
        Command::Curve { op } => match op {
            CurveCommand::Invariants { spec } => commands::cmd_curve_invariants(spec),
            CurveCommand::Reduce { spec, p } => commands::cmd_curve_reduce(spec, *p),
            CurveCommand::Inertia { spec, p, e } => {
                commands::cmd_curve_inertia(spec.as_deref(), *p, *e)
            }
        },
        Command::X015 { d, assume } => commands::cmd_x015(*d, assume),
        Command::Classno { spec } => commands::cmd_classno(spec),
        Command::Sylow2 => Ok(ntcurves::sylow::sylow2_check()),
        Command::VerifyAll { assume } => suite::verify_all(assume),
    }
}

/// Report status to process exit code.
fn exit_for(status: Status) -> i32 {
    match status {
        Status::Pass => 0,
        Status::Inconclusive => 2,
        Status::Fail => 1,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are requested output, not usage mistakes.
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                std::process::exit(0);
            }
            eprint!("{err}");
            std::process::exit(64);
        }
    };
    let text_mode = cli.text && !cli.json;
    match run(&cli.command) {
        Ok(report) => {
            if text_mode {
                print!("{}", report.to_text());
            } else {
                print!("{}", report.to_json_string());
            }
            std::process::exit(exit_for(report.status));
        }
        Err(err) => {
            eprintln!("error: {err:?}");
            std::process::exit(err.exit_code());
        }
    }
}

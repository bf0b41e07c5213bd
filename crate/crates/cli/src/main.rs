//! Command-line front end.
//!
//! Exit codes: 0 success or a fully verified certificate; 2 verified modulo
//! axioms, or a search that ended without a result; 1 rejection or runtime
//! error; 64 usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PARTIAL: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "charp-forms", version, about = "Exact differential forms, symbols and degree-p forms in characteristic p")]
pub struct Cli {
    /// Worker threads for search operations; CHARP_FORMS_JOBS takes precedence.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Field header as a JSON file or inline JSON, for commands without an input file.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Rule {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a symbol to its differential form.
    Eval { symbol: PathBuf },
    /// Exterior derivative of a form.
    D { form: PathBuf },
    /// Wedge product of two forms.
    Wedge { left: PathBuf, right: PathBuf },
    /// Apply one rewrite rule; slots are numbered from 1.
    Rewrite {
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long)]
        slot: usize,
        #[arg(long)]
        slot2: Option<usize>,
        /// Comma-separated coefficients c₀,c₁,… (a single expression for rule c).
        #[arg(long)]
        elem: Option<String>,
        symbol: PathBuf,
    },
    /// Replace the last slot by the value of the slot form at a vector.
    SlotModify {
        #[arg(long)]
        vector: PathBuf,
        symbol: PathBuf,
    },
    /// Rewrite a collection of symbols to share the alpha component and leading slots.
    Link {
        #[arg(long)]
        level: usize,
        symbols: PathBuf,
    },
    /// Search for a certificate that a symbol is zero.
    Trivialize {
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        cap: Option<u64>,
        symbol: PathBuf,
    },
    /// Certify p-regularity structurally, falling back to enumeration.
    Pregular { form: PathBuf },
    /// Search for an isotropic vector: `exhaustive` or `degree:D`.
    Isotropy {
        #[arg(long)]
        mode: String,
        #[arg(long)]
        cap: Option<u64>,
        form: PathBuf,
    },
    /// Norm of c₀ + c₁λ + … from F[λ]/(λ^p − λ − α).
    Norm {
        #[arg(long)]
        alpha: String,
        /// Comma-separated coefficients.
        #[arg(long)]
        elem: String,
    },
    /// The slot form of a symbol.
    #[command(name = "build-phi")]
    BuildPhi { symbol: PathBuf },
    /// The slot form plus the two-dimensional form used by trivialize.
    #[command(name = "build-Phi")]
    BuildTrivializer { symbol: PathBuf },
    /// The common-slot form from lists of alphas, betas, gammas and deltas.
    #[command(name = "build-t36")]
    BuildCommonSlot { spec: PathBuf },
    /// Split [α, N(g)) by an explicit nilpotent element.
    AlgebraSplitCheck {
        #[arg(long)]
        alpha: String,
        /// Comma-separated coefficients of g(x).
        #[arg(long)]
        g: String,
    },
    /// Verify a certificate file.
    VerifyCert { cert: PathBuf },
}

fn jobs(flag: usize) -> usize {
    std::env::var("CHARP_FORMS_JOBS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(flag)
        .max(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let session = commands::Session {
        jobs: jobs(cli.jobs),
        field: cli.field.clone(),
    };
    match commands::dispatch(&session, &cli.command) {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON value") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_FAIL);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! orderlab: predicate checks, monad application, law verification sweeps
//! and counterexample search over finite posets and T0 spaces.
//!
//! JSON in, JSON or human summary out. Exit codes: 0 = holds / structure
//! found, 1 = fails / absent (with witness), 2 = input error. Everything is
//! exhaustive and deterministic; there is no seed.

mod cert;
mod commands;

use cert::Certificate;
use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "orderlab", version, about = "finite-instance workbench for order-enriched monads")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock runtime in the certificate (off by default so
    /// output stays byte-stable)
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a predicate on a poset or space
    Check {
        /// lattice, distributive, frame, coframe, continuous,
        /// algebraic-domain, completely-distributive, totally-algebraic,
        /// bounded-complete, directed-complete, sober, t0
        predicate: String,
        /// input JSON file (poset or space)
        file: String,
    },
    /// Apply a monad or verify its laws on one object
    Monad {
        /// D, I, F, F1, F2, Fc, adjbounds
        name: String,
        #[command(subcommand)]
        action: MonadAction,
    },
    /// Algebra structure discovery and algebraicity
    Algebra {
        /// D, I, F, F1, F2, Fc
        name: String,
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Exhaustive law verification sweeps
    Verify {
        /// kz-equiv, em-adjoint, injectivity, cauchy, kar-spl,
        /// char-algebraic, thm6, regcogen, mt-identity
        law: String,
        /// size bound for the sweep (defaults per law)
        #[arg(long)]
        max_size: Option<usize>,
        /// subcategory class for regcogen: alat, adom, spec
        #[arg(long)]
        class: Option<String>,
    },
    /// First counterexample to a conjunction of classification flags
    Search {
        /// e.g. "lattice&!distributive"
        expr: String,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Idempotent split completion
    Kar {
        /// D, I, F, F1, F2, Fc
        name: String,
        #[command(subcommand)]
        action: KarAction,
    },
    /// Kleisli-category predicates
    Kleisli {
        #[command(subcommand)]
        action: KleisliAction,
    },
}

#[derive(Subcommand)]
enum MonadAction {
    /// Emit TX with its element descriptors
    Apply { file: String },
    /// Emit the unit e_X as a map table
    Unit { file: String },
    /// Emit the multiplication m_X as a map table
    Mult { file: String },
    /// Evaluate the three KZ conditions at the object
    KzVerify { file: String },
    /// Check the monad laws at the object
    Laws { file: String },
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Find the algebra structure on the object
    Find { file: String },
    /// Find the homomorphic splitting of the algebra
    Split { file: String },
    /// Intrinsic algebraicity certificate (equaliser core + density + epi)
    Algebraic { file: String },
    /// Search for a free-algebra witness
    AlgebraicDirect {
        file: String,
        #[arg(long)]
        max_size: Option<usize>,
    },
}

#[derive(Subcommand)]
enum KarAction {
    /// List kar objects up to kar-isomorphism
    Enumerate {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum KleisliAction {
    /// Is the map T-dense?
    Dense { monad: String, file: String },
}

pub struct Ctx {
    pub format: Format,
    pub timings: bool,
    pub max_elements: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_elements = std::env::var("ORDERLAB_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10);
    let ctx = Ctx { format: cli.format, timings: cli.timings, max_elements };
    let started = std::time::Instant::now();
    let result = match cli.command {
        Command::Check { predicate, file } => commands::check(&ctx, &predicate, &file),
        Command::Monad { name, action } => match action {
            MonadAction::Apply { file } => commands::monad(&ctx, &name, "apply", &file),
            MonadAction::Unit { file } => commands::monad(&ctx, &name, "unit", &file),
            MonadAction::Mult { file } => commands::monad(&ctx, &name, "mult", &file),
            MonadAction::KzVerify { file } => commands::monad(&ctx, &name, "kz-verify", &file),
            MonadAction::Laws { file } => commands::monad(&ctx, &name, "laws", &file),
        },
        Command::Algebra { name, action } => match action {
            AlgebraAction::Find { file } => commands::algebra(&ctx, &name, "find", &file, None),
            AlgebraAction::Split { file } => commands::algebra(&ctx, &name, "split", &file, None),
            AlgebraAction::Algebraic { file } => {
                commands::algebra(&ctx, &name, "algebraic", &file, None)
            }
            AlgebraAction::AlgebraicDirect { file, max_size } => {
                commands::algebra(&ctx, &name, "algebraic-direct", &file, max_size)
            }
        },
        Command::Verify { law, max_size, class } => {
            commands::verify(&ctx, &law, max_size, class.as_deref())
        }
        Command::Search { expr, max_size } => commands::search(&ctx, &expr, max_size),
        Command::Kar { name, action } => match action {
            KarAction::Enumerate { max_size } => commands::kar_enumerate(&ctx, &name, max_size),
        },
        Command::Kleisli { action } => match action {
            KleisliAction::Dense { monad, file } => commands::kleisli_dense(&ctx, &monad, &file),
        },
    };
    match result {
        Ok(mut certificate) => {
            if ctx.timings {
                certificate.runtime_ms = Some(started.elapsed().as_millis());
            }
            emit(&ctx, &certificate);
            ExitCode::from(certificate.exit_code() as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn emit(ctx: &Ctx, certificate: &Certificate) {
    match ctx.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(certificate).expect("serializable")
            );
        }
        Format::Text => println!("{}", certificate.human_summary()),
    }
}

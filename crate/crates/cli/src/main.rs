use std::process::ExitCode;

use anglesum::angles::SamplingConfig;
use anglesum::Error;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

mod commands;
mod input;
mod report;

use report::Format;

/// Angle sums, face numbers and the linear relations between them.
#[derive(Parser, Debug)]
#[command(name = "anglesum", version, about)]
struct Cli {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Monte Carlo samples per angle.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
    /// Tolerance for residuals of deterministic floating-point values.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the α-f-vector with standard errors and method tags.
    Alpha(input::SubjectArgs),
    /// Check linear relations; exits 1 if any fails.
    Verify(commands::VerifyArgs),
    /// Affine rank of a family of α-f-vectors against the span theorems.
    Span(commands::SpanArgs),
    /// Voxel complexes: build, characteristics, gluing, fixtures.
    #[command(subcommand)]
    Complex(commands::ComplexCmd),
    /// Spherical and hyperbolic polytopes.
    #[command(subcommand)]
    Curved(commands::CurvedCmd),
}

/// Settings echoed into every report.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u64,
    pub tol: f64,
    pub format: Format,
}

impl RunConfig {
    pub fn sampling(&self) -> SamplingConfig {
        SamplingConfig::with_samples(self.samples).seeded(self.seed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "samples": self.samples,
            "tol": self.tol,
            "format": self.format.name(),
        })
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Invalid(_) => 2,
        Error::Gluing(_) => 4,
        Error::Dimension(_) | Error::Degenerate(_) | Error::Budget(_) | Error::Realization(_) => 3,
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("ANGLESUM_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second initialization only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let cfg = RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        tol: cli.tol,
        format: cli.format,
    };
    let result = match &cli.command {
        Command::Alpha(a) => commands::alpha(a, &cfg),
        Command::Verify(a) => commands::verify(a, &cfg),
        Command::Span(a) => commands::span(a, &cfg),
        Command::Complex(c) => commands::complex(c, &cfg),
        Command::Curved(c) => commands::curved(c, &cfg),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(&cfg));
            if report.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

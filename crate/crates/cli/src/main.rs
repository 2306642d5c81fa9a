//! `gms`: inspect, validate, create, convert, resample and compare GMS files.
//!
//! Exit codes: 0 success, 1 the input was readable but breaks a rule (or two
//! files differ), 2 I/O or decode failure. `info` reports any decode failure
//! with exit code 1.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gms::SampleType;

mod commands;

#[derive(Debug, Parser)]
#[command(name = "gms", version, about = "Toolkit for GMS gesture and motion signal files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the scene declaration of a file.
    Info {
        file: PathBuf,
        /// Also print min/max/mean/rms of every track.
        #[arg(long)]
        stats: bool,
    },
    /// Check a file against the format rules.
    Validate {
        file: PathBuf,
        /// Treat advisory diagnostics as failures.
        #[arg(long)]
        strict: bool,
    },
    /// Write the built-in six-unit reference scene.
    CreateExample {
        /// Number of fluid mass channels.
        #[arg(long = "fluid-n", default_value_t = 10)]
        fluid_n: usize,
        #[arg(long, default_value_t = 1000)]
        frames: u32,
        /// Sampling frequency in Hz.
        #[arg(long, default_value_t = 1000.0)]
        freq: f64,
        #[arg(long = "sample-type", default_value = "float64", value_parser = parse_sample_type)]
        sample_type: SampleType,
        out: PathBuf,
    },
    /// Convert between .gms and .csv (direction taken from the extensions).
    Convert { input: PathBuf, output: PathBuf },
    /// Lower the sampling rate by an integer factor.
    Resample {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        factor: usize,
        /// Average each window instead of keeping its first frame.
        #[arg(long)]
        smooth: bool,
    },
    /// Compare the structure and samples of two files.
    Diff {
        a: PathBuf,
        b: PathBuf,
        /// Largest accepted absolute sample difference.
        #[arg(long, default_value_t = 0.0, value_parser = parse_tolerance)]
        tolerance: f64,
    },
}

fn parse_sample_type(s: &str) -> Result<SampleType, String> {
    s.parse().map_err(|e: gms::Error| e.to_string())
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t >= 0.0 => Ok(t),
        _ => Err(format!("{s:?} is not a non-negative number")),
    }
}

/// A failed command: the message for standard error and its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn semantic(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<gms::Error> for Failure {
    fn from(err: gms::Error) -> Failure {
        let code = if err.is_semantic() { 1 } else { 2 };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .format_timestamp(None)
        .init();

    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info { file, stats } => commands::info(&file, stats),
        Command::Validate { file, strict } => commands::validate(&file, strict),
        Command::CreateExample {
            fluid_n,
            frames,
            freq,
            sample_type,
            out,
        } => commands::create_example(
            &gms::ExampleSpec {
                fluid_masses: fluid_n,
                frames,
                freq,
                sample_type,
            },
            &out,
        ),
        Command::Convert { input, output } => commands::convert(&input, &output),
        Command::Resample {
            input,
            output,
            factor,
            smooth,
        } => commands::resample(&input, &output, factor, smooth),
        Command::Diff { a, b, tolerance } => commands::diff(&a, &b, tolerance),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("gms: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}

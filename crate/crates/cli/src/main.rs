//! `rebit`: check, decompose, classify and draw rebit channels.
//!
//! Exit codes: 0 success (or completely positive), 2 well-formed input that
//! is not completely positive, 1 input or system error.

mod doc;
mod svg;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rebit::classify::sample_cp_channels;
use rebit::verify::{run_verify, VerifyOptions};
use rebit::{classify, decompose_channel, image_ellipse, is_cp};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use doc::{ChannelDocument, ClassificationOut, DecomposeOut, EllipseOut};

const NOT_CP: u8 = 2;

#[derive(Parser)]
#[command(
    name = "rebit",
    version,
    about = "Rebit channel checker and classifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete-positivity report for a channel document
    Check { file: PathBuf },
    /// Rotation–diagonal–rotation factorization
    Decompose { file: PathBuf },
    /// Named family and Kraus rank
    Classify { file: PathBuf },
    /// Draw the image of the Bloch disk as SVG; prints the ellipse as JSON
    Image {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Draw the admissible scale region as SVG
    Region {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print random completely positive channels, one JSON document per line
    Sample {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        unital: bool,
    },
    /// Cross-check the closed-form conditions against the eigenvalue oracle
    Verify {
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer(&mut stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { file } => {
            let report = is_cp(&ChannelDocument::read(&file)?.channel());
            print_json(&report)?;
            Ok(if report.is_cp {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(NOT_CP)
            })
        }
        Command::Decompose { file } => {
            let c = ChannelDocument::read(&file)?.channel();
            let f = decompose_channel(&c);
            print_json(&DecomposeOut::new(&f, f.residual(&c)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { file } => {
            let c = ChannelDocument::read(&file)?.channel();
            let report = is_cp(&c);
            match classify(&c) {
                Ok(class) => {
                    print_json(&ClassificationOut::new(&class, report.kraus_rank))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(_) => {
                    print_json(&report)?;
                    eprintln!("rebit: map is not completely positive; no classification");
                    Ok(ExitCode::from(NOT_CP))
                }
            }
        }
        Command::Image { file, output } => {
            let c = ChannelDocument::read(&file)?.channel();
            let cp = is_cp(&c).is_cp;
            write_file(&output, &svg::render_image(&c, cp))?;
            print_json(&EllipseOut::from(&image_ellipse(&c)))?;
            Ok(if cp {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(NOT_CP)
            })
        }
        Command::Region { output } => {
            write_file(&output, &svg::render_region())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            count,
            seed,
            unital,
        } => {
            if count == 0 {
                bail!("--count must be at least 1");
            }
            for c in sample_cp_channels(seed, count, unital) {
                print_json(&ChannelDocument::from_channel(&c))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            grid_step,
            samples,
            seed,
        } => {
            if !(grid_step > 0.0 && grid_step <= 1.0) {
                bail!("--grid-step must lie in (0, 1]");
            }
            if samples == 0 {
                bail!("--samples must be at least 1");
            }
            let report = run_verify(&VerifyOptions {
                grid_step,
                samples,
                seed,
            });
            print_json(&report)?;
            Ok(if report.mismatches == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rebit: {e:#}");
            ExitCode::FAILURE
        }
    }
}

// Copyright 2026 The distinguish Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Distinguishability measures for pure-state ensembles.
#[derive(Debug, Parser)]
#[command(name = "distinguish", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute measures for an ensemble file.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the tight minimum-error bounds at fixed unambiguous success.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long = "p-usd")]
        p_usd: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write the ratio grid over P_USD(E1) and epsilon.
    Scan {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "p-usd-steps", default_value_t = 100)]
        p_usd_steps: usize,
        #[arg(long = "epsilon-steps", default_value_t = 100)]
        epsilon_steps: usize,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Rebuild the three-state example pair and check its numbers.
    Reproduce {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the closed-form versus oracle suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match commands::run(&cli.command) {
        Ok(outcome) => (outcome.stdout, outcome.code),
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.code());
        }
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(commands::EXIT_IO);
    }
    ExitCode::from(code)
}

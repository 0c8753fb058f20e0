// Copyright 2026 The Paradox Authors
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

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use paradox_core::inference::{classify, walk, ClassificationReport, InferenceError, TruthToken};
use paradox_core::presets::Preset;
use paradox_core::quantization::{quantize_cycle, quantize_double_liar_a, QuantizationError};
use paradox_core::sentence_dsl::{format, parse, ParseError, SentenceSystem};
use paradox_core::simulator::{create_session, SimError};
use thiserror::Error;

use crate::serve::{bind, interrupt, serve_on, ServeConfig, ServeError};

pub const PORT_ENV: &str = "PARADOX_PORT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "paradox",
    version,
    about = "Classify, quantize and simulate liar-paradox sentence systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a sentence file.
    Parse { file: PathBuf },
    /// Print consistent assignments, verdict and inference walks as JSON.
    Classify { file: PathBuf },
    /// Print the quantized model as JSON.
    Quantize {
        file: PathBuf,
        /// Use the 16-dimensional tensor-product model (four-step double liar only).
        #[arg(long)]
        case_a_tensor: bool,
        /// Write to FILE instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print token probabilities over time.
    Trace {
        file: PathBuf,
        /// Hypothesize a truth value before evolving.
        #[arg(long, value_name = "S=VALUE")]
        measure: Option<TruthToken>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, allow_negative_numbers = true)]
        t1: f64,
        #[arg(long, allow_negative_numbers = true)]
        dt: f64,
        #[arg(long, value_enum, default_value_t = TraceFormat::Csv)]
        format: TraceFormat,
    },
    /// Run the HTTP/JSON service.
    Serve {
        /// Overridden by PARADOX_PORT.
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Serve files from DIR outside /api.
        #[arg(long = "static", value_name = "DIR")]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceFormat {
    Csv,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error(transparent)]
    Quantization(#[from] QuantizationError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("--case-a-tensor applies only to the four-step double liar")]
    NotCaseA,
    #[error("{PORT_ENV}={0:?} is not a valid port")]
    BadPortEnv(String),
    #[error(transparent)]
    Serve(#[from] ServeError),
    #[error(transparent)]
    Output(#[from] io::Error),
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`, and returns the process exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let mut rendered = e.render().to_string();
            return if e.use_stderr() {
                if !rendered.contains("Usage:") {
                    rendered.push_str(&format!("\n{}\n", Cli::command().render_usage()));
                }
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let port_env = std::env::var(PORT_ENV).ok();
    match execute(cli.command, port_env, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::BadPortEnv(v)) => {
            let _ = writeln!(err, "error: {}", CliError::BadPortEnv(v));
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn read_system(path: &Path) -> Result<SentenceSystem, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&String::from_utf8_lossy(&bytes)).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn execute(
    command: Command,
    port_env: Option<String>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Parse { file } => {
            let system = read_system(&file)?;
            writeln!(out, "{}", format(&system))?;
        }
        Command::Classify { file } => {
            let system = read_system(&file)?;
            let report = ClassificationReport::new(&system, &classify(&system)?);
            writeln!(out, "{}", to_json(&report))?;
        }
        Command::Quantize {
            file,
            case_a_tensor,
            out: target,
        } => {
            let system = read_system(&file)?;
            let model = if case_a_tensor {
                if Preset::identify(&system) != Some(Preset::DoubleLiarA) {
                    return Err(CliError::NotCaseA);
                }
                quantize_double_liar_a()?.0
            } else {
                let w = walk(&system, TruthToken::new(1, true))?;
                quantize_cycle(&system, w.cycle()[0])?
            };
            let json = to_json(&model);
            match target {
                Some(path) => fs::write(&path, json + "\n")
                    .map_err(|source| CliError::Write { path, source })?,
                None => writeln!(out, "{json}")?,
            }
        }
        Command::Trace {
            file,
            measure,
            t0,
            t1,
            dt,
            format,
        } => {
            let system = read_system(&file)?;
            let mut session = create_session(&system)?;
            if let Some(token) = measure {
                session.hypothesize(token.sentence, token.value)?;
            }
            let table = session.trace(t0, t1, dt)?;
            match format {
                TraceFormat::Csv => write!(out, "{}", table.to_csv())?,
                TraceFormat::Json => writeln!(out, "{}", to_json(&table))?,
            }
        }
        Command::Serve { port, static_dir } => {
            let port = match port_env {
                Some(v) => v.trim().parse().map_err(|_| CliError::BadPortEnv(v))?,
                None => port,
            };
            let config = ServeConfig {
                static_dir,
                ..ServeConfig::new(port)
            };
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async {
                let listener = bind(config.port).await?;
                writeln!(out, "listening on http://{}", listener.local_addr()?)?;
                out.flush()?;
                serve_on(listener, &config, interrupt()).await?;
                Ok::<(), CliError>(())
            })?;
        }
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("domain types serialize")
}

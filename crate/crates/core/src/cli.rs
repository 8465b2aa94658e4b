// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `nashx` command line.
//!
//! Exit codes: 0 on success, 2 for unreadable or unsupported input (and
//! usage errors), 3 when the time limit is hit or the run is interrupted,
//! 1 for internal failures.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::report::RenderMode;
use crate::service::{self, ServiceConfig};
use crate::solve::{self, classify, Algorithm, ErrorClass, Format, SolveOptions, Target};
use crate::strategic::InputMode;

#[derive(Debug, Parser)]
#[command(name = "nashx", version, about = "Exact Nash equilibria of two-player games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Game file; standard input if absent.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
    /// Matrix text holds only player 1's payoffs; player 2 gets their negation.
    #[arg(long, conflicts_with = "symmetric")]
    pub zero_sum: bool,
    /// Matrix text holds only player 1's payoffs; player 2 gets the transpose.
    #[arg(long)]
    pub symmetric: bool,
}

impl GameArgs {
    fn input_mode(&self) -> InputMode {
        if self.zero_sum {
            InputMode::ZeroSum
        } else if self.symmetric {
            InputMode::Symmetric
        } else {
            InputMode::General
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = RenderMode::Both)]
    pub mode: RenderMode,
    /// Time limit in seconds.
    #[arg(long)]
    pub timeout: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All extreme equilibria and their components.
    SolveEnum {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Worker threads for the enumeration.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// One equilibrium by Lemke–Howson.
    SolveLh {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Missing label: strategy name or 1-based number (rows, then columns).
        #[arg(long)]
        label: Option<String>,
    },
    /// One equilibrium by Lemke's method from a prior.
    SolveLemke {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Prior `x1,x2,..;y1,y2,..`; uniform if neither this nor a seed is given.
        #[arg(long)]
        prior: Option<String>,
        /// Seed for a random prior.
        #[arg(long, conflicts_with = "prior")]
        seed: Option<u64>,
        /// Use the strategic form of a tree instead of its sequence form.
        #[arg(long)]
        strategic: bool,
    },
    /// Print the payoff matrices.
    ToStrategic {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Print the sequence form of a tree.
    ToSequence {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Read a game and write it back as XML.
    RoundtripXml {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Run the HTTP solve service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Concurrent jobs; defaults to the number of cores.
        #[arg(long)]
        workers: Option<usize>,
        /// Per-request time limit in seconds.
        #[arg(long, default_value_t = 120)]
        timeout: u64,
    },
}

/// Default limit for enumeration, which can take very long on big games.
const ENUM_TIMEOUT_SECS: u64 = 300;

fn read_input(game: &GameArgs, stdin: &mut dyn Read) -> Result<String> {
    match &game.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn load(game: &GameArgs, stdin: &mut dyn Read) -> Result<crate::tree::GameDocument> {
    solve::load_game(&read_input(game, stdin)?, game.format, game.input_mode())
}

fn run_solve(
    game: &GameArgs,
    out: &OutputArgs,
    opts: SolveOptions,
    default_timeout: Option<u64>,
    stdin: &mut dyn Read,
    interrupt: &CancelToken,
) -> Result<String> {
    let doc = load(game, stdin)?;
    let cancel = match out.timeout.or(default_timeout) {
        Some(secs) => interrupt.limited(Duration::from_secs(secs)),
        None => interrupt.clone(),
    };
    let opts = SolveOptions { mode: out.mode, ..opts };
    Ok(solve::solve(&doc, &opts, &cancel)?.text)
}

fn serve(addr: SocketAddr, config: ServiceConfig, interrupt: &CancelToken) -> Result<String> {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let stop = interrupt.clone();
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| Error::Parse(format!("cannot bind {addr}: {e}")))?;
        eprintln!("listening on {}", listener.local_addr().map_err(|e| Error::Internal(e.to_string()))?);
        let shutdown = async move {
            while !stop.is_cancelled() {
                tokio::time::sleep(Duration::from_millis(100)).await;
            }
        };
        service::serve(listener, config, shutdown)
            .await
            .map_err(|e| Error::Internal(e.to_string()))
    })?;
    Ok(String::new())
}

fn execute(cli: Cli, stdin: &mut dyn Read, interrupt: &CancelToken) -> Result<String> {
    match cli.command {
        Command::SolveEnum { game, out, threads } => {
            let opts = SolveOptions {
                algorithm: Algorithm::Enum,
                threads,
                ..SolveOptions::default()
            };
            run_solve(&game, &out, opts, Some(ENUM_TIMEOUT_SECS), stdin, interrupt)
        }
        Command::SolveLh { game, out, label } => {
            let opts = SolveOptions {
                algorithm: Algorithm::Lh,
                label,
                ..SolveOptions::default()
            };
            run_solve(&game, &out, opts, None, stdin, interrupt)
        }
        Command::SolveLemke {
            game,
            out,
            prior,
            seed,
            strategic,
        } => {
            let opts = SolveOptions {
                algorithm: Algorithm::Lemke,
                prior,
                seed,
                strategic,
                ..SolveOptions::default()
            };
            run_solve(&game, &out, opts, None, stdin, interrupt)
        }
        Command::ToStrategic { game } => solve::convert(&load(&game, stdin)?, Target::Strategic),
        Command::ToSequence { game } => solve::convert(&load(&game, stdin)?, Target::Sequence),
        Command::RoundtripXml { game } => solve::convert(&load(&game, stdin)?, Target::Xml),
        Command::Serve { addr, workers, timeout } => {
            let mut config = ServiceConfig {
                timeout: Duration::from_secs(timeout),
                ..ServiceConfig::default()
            };
            if let Some(w) = workers {
                config.workers = w;
            }
            serve(addr, config, interrupt)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match classify(e) {
        ErrorClass::Input | ErrorClass::Unsupported => 2,
        ErrorClass::Timeout => 3,
        ErrorClass::Internal => 1,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Cancelling `interrupt` stops a running solver.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write, interrupt: &CancelToken) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, stdin, interrupt) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "nashx: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "nashx: {e}");
            exit_code(&e)
        }
    }
}

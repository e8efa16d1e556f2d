//! Command-line front end. [`run`] takes the argument vector and standard
//! input and returns everything the process would print, so it can be
//! exercised without spawning a binary.
//!
//! Exit codes: 0 success, 1 property fails, 2 usage or format error,
//! 3 budget exceeded.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};

use crate::coloring::{audit_lemma2, theorem2_certificate};
use crate::error::GameError;
use crate::figures::figure_strategy;
use crate::format::{parse_partial_strategy, parse_strategy, write_strategy};
use crate::game::{wins_round, BitString, GameInstance, Question};
use crate::matchings::{enumerate_matchings, PerfectMatching};
use crate::quantum::{sample_rounds, verify_report};
use crate::search::{complete_lemma1, exact_omega_d, hill_climb, FillRule, HillClimbConfig, StartPoint, DEFAULT_BUDGET};
use crate::strategy::{first_counterexample, lemma1_strategy, success};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "matching-game", version, about = "Classical and entangled strategies for the matching game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every perfect matching on m points in canonical order.
    Matchings {
        #[arg(long)]
        m: usize,
    },
    /// Exact success of a strategy file.
    Eval {
        /// Strategy file; standard input when omitted or `-`.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Check that a strategy wins every question on which it is defined.
    Verify {
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Emit the parity strategy built from the set {0} and powers of two.
    Lemma1 {
        #[arg(long)]
        m: usize,
        /// Fill undefined Bob entries with the first edge and b2 = 0.
        #[arg(long)]
        complete: bool,
    },
    /// Emit the published winning strategy for m = 4 or m = 6.
    Figures {
        #[arg(long)]
        m: usize,
    },
    /// Exact optimum over all deterministic strategies (small m only).
    OmegaD {
        #[arg(long)]
        m: usize,
        /// Maximum number of Bob tables to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the witness strategy to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Hill-climbing lower bound on the optimum.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        iters: usize,
        #[arg(long, value_enum, default_value_t = StartArg::Random)]
        start: StartArg,
        /// Iterations without improvement before a random restart; 0 disables restarts.
        #[arg(long, default_value_t = 100)]
        patience: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Report the necessary conditions satisfied by winning strategies.
    Audit {
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Component-count arithmetic excluding classical winning strategies.
    Certificate {
        #[arg(long)]
        m: usize,
    },
    /// Simulate the entangled strategy.
    Quantum {
        #[command(subcommand)]
        action: QuantumCommand,
    },
}

#[derive(Subcommand, Debug)]
enum QuantumCommand {
    /// Exhaustively check that every possible outcome wins.
    Verify {
        #[arg(long)]
        m: usize,
    },
    /// Sample rounds for one question.
    Sample {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StartArg {
    Random,
    Lemma1,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        Self::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: u8, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: u8, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn game_error(e: GameError) -> CliOutput {
    let code = match e {
        GameError::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    };
    CliOutput::error(code, e)
}

/// Whether this invocation will read a strategy from standard input.
pub fn reads_stdin(args: &[String]) -> bool {
    match Cli::try_parse_from(args) {
        Ok(cli) => matches!(
            cli.command,
            Command::Eval { ref strategy } | Command::Verify { ref strategy } | Command::Audit { ref strategy }
                if strategy.as_deref().is_none_or(|s| s == "-")
        ),
        Err(_) => false,
    }
}

fn read_source(path: &Option<String>, stdin: &str) -> Result<String, CliOutput> {
    match path.as_deref() {
        None | Some("-") => Ok(stdin.to_string()),
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliOutput::error(EXIT_USAGE, format!("{p}: {e}"))),
    }
}

fn write_out(path: &Option<String>, text: &str) -> Result<(), CliOutput> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| CliOutput::error(EXIT_USAGE, format!("{p}: {e}")))?;
    }
    Ok(())
}

fn instance(m: usize) -> Result<GameInstance, CliOutput> {
    GameInstance::new(m).map_err(game_error)
}

pub fn run(args: &[String], stdin: &str) -> CliOutput {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput::ok(text)
            };
        }
    };
    dispatch(cli.command, stdin).unwrap_or_else(|e| e)
}

fn dispatch(command: Command, stdin: &str) -> Result<CliOutput, CliOutput> {
    match command {
        Command::Matchings { m } => {
            let inst = instance(m)?;
            let mut out = String::new();
            for y in enumerate_matchings(&inst).map_err(game_error)? {
                let _ = writeln!(out, "{y}");
            }
            Ok(CliOutput::ok(out))
        }
        Command::Eval { strategy } => {
            let text = read_source(&strategy, stdin)?;
            let s = parse_strategy(&text).map_err(|e| CliOutput::error(EXIT_USAGE, e))?;
            let r = success(&s).map_err(game_error)?;
            Ok(CliOutput::ok(format!("success={r}\n")))
        }
        Command::Verify { strategy } => {
            let text = read_source(&strategy, stdin)?;
            let s = parse_partial_strategy(&text).map_err(|e| CliOutput::error(EXIT_USAGE, e))?;
            match first_counterexample(&s).map_err(game_error)? {
                None => Ok(CliOutput::ok("winning=yes\n".into())),
                Some(q) => Ok(CliOutput::with_code(
                    EXIT_PROPERTY_FAILS,
                    format!("winning=no counterexample={q}\n"),
                )),
            }
        }
        Command::Lemma1 { m, complete } => {
            let inst = instance(m)?;
            let text = if complete {
                write_strategy(&complete_lemma1(&inst, FillRule::FirstEdge).map_err(game_error)?)
            } else {
                write_strategy(&lemma1_strategy(&inst).map_err(game_error)?)
            };
            Ok(CliOutput::ok(text))
        }
        Command::Figures { m } => {
            let s = figure_strategy(m).map_err(game_error)?;
            Ok(CliOutput::ok(write_strategy(&s)))
        }
        Command::OmegaD { m, budget, out } => {
            let inst = instance(m)?;
            let (value, witness) = exact_omega_d(&inst, budget).map_err(game_error)?;
            let file = write_strategy(&witness);
            write_out(&out, &file)?;
            Ok(CliOutput::ok(format!("success={value}\nbound=exact\n{file}")))
        }
        Command::Search {
            m,
            seed,
            iters,
            start,
            patience,
            out,
        } => {
            let inst = instance(m)?;
            let config = HillClimbConfig {
                seed,
                iterations: iters,
                start: match start {
                    StartArg::Random => StartPoint::Random,
                    StartArg::Lemma1 => StartPoint::Lemma1,
                },
                patience: (patience > 0).then_some(patience),
            };
            let report = hill_climb(&inst, config).map_err(game_error)?;
            let file = write_strategy(&report.strategy);
            write_out(&out, &file)?;
            Ok(CliOutput::ok(format!(
                "success={}\nbound=lower\nevaluated={}\n{file}",
                report.success, report.evaluated
            )))
        }
        Command::Audit { strategy } => {
            let text = read_source(&strategy, stdin)?;
            let s = parse_strategy(&text).map_err(|e| CliOutput::error(EXIT_USAGE, e))?;
            let report = audit_lemma2(&s);
            let code = if report.all_conditions() {
                EXIT_OK
            } else {
                EXIT_PROPERTY_FAILS
            };
            Ok(CliOutput::with_code(code, report.to_lines()))
        }
        Command::Certificate { m } => {
            let c = theorem2_certificate(m).map_err(game_error)?;
            Ok(CliOutput::ok(format!("{c}\n")))
        }
        Command::Quantum { action } => quantum(action),
    }
}

fn quantum(action: QuantumCommand) -> Result<CliOutput, CliOutput> {
    match action {
        QuantumCommand::Verify { m } => {
            let inst = instance(m)?;
            let r = verify_report(&inst).map_err(game_error)?;
            let verified = r.all_win && r.max_normalisation_error < 1e-9 && r.max_order_gap < 1e-9;
            let text = format!(
                "verified={}\nquestions={}\nmax_normalisation_error={:e}\nmax_order_gap={:e}\n",
                if verified { "yes" } else { "no" },
                r.questions,
                r.max_normalisation_error,
                r.max_order_gap
            );
            let code = if verified { EXIT_OK } else { EXIT_PROPERTY_FAILS };
            Ok(CliOutput::with_code(code, text))
        }
        QuantumCommand::Sample { m, x, y, seed, rounds } => {
            let inst = instance(m)?;
            let x: BitString = x.parse().map_err(game_error)?;
            let y: PerfectMatching = y.parse().map_err(game_error)?;
            let answers = sample_rounds(&inst, &x, &y, seed, rounds).map_err(game_error)?;
            let q = Question { x, y };
            let mut out = String::new();
            for ans in answers {
                let win = wins_round(&inst, &q, &ans).map_err(game_error)?;
                let _ = writeln!(out, "a={} edge={} b2={} win={}", ans.a, ans.edge, ans.b2, u8::from(win));
            }
            Ok(CliOutput::ok(out))
        }
    }
}

//! Command-line dispatch and the HTTP service for the Chomp solver.

pub mod server;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use chomp_core::isomorphism::Standardness;
use chomp_core::{
    classify_rules, classify_up_to, exchange_swap, is_standard, iso_check, play_session, reduce_rule,
    report, v_n_estimate, verify, NormalizedRule, OrdinalTable, Position,
};

#[derive(Debug, Parser)]
#[command(name = "chomp", version, about = "Exact solver and rule laboratory for multiplayer Chomp")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinal, solutions and engine chain of one position.
    Solve {
        #[arg(long)]
        rule: NormalizedRule,
        #[arg(long)]
        position: Position,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Full ordinal table up to a volume.
    Table {
        #[arg(long)]
        rule: NormalizedRule,
        #[arg(long)]
        volume: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded isomorphism test between two rules.
    Iso {
        #[arg(long)]
        f: NormalizedRule,
        #[arg(long)]
        g: NormalizedRule,
        #[arg(long, default_value_t = 12)]
        volume: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Isomorphism classes of all rules with at most `players` seats.
    Classify {
        #[arg(long)]
        players: usize,
        #[arg(long, default_value_t = 12)]
        volume: u32,
        /// Only rules with exactly `players` seats.
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Drop scores no position can secure.
    Reduce {
        #[arg(long)]
        rule: NormalizedRule,
        #[arg(long, default_value_t = 12)]
        volume: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test whether a rule is isomorphic to a simple standard rule.
    Standard {
        #[arg(long)]
        rule: NormalizedRule,
        #[arg(long, default_value_t = 12)]
        volume: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Swap two adjacent scores and check the exchange precondition.
    Exchange {
        #[arg(long)]
        rule: NormalizedRule,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 12)]
        volume: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every property suite.
    Verify {
        #[arg(long, default_value_t = 10)]
        volume: u32,
        #[arg(long, default_value_t = 3)]
        players: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minimal distinguishing volumes between simple rules.
    Vtable {
        #[arg(long)]
        players: usize,
        #[arg(long, default_value_t = 12)]
        volume: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Play a game on the terminal.
    Play {
        #[arg(long)]
        rule: NormalizedRule,
        #[arg(long)]
        position: Position,
        /// Comma-separated 1-based seats played by humans.
        #[arg(long, value_delimiter = ',')]
        human_seats: Vec<usize>,
    },
    /// Serve the HTTP API and the explorer UI.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Largest table volume the service will compute.
        #[arg(long, default_value_t = 40)]
        table_budget: u32,
        /// Directory holding the built explorer UI.
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Runs one command, writing its report to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Solve { rule, position, format } => {
            let r = report::solve(&rule, &position)?;
            match format {
                Format::Json => out.write_all(json(&r)?.as_bytes())?,
                _ => out.write_all(r.to_text().as_bytes())?,
            }
        }
        Command::Table { rule, volume, format, out: path } => {
            let table = OrdinalTable::compute(&rule, volume)?;
            let body = match format {
                Format::Json => table.to_json() + "\n",
                Format::Csv => table.to_csv(),
                Format::Text => table.entries().map(|(p, o)| format!("{p:<24} {o}\n")).collect(),
            };
            match path {
                Some(path) => {
                    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                    writeln!(out, "wrote {} entries to {}", table.signature().len(), path.display())?;
                }
                None => out.write_all(body.as_bytes())?,
            }
        }
        Command::Iso { f, g, volume, format } => {
            let v = iso_check(&f, &g, volume)?;
            match format {
                Format::Json => out.write_all(json(&v)?.as_bytes())?,
                _ => match &v.witness {
                    Some(w) => writeln!(
                        out,
                        "counterexample {} (ordinals {} vs {}), minVolume {}, bound {}",
                        w.position,
                        w.ordinal_f,
                        w.ordinal_g,
                        w.position.volume(),
                        v.bound
                    )?,
                    None => writeln!(out, "{f} and {g} agree up to volume {} (not a proof of isomorphism)", v.bound)?,
                },
            }
        }
        Command::Classify { players, volume, exact, format } => {
            let report = if exact { classify_rules(players, volume)? } else { classify_up_to(players, volume)? };
            match format {
                Format::Json => out.write_all(json(&report)?.as_bytes())?,
                _ => out.write_all(report.to_text().as_bytes())?,
            }
        }
        Command::Reduce { rule, volume, format } => {
            let (reduced, status) = reduce_rule(&rule, volume)?;
            match format {
                Format::Json => out.write_all(
                    json(&serde_json::json!({ "rule": rule, "reduced": reduced, "status": status }))?.as_bytes(),
                )?,
                _ => match status {
                    chomp_core::ReduceStatus::Simple { witness } => {
                        writeln!(out, "{rule} is simple: ({witness}) has ordinal {}", rule.players())?
                    }
                    chomp_core::ReduceStatus::ReducedUpTo { bound, max_ordinal } => writeln!(
                        out,
                        "{rule} reduces to {reduced} (largest ordinal {max_ordinal} up to volume {bound})"
                    )?,
                },
            }
        }
        Command::Standard { rule, volume, format } => {
            let v = is_standard(&rule, volume)?;
            match format {
                Format::Json => out.write_all(json(&v)?.as_bytes())?,
                _ => {
                    let verdict = match v.verdict {
                        Standardness::Standard => "standard",
                        Standardness::NonStandard => "non-standard",
                        Standardness::Inconclusive => "inconclusive",
                    };
                    writeln!(out, "{rule}: {verdict} (candidate {}, bound {})", v.candidate, v.bound)?;
                    if let Some(w) = &v.ordinal_one_witness {
                        writeln!(out, "ordinal-1 witness {w}")?;
                    }
                    if let Some(w) = &v.iso.witness {
                        writeln!(out, "differs from {} at {}", v.candidate, w.position)?;
                    }
                }
            }
        }
        Command::Exchange { rule, i, j, volume, format } => {
            let r = exchange_swap(&rule, i, j, volume)?;
            match format {
                Format::Json => out.write_all(json(&r)?.as_bytes())?,
                _ => {
                    writeln!(out, "{rule} with scores {i},{j} swapped: {}", r.swapped_rule)?;
                    match &r.precondition {
                        chomp_core::isomorphism::ExchangePrecondition::VerifiedUpTo { bound } => {
                            writeln!(out, "precondition verified up to volume {bound}")?
                        }
                        chomp_core::isomorphism::ExchangePrecondition::Violated { position, into_i, into_j } => {
                            writeln!(out, "precondition violated at {position} (moves to {into_i} and {into_j})")?
                        }
                    }
                    let agree = if r.iso.agrees() { "agree" } else { "differ" };
                    writeln!(out, "original and swapped rules {agree} up to volume {}", r.iso.bound)?;
                }
            }
        }
        Command::Verify { volume, players, format } => {
            let report = verify::verify_suite(volume, players)?;
            match format {
                Format::Json => out.write_all(json(&report)?.as_bytes())?,
                _ => out.write_all(report.to_text().as_bytes())?,
            }
            if !report.passed() {
                return Ok(1);
            }
        }
        Command::Vtable { players, volume, format } => {
            let r = v_n_estimate(players, volume)?;
            match format {
                Format::Json => out.write_all(json(&r)?.as_bytes())?,
                _ => {
                    for p in &r.pairs {
                        writeln!(out, "V({}, {}) = {:<3} at {}", p.f, p.g, p.min_volume, p.witness)?;
                    }
                    match r.lower_bound {
                        Some(b) => writeln!(out, "V_{} >= {b} (searched up to volume {})", r.players, r.cap)?,
                        None => writeln!(out, "no distinct simple rules with at most {} players", r.players)?,
                    }
                    for g in &r.undistinguished {
                        let names: Vec<String> = g.iter().map(|r| r.to_string()).collect();
                        writeln!(out, "agree up to {}: {}", r.cap, names.join(" ~ "))?;
                    }
                }
            }
        }
        Command::Play { rule, position, human_seats } => {
            let stdin = io::stdin();
            play_session(&rule, &position, &human_seats, stdin.lock(), &mut *out)?;
        }
        Command::Serve { port, table_budget, ui_dir } => {
            if let Some(dir) = &ui_dir {
                if !dir.is_dir() {
                    bail!("UI directory {} does not exist", dir.display());
                }
            }
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(server::serve(port, table_budget, ui_dir))?;
        }
    }
    Ok(0)
}

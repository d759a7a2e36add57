mod error;
mod input;
mod output;
mod reduce;
mod sequential;
mod solve;
mod tables;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::output::{Format, Output};

/// Solve and explore impartial graph-coloring games.
#[derive(Debug, Parser)]
#[command(name = "coloring-games", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for game-tree search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Outcome and Grundy value of a position.
    Solve(solve::SolveArgs),
    /// Grundy values of the oriented Blue-Red path classes as CSV.
    GrundySeq(tables::GrundySeqArgs),
    /// Lengths whose path class is a P-position.
    PPositions(tables::PPositionsArgs),
    /// Sequential 2-coloring on a path under a fixed turn order.
    Sequential(sequential::SequentialArgs),
    /// Encode Node-Kayles on a graph as a coloring game.
    Reduce(reduce::ReduceArgs),
    /// Run an oracle-equivalence suite.
    Verify(verify::VerifyArgs),
    /// Save, inspect or extend Grundy table files.
    #[command(subcommand)]
    Tables(tables::TablesCommand),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output::new(cli.format);
    let result = match cli.command {
        Command::Solve(args) => solve::run(args, cli.threads, &out),
        Command::GrundySeq(args) => tables::grundy_seq(args, &out),
        Command::PPositions(args) => tables::p_positions(args, &out),
        Command::Sequential(args) => sequential::run(args, &out),
        Command::Reduce(args) => reduce::run(args, &out),
        Command::Verify(args) => verify::run(args, cli.threads, &out),
        Command::Tables(cmd) => tables::run(cmd, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

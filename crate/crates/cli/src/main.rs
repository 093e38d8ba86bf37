//! `packedit`: exact solvers for Triangle Deletion, Feedback Arc Set in
//! Tournaments and Cluster Editing above packing lower bounds.
//!
//! Exit codes: 0 yes or solved, 1 no or infeasible, 2 usage error, 3 input
//! error, 4 size cap exceeded.

mod commands;
mod gen;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::Failure;
use packedit::Problem;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "packedit", version, about = "Graph modification above packing lower bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance for a budget, or find the minimum budget.
    Solve(commands::SolveArgs),
    /// Apply the reduction rules exhaustively.
    Reduce(commands::ReduceArgs),
    /// Build a greedy packing and report the lower bound.
    Pack(commands::PackArgs),
    /// Generate hardness constructions and random instances.
    Gen(gen::GenArgs),
    /// Check an edit set against an instance.
    Verify(commands::VerifyArgs),
    /// Run the brute-force engines.
    Oracle(commands::OracleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProblemArg {
    #[value(name = "triangle-del")]
    TriangleDel,
    #[value(name = "fast")]
    Fast,
    #[value(name = "cluster-edit")]
    ClusterEdit,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::TriangleDel => Problem::TriangleDeletion,
            ProblemArg::Fast => Problem::Fast,
            ProblemArg::ClusterEdit => Problem::ClusterEditing,
        }
    }
}

/// Problem and instance file, shared by most subcommands.
#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Graph file (`graph n m`) or, for fast, tournament file (`tournament n`).
    #[arg(long)]
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Reduce(a) => commands::reduce(a),
        Command::Pack(a) => commands::pack(a),
        Command::Gen(a) => gen::run(a),
        Command::Verify(a) => commands::verify(a),
        Command::Oracle(a) => commands::oracle(a),
    };
    match result {
        Ok(answer) => ExitCode::from(if answer { 0 } else { 1 }),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

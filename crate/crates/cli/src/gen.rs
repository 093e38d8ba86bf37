use crate::output::{emit, read_file, CmdResult, Failure};
use clap::{Args, Subcommand, ValueEnum};
use packedit::generators::{
    cons1_triangle, cons2_kq, cons3_pq, gen_random, random_cnf, CnfFormula, Construction, Generated, RandomKind,
};
use packedit::io;
use std::path::PathBuf;

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    /// Instance output; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Packing output for the constructions.
    #[arg(long, global = true)]
    emit_packing: Option<PathBuf>,
}

/// Source of the formula for a construction.
#[derive(Args)]
pub struct FormulaArgs {
    /// DIMACS CNF file.
    #[arg(long, conflicts_with = "seed")]
    cnf: Option<PathBuf>,
    /// Seed of a random formula.
    #[arg(long, required_unless_present = "cnf")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 4)]
    vars: usize,
    #[arg(long, default_value_t = 3)]
    clauses: usize,
    /// Also write the formula as DIMACS.
    #[arg(long)]
    emit_cnf: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RandomHost {
    Graph,
    Tournament,
}

#[derive(Subcommand)]
enum GenKind {
    /// Triangle deletion from 3-SAT, with an edge-disjoint packing.
    Cons1(FormulaArgs),
    /// K_q edge deletion from 3-SAT.
    Cons2 {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        q: usize,
    },
    /// P_q vertex deletion from q-SAT.
    Cons3 {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        q: usize,
    },
    /// Random graph or tournament.
    Random {
        #[arg(long, value_enum, default_value = "graph")]
        kind: RandomHost,
        #[arg(long)]
        n: usize,
        /// Edge probability for graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Disjoint cliques with random pair flips.
    Planted {
        /// Comma-separated cluster sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn formula(args: &FormulaArgs, width: usize) -> Result<CnfFormula, Failure> {
    let phi = match (&args.cnf, args.seed) {
        (Some(path), _) => CnfFormula::parse_dimacs(&read_file(path)?)?,
        (None, Some(seed)) => random_cnf(args.vars, args.clauses, width, seed)?,
        (None, None) => return Err(Failure::usage("give --cnf or --seed")),
    };
    if let Some(p) = &args.emit_cnf {
        emit(Some(p), &phi.to_dimacs())?;
    }
    Ok(phi)
}

fn write_construction(args: &GenArgs, c: &Construction) -> CmdResult {
    let text = format!("# k = {}\n{}", c.k, io::write_graph(&c.graph));
    emit(args.output.as_deref(), &text)?;
    if let Some(p) = &args.emit_packing {
        emit(Some(p), &io::write_packing(&c.packing))?;
    }
    Ok(true)
}

pub fn run(args: GenArgs) -> CmdResult {
    let generated = match &args.kind {
        GenKind::Cons1(f) => return write_construction(&args, &cons1_triangle(&formula(f, 3)?)?),
        GenKind::Cons2 { formula: f, q } => return write_construction(&args, &cons2_kq(&formula(f, 3)?, *q)?),
        GenKind::Cons3 { formula: f, q } => return write_construction(&args, &cons3_pq(&formula(f, *q)?, *q)?),
        GenKind::Random { kind: RandomHost::Graph, n, p, seed } => gen_random(&RandomKind::Graph { n: *n, p: *p }, *seed)?,
        GenKind::Random { kind: RandomHost::Tournament, n, seed, .. } => gen_random(&RandomKind::Tournament { n: *n }, *seed)?,
        GenKind::Planted { sizes, flips, seed } => {
            gen_random(&RandomKind::PlantedClusters { sizes: sizes.clone(), flips: *flips }, *seed)?
        }
    };
    let text = match generated {
        Generated::Graph(g) => io::write_graph(&g),
        Generated::Tournament(t) => io::write_tournament(&t),
    };
    emit(args.output.as_deref(), &text)?;
    Ok(true)
}

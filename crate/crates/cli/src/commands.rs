use crate::output::{emit, read_file, CmdResult, Failure, StatsRecord};
use crate::{InstanceArgs, ProblemArg};
use clap::{Args, ValueEnum};
use packedit::cluster::{
    apply_clique_rules, apply_local_twin_rules, apply_rule3_all, branch_solve_p3, exact_ce, solve_cost_t_ce,
};
use packedit::fast::{apply_rule2_all, exact_fas, solve_above_packing_fast};
use packedit::packing::{greedy_pack, local_cost, validate_packing, PackingHost, MAX_COST_CAP};
use packedit::stats::Outcome;
use packedit::triangle::{apply_rule1_all, branch_solve, exact_solve, reject_by_bound, Certificate};
use packedit::{io, oracle, EditSet, Graph, Instance, Packing, PackingMode, Part, Problem, SolveStats, Tournament};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

/// How the lower-bound packing is obtained.
#[derive(Args, Clone)]
pub struct PackingArgs {
    /// Packing file; parts without costs are annotated on load.
    #[arg(long, conflicts_with = "auto_pack")]
    packing: Option<PathBuf>,
    /// Build a greedy packing with part costs at most `--t`.
    #[arg(long, requires = "t")]
    auto_pack: bool,
    /// Cost cap of the packing parts.
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Engine {
    /// Reduction rules, bound test and search above the packing.
    #[default]
    AbovePacking,
    /// Plain exact branching without the packing.
    Plain,
    /// Brute force; decides without producing edits.
    Oracle,
}

#[derive(Args)]
pub struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    packing: PackingArgs,
    /// Budget to decide.
    #[arg(long, required_unless_present = "optimize", conflicts_with = "optimize")]
    k: Option<usize>,
    /// Find the smallest feasible budget, starting from the packing bound.
    #[arg(long)]
    optimize: bool,
    #[arg(long, value_enum, default_value_t)]
    engine: Engine,
    /// Edit set output; standard output when absent.
    #[arg(long)]
    emit_edits: Option<PathBuf>,
    /// Statistics output as flat JSON.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    packing: PackingArgs,
    #[arg(long)]
    k: usize,
    /// Reduced instance output; standard output when absent.
    #[arg(long)]
    emit_instance: Option<PathBuf>,
    #[arg(long)]
    emit_packing: Option<PathBuf>,
    #[arg(long)]
    emit_edits: Option<PathBuf>,
    /// Certificates of the parts the triangle rule could not settle.
    #[arg(long)]
    emit_certificates: Option<PathBuf>,
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
pub struct PackArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Budget for the reported `ℓ = k − h`.
    #[arg(long)]
    k: Option<usize>,
    /// Packing output; standard output when absent.
    #[arg(long)]
    emit_packing: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    edits: PathBuf,
    /// Largest allowed edit count.
    #[arg(long)]
    k: Option<usize>,
    /// Packing whose bound the edit set must respect.
    #[arg(long)]
    packing: Option<PathBuf>,
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Args)]
pub struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Largest edit count searched.
    #[arg(long, default_value_t = oracle::EDIT_MAX_K)]
    kmax: usize,
    /// Solve P_q vertex deletion on the graph instead.
    #[arg(long)]
    pq: Option<usize>,
}

enum Host {
    Graph(Graph),
    Tournament(Tournament),
}

fn load_host(args: &InstanceArgs) -> Result<Host, Failure> {
    let text = read_file(&args.input)?;
    Ok(match args.problem {
        ProblemArg::Fast => Host::Tournament(io::read_tournament(&text)?),
        _ => Host::Graph(io::read_graph(&text)?),
    })
}

fn expect_graph(host: Host) -> Result<Graph, Failure> {
    match host {
        Host::Graph(g) => Ok(g),
        Host::Tournament(_) => Err(Failure::usage("this operation needs a graph")),
    }
}

/// Loads or builds the packing and checks it; returns it with its cost cap.
fn load_packing<H: PackingHost>(host: &H, problem: Problem, args: &PackingArgs) -> Result<(Packing, usize), Failure> {
    let (packing, t) = if args.auto_pack {
        let t = args.t.expect("clap enforces --t with --auto-pack");
        (greedy_pack(host, problem, t)?, t)
    } else if let Some(path) = &args.packing {
        let mut packing = io::read_packing(&read_file(path)?)?;
        if packing.parts.iter().all(|p| p.cost == 0) {
            packing.annotate(host, problem, args.t.unwrap_or(MAX_COST_CAP))?;
        }
        let t = args.t.unwrap_or_else(|| packing.parts.iter().map(|p| p.cost).max().unwrap_or(1));
        (packing, t)
    } else {
        (Packing::vertex_disjoint(Vec::new()), args.t.unwrap_or(1))
    };
    check_packing(host, problem, packing, t)
}

fn check_packing<H: PackingHost>(host: &H, problem: Problem, packing: Packing, t: usize) -> Result<(Packing, usize), Failure> {
    let inst = Instance::new(host.clone(), packing, 0, t, problem);
    if let Err(v) = validate_packing(&inst, t)? {
        return Err(Failure::input(format!("invalid packing: {v}")));
    }
    Ok((inst.packing, t))
}

fn base_stats(problem: Problem, n: usize, m: usize, k: usize, h: usize) -> StatsRecord {
    let mut rec = StatsRecord::default();
    rec.set("problem", problem.name());
    rec.set("n", n as u64);
    rec.set("m", m as u64);
    rec.set("k", k as u64);
    rec.set("h", h as u64);
    rec.set("ell", k as i64 - h as i64);
    rec
}

/// One decision: whether a solution within `k` exists, and its edits when the
/// engine produces them.
struct Decision {
    edits: Option<EditSet>,
    feasible: bool,
    stats: SolveStats,
}

impl<T> From<(Outcome<T>, fn(T) -> EditSet)> for Decision {
    fn from((o, edits_of): (Outcome<T>, fn(T) -> EditSet)) -> Self {
        Decision { feasible: o.solution.is_some(), edits: o.solution.map(edits_of), stats: o.stats }
    }
}

fn oracle_decision(opt: Option<usize>, k: usize) -> Decision {
    Decision { edits: None, feasible: opt.is_some_and(|o| o <= k), stats: SolveStats::new("oracle") }
}

fn decide_graph(g: &Graph, problem: Problem, packing: &Packing, t: usize, k: usize, engine: Engine) -> Result<Decision, Failure> {
    let inst = Instance::new(g.clone(), packing.clone(), k, t, problem);
    let cluster_edits: fn(packedit::cluster::ClusterSolution) -> EditSet = |s| s.edits;
    let plain: fn(EditSet) -> EditSet = |e| e;
    Ok(match (problem, engine) {
        (Problem::TriangleDeletion, Engine::AbovePacking) => (branch_solve(&inst)?, plain).into(),
        (Problem::TriangleDeletion, Engine::Plain) => (exact_solve(g, k), plain).into(),
        (Problem::ClusterEditing, Engine::AbovePacking) => {
            let p3_parts = packing.parts.iter().all(|p| p.vertices.len() == 3 && p.cost == 1);
            if t == 1 && p3_parts && packing.mode == PackingMode::Vertex {
                (branch_solve_p3(&inst)?, cluster_edits).into()
            } else {
                (solve_cost_t_ce(&inst)?, cluster_edits).into()
            }
        }
        (Problem::ClusterEditing, Engine::Plain) => (exact_ce(g, k), cluster_edits).into(),
        (_, Engine::Oracle) => {
            let cap = k.min(oracle::EDIT_MAX_K);
            let opt = oracle::brute_edit_optimum(g, problem.family(), cap)?;
            if opt.is_none() && k > cap {
                return Err(packedit::Error::CapExceeded(format!("oracle budget capped at {cap}")).into());
            }
            oracle_decision(opt, k)
        }
        (Problem::Fast, _) => unreachable!("tournament problems take a tournament host"),
    })
}

fn decide_tournament(t_host: &Tournament, packing: &Packing, t: usize, k: usize, engine: Engine) -> Result<Decision, Failure> {
    let inst = Instance::new(t_host.clone(), packing.clone(), k, t, Problem::Fast);
    let reversals: fn(packedit::fast::FasResult) -> EditSet = |r| r.reversals;
    Ok(match engine {
        Engine::AbovePacking => (solve_above_packing_fast(&inst)?, reversals).into(),
        Engine::Plain => (exact_fas(t_host, k), reversals).into(),
        Engine::Oracle => oracle_decision(Some(oracle::brute_fas_optimum(t_host)?), k),
    })
}

pub fn solve(args: SolveArgs) -> CmdResult {
    let problem: Problem = args.instance.problem.into();
    let host = load_host(&args.instance)?;
    let started = Instant::now();
    let (n, m, packing, t) = match &host {
        Host::Graph(g) => {
            let (p, t) = load_packing(g, problem, &args.packing)?;
            (g.n(), g.m(), p, t)
        }
        Host::Tournament(tt) => {
            let (p, t) = load_packing(tt, problem, &args.packing)?;
            (tt.n(), tt.n() * tt.n().saturating_sub(1) / 2, p, t)
        }
    };
    let h = packing.h();
    let decide = |k: usize| match &host {
        Host::Graph(g) => decide_graph(g, problem, &packing, t, k, args.engine),
        Host::Tournament(tt) => decide_tournament(tt, &packing, t, k, args.engine),
    };
    let (k, decision, attempts) = match args.k {
        Some(k) => (k, decide(k)?, 1),
        None => {
            // Every problem is solved by touching each pair once.
            let ceiling = n * n.saturating_sub(1) / 2;
            let mut k = h;
            let mut attempts = 1;
            loop {
                let d = decide(k)?;
                if d.feasible || k >= ceiling {
                    break (k, d, attempts);
                }
                k += 1;
                attempts += 1;
            }
        }
    };
    let mut rec = base_stats(problem, n, m, k, h);
    rec.set("t", t as u64);
    rec.solver(&decision.stats);
    rec.set("feasible", decision.feasible);
    if args.optimize {
        rec.set("attempts", attempts as u64);
    }
    if let Some(e) = &decision.edits {
        rec.set("edits", e.len() as u64);
    }
    rec.set("wall_time_s", started.elapsed().as_secs_f64());
    rec.write(args.stats.as_deref())?;
    match &decision.edits {
        Some(e) => emit(args.emit_edits.as_deref(), &io::write_edits(e))?,
        None if decision.feasible => eprintln!("note: the oracle engine decides without producing edits"),
        None => {}
    }
    if args.optimize && decision.feasible {
        eprintln!("optimum {k}");
    }
    Ok(decision.feasible)
}

/// Re-costs every part on the reduced host and drops those that no longer
/// need a modification or no longer fit the cap.
fn refresh_parts<H: PackingHost>(host: &H, problem: Problem, packing: &Packing, t: usize) -> Result<Packing, Failure> {
    let mut parts = Vec::new();
    for part in &packing.parts {
        let sub = host.induced_host(&part.vertices);
        if let Some(c) = local_cost(&sub, problem, t)? {
            if c > 0 {
                parts.push(Part::new(part.vertices.clone(), c));
            }
        }
    }
    Ok(Packing::new(packing.mode, parts))
}

fn write_certificates(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        let _ = writeln!(out, "part {}", c.part);
        for (tri, shared) in c.triangles.iter().zip(&c.shared) {
            let _ = writeln!(out, "  triangle {} {} {} shares {} {}", tri[0], tri[1], tri[2], shared.u, shared.v);
        }
    }
    out
}

struct Reduced<H> {
    instance: Instance<H>,
    applied: EditSet,
    certificates: Vec<Certificate>,
}

fn reduce_triangle(inst: Instance<Graph>, rec: &mut StatsRecord) -> Result<Reduced<Graph>, Failure> {
    let input = inst.host.clone();
    let mut inst = inst;
    let mut fired_total = 0;
    loop {
        let pass = apply_rule1_all(&inst)?;
        fired_total += pass.fired;
        let done = pass.fired == 0;
        inst = pass.instance;
        if done {
            rec.set("rules.rule1", fired_total as u64);
            let applied = EditSet::from_graph_diff(&input, &inst.host);
            return Ok(Reduced { instance: inst, applied, certificates: pass.certificates });
        }
    }
}

fn reduce_fast(inst: Instance<Tournament>, rec: &mut StatsRecord) -> Result<Reduced<Tournament>, Failure> {
    let input = inst.host.clone();
    let mut inst = inst;
    let mut fired_total = 0;
    loop {
        let r = apply_rule2_all(&inst)?;
        fired_total += r.fired;
        inst = r.instance;
        if r.fired == 0 {
            break;
        }
    }
    rec.set("rules.rule2", fired_total as u64);
    let applied = EditSet::from_tournament_diff(&input, &inst.host);
    Ok(Reduced { instance: inst, applied, certificates: Vec::new() })
}

fn reduce_cluster(inst: Instance<Graph>, rec: &mut StatsRecord) -> Result<Reduced<Graph>, Failure> {
    let input = inst.host.clone();
    let budget = inst.k;
    let mut inst = inst;
    let (mut r3, mut twin, mut cut) = (0, 0, 0);
    loop {
        let r = apply_rule3_all(&inst)?;
        r3 += r.fired;
        let r = apply_local_twin_rules(&r.instance)?;
        twin += r.fired;
        let next = r.instance;
        let pass = apply_clique_rules(&next.host, next.k);
        cut += pass.cut_cliques;
        let packing = refresh_parts(&pass.graph, Problem::ClusterEditing, &next.packing, next.t)?;
        let spent = EditSet::from_graph_diff(&input, &pass.graph).len();
        let progress = pass.graph != inst.host;
        inst = Instance::new(pass.graph, packing, budget.saturating_sub(spent), next.t, next.problem);
        if !progress {
            break;
        }
    }
    rec.set("rules.rule3", r3 as u64);
    rec.set("rules.twin", twin as u64);
    rec.set("rules.clique", cut as u64);
    let applied = EditSet::from_graph_diff(&input, &inst.host);
    Ok(Reduced { instance: inst, applied, certificates: Vec::new() })
}

fn finish_reduce<H: PackingHost>(
    args: &ReduceArgs,
    red: Reduced<H>,
    mut rec: StatsRecord,
    write_host: fn(&H) -> String,
) -> CmdResult {
    let inst = red.instance;
    let over_budget = red.applied.len() > args.k;
    let (h, ell) = inst.bounds();
    let rejected = over_budget || ell < 0 || reject_by_bound(&inst);
    rec.set("applied", red.applied.len() as u64);
    rec.set("reduced_k", inst.k as u64);
    rec.set("reduced_h", h as u64);
    rec.set("reduced_ell", if over_budget { -1 } else { ell });
    rec.set("certificates", red.certificates.len() as u64);
    rec.set("rejected", rejected);
    rec.write(args.stats.as_deref())?;
    let text = format!("# k = {}\n{}", inst.k, write_host(&inst.host));
    emit(args.emit_instance.as_deref(), &text)?;
    if let Some(p) = &args.emit_packing {
        emit(Some(p), &io::write_packing(&inst.packing))?;
    }
    if let Some(p) = &args.emit_edits {
        emit(Some(p), &io::write_edits(&red.applied))?;
    }
    if let Some(p) = &args.emit_certificates {
        emit(Some(p), &write_certificates(&red.certificates))?;
    }
    if rejected {
        eprintln!("rejected: the reduced instance violates k ≤ (2t+1)ℓ");
    }
    Ok(!rejected)
}

pub fn reduce(args: ReduceArgs) -> CmdResult {
    let problem: Problem = args.instance.problem.into();
    let started = Instant::now();
    match load_host(&args.instance)? {
        Host::Graph(g) => {
            let (packing, t) = load_packing(&g, problem, &args.packing)?;
            let mut rec = base_stats(problem, g.n(), g.m(), args.k, packing.h());
            let inst = Instance::new(g, packing, args.k, t, problem);
            let red = match problem {
                Problem::TriangleDeletion => reduce_triangle(inst, &mut rec)?,
                _ => reduce_cluster(inst, &mut rec)?,
            };
            rec.set("wall_time_s", started.elapsed().as_secs_f64());
            finish_reduce(&args, red, rec, io::write_graph)
        }
        Host::Tournament(tt) => {
            let (packing, t) = load_packing(&tt, problem, &args.packing)?;
            let m = tt.n() * tt.n().saturating_sub(1) / 2;
            let mut rec = base_stats(problem, tt.n(), m, args.k, packing.h());
            let red = reduce_fast(Instance::new(tt, packing, args.k, t, problem), &mut rec)?;
            rec.set("wall_time_s", started.elapsed().as_secs_f64());
            finish_reduce(&args, red, rec, io::write_tournament)
        }
    }
}

pub fn pack(args: PackArgs) -> CmdResult {
    let problem: Problem = args.instance.problem.into();
    let packing = match load_host(&args.instance)? {
        Host::Graph(g) => greedy_pack(&g, problem, args.t)?,
        Host::Tournament(tt) => greedy_pack(&tt, problem, args.t)?,
    };
    emit(args.emit_packing.as_deref(), &io::write_packing(&packing))?;
    let h = packing.h();
    match args.k {
        Some(k) => eprintln!("parts {} h {h} ell {}", packing.len(), k as i64 - h as i64),
        None => eprintln!("parts {} h {h}", packing.len()),
    }
    Ok(true)
}

fn describe(problem: Problem, f: [usize; 3]) -> String {
    let [a, b, c] = f;
    match problem {
        Problem::TriangleDeletion => format!("triangle {a} {b} {c}"),
        Problem::Fast => format!("directed triangle {a} {b} {c}"),
        Problem::ClusterEditing => format!("induced P3 {a} {b} {c}"),
    }
}

fn verify_on<H: PackingHost>(
    args: &VerifyArgs,
    problem: Problem,
    host: &H,
    edited: &H,
    edits: &EditSet,
) -> CmdResult {
    let mut ok = true;
    if let Some(f) = edited.find_forbidden(problem.family())? {
        println!("surviving {}", describe(problem, f));
        ok = false;
    }
    if let Some(k) = args.k {
        if edits.len() > k {
            println!("too many edits: {} > {k}", edits.len());
            ok = false;
        }
    }
    if let Some(path) = &args.packing {
        let pargs = PackingArgs { packing: Some(path.clone()), auto_pack: false, t: args.t };
        let (packing, _) = load_packing(host, problem, &pargs)?;
        if ok && edits.len() < packing.h() {
            println!("edit count {} is below the packing bound {}", edits.len(), packing.h());
            ok = false;
        }
    }
    if ok {
        println!("ok: {} edits", edits.len());
    }
    Ok(ok)
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    let problem: Problem = args.instance.problem.into();
    let edits = io::read_edits(&read_file(&args.edits)?)?;
    match load_host(&args.instance)? {
        Host::Graph(g) => {
            let edited = edits.apply_to_graph(&g)?;
            verify_on(&args, problem, &g, &edited, &edits)
        }
        Host::Tournament(tt) => {
            let edited = edits.apply_to_tournament(&tt)?;
            verify_on(&args, problem, &tt, &edited, &edits)
        }
    }
}

pub fn oracle(args: OracleArgs) -> CmdResult {
    let problem: Problem = args.instance.problem.into();
    let host = load_host(&args.instance)?;
    let opt = match (args.pq, host) {
        (Some(q), host) => oracle::brute_pq_vertex_deletion(&expect_graph(host)?, q, args.kmax)?,
        (None, Host::Tournament(tt)) => Some(oracle::brute_fas_optimum(&tt)?),
        (None, Host::Graph(g)) => oracle::brute_edit_optimum(&g, problem.family(), args.kmax)?,
    };
    match opt {
        Some(o) => println!("optimum {o}"),
        None => println!("optimum exceeds {}", args.kmax),
    }
    Ok(opt.is_some())
}

//! Triangle Deletion: the plain exact engine, the packing reduction rule with
//! its certificates, and the search tree above a cost-`t` packing.

use crate::edits::EditSet;
use crate::error::{Error, Result};
use crate::forbidden::first_triangle;
use crate::graph::{Graph, VertexPair};
use crate::packing::{Instance, Packing, PackingMode, Part, Problem};
use crate::stats::{Outcome, SolveStats};
use fixedbitset::FixedBitSet;

/// Greedy edge-disjoint triangle packing size; a lower bound on the optimum.
pub fn triangle_lower_bound(g: &Graph) -> usize {
    lower_bound(g, None)
}

fn lower_bound(g: &Graph, kept: Option<&[FixedBitSet]>) -> usize {
    let n = g.n();
    let mut used: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    let mut count = 0;
    for (u, v) in g.edges() {
        if used[u].contains(v) {
            continue;
        }
        for w in g.common_neighbors(u, v) {
            if used[u].contains(w) || used[v].contains(w) {
                continue;
            }
            // with fixed edges, a triangle only counts if one of its edges may go
            if let Some(kept) = kept {
                if kept[u].contains(v) && kept[u].contains(w) && kept[v].contains(w) {
                    continue;
                }
            }
            for (a, b) in [(u, v), (u, w), (v, w)] {
                used[a].insert(b);
                used[b].insert(a);
            }
            count += 1;
            break;
        }
    }
    count
}

struct Search<'a> {
    g: Graph,
    kept: Vec<FixedBitSet>,
    deleted: Vec<(usize, usize)>,
    stats: &'a mut SolveStats,
}

impl Search<'_> {
    /// The triangle with the fewest deletable edges, or `Err(())` if some
    /// triangle has none left.
    fn pick(&self) -> std::result::Result<Option<[usize; 3]>, ()> {
        let mut best: Option<([usize; 3], usize)> = None;
        for (u, v) in self.g.edges() {
            for w in self.g.common_neighbors(u, v).filter(|&w| w > v) {
                let free = [(u, v), (u, w), (v, w)].iter().filter(|&&(a, b)| !self.kept[a].contains(b)).count();
                if free == 0 {
                    return Err(());
                }
                if best.is_none_or(|(_, f)| free < f) {
                    best = Some(([u, v, w], free));
                    if free == 1 {
                        return Ok(best.map(|b| b.0));
                    }
                }
            }
        }
        Ok(best.map(|b| b.0))
    }

    fn run(&mut self, budget: usize, depth: usize) -> bool {
        self.stats.visit(depth);
        let tri = match self.pick() {
            Err(()) => return false,
            Ok(None) => return true,
            Ok(Some(tri)) => tri,
        };
        if budget == 0 || lower_bound(&self.g, Some(&self.kept)) > budget {
            return false;
        }
        let [a, b, c] = tri;
        let options: Vec<(usize, usize)> =
            [(a, b), (a, c), (b, c)].into_iter().filter(|&(x, y)| !self.kept[x].contains(y)).collect();
        self.stats.branching(options.len());
        let mut fixed = Vec::new();
        let mut found = false;
        for &(x, y) in &options {
            self.g.remove_edge(x, y);
            self.deleted.push((x, y));
            if self.run(budget - 1, depth + 1) {
                found = true;
                break;
            }
            self.deleted.pop();
            self.g.add_edge(x, y);
            // later branches keep this edge
            self.kept[x].insert(y);
            self.kept[y].insert(x);
            fixed.push((x, y));
        }
        for (x, y) in fixed {
            self.kept[x].set(y, false);
            self.kept[y].set(x, false);
        }
        found
    }
}

/// Deletions of size at most `k` making `g` triangle-free, by three-way
/// branching on triangles with edge fixing and a packing bound.
fn solve_within(g: &Graph, k: usize, stats: &mut SolveStats) -> Option<Vec<(usize, usize)>> {
    let n = g.n();
    let mut search =
        Search { g: g.clone(), kept: vec![FixedBitSet::with_capacity(n); n], deleted: Vec::new(), stats };
    search.run(k, 0).then_some(search.deleted)
}

/// Minimum deletions for `g`, searched by increasing budget from the packing
/// bound up to `k`.
fn minimum_within(g: &Graph, k: usize, stats: &mut SolveStats) -> Option<Vec<(usize, usize)>> {
    let lb = triangle_lower_bound(g);
    (lb..=k).find_map(|budget| solve_within(g, budget, stats))
}

/// Triangle Deletion optimum of `g` if it is at most `cap`.
pub fn optimum_within(g: &Graph, cap: usize) -> Option<usize> {
    let mut stats = SolveStats::new("plain");
    minimum_within(g, cap, &mut stats).map(|s| s.len())
}

/// A minimum deletion set of size at most `k`, if there is one.
pub fn exact_solve(g: &Graph, k: usize) -> Outcome<EditSet> {
    let mut stats = SolveStats::new("plain");
    let solution = minimum_within(g, k, &mut stats).map(|dels| {
        let mut h = g.clone();
        for (u, v) in dels {
            h.remove_edge(u, v);
        }
        EditSet::from_graph_diff(g, &h)
    });
    Outcome { solution, stats }
}

/// Triangles each sharing exactly one distinct edge with a packed part,
/// witnessing that the part cannot be settled locally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Index of the part in the reduced instance's packing.
    pub part: usize,
    /// Sorted vertex triples.
    pub triangles: Vec<[usize; 3]>,
    /// `shared[i]` is the edge `triangles[i]` has inside the part.
    pub shared: Vec<VertexPair>,
}

/// Result of one full pass of the packing rule.
#[derive(Clone, Debug)]
pub struct Rule1Pass {
    pub instance: Instance<Graph>,
    pub applied: EditSet,
    pub certificates: Vec<Certificate>,
    /// Number of parts the rule settled.
    pub fired: usize,
}

/// For every edge of the part that lies in a triangle with an outside
/// vertex: the edge and the first such triangle.
fn labeled_edges(g: &Graph, part: &Part) -> Vec<(VertexPair, [usize; 3])> {
    let mut out = Vec::new();
    for (i, &a) in part.vertices.iter().enumerate() {
        for &b in &part.vertices[i + 1..] {
            if !g.has_edge(a, b) {
                continue;
            }
            if let Some(c) = g.common_neighbors(a, b).find(|&c| !part.contains(c)) {
                let mut tri = [a, b, c];
                tri.sort_unstable();
                out.push((VertexPair::new(a, b), tri));
            }
        }
    }
    out
}

enum PartVerdict {
    Settle(Vec<VertexPair>),
    Certify(Vec<(VertexPair, [usize; 3])>),
}

fn examine_part(g: &Graph, part: &Part) -> PartVerdict {
    let tau = part.cost;
    let labeled = labeled_edges(g, part);
    if labeled.len() > tau {
        return PartVerdict::Certify(labeled.into_iter().take(tau + 1).collect());
    }
    let mut sub = g.induced(&part.vertices);
    let local = |p: &VertexPair| {
        (part.vertices.binary_search(&p.u).unwrap(), part.vertices.binary_search(&p.v).unwrap())
    };
    for (p, _) in &labeled {
        let (a, b) = local(p);
        sub.remove_edge(a, b);
    }
    let mut stats = SolveStats::default();
    match solve_within(&sub, tau - labeled.len(), &mut stats) {
        Some(rest) => {
            let mut dels: Vec<VertexPair> = labeled.iter().map(|(p, _)| *p).collect();
            dels.extend(rest.into_iter().map(|(a, b)| VertexPair::new(part.vertices[a], part.vertices[b])));
            PartVerdict::Settle(dels)
        }
        None => PartVerdict::Certify(labeled),
    }
}

fn check_instance(inst: &Instance<Graph>) -> Result<()> {
    if inst.problem != Problem::TriangleDeletion {
        return Err(Error::ProblemMismatch { problem: inst.problem.name(), expected: "triangle-del" });
    }
    if inst.packing.mode != PackingMode::Vertex && !inst.packing.is_empty() {
        return Err(Error::InvalidInput("the packing rule needs a vertex-disjoint packing".into()));
    }
    Ok(())
}

/// One pass of the packing rule over all parts. A part is settled when a
/// deletion set of size `τ(H)` inside it destroys every triangle containing
/// one of its edges; otherwise a certificate is reported for it.
pub fn apply_rule1_all(inst: &Instance<Graph>) -> Result<Rule1Pass> {
    check_instance(inst)?;
    let mut g = inst.host.clone();
    let mut k = inst.k;
    let mut parts = Vec::new();
    let mut verdicts = Vec::new();
    let mut fired = 0;
    for part in &inst.packing.parts {
        match examine_part(&g, part) {
            PartVerdict::Settle(dels) => {
                for p in dels {
                    g.remove_edge(p.u, p.v);
                }
                k = k.saturating_sub(part.cost);
                fired += 1;
            }
            PartVerdict::Certify(list) => {
                verdicts.push(list);
                parts.push(part.clone());
            }
        }
    }
    let certificates = verdicts
        .into_iter()
        .enumerate()
        .map(|(part, list)| Certificate {
            part,
            shared: list.iter().map(|(p, _)| *p).collect(),
            triangles: list.into_iter().map(|(_, t)| t).collect(),
        })
        .collect();
    let applied = EditSet::from_graph_diff(&inst.host, &g);
    let packing = Packing::new(inst.packing.mode, parts);
    Ok(Rule1Pass { instance: Instance::new(g, packing, k, inst.t, inst.problem), applied, certificates, fired })
}

/// Whether the reduced instance violates `k ≤ (2t+1)ℓ` and can be rejected.
pub fn reject_by_bound<H>(inst: &Instance<H>) -> bool {
    let (_, ell) = crate::packing::bounds(inst);
    inst.k as i64 > (2 * inst.t as i64 + 1) * ell
}

struct Node {
    g: Graph,
    parts: Vec<Part>,
    k: usize,
}

struct AboveSearch<'a> {
    t: usize,
    stats: &'a mut SolveStats,
}

impl AboveSearch<'_> {
    fn run(&mut self, node: Node, depth: usize) -> Option<Graph> {
        self.stats.visit(depth);
        let mut inst = Instance::new(
            node.g,
            Packing::vertex_disjoint(node.parts),
            node.k,
            self.t,
            Problem::TriangleDeletion,
        );
        let pass = loop {
            if inst.bounds().1 < 0 {
                return None;
            }
            let pass = apply_rule1_all(&inst).expect("instance shape is checked at the entry point");
            self.stats.count_rule("rule1", pass.fired as u64);
            if !pass.instance.packing.is_empty() {
                break pass;
            }
            let Some(tri) = first_triangle(&pass.instance.host) else {
                return Some(pass.instance.host);
            };
            self.stats.count_rule("seed-triangle", 1);
            inst = pass.instance;
            inst.packing.parts.push(Part::new(tri.to_vec(), 1));
        };
        let Rule1Pass { instance, certificates, .. } = pass;
        let (_, ell) = instance.bounds();
        if reject_by_bound(&instance) {
            self.stats.count_rule("bound-reject", 1);
            return None;
        }
        if ell < 1 {
            return None;
        }
        let cert = certificates.iter().min_by_key(|c| c.triangles.len()).expect("packing is nonempty");
        let part = &instance.packing.parts[cert.part];
        self.stats.branching(2 * cert.triangles.len() + 1);

        for (tri, shared) in cert.triangles.iter().zip(&cert.shared) {
            let outer = tri.iter().copied().find(|&v| !part.contains(v)).expect("one vertex lies outside");
            for inner in [shared.u, shared.v] {
                let mut g = instance.host.clone();
                g.remove_edge(inner, outer);
                let child = Node { g, parts: instance.packing.parts.clone(), k: instance.k - 1 };
                if let Some(done) = self.run(child, depth + 1) {
                    return Some(done);
                }
            }
        }

        let t_prime = cert.shared.len();
        if instance.k < t_prime {
            return None;
        }
        let mut g = instance.host.clone();
        for p in &cert.shared {
            g.remove_edge(p.u, p.v);
        }
        let residual = optimum_within(&g.induced(&part.vertices), part.cost)
            .expect("removing edges never raises the optimum");
        let mut parts = instance.packing.parts.clone();
        if residual == 0 {
            parts.remove(cert.part);
        } else {
            parts[cert.part].cost = residual;
        }
        self.stats.count_rule("rewrite-branch", 1);
        self.run(Node { g, parts, k: instance.k - t_prime }, depth + 1)
    }
}

/// Decides the instance by the search tree above the packing. The packing
/// must be vertex-disjoint with correct cost annotations.
pub fn branch_solve(inst: &Instance<Graph>) -> Result<Outcome<EditSet>> {
    check_instance(inst)?;
    let mut stats = SolveStats::new("above-packing");
    stats.initial_ell = Some(inst.bounds().1);
    let t = inst.packing.parts.iter().map(|p| p.cost).max().unwrap_or(1).max(inst.t).max(1);
    let root = Node { g: inst.host.clone(), parts: inst.packing.parts.clone(), k: inst.k };
    let solution = AboveSearch { t, stats: &mut stats }
        .run(root, 0)
        .map(|done| EditSet::from_graph_diff(&inst.host, &done));
    Ok(Outcome { solution, stats })
}

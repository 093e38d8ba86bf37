//! Cluster Editing: the plain P3-branching engine, the packing reduction rule
//! for cost-`t` packings and the search tree for P3 packings.

mod p3;

pub use p3::{
    apply_clique_rules, apply_local_twin_rules, branch_solve_p3, clique_rule_step, twin_rule_step, CliqueRulePass,
};

use crate::edits::EditSet;
use crate::error::{Error, Result};
use crate::forbidden::P3;
use crate::graph::{Graph, VertexPair};
use crate::packing::{bounds, Instance, Packing, PackingMode, Part, Problem, Reduction};
use crate::stats::{Outcome, SolveStats};
use fixedbitset::FixedBitSet;

/// Edits turning a graph into a cluster graph, with the resulting clusters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSolution {
    pub edits: EditSet,
    /// Connected components of the edited graph, each a clique.
    pub clusters: Vec<Vec<usize>>,
}

impl ClusterSolution {
    pub(crate) fn from_final(input: &Graph, done: &Graph) -> Self {
        ClusterSolution { edits: EditSet::from_graph_diff(input, done), clusters: done.components() }
    }
}

/// Greedy packing of P3s that pairwise share at most one vertex and keep at
/// least one modifiable pair; each needs its own edit.
fn lower_bound(g: &Graph, fixed: &[FixedBitSet]) -> usize {
    let n = g.n();
    let mut used: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    let mut count = 0;
    for v in 0..n {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                let pairs = [(u, v), (v, w), (u, w)];
                if pairs.iter().any(|&(a, b)| used[a].contains(b)) {
                    continue;
                }
                if pairs.iter().all(|&(a, b)| fixed[a].contains(b)) {
                    continue;
                }
                for (a, b) in pairs {
                    used[a].insert(b);
                    used[b].insert(a);
                }
                count += 1;
            }
        }
    }
    count
}

struct Search<'a> {
    g: Graph,
    fixed: Vec<FixedBitSet>,
    stats: &'a mut SolveStats,
}

impl Search<'_> {
    fn free_pairs(&self, p: &P3) -> Vec<(usize, usize)> {
        [(p.u, p.v), (p.v, p.w), (p.u, p.w)].into_iter().filter(|&(a, b)| !self.fixed[a].contains(b)).collect()
    }

    /// The P3 with the fewest modifiable pairs, or `Err(())` if one has none.
    fn pick(&self) -> std::result::Result<Option<P3>, ()> {
        let mut best: Option<(P3, usize)> = None;
        for v in 0..self.g.n() {
            let nb: Vec<usize> = self.g.neighbors(v).collect();
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    if self.g.has_edge(u, w) {
                        continue;
                    }
                    let p = P3 { u, v, w };
                    let free = self.free_pairs(&p).len();
                    if free == 0 {
                        return Err(());
                    }
                    if best.is_none_or(|(_, f)| free < f) {
                        best = Some((p, free));
                        if free == 1 {
                            return Ok(Some(p));
                        }
                    }
                }
            }
        }
        Ok(best.map(|b| b.0))
    }

    fn fix(&mut self, a: usize, b: usize, on: bool) {
        self.fixed[a].set(b, on);
        self.fixed[b].set(a, on);
    }

    fn run(&mut self, budget: usize, depth: usize) -> bool {
        self.stats.visit(depth);
        let p = match self.pick() {
            Err(()) => return false,
            Ok(None) => return true,
            Ok(Some(p)) => p,
        };
        if budget == 0 || lower_bound(&self.g, &self.fixed) > budget {
            return false;
        }
        let options = self.free_pairs(&p);
        self.stats.branching(options.len());
        let mut settled = Vec::new();
        let mut found = false;
        for &(a, b) in &options {
            self.g.toggle(a, b);
            self.fix(a, b, true);
            if self.run(budget - 1, depth + 1) {
                found = true;
                break;
            }
            self.g.toggle(a, b);
            // the pair keeps its current state in the later branches
            settled.push((a, b));
        }
        for (a, b) in settled {
            self.fix(a, b, false);
        }
        found
    }
}

fn solve_within(g: &Graph, k: usize, stats: &mut SolveStats) -> Option<Graph> {
    let n = g.n();
    let mut search = Search { g: g.clone(), fixed: vec![FixedBitSet::with_capacity(n); n], stats };
    search.run(k, 0).then_some(search.g)
}

fn minimum_within(g: &Graph, k: usize, stats: &mut SolveStats) -> Option<Graph> {
    let lb = lower_bound(g, &vec![FixedBitSet::with_capacity(g.n()); g.n()]);
    (lb..=k).find_map(|budget| solve_within(g, budget, stats))
}

/// Cluster Editing optimum of `g` if it is at most `cap`.
pub fn optimum_within(g: &Graph, cap: usize) -> Option<usize> {
    let mut stats = SolveStats::default();
    minimum_within(g, cap, &mut stats).map(|done| g.difference(&done).len())
}

/// A minimum solution with at most `k` edits, if one exists.
///
/// Branches on an induced P3 `u – v – w` into deleting `{u,v}`, deleting
/// `{v,w}` or inserting `{u,w}`; a pair decided by a branch stays fixed below it.
pub fn exact_ce(g: &Graph, k: usize) -> Outcome<ClusterSolution> {
    let mut stats = SolveStats::new("plain");
    let solution = minimum_within(g, k, &mut stats).map(|done| ClusterSolution::from_final(g, &done));
    Outcome { solution, stats }
}

pub(crate) fn check_instance(inst: &Instance<Graph>) -> Result<()> {
    if inst.problem != Problem::ClusterEditing {
        return Err(Error::ProblemMismatch { problem: inst.problem.name(), expected: "cluster-edit" });
    }
    if inst.packing.mode != PackingMode::Vertex && !inst.packing.is_empty() {
        return Err(Error::InvalidInput("the packing rule needs a vertex-disjoint packing".into()));
    }
    Ok(())
}

/// Edits settling `part`, or `None` if the rule does not apply.
///
/// Outside neighborhoods of the part's vertices must be pairwise equal or
/// disjoint. Vertices sharing a nonempty outside neighborhood are forced into
/// one cluster, vertices with different neighborhoods apart, and the vertices
/// without outside neighbors are solved on their own.
fn settle_part(g: &Graph, part: &Part) -> Option<Vec<VertexPair>> {
    let w = &part.vertices;
    let mut outside = FixedBitSet::with_capacity(g.n());
    outside.insert_range(..);
    for &v in w {
        outside.set(v, false);
    }
    let hoods: Vec<FixedBitSet> = w
        .iter()
        .map(|&v| {
            let mut s = g.neighbor_set(v).clone();
            s.intersect_with(&outside);
            s
        })
        .collect();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if hoods[i] != hoods[j] && !hoods[i].is_disjoint(&hoods[j]) {
                return None;
            }
        }
    }
    let mut edits = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let adjacent = g.has_edge(w[i], w[j]);
            let same = hoods[i] == hoods[j];
            let external = !hoods[i].is_clear();
            if (same && external && !adjacent) || (!same && adjacent) {
                edits.push(VertexPair::new(w[i], w[j]));
            }
        }
    }
    if edits.len() > part.cost {
        return None;
    }
    let interior: Vec<usize> = w.iter().zip(&hoods).filter(|(_, h)| h.is_clear()).map(|(&v, _)| v).collect();
    let sub = g.induced(&interior);
    let mut stats = SolveStats::default();
    let done = minimum_within(&sub, part.cost - edits.len(), &mut stats)?;
    let inner = sub.difference(&done);
    if edits.len() + inner.len() != part.cost {
        return None;
    }
    edits.extend(inner.into_iter().map(|p| VertexPair::new(interior[p.u], interior[p.v])));
    Some(edits)
}

/// One pass of the packing rule over all parts.
pub fn apply_rule3_all(inst: &Instance<Graph>) -> Result<Reduction<Graph>> {
    check_instance(inst)?;
    let mut g = inst.host.clone();
    let mut k = inst.k;
    let mut parts = Vec::new();
    let mut fired = 0;
    for part in &inst.packing.parts {
        match settle_part(&g, part) {
            Some(edits) => {
                for p in edits {
                    g.toggle(p.u, p.v);
                }
                k = k.saturating_sub(part.cost);
                fired += 1;
            }
            None => parts.push(part.clone()),
        }
    }
    let applied = EditSet::from_graph_diff(&inst.host, &g);
    let packing = Packing::new(inst.packing.mode, parts);
    Ok(Reduction { instance: Instance::new(g, packing, k, inst.t, inst.problem), applied, fired })
}

/// Rule pass, rejection by `k ≤ (2t+1)ℓ`, then the plain engine with budget
/// `min(k, (2t+1)ℓ)`.
pub fn solve_cost_t_ce(inst: &Instance<Graph>) -> Result<Outcome<ClusterSolution>> {
    check_instance(inst)?;
    let mut stats = SolveStats::new("above-packing");
    stats.initial_ell = Some(inst.bounds().1);
    if inst.bounds().1 < 0 {
        stats.count_rule("bound-reject", 1);
        return Ok(Outcome { solution: None, stats });
    }
    let pass = apply_rule3_all(inst)?;
    stats.count_rule("rule3", pass.fired as u64);
    let reduced = pass.instance;
    let (_, ell) = bounds(&reduced);
    if ell < 0 || crate::triangle::reject_by_bound(&reduced) {
        stats.count_rule("bound-reject", 1);
        return Ok(Outcome { solution: None, stats });
    }
    let t = reduced.packing.parts.iter().map(|p| p.cost).max().unwrap_or(0).max(reduced.t);
    let budget = reduced.k.min(((2 * t + 1) as i64 * ell) as usize);
    let inner = exact_ce(&reduced.host, budget);
    stats.absorb(&inner.stats, 0);
    let solution = inner.solution.map(|s| {
        let done = s.edits.toggle_pairs(&reduced.host).expect("edits come from the same host");
        ClusterSolution::from_final(&inst.host, &done)
    });
    Ok(Outcome { solution, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::{check_f_free, Family};

    fn inst(g: Graph, parts: Vec<Part>, k: usize, t: usize) -> Instance<Graph> {
        Instance::new(g, Packing::vertex_disjoint(parts), k, t, Problem::ClusterEditing)
    }

    #[test]
    fn plain_engine_small_graphs() {
        assert_eq!(exact_ce(&Graph::path(3), 1).solution.map(|s| s.edits.len()), Some(1));
        assert!(!exact_ce(&Graph::cycle(4), 1).is_feasible());
        let s = exact_ce(&Graph::cycle(4), 2).solution.unwrap();
        assert_eq!(s.edits.len(), 2);
        let done = s.edits.apply_to_graph(&Graph::cycle(4)).unwrap();
        assert!(check_f_free(&done, Family::P3).unwrap());
        assert_eq!(s.clusters, done.components());
    }

    #[test]
    fn rule3_examples() {
        let pass = apply_rule3_all(&inst(Graph::path(3), vec![Part::new(vec![0, 1, 2], 1)], 1, 1)).unwrap();
        assert_eq!((pass.fired, pass.instance.k, pass.applied.len()), (1, 0, 1));

        // P3 0–1–2, outside vertex 3 adjacent to 0 and 1
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 3), (1, 3)]).unwrap();
        let pass = apply_rule3_all(&inst(g, vec![Part::new(vec![0, 1, 2], 1)], 1, 1)).unwrap();
        assert_eq!(pass.fired, 1);
        assert_eq!(pass.applied.pairs().collect::<Vec<_>>(), vec![VertexPair::new(1, 2)]);

        // the part's vertices see the outside as a P4: 0–3, 1–3, 1–4
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 3), (1, 3), (1, 4)]).unwrap();
        let pass = apply_rule3_all(&inst(g.clone(), vec![Part::new(vec![0, 1, 2], 1)], 1, 1)).unwrap();
        assert_eq!(pass.fired, 0);
        assert_eq!(pass.instance.host, g);
    }

    #[test]
    fn cost_t_pipeline_settles_by_rules() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let parts = vec![Part::new(vec![0, 1, 2], 1), Part::new(vec![3, 4, 5], 1)];
        let out = solve_cost_t_ce(&inst(g, parts, 2, 1)).unwrap();
        assert_eq!(out.stats.rule_count("rule3"), 2);
        assert_eq!(out.solution.unwrap().edits.len(), 2);
    }
}

//! The search tree for P3 packings: twin and clique reduction rules, four
//! branching rules and the matching endgame on graphs of maximum degree two.

use super::{check_instance, exact_ce, ClusterSolution};
use crate::edits::EditSet;
use crate::error::{Error, Result};
use crate::forbidden::{enumerate_p3, find_p3, P3};
use crate::graph::Graph;
use crate::packing::{Instance, Packing, Part, Reduction};
use crate::stats::{Outcome, SolveStats};
use fixedbitset::FixedBitSet;

/// Neighbors of `x` outside `skip`.
fn hood_without(g: &Graph, x: usize, skip: &[usize]) -> FixedBitSet {
    let mut s = g.neighbor_set(x).clone();
    for &y in skip {
        s.set(y, false);
    }
    s
}

/// Edit of the twin rules for the P3 `p`, if one applies: insertion of the
/// ends' pair, or deletion of the center's pair with one end.
fn twin_rule_edit(g: &Graph, p: &P3) -> Option<(&'static str, (usize, usize))> {
    let vs = p.vertices();
    let (nu, nv, nw) = (hood_without(g, p.u, &vs), hood_without(g, p.v, &vs), hood_without(g, p.w, &vs));
    if nu == nv && nv == nw {
        return Some(("rule4", (p.u, p.w)));
    }
    let lonely = |a: usize, b: usize| g.common_neighbors(a, b).all(|x| x == p.v);
    if nu == nv && lonely(p.u, p.w) {
        return Some(("rule5", (p.v, p.w)));
    }
    if nw == nv && lonely(p.u, p.w) {
        return Some(("rule5", (p.u, p.v)));
    }
    None
}

fn find_twin_edit(g: &Graph, rule: &str) -> Option<(usize, usize)> {
    enumerate_p3(g).iter().filter_map(|p| twin_rule_edit(g, p)).find(|(r, _)| *r == rule).map(|(_, e)| e)
}

/// A clique `K` with `|K| ≥ 3` whose vertices have at most one neighbor
/// outside `K` and whose outside neighbors have exactly one neighbor in `K`,
/// returned with the crossing edges.
fn find_clique_with_ends(g: &Graph) -> Option<Vec<(usize, usize)>> {
    for u in 0..g.n() {
        if g.degree(u) < 2 {
            continue;
        }
        let closed: Vec<usize> = {
            let mut c: Vec<usize> = g.neighbors(u).collect();
            c.push(u);
            c.sort_unstable();
            c
        };
        let candidates = std::iter::once(None).chain(g.neighbors(u).map(Some));
        for drop in candidates {
            let k: Vec<usize> = closed.iter().copied().filter(|&x| Some(x) != drop).collect();
            if let Some(crossing) = clique_with_ends(g, &k) {
                return Some(crossing);
            }
        }
    }
    None
}

fn clique_with_ends(g: &Graph, k: &[usize]) -> Option<Vec<(usize, usize)>> {
    if k.len() < 3 || !g.is_clique(k) {
        return None;
    }
    let mut crossing = Vec::new();
    for &x in k {
        let out: Vec<usize> = g.neighbors(x).filter(|y| k.binary_search(y).is_err()).collect();
        if out.len() > 1 {
            return None;
        }
        crossing.extend(out.into_iter().map(|y| (x, y)));
    }
    if crossing.is_empty() {
        return None;
    }
    for &(_, y) in &crossing {
        if k.iter().filter(|&&x| g.has_edge(x, y)).count() != 1 {
            return None;
        }
    }
    Some(crossing)
}

/// Clique components not yet marked as settled.
fn isolated_cliques(g: &Graph, alive: &FixedBitSet) -> Vec<Vec<usize>> {
    g.components().into_iter().filter(|c| alive.contains(c[0]) && g.is_clique(c)).collect()
}

/// The first applicable twin-rule edit, tagged `"rule4"` (insertion) or
/// `"rule5"` (deletion).
pub fn twin_rule_step(g: &Graph) -> Option<(&'static str, crate::graph::VertexPair)> {
    enumerate_p3(g)
        .iter()
        .find_map(|p| twin_rule_edit(g, p))
        .map(|(rule, (a, b))| (rule, crate::graph::VertexPair::new(a, b)))
}

/// Crossing edges of the first clique that can be cut from its pendant
/// outside neighbors.
pub fn clique_rule_step(g: &Graph) -> Option<Vec<crate::graph::VertexPair>> {
    find_clique_with_ends(g).map(|c| c.into_iter().map(|(x, y)| crate::graph::VertexPair::new(x, y)).collect())
}

/// Outcome of the clique rules.
#[derive(Clone, Debug)]
pub struct CliqueRulePass {
    pub graph: Graph,
    /// Remaining budget; negative when the rules used more than the input budget.
    pub k: i64,
    pub applied: EditSet,
    /// Number of cliques cut from their outside neighbors.
    pub cut_cliques: usize,
    /// Clique components set aside as finished clusters.
    pub isolated: Vec<Vec<usize>>,
}

/// Exhaustively cuts cliques from their pendant outside neighbors and sets
/// aside connected components that are cliques.
pub fn apply_clique_rules(g: &Graph, k: usize) -> CliqueRulePass {
    let mut graph = g.clone();
    let mut budget = k as i64;
    let mut cut_cliques = 0;
    while let Some(crossing) = find_clique_with_ends(&graph) {
        for &(x, y) in &crossing {
            graph.remove_edge(x, y);
        }
        budget -= crossing.len() as i64;
        cut_cliques += 1;
    }
    let mut alive = FixedBitSet::with_capacity(g.n());
    alive.insert_range(..);
    let isolated = isolated_cliques(&graph, &alive);
    let applied = EditSet::from_graph_diff(g, &graph);
    CliqueRulePass { graph, k: budget, applied, cut_cliques, isolated }
}

/// Drops parts that no longer induce a P3.
fn refresh_packing(g: &Graph, parts: &mut Vec<[usize; 3]>) {
    parts.retain(|&p| P3::induced_by(g, p).is_some());
}

/// Exhaustively applies the two twin rules to any induced P3; packed P3s
/// destroyed on the way leave the packing.
pub fn apply_local_twin_rules(inst: &Instance<crate::graph::Graph>) -> Result<Reduction<Graph>> {
    check_instance(inst)?;
    let mut g = inst.host.clone();
    let mut k = inst.k;
    let mut fired = 0;
    while let Some((_, (a, b))) = enumerate_p3(&g).iter().find_map(|p| twin_rule_edit(&g, p)) {
        g.toggle(a, b);
        k = k.saturating_sub(1);
        fired += 1;
    }
    let parts: Vec<Part> = inst
        .packing
        .parts
        .iter()
        .filter(|p| p.vertices.len() != 3 || P3::induced_by(&g, [p.vertices[0], p.vertices[1], p.vertices[2]]).is_some())
        .cloned()
        .collect();
    let applied = EditSet::from_graph_diff(&inst.host, &g);
    let packing = Packing::new(inst.packing.mode, parts);
    Ok(Reduction { instance: Instance::new(g, packing, k, inst.t, inst.problem), applied, fired })
}

#[derive(Clone)]
struct Node {
    g: Graph,
    /// Vertices not yet set aside in a finished clique component.
    alive: FixedBitSet,
    parts: Vec<[usize; 3]>,
    k: usize,
}

impl Node {
    fn ell(&self) -> i64 {
        self.k as i64 - self.parts.len() as i64
    }

    /// Applies toggles costing one each; `false` if the budget runs out.
    fn edit(&mut self, pairs: &[(usize, usize)]) -> bool {
        if pairs.len() > self.k {
            return false;
        }
        for &(a, b) in pairs {
            self.g.toggle(a, b);
        }
        self.k -= pairs.len();
        refresh_packing(&self.g, &mut self.parts);
        true
    }

    fn owners(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.g.n()];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                owner[v] = Some(i);
            }
        }
        owner
    }
}

type Branches = Vec<Vec<(usize, usize)>>;

struct P3Search<'a> {
    stats: &'a mut SolveStats,
}

impl P3Search<'_> {
    /// Rules 7, 6, 4, 5 until none applies; `false` if the budget runs out.
    fn reduce(&mut self, node: &mut Node) -> bool {
        loop {
            let settled = isolated_cliques(&node.g, &node.alive);
            if !settled.is_empty() {
                self.stats.count_rule("rule7", settled.len() as u64);
                for c in settled {
                    for v in c {
                        node.alive.set(v, false);
                    }
                }
                continue;
            }
            if let Some(crossing) = find_clique_with_ends(&node.g) {
                self.stats.count_rule("rule6", 1);
                if !node.edit(&crossing) {
                    return false;
                }
                continue;
            }
            let mut fired = false;
            for rule in ["rule4", "rule5"] {
                if let Some(e) = find_twin_edit(&node.g, rule) {
                    self.stats.count_rule(rule, 1);
                    if !node.edit(&[e]) {
                        return false;
                    }
                    fired = true;
                    break;
                }
            }
            if !fired {
                return true;
            }
        }
    }

    fn branching_rule(&mut self, node: &Node) -> Option<(&'static str, Branches)> {
        let owner = node.owners();
        let g = &node.g;
        for p in enumerate_p3(g) {
            let o = p.vertices().map(|v| owner[v]);
            let distinct = (0..3).all(|i| (i + 1..3).all(|j| o[i].is_none() || o[i] != o[j]));
            if distinct {
                return Some(("br1", vec![vec![(p.u, p.v)], vec![(p.v, p.w)], vec![(p.u, p.w)]]));
            }
        }
        let packed: Vec<P3> =
            node.parts.iter().map(|&p| P3::induced_by(g, p).expect("packing is refreshed after edits")).collect();
        for p in &packed {
            let (u, v, w) = (p.u, p.v, p.w);
            let mut common = g.neighbor_set(u).clone();
            common.intersect_with(g.neighbor_set(w));
            if let Some(x) = common.ones().find(|&x| x != v && !g.has_edge(v, x)) {
                let branches = vec![vec![(u, x)], vec![(w, x)], vec![(v, x)], vec![(u, v), (v, w), (u, w)]];
                return Some(("br2", branches));
            }
        }
        for p in &packed {
            let (v, trio) = (p.v, p.vertices());
            for a in [p.u, p.w] {
                let xs = g.common_neighbors(a, v).filter(|x| !trio.contains(x));
                for x in xs {
                    let y = (0..g.n())
                        .filter(|&y| !trio.contains(&y) && y != x)
                        .find(|&y| g.has_edge(y, a) != g.has_edge(y, v));
                    if let Some(y) = y {
                        let (near, far) = if g.has_edge(y, a) { (a, v) } else { (v, a) };
                        let branches = vec![vec![(a, x)], vec![(v, x)], vec![(y, near)], vec![(y, far)]];
                        return Some(("br3", branches));
                    }
                }
            }
        }
        for p in &packed {
            let (u, v, w) = (p.u, p.v, p.w);
            if let Some(x) = g.neighbors(v).find(|&x| x != u && x != w && !g.has_edge(u, x) && !g.has_edge(w, x)) {
                let branches = vec![vec![(v, x)], vec![(u, x)], vec![(w, x)], vec![(u, v), (v, w)]];
                return Some(("br4", branches));
            }
        }
        None
    }

    /// Whether the remaining graph has maximum degree two outside the
    /// settled clique components.
    fn endgame_ready(node: &Node) -> bool {
        node.alive.ones().all(|v| node.g.degree(v) <= 2) && isolated_cliques(&node.g, &node.alive).is_empty()
    }

    /// Keeps a maximum matching of every path and cycle, deleting the rest.
    fn endgame(node: &Node) -> Graph {
        let g = &node.g;
        let mut done = g.clone();
        for comp in g.components() {
            if comp.len() < 2 || !node.alive.contains(comp[0]) {
                continue;
            }
            let start = comp.iter().copied().find(|&v| g.degree(v) == 1).unwrap_or(comp[0]);
            let mut walk = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            while let Some(next) = g.neighbors(cur).find(|&y| y != prev && y != start && !walk.contains(&y)) {
                walk.push(next);
                prev = cur;
                cur = next;
            }
            let mut keep = Vec::new();
            for pair in walk.chunks(2) {
                if let [a, b] = *pair {
                    keep.push((a, b));
                }
            }
            for &a in &comp {
                for b in g.neighbors(a).filter(|&b| b > a) {
                    if !keep.contains(&(a, b)) && !keep.contains(&(b, a)) {
                        done.remove_edge(a, b);
                    }
                }
            }
        }
        done
    }

    fn run(&mut self, mut node: Node, depth: usize) -> Option<Graph> {
        self.stats.visit(depth);
        if !self.reduce(&mut node) || node.ell() < 0 {
            return None;
        }
        if find_p3(&node.g).is_none() {
            return Some(node.g);
        }
        let owner = node.owners();
        let mut taken: Vec<bool> = owner.iter().map(Option::is_some).collect();
        for p in enumerate_p3(&node.g) {
            if p.vertices().iter().all(|&v| !taken[v]) {
                for v in p.vertices() {
                    taken[v] = true;
                }
                node.parts.push(p.sorted());
                self.stats.count_rule("seed-p3", 1);
            }
        }
        let ell = node.ell();
        if ell < 0 {
            return None;
        }
        if node.k as i64 > 3 * ell {
            self.stats.count_rule("bound-reject", 1);
            return None;
        }
        let Some((rule, branches)) = self.branching_rule(&node) else {
            if !Self::endgame_ready(&node) {
                // not expected to happen; stay exact regardless
                self.stats.count_rule("endgame-fallback", 1);
                let out = exact_ce(&node.g, node.k);
                return out.solution.map(|s| s.edits.apply_to_graph(&node.g).expect("edits fit their graph"));
            }
            self.stats.count_rule("endgame", 1);
            let done = Self::endgame(&node);
            return (node.g.difference(&done).len() <= node.k).then_some(done);
        };
        if ell < 1 {
            return None;
        }
        self.stats.count_rule(rule, 1);
        self.stats.branching(branches.len());
        for pairs in branches {
            let mut child = node.clone();
            if child.edit(&pairs) {
                if let Some(done) = self.run(child, depth + 1) {
                    return Some(done);
                }
            }
        }
        None
    }
}

/// Decides the instance by the search tree for P3 packings. Every part must
/// be an induced P3 with cost one.
pub fn branch_solve_p3(inst: &Instance<Graph>) -> Result<Outcome<ClusterSolution>> {
    check_instance(inst)?;
    let mut owner = vec![false; inst.host.n()];
    let mut parts = Vec::new();
    for part in &inst.packing.parts {
        let vs: [usize; 3] = part
            .vertices
            .as_slice()
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("part {:?} is not a P3", part.vertices)))?;
        if vs.iter().any(|&v| v >= owner.len() || std::mem::replace(&mut owner[v], true))
            || P3::induced_by(&inst.host, vs).is_none()
        {
            return Err(Error::InvalidInput(format!("part {:?} is not a disjoint induced P3", part.vertices)));
        }
        parts.push(vs);
    }
    let mut stats = SolveStats::new("above-packing-p3");
    stats.initial_ell = Some(inst.k as i64 - parts.len() as i64);
    let mut alive = FixedBitSet::with_capacity(inst.host.n());
    alive.insert_range(..);
    let root = Node { g: inst.host.clone(), alive, parts, k: inst.k };
    let solution = P3Search { stats: &mut stats }
        .run(root, 0)
        .map(|done| ClusterSolution::from_final(&inst.host, &done));
    Ok(Outcome { solution, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::Problem;

    fn inst(g: Graph, parts: Vec<Part>, k: usize) -> Instance<Graph> {
        Instance::new(g, Packing::vertex_disjoint(parts), k, 1, Problem::ClusterEditing)
    }

    #[test]
    fn twin_rules() {
        // paw: P3 0–1–2 plus 3 adjacent to all of them
        let paw = Graph::from_edges(4, [(0, 1), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let r = apply_local_twin_rules(&inst(paw, vec![], 1)).unwrap();
        assert_eq!(r.fired, 1);
        assert_eq!(r.instance.k, 0);
        assert!(r.instance.host.is_clique(&[0, 1, 2, 3]));

        let r = apply_local_twin_rules(&inst(Graph::path(3), vec![], 1)).unwrap();
        assert_eq!((r.fired, r.instance.host.m()), (1, 3));
        let r = apply_local_twin_rules(&inst(Graph::complete(3), vec![], 1)).unwrap();
        assert_eq!(r.fired, 0);
    }

    #[test]
    fn clique_rules() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let pass = apply_clique_rules(&g, 5);
        assert_eq!((pass.cut_cliques, pass.k, pass.applied.len()), (1, 2, 3));

        let pass = apply_clique_rules(&Graph::complete(5), 0);
        assert_eq!(pass.isolated, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(pass.k, 0);

        let pass = apply_clique_rules(&Graph::cycle(5), 3);
        assert!(pass.applied.is_empty() && pass.isolated.is_empty());
    }

    #[test]
    fn search_tree_basics() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let out = branch_solve_p3(&inst(g, vec![], 0)).unwrap();
        assert_eq!(out.solution.map(|s| s.edits.len()), Some(0));

        let out = branch_solve_p3(&inst(Graph::path(3), vec![Part::new(vec![0, 1, 2], 1)], 1)).unwrap();
        assert_eq!(out.solution.map(|s| s.edits.len()), Some(1));
    }

    #[test]
    fn long_path_uses_matching() {
        let g = Graph::path(9);
        for k in 0..6 {
            let out = branch_solve_p3(&inst(g.clone(), vec![], k)).unwrap();
            assert_eq!(out.is_feasible(), k >= 4, "k = {k}");
            assert!(out.stats.max_branch_factor <= 4);
            assert_eq!(out.stats.rule_count("endgame-fallback"), 0);
        }
    }
}

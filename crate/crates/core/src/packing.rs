//! Vertex- and edge-disjoint packings, their lower bound `h` and the
//! above-bound parameter `ℓ = k − h`.

use crate::error::{Error, Result};
use crate::forbidden::{Family, ForbiddenHost};
use crate::graph::{Graph, VertexPair};
use crate::tournament::Tournament;
use crate::{cluster, fast, triangle};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// Largest cost cap accepted for local solves.
pub const MAX_COST_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    TriangleDeletion,
    Fast,
    ClusterEditing,
}

impl Problem {
    pub fn family(self) -> Family {
        match self {
            Problem::TriangleDeletion => Family::Triangle,
            Problem::Fast => Family::DirectedTriangle,
            Problem::ClusterEditing => Family::P3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::TriangleDeletion => "triangle-del",
            Problem::Fast => "fast",
            Problem::ClusterEditing => "cluster-edit",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle-del" => Ok(Problem::TriangleDeletion),
            "fast" => Ok(Problem::Fast),
            "cluster-edit" => Ok(Problem::ClusterEditing),
            _ => Err(Error::InvalidInput(format!("unknown problem {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PackingMode {
    #[default]
    Vertex,
    Edge,
}

impl PackingMode {
    pub fn name(self) -> &'static str {
        match self {
            PackingMode::Vertex => "vertex",
            PackingMode::Edge => "edge",
        }
    }
}

/// One packed induced subgraph, given by its sorted vertex set, with its
/// local optimum `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub vertices: Vec<usize>,
    pub cost: usize,
}

impl Part {
    pub fn new(mut vertices: Vec<usize>, cost: usize) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Part { vertices, cost }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Packing {
    pub mode: PackingMode,
    pub parts: Vec<Part>,
}

impl Packing {
    pub fn new(mode: PackingMode, parts: Vec<Part>) -> Self {
        Packing { mode, parts }
    }

    pub fn vertex_disjoint(parts: Vec<Part>) -> Self {
        Packing { mode: PackingMode::Vertex, parts }
    }

    /// The lower bound `h`: the sum of the part costs.
    pub fn h(&self) -> usize {
        self.parts.iter().map(|p| p.cost).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of every covered vertex.
    pub fn owner_map(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in &p.vertices {
                if v < n {
                    owner[v] = Some(i);
                }
            }
        }
        owner
    }

    /// Recomputes every part cost on `host`, capped at `cap`.
    pub fn annotate<H: PackingHost>(&mut self, host: &H, problem: Problem, cap: usize) -> Result<()> {
        for part in &mut self.parts {
            let sub = host.induced_host(&part.vertices);
            part.cost = local_cost(&sub, problem, cap)?.ok_or_else(|| {
                Error::InvalidInput(format!("part {:?} costs more than {cap}", part.vertices))
            })?;
        }
        Ok(())
    }
}

/// Hosts on which packings can be built and costed.
pub trait PackingHost: ForbiddenHost + Clone {
    fn vertex_count(&self) -> usize;

    fn induced_host(&self, vertices: &[usize]) -> Self;

    /// Pairs of `vertices` carrying an edge (graph) or an arc (tournament).
    fn edge_pairs(&self, vertices: &[usize]) -> Vec<VertexPair>;

    /// Exact optimum of the whole host for `problem` if it is at most `cap`.
    fn optimum_within(&self, problem: Problem, cap: usize) -> Result<Option<usize>>;
}

impl PackingHost for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn induced_host(&self, vertices: &[usize]) -> Self {
        self.induced(vertices)
    }

    fn edge_pairs(&self, vertices: &[usize]) -> Vec<VertexPair> {
        let mut out = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                if self.has_edge(a, b) {
                    out.push(VertexPair::new(a, b));
                }
            }
        }
        out
    }

    fn optimum_within(&self, problem: Problem, cap: usize) -> Result<Option<usize>> {
        match problem {
            Problem::TriangleDeletion => Ok(triangle::optimum_within(self, cap)),
            Problem::ClusterEditing => Ok(cluster::optimum_within(self, cap)),
            Problem::Fast => Err(Error::ProblemMismatch { problem: problem.name(), expected: "tournament" }),
        }
    }
}

impl PackingHost for Tournament {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn induced_host(&self, vertices: &[usize]) -> Self {
        self.induced(vertices)
    }

    fn edge_pairs(&self, vertices: &[usize]) -> Vec<VertexPair> {
        let mut out = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                out.push(VertexPair::new(a, b));
            }
        }
        out
    }

    fn optimum_within(&self, problem: Problem, cap: usize) -> Result<Option<usize>> {
        match problem {
            Problem::Fast => Ok(fast::optimum_within(self, cap)),
            _ => Err(Error::ProblemMismatch { problem: problem.name(), expected: "graph" }),
        }
    }
}

/// Exact local optimum `τ` of `sub` if it is at most `cap`; `None` means the
/// part breaks the cost cap.
pub fn local_cost<H: PackingHost>(sub: &H, problem: Problem, cap: usize) -> Result<Option<usize>> {
    if cap > MAX_COST_CAP {
        return Err(Error::CapExceeded(format!("cost cap {cap} exceeds {MAX_COST_CAP}")));
    }
    sub.optimum_within(problem, cap)
}

/// A host with a packing and a budget.
#[derive(Clone, Debug)]
pub struct Instance<H> {
    pub host: H,
    pub packing: Packing,
    pub k: usize,
    /// Cost cap: every part satisfies `1 ≤ τ ≤ t`.
    pub t: usize,
    pub problem: Problem,
}

impl<H: PackingHost> Instance<H> {
    pub fn new(host: H, packing: Packing, k: usize, t: usize, problem: Problem) -> Self {
        Instance { host, packing, k, t, problem }
    }

    /// `(h, ℓ)` for the current annotations.
    pub fn bounds(&self) -> (usize, i64) {
        bounds(self)
    }
}

/// `h = Σ τ(H)` and `ℓ = k − h`; a negative `ℓ` means the instance is a
/// no-instance.
pub fn bounds<H>(inst: &Instance<H>) -> (usize, i64) {
    let h = inst.packing.h();
    (h, inst.k as i64 - h as i64)
}

/// An instance after one pass of a packing reduction rule.
#[derive(Clone, Debug)]
pub struct Reduction<H> {
    pub instance: Instance<H>,
    /// Modifications made, relative to the input host.
    pub applied: crate::edits::EditSet,
    /// Number of rule applications.
    pub fired: usize,
}

/// Reason a packing fails validation; `part` indexes the first offending part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackingViolation {
    VertexOutOfRange { part: usize, vertex: usize },
    TooSmall { part: usize },
    Overlap { part: usize, other: usize, vertex: usize },
    EdgeOverlap { part: usize, other: usize, pair: VertexPair },
    ZeroCost { part: usize },
    CostExceedsT { part: usize, t: usize },
    StaleAnnotation { part: usize, annotated: usize, actual: usize },
}

impl fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackingViolation::VertexOutOfRange { part, vertex } => {
                write!(f, "part {part}: vertex {vertex} out of range")
            }
            PackingViolation::TooSmall { part } => write!(f, "part {part}: fewer than two vertices"),
            PackingViolation::Overlap { part, other, vertex } => {
                write!(f, "part {part}: shares vertex {vertex} with part {other}")
            }
            PackingViolation::EdgeOverlap { part, other, pair } => {
                write!(f, "part {part}: shares edge {pair} with part {other}")
            }
            PackingViolation::ZeroCost { part } => write!(f, "part {part}: needs no modification"),
            PackingViolation::CostExceedsT { part, t } => write!(f, "part {part}: costs more than {t}"),
            PackingViolation::StaleAnnotation { part, annotated, actual } => {
                write!(f, "part {part}: annotated cost {annotated}, actual {actual}")
            }
        }
    }
}

/// Checks disjointness, `1 ≤ τ ≤ t` and the cost annotations. Costs are
/// recomputed, never trusted.
pub fn validate_packing<H: PackingHost>(
    inst: &Instance<H>,
    t: usize,
) -> Result<std::result::Result<(), PackingViolation>> {
    let n = inst.host.vertex_count();
    let mut vertex_owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pair_owner: BTreeMap<VertexPair, usize> = BTreeMap::new();
    for (i, part) in inst.packing.parts.iter().enumerate() {
        if let Some(&vertex) = part.vertices.iter().find(|&&v| v >= n) {
            return Ok(Err(PackingViolation::VertexOutOfRange { part: i, vertex }));
        }
        if part.vertices.len() < 2 {
            return Ok(Err(PackingViolation::TooSmall { part: i }));
        }
        match inst.packing.mode {
            PackingMode::Vertex => {
                for &v in &part.vertices {
                    if let Some(&other) = vertex_owner.get(&v) {
                        return Ok(Err(PackingViolation::Overlap { part: i, other, vertex: v }));
                    }
                    vertex_owner.insert(v, i);
                }
            }
            PackingMode::Edge => {
                for pair in inst.host.edge_pairs(&part.vertices) {
                    if let Some(&other) = pair_owner.get(&pair) {
                        return Ok(Err(PackingViolation::EdgeOverlap { part: i, other, pair }));
                    }
                    pair_owner.insert(pair, i);
                }
            }
        }
        let sub = inst.host.induced_host(&part.vertices);
        match local_cost(&sub, inst.problem, t)? {
            None => return Ok(Err(PackingViolation::CostExceedsT { part: i, t })),
            Some(0) => return Ok(Err(PackingViolation::ZeroCost { part: i })),
            Some(actual) if actual != part.cost => {
                return Ok(Err(PackingViolation::StaleAnnotation {
                    part: i,
                    annotated: part.cost,
                    actual,
                }))
            }
            Some(_) => {}
        }
    }
    Ok(Ok(()))
}

/// Deterministic greedy vertex-disjoint packing with parts of cost at most `t`.
///
/// Level 1 packs forbidden subgraphs in canonical order. Each further level
/// `s ≤ t` grows every part, in order, by absorbing a forbidden subgraph that
/// touches it (together with any part that subgraph touches) as long as the
/// grown part still costs at most `s`. Parts only ever grow or merge, so the
/// bound `h` never drops as `t` increases.
pub fn greedy_pack<H: PackingHost>(host: &H, problem: Problem, t: usize) -> Result<Packing> {
    if t == 0 {
        return Err(Error::InvalidInput("cost cap t must be at least 1".into()));
    }
    if t > MAX_COST_CAP {
        return Err(Error::CapExceeded(format!("cost cap {t} exceeds {MAX_COST_CAP}")));
    }
    let n = host.vertex_count();
    let forbidden = host.forbidden(problem.family())?;
    let mut used = vec![false; n];
    let mut parts: Vec<Part> = Vec::new();
    for f in &forbidden {
        if f.iter().all(|&v| !used[v]) {
            for &v in f {
                used[v] = true;
            }
            parts.push(Part::new(f.to_vec(), 1));
        }
    }

    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, f) in forbidden.iter().enumerate() {
        for &v in f {
            touching[v].push(i);
        }
    }

    for level in 2..=t {
        let mut i = 0;
        while i < parts.len() {
            loop {
                let mut grown = None;
                let candidates: BTreeSet<usize> =
                    parts[i].vertices.iter().flat_map(|&v| touching[v].iter().copied()).collect();
                for fi in candidates {
                    let f = forbidden[fi];
                    if f.iter().all(|&v| parts[i].contains(v)) {
                        continue;
                    }
                    let merged: Vec<usize> = (0..parts.len())
                        .filter(|&j| j != i && f.iter().any(|&v| parts[j].contains(v)))
                        .collect();
                    let mut vertices = parts[i].vertices.clone();
                    vertices.extend_from_slice(&f);
                    for &j in &merged {
                        vertices.extend_from_slice(&parts[j].vertices);
                    }
                    let candidate = Part::new(vertices, 0);
                    let sub = host.induced_host(&candidate.vertices);
                    if let Some(cost) = local_cost(&sub, problem, level)? {
                        grown = Some((Part { cost, ..candidate }, merged));
                        break;
                    }
                }
                let Some((part, merged)) = grown else { break };
                parts[i] = part;
                // merged parts sit at other indices; drop them back to front
                for &j in merged.iter().rev() {
                    parts.remove(j);
                    if j < i {
                        i -= 1;
                    }
                }
            }
            i += 1;
        }
    }
    Ok(Packing::vertex_disjoint(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn local_costs_of_small_parts() {
        let tri = Problem::TriangleDeletion;
        assert_eq!(local_cost(&Graph::complete(3), tri, 3).unwrap(), Some(1));
        assert_eq!(local_cost(&Graph::complete(4), tri, 3).unwrap(), Some(2));
        assert_eq!(local_cost(&Graph::complete(4), tri, 1).unwrap(), None);
        assert_eq!(local_cost(&Graph::path(3), Problem::ClusterEditing, 3).unwrap(), Some(1));
        let cyc = Tournament::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(local_cost(&cyc, Problem::Fast, 3).unwrap(), Some(1));
        assert!(local_cost(&Graph::path(3), Problem::ClusterEditing, 13).is_err());
        assert!(local_cost(&Graph::path(3), Problem::Fast, 3).is_err());
    }

    #[test]
    fn greedy_examples() {
        let tri = Problem::TriangleDeletion;
        assert!(greedy_pack(&Graph::path(5), tri, 1).unwrap().is_empty());
        let p = greedy_pack(&two_triangles(), tri, 1).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.h(), 2);
        let p = greedy_pack(&Graph::complete(4), tri, 2).unwrap();
        assert_eq!(p.parts, vec![Part::new(vec![0, 1, 2, 3], 2)]);
    }

    #[test]
    fn overlapping_parts_are_reported() {
        let packing = Packing::vertex_disjoint(vec![Part::new(vec![0, 1, 2], 1), Part::new(vec![2, 3, 4], 1)]);
        let g = Graph::complete(5);
        let inst = Instance::new(g, packing, 3, 1, Problem::TriangleDeletion);
        assert_eq!(
            validate_packing(&inst, 1).unwrap(),
            Err(PackingViolation::Overlap { part: 1, other: 0, vertex: 2 })
        );
    }

    #[test]
    fn cost_violations_are_reported() {
        let g = two_triangles();
        let stale = Packing::vertex_disjoint(vec![Part::new(vec![0, 1, 2], 2)]);
        let inst = Instance::new(g.clone(), stale, 3, 2, Problem::TriangleDeletion);
        assert!(matches!(
            validate_packing(&inst, 2).unwrap(),
            Err(PackingViolation::StaleAnnotation { part: 0, annotated: 2, actual: 1 })
        ));
        let zero = Packing::vertex_disjoint(vec![Part::new(vec![0, 3], 1)]);
        let inst = Instance::new(g, zero, 3, 2, Problem::TriangleDeletion);
        assert_eq!(validate_packing(&inst, 2).unwrap(), Err(PackingViolation::ZeroCost { part: 0 }));
        let k4 = Packing::vertex_disjoint(vec![Part::new(vec![0, 1, 2, 3], 2)]);
        let inst = Instance::new(Graph::complete(4), k4, 3, 1, Problem::TriangleDeletion);
        assert_eq!(
            validate_packing(&inst, 1).unwrap(),
            Err(PackingViolation::CostExceedsT { part: 0, t: 1 })
        );
    }

    #[test]
    fn bounds_arithmetic() {
        let inst = Instance::new(Graph::new(3), Packing::default(), 5, 1, Problem::TriangleDeletion);
        assert_eq!(bounds(&inst), (0, 5));
        let packing = Packing::vertex_disjoint(vec![Part::new(vec![0, 1, 2, 3], 4)]);
        let inst = Instance::new(Graph::new(4), packing, 3, 4, Problem::TriangleDeletion);
        assert_eq!(bounds(&inst), (4, -1));
    }
}

//! Undirected simple graphs over dense vertex ids `0..n`.

use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use std::fmt;

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPair {
    pub u: usize,
    pub v: usize,
}

impl VertexPair {
    /// Normalizes the order of the endpoints. Panics on `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a vertex pair needs two distinct vertices");
        if a < b {
            VertexPair { u: a, v: b }
        } else {
            VertexPair { u: b, v: a }
        }
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Self::new(a, b))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Undirected simple graph backed by one adjacency bitset per vertex.
///
/// Neighbor iteration is always in increasing id order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n], m: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            let pair = VertexPair::try_new(a, b)?;
            if g.has_edge(a, b) {
                return Err(Error::DuplicatePair(pair));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Path `0 – 1 – … – (n−1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// Cycle `0 – 1 – … – (n−1) – 0`, `n ≥ 3`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    /// Inserts `{u,v}`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loops are not allowed");
        if self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        true
    }

    /// Deletes `{u,v}`; returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || !self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
        self.m -= 1;
        true
    }

    /// Flips the adjacency of `{u,v}`.
    pub fn toggle(&mut self, u: usize, v: usize) {
        if !self.remove_edge(u, v) {
            self.add_edge(u, v);
        }
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].ones()
    }

    pub fn neighbor_set(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    /// Common neighbors of `u` and `v`, increasing.
    pub fn common_neighbors(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].intersection(&self.adj[v])
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut h = Graph::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    h.add_edge(i, j);
                }
            }
        }
        h
    }

    /// Whether `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for y in self.adj[x].ones() {
                    if !seen.contains(y) {
                        seen.insert(y);
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertex pairs whose adjacency differs between `self` and `other`.
    pub fn difference(&self, other: &Graph) -> Vec<VertexPair> {
        assert_eq!(self.n(), other.n());
        let mut out = Vec::new();
        for u in 0..self.n() {
            let mut diff = self.adj[u].clone();
            diff.symmetric_difference_with(&other.adj[u]);
            out.extend(diff.ones().filter(|&v| v > u).map(|v| VertexPair { u, v }));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_stays_symmetric() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(2, 1);
        g.toggle(3, 0);
        g.toggle(1, 0);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        let degree_sum: usize = (0..4).map(|u| g.degree(u)).sum();
        assert_eq!(g.m() * 2, degree_sum);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicatePair(_))
        ));
    }

    #[test]
    fn induced_keeps_only_inner_edges() {
        let g = Graph::cycle(5);
        let h = g.induced(&[0, 1, 2, 4]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn components_and_difference() {
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        let h = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.difference(&h), vec![VertexPair::new(2, 3), VertexPair::new(3, 4)]);
    }
}

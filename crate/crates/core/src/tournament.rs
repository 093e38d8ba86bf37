//! Tournaments: exactly one arc between every pair of distinct vertices.

use crate::error::{Error, Result};
use crate::graph::VertexPair;
use fixedbitset::FixedBitSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    out: Vec<FixedBitSet>,
}

impl Tournament {
    /// The transitive tournament in which `u → v` iff `u < v`.
    pub fn transitive(n: usize) -> Self {
        Self::from_order(&(0..n).collect::<Vec<_>>())
    }

    /// Acyclic tournament whose arcs all point forward along `order`.
    pub fn from_order(order: &[usize]) -> Self {
        let n = order.len();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i + 1..] {
                out[a].insert(b);
            }
        }
        Tournament { out }
    }

    /// Builds a tournament from `(u, v)` arcs meaning `u → v`; every pair must
    /// appear exactly once.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        let mut count = 0;
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            let pair = VertexPair::try_new(u, v)?;
            if out[u].contains(v) || out[v].contains(u) {
                return Err(Error::DuplicatePair(pair));
            }
            out[u].insert(v);
            count += 1;
        }
        if count != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidInput(format!(
                "a tournament on {n} vertices needs {} arcs, got {count}",
                n * n.saturating_sub(1) / 2
            )));
        }
        Ok(Tournament { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Whether the arc between `u` and `v` points `u → v`.
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_set(&self, u: usize) -> &FixedBitSet {
        &self.out[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones(..)
    }

    /// Flips the arc between `u` and `v`.
    pub fn reverse(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        if self.out[u].contains(v) {
            self.out[u].set(v, false);
            self.out[v].insert(u);
        } else {
            self.out[v].set(u, false);
            self.out[u].insert(v);
        }
    }

    /// All arcs `(u, v)` meaning `u → v`, ordered by the pair `{u,v}`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |a| {
            (a + 1..n).map(move |b| if self.has_arc(a, b) { (a, b) } else { (b, a) })
        })
    }

    /// Subtournament induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Tournament {
        let q = vertices.len();
        let mut out = vec![FixedBitSet::with_capacity(q); q];
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if i != j && self.has_arc(a, b) {
                    out[i].insert(j);
                }
            }
        }
        Tournament { out }
    }

    /// Topological order if the tournament is acyclic.
    ///
    /// A tournament is acyclic iff its out-degrees are pairwise distinct, in
    /// which case sorting by decreasing out-degree gives the unique order.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.out_degree(v)));
        let ok = order.iter().enumerate().all(|(i, &v)| self.out_degree(v) == self.n() - 1 - i);
        ok.then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Arcs pointing from a later to an earlier vertex of `order`.
    pub fn backward_arcs(&self, order: &[usize]) -> Vec<VertexPair> {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        self.arcs()
            .filter(|&(u, v)| pos[u] > pos[v])
            .map(|(u, v)| VertexPair::new(u, v))
            .collect()
    }

    /// Pairs whose arc direction differs between `self` and `other`.
    pub fn difference(&self, other: &Tournament) -> Vec<VertexPair> {
        assert_eq!(self.n(), other.n());
        self.arcs()
            .filter(|&(u, v)| !other.has_arc(u, v))
            .map(|(u, v)| VertexPair::new(u, v))
            .collect()
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tournament")
            .field("n", &self.n())
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

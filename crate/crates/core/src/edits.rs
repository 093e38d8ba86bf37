//! Edge modification sets and their application.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair};
use crate::tournament::Tournament;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EditOp {
    Delete,
    Insert,
    Reverse,
}

impl EditOp {
    pub fn keyword(self) -> &'static str {
        match self {
            EditOp::Delete => "del",
            EditOp::Insert => "ins",
            EditOp::Reverse => "rev",
        }
    }
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A set of tagged vertex pairs; no pair appears twice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EditSet {
    edits: BTreeMap<VertexPair, EditOp>,
}

impl EditSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pair: VertexPair, op: EditOp) -> Result<()> {
        if self.edits.contains_key(&pair) {
            return Err(Error::DuplicatePair(pair));
        }
        self.edits.insert(pair, op);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    pub fn contains(&self, pair: &VertexPair) -> bool {
        self.edits.contains_key(pair)
    }

    pub fn get(&self, pair: &VertexPair) -> Option<EditOp> {
        self.edits.get(pair).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexPair, EditOp)> + '_ {
        self.edits.iter().map(|(&p, &op)| (p, op))
    }

    pub fn pairs(&self) -> impl Iterator<Item = VertexPair> + '_ {
        self.edits.keys().copied()
    }

    /// Adds every edit of `other`; fails on a shared pair.
    pub fn merge(&mut self, other: &EditSet) -> Result<()> {
        for (p, op) in other.iter() {
            self.insert(p, op)?;
        }
        Ok(())
    }

    /// The modification set turning `before` into `after`.
    pub fn from_graph_diff(before: &Graph, after: &Graph) -> EditSet {
        let mut s = EditSet::new();
        for p in before.difference(after) {
            let op = if before.has_edge(p.u, p.v) { EditOp::Delete } else { EditOp::Insert };
            s.edits.insert(p, op);
        }
        s
    }

    /// The reversal set turning `before` into `after`.
    pub fn from_tournament_diff(before: &Tournament, after: &Tournament) -> EditSet {
        let mut s = EditSet::new();
        for p in before.difference(after) {
            s.edits.insert(p, EditOp::Reverse);
        }
        s
    }

    /// Returns `G △ S`. Deletions must target edges and insertions non-edges.
    pub fn apply_to_graph(&self, g: &Graph) -> Result<Graph> {
        let mut out = g.clone();
        for (p, op) in self.iter() {
            g.check_vertex(p.v)?;
            let ok = match op {
                EditOp::Delete => out.remove_edge(p.u, p.v),
                EditOp::Insert => out.add_edge(p.u, p.v),
                EditOp::Reverse => false,
            };
            if !ok {
                return Err(Error::EditMismatch { pair: p, op: op.keyword() });
            }
        }
        Ok(out)
    }

    /// Reverses every listed arc. Only `rev` edits are accepted.
    pub fn apply_to_tournament(&self, t: &Tournament) -> Result<Tournament> {
        let mut out = t.clone();
        for (p, op) in self.iter() {
            if p.v >= t.n() {
                return Err(Error::VertexOutOfRange { vertex: p.v, n: t.n() });
            }
            if op != EditOp::Reverse {
                return Err(Error::EditMismatch { pair: p, op: op.keyword() });
            }
            out.reverse(p.u, p.v);
        }
        Ok(out)
    }

    /// `G △ S` on the pair set alone, ignoring the tags. Applying it twice
    /// restores `g`.
    pub fn toggle_pairs(&self, g: &Graph) -> Result<Graph> {
        let mut out = g.clone();
        for p in self.pairs() {
            g.check_vertex(p.v)?;
            out.toggle(p.u, p.v);
        }
        Ok(out)
    }

    /// The same pairs with every operation flipped, so that applying it to
    /// `G △ S` restores `G`.
    pub fn inverse(&self) -> EditSet {
        let edits = self
            .iter()
            .map(|(p, op)| {
                let inv = match op {
                    EditOp::Delete => EditOp::Insert,
                    EditOp::Insert => EditOp::Delete,
                    EditOp::Reverse => EditOp::Reverse,
                };
                (p, inv)
            })
            .collect();
        EditSet { edits }
    }
}

impl FromIterator<(VertexPair, EditOp)> for EditSet {
    /// Later duplicates overwrite earlier ones.
    fn from_iter<T: IntoIterator<Item = (VertexPair, EditOp)>>(iter: T) -> Self {
        EditSet { edits: iter.into_iter().collect() }
    }
}

//! Brute-force ground truth: edit optima by subset enumeration, feedback arc
//! set optima by permutation scan, and vertex deletion for induced paths.
//!
//! Two branching searches for instances beyond subset enumeration live here
//! too: induced-`P_q` vertex deletion with a packing bound, and `K_q` edge
//! deletion.

use crate::error::{Error, Result};
use crate::forbidden::Family;
use crate::generators::Hypergraph;
use crate::graph::{Graph, VertexPair};
use crate::tournament::Tournament;
use fixedbitset::FixedBitSet;
use itertools::Itertools;

/// Largest graph accepted by [`brute_edit_optimum`] for P3s, where every
/// vertex pair is a candidate.
pub const EDIT_MAX_N: usize = 10;
/// Largest graph accepted by [`brute_edit_optimum`] for triangles, where only
/// edges are candidates.
pub const TRIANGLE_MAX_N: usize = 32;
/// Largest budget accepted by [`brute_edit_optimum`].
pub const EDIT_MAX_K: usize = 12;
/// Largest tournament accepted by [`brute_fas_optimum`].
pub const FAS_MAX_N: usize = 8;
/// Largest graph accepted by [`brute_pq_vertex_deletion`].
pub const PQ_MAX_N: usize = 24;
/// Largest budget accepted by [`brute_pq_vertex_deletion`].
pub const PQ_MAX_K: usize = 8;
/// Number of candidate subsets an enumeration may test before giving up.
pub const SUBSET_LIMIT: u64 = 1 << 27;

/// Calls `f` on every `size`-subset of `0..n` (as sorted indices) until it
/// returns `true`.
fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if size > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // advance to the next combination in lexicographic order
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + n - size {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let i = i - 1;
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

fn rows(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|u| g.neighbors(u).fold(0u32, |acc, v| acc | 1 << v)).collect()
}

fn triangle_free(rows: &[u32]) -> bool {
    (0..rows.len()).all(|u| {
        let mut r = rows[u] & !((2u32 << u) - 1);
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            if rows[u] & rows[v] != 0 {
                return false;
            }
        }
        true
    })
}

fn p3_free(rows: &[u32]) -> bool {
    (0..rows.len()).all(|u| {
        let mut r = rows[u];
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            if rows[u] | 1 << u != rows[v] | 1 << v {
                return false;
            }
        }
        true
    })
}

type RowTest = fn(&[u32]) -> bool;

/// Minimum number of modified pairs making `g` free of `family`, if at most
/// `kmax`. Triangles are destroyed by deletions only; P3s by deletions and
/// insertions.
pub fn brute_edit_optimum(g: &Graph, family: Family, kmax: usize) -> Result<Option<usize>> {
    let max_n = if family == Family::Triangle { TRIANGLE_MAX_N } else { EDIT_MAX_N };
    if g.n() > max_n {
        return Err(Error::CapExceeded(format!("edit oracle takes n ≤ {max_n}, got {}", g.n())));
    }
    if kmax > EDIT_MAX_K {
        return Err(Error::CapExceeded(format!("edit oracle takes kmax ≤ {EDIT_MAX_K}, got {kmax}")));
    }
    let (pool, free): (Vec<(usize, usize)>, RowTest) = match family {
        Family::Triangle => (g.edges().collect(), triangle_free),
        Family::P3 => ((0..g.n()).tuple_combinations().collect(), p3_free),
        Family::DirectedTriangle => {
            return Err(Error::FamilyMismatch { family: family.name(), host: "graph" });
        }
    };
    let base = rows(g);
    let mut tested = 0u64;
    for size in 0..=kmax.min(pool.len()) {
        tested += binomial(pool.len(), size);
        if tested > SUBSET_LIMIT {
            return Err(Error::CapExceeded(format!("edit oracle would test more than {SUBSET_LIMIT} subsets")));
        }
        let mut work = base.clone();
        let hit = for_each_subset(pool.len(), size, |idx| {
            work.copy_from_slice(&base);
            for &i in idx {
                let (u, v) = pool[i];
                work[u] ^= 1 << v;
                work[v] ^= 1 << u;
            }
            free(&work)
        });
        if hit {
            return Ok(Some(size));
        }
    }
    Ok(None)
}

/// Minimum number of backward arcs over all vertex orders.
pub fn brute_fas_optimum(t: &Tournament) -> Result<usize> {
    let n = t.n();
    if n > FAS_MAX_N {
        return Err(Error::CapExceeded(format!("permutation oracle takes n ≤ {FAS_MAX_N}, got {n}")));
    }
    let best = (0..n)
        .permutations(n)
        .map(|order| {
            let mut back = 0;
            for i in 0..n {
                for j in i + 1..n {
                    back += usize::from(t.has_arc(order[j], order[i]));
                }
            }
            back
        })
        .min()
        .unwrap_or(0);
    Ok(best)
}

/// Extends `path` (an induced path in `g` restricted to `alive`) to induced
/// paths on `q` vertices, calling `f` on each until it returns `true`.
fn extend_paths(
    g: &Graph,
    alive: &FixedBitSet,
    q: usize,
    path: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if path.len() == q {
        // report each path once, from its smaller end
        return path[0] < path[q - 1] && f(path);
    }
    let last = *path.last().expect("paths start with one vertex");
    let inner = &path[..path.len() - 1];
    let candidates: Vec<usize> = g
        .neighbors(last)
        .filter(|&y| alive.contains(y) && !path.contains(&y) && inner.iter().all(|&p| !g.has_edge(p, y)))
        .collect();
    for y in candidates {
        path.push(y);
        if extend_paths(g, alive, q, path, f) {
            return true;
        }
        path.pop();
    }
    false
}

/// Calls `f` on every induced `P_q` of `g[alive]` (as a vertex sequence) until
/// it returns `true`; returns whether it stopped early.
pub fn for_each_induced_path(
    g: &Graph,
    alive: &FixedBitSet,
    q: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    if q == 1 {
        return alive.ones().any(|v| f(&[v]));
    }
    for s in alive.ones() {
        let mut path = vec![s];
        if extend_paths(g, alive, q, &mut path, &mut f) {
            return true;
        }
    }
    false
}

/// Some induced `P_q` of `g[alive]`.
pub fn find_induced_path(g: &Graph, alive: &FixedBitSet, q: usize) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_induced_path(g, alive, q, |p| {
        found = Some(p.to_vec());
        true
    });
    found
}

fn all_alive(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// Minimum number of vertex deletions leaving no induced `P_q`, if at most
/// `kmax`, by enumerating vertex subsets.
pub fn brute_pq_vertex_deletion(g: &Graph, q: usize, kmax: usize) -> Result<Option<usize>> {
    if q < 3 {
        return Err(Error::InvalidInput(format!("induced paths need q ≥ 3, got {q}")));
    }
    if g.n() > PQ_MAX_N || kmax > PQ_MAX_K {
        return Err(Error::CapExceeded(format!(
            "vertex deletion oracle takes n ≤ {PQ_MAX_N} and kmax ≤ {PQ_MAX_K}, got n = {}, kmax = {kmax}",
            g.n()
        )));
    }
    let n = g.n();
    let mut tested = 0u64;
    for size in 0..=kmax.min(n) {
        tested += binomial(n, size);
        if tested > SUBSET_LIMIT {
            return Err(Error::CapExceeded(format!("vertex deletion oracle would test more than {SUBSET_LIMIT} subsets")));
        }
        let hit = for_each_subset(n, size, |idx| {
            let mut alive = all_alive(n);
            for &v in idx {
                alive.set(v, false);
            }
            find_induced_path(g, &alive, q).is_none()
        });
        if hit {
            return Ok(Some(size));
        }
    }
    Ok(None)
}

struct PathSearch<'a> {
    g: &'a Graph,
    q: usize,
    alive: FixedBitSet,
    /// Vertices a branch has decided to keep.
    kept: FixedBitSet,
    hint: &'a [Vec<usize>],
}

impl PathSearch<'_> {
    /// Intact hint parts plus a greedy set of induced paths disjoint from them
    /// and from each other.
    fn lower_bound(&self) -> usize {
        let mut blocked = FixedBitSet::with_capacity(self.g.n());
        let mut count = 0;
        for part in self.hint {
            if part.iter().all(|&v| self.alive.contains(v)) {
                count += 1;
                for &v in part {
                    blocked.insert(v);
                }
            }
        }
        let mut free = self.alive.clone();
        free.difference_with(&blocked);
        while let Some(p) = find_induced_path(self.g, &free, self.q) {
            count += 1;
            for v in p {
                free.set(v, false);
            }
        }
        count
    }

    fn pick(&self) -> std::result::Result<Option<Vec<usize>>, ()> {
        let mut best: Option<(Vec<usize>, usize)> = None;
        let mut stuck = false;
        for_each_induced_path(self.g, &self.alive, self.q, |p| {
            let open = p.iter().filter(|&&v| !self.kept.contains(v)).count();
            if open == 0 {
                stuck = true;
                return true;
            }
            if best.as_ref().is_none_or(|(_, o)| open < *o) {
                best = Some((p.to_vec(), open));
            }
            open == 1
        });
        if stuck {
            return Err(());
        }
        Ok(best.map(|b| b.0))
    }

    fn run(&mut self, budget: usize, deleted: &mut Vec<usize>) -> bool {
        let path = match self.pick() {
            Err(()) => return false,
            Ok(None) => return true,
            Ok(Some(p)) => p,
        };
        if budget == 0 || self.lower_bound() > budget {
            return false;
        }
        let options: Vec<usize> = path.into_iter().filter(|&v| !self.kept.contains(v)).collect();
        let mut settled = Vec::new();
        let mut found = false;
        for &v in &options {
            self.alive.set(v, false);
            deleted.push(v);
            if self.run(budget - 1, deleted) {
                found = true;
                break;
            }
            deleted.pop();
            self.alive.insert(v);
            self.kept.insert(v);
            settled.push(v);
        }
        for v in settled {
            self.kept.set(v, false);
        }
        found
    }
}

/// Vertex deletions of size at most `k` leaving no induced `P_q`, found by
/// branching on the vertices of an induced path. `hint` lists vertex-disjoint
/// induced `P_q`s used to strengthen the lower bound; it may be empty.
pub fn pq_vertex_deletion_search(g: &Graph, q: usize, k: usize, hint: &[Vec<usize>]) -> Result<Option<Vec<usize>>> {
    if q < 3 {
        return Err(Error::InvalidInput(format!("induced paths need q ≥ 3, got {q}")));
    }
    let n = g.n();
    for part in hint {
        if part.iter().any(|&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: *part.iter().max().unwrap(), n });
        }
    }
    let mut search =
        PathSearch { g, q, alive: all_alive(n), kept: FixedBitSet::with_capacity(n), hint };
    let mut deleted = Vec::new();
    Ok(search.run(k, &mut deleted).then(|| {
        deleted.sort_unstable();
        deleted
    }))
}

/// Some clique on `q` vertices of `g`.
pub fn find_clique(g: &Graph, q: usize) -> Option<Vec<usize>> {
    fn grow(g: &Graph, q: usize, clique: &mut Vec<usize>, cand: FixedBitSet) -> bool {
        if clique.len() == q {
            return true;
        }
        if clique.len() + cand.count_ones(..) < q {
            return false;
        }
        for v in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(g.neighbor_set(v));
            // only larger ids, so every clique is built in one order
            next.remove_range(..v + 1);
            clique.push(v);
            if grow(g, q, clique, next) {
                return true;
            }
            clique.pop();
        }
        false
    }
    let mut clique = Vec::new();
    grow(g, q, &mut clique, all_alive(g.n())).then_some(clique)
}

/// Edge deletions of size at most `k` leaving no `K_q`, found by branching on
/// the edges of a clique; an edge a branch keeps stays kept below it.
pub fn kq_deletion_within(g: &Graph, q: usize, k: usize) -> Result<Option<Vec<VertexPair>>> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("cliques need q ≥ 2, got {q}")));
    }
    fn run(g: &mut Graph, q: usize, budget: usize, kept: &mut Vec<VertexPair>, out: &mut Vec<VertexPair>) -> bool {
        let Some(clique) = find_clique(g, q) else { return true };
        if budget == 0 {
            return false;
        }
        let edges: Vec<VertexPair> = clique
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| VertexPair::new(a, b))
            .filter(|p| !kept.contains(p))
            .collect();
        let mark = kept.len();
        for e in edges {
            g.remove_edge(e.u, e.v);
            out.push(e);
            if run(g, q, budget - 1, kept, out) {
                return true;
            }
            out.pop();
            g.add_edge(e.u, e.v);
            kept.push(e);
        }
        kept.truncate(mark);
        false
    }
    let mut work = g.clone();
    let mut out = Vec::new();
    Ok(run(&mut work, q, k, &mut Vec::new(), &mut out).then_some(out))
}

/// Minimum hitting set size, if at most `kmax`, by subset enumeration.
pub fn brute_hitting_set(h: &Hypergraph, kmax: usize) -> Result<Option<usize>> {
    if h.n > PQ_MAX_N || kmax > PQ_MAX_K {
        return Err(Error::CapExceeded(format!(
            "hitting set oracle takes n ≤ {PQ_MAX_N} and kmax ≤ {PQ_MAX_K}, got n = {}, kmax = {kmax}",
            h.n
        )));
    }
    let masks: Vec<u32> = h.edges.iter().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    for size in 0..=kmax.min(h.n) {
        let hit = for_each_subset(h.n, size, |idx| {
            let chosen = idx.iter().fold(0u32, |m, &v| m | 1 << v);
            masks.iter().all(|&e| e & chosen != 0)
        });
        if hit {
            return Ok(Some(size));
        }
    }
    Ok(None)
}

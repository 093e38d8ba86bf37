//! Enumeration of forbidden substructures: triangles, induced P3s and
//! directed triangles. All enumerations are complete, duplicate-free and
//! ordered lexicographically by the sorted vertex triple.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tournament::Tournament;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Triangle,
    P3,
    DirectedTriangle,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Triangle => "triangle",
            Family::P3 => "p3",
            Family::DirectedTriangle => "directed-triangle",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Triangles `[a, b, c]` with `a < b < c`.
pub fn enumerate_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        out.extend(g.common_neighbors(a, b).filter(|&c| c > b).map(|c| [a, b, c]));
    }
    out
}

/// The lexicographically first triangle, if any.
pub fn first_triangle(g: &Graph) -> Option<[usize; 3]> {
    g.edges().find_map(|(a, b)| g.common_neighbors(a, b).find(|&c| c > b).map(|c| [a, b, c]))
}

/// An induced path `u – v – w` with center `v`; the ends satisfy `u < w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct P3 {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl P3 {
    pub fn vertices(&self) -> [usize; 3] {
        [self.u, self.v, self.w]
    }

    pub fn sorted(&self) -> [usize; 3] {
        let mut s = self.vertices();
        s.sort_unstable();
        s
    }

    /// Reads the P3 induced on three vertices, if they induce one.
    pub fn induced_by(g: &Graph, vs: [usize; 3]) -> Option<P3> {
        let [a, b, c] = vs;
        let (ab, bc, ac) = (g.has_edge(a, b), g.has_edge(b, c), g.has_edge(a, c));
        let (u, v, w) = match (ab, bc, ac) {
            (true, true, false) => (a, b, c),
            (true, false, true) => (b, a, c),
            (false, true, true) => (a, c, b),
            _ => return None,
        };
        Some(P3 { u: u.min(w), v, w: u.max(w) })
    }
}

/// All induced P3s, each once.
pub fn enumerate_p3(g: &Graph) -> Vec<P3> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if !g.has_edge(u, w) {
                    out.push(P3 { u, v, w });
                }
            }
        }
    }
    out.sort_by_key(P3::sorted);
    out
}

/// Some induced P3 of `g`, found by comparing closed neighborhoods along edges.
pub fn find_p3(g: &Graph) -> Option<P3> {
    for (a, b) in g.edges() {
        // a graph is a cluster graph iff adjacent vertices have equal closed neighborhoods
        let na = g.neighbor_set(a);
        let nb = g.neighbor_set(b);
        if let Some(x) = na.difference(nb).find(|&x| x != b) {
            return Some(P3 { u: b.min(x), v: a, w: b.max(x) });
        }
        if let Some(x) = nb.difference(na).find(|&x| x != a) {
            return Some(P3 { u: a.min(x), v: b, w: a.max(x) });
        }
    }
    None
}

/// Directed triangles as sorted vertex triples.
pub fn enumerate_directed_triangles(t: &Tournament) -> Vec<[usize; 3]> {
    let n = t.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if is_directed_triangle(t, a, b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub(crate) fn is_directed_triangle(t: &Tournament, a: usize, b: usize, c: usize) -> bool {
    let (ab, bc, ca) = (t.has_arc(a, b), t.has_arc(b, c), t.has_arc(c, a));
    ab == bc && bc == ca
}

/// Some directed triangle, found through the out-neighborhoods.
pub fn find_directed_triangle(t: &Tournament) -> Option<[usize; 3]> {
    for (u, v) in t.arcs() {
        // u → v → w → u
        let mut closing = t.out_set(v).clone();
        closing.intersect_with(&in_set(t, u));
        if let Some(w) = closing.ones().next() {
            let mut s = [u, v, w];
            s.sort_unstable();
            return Some(s);
        }
    }
    None
}

fn in_set(t: &Tournament, u: usize) -> fixedbitset::FixedBitSet {
    let mut s = t.out_set(u).clone();
    s.toggle_range(..);
    s.set(u, false);
    s
}

/// Hosts on which forbidden-subgraph families can be checked.
pub trait ForbiddenHost {
    const HOST_NAME: &'static str;

    /// Forbidden triples of `family`, canonically ordered.
    fn forbidden(&self, family: Family) -> Result<Vec<[usize; 3]>>;

    fn find_forbidden(&self, family: Family) -> Result<Option<[usize; 3]>>;
}

impl ForbiddenHost for Graph {
    const HOST_NAME: &'static str = "graph";

    fn forbidden(&self, family: Family) -> Result<Vec<[usize; 3]>> {
        match family {
            Family::Triangle => Ok(enumerate_triangles(self)),
            Family::P3 => Ok(enumerate_p3(self).iter().map(P3::sorted).collect()),
            Family::DirectedTriangle => Err(mismatch(family, Self::HOST_NAME)),
        }
    }

    fn find_forbidden(&self, family: Family) -> Result<Option<[usize; 3]>> {
        match family {
            Family::Triangle => Ok(first_triangle(self)),
            Family::P3 => Ok(find_p3(self).map(|p| p.sorted())),
            Family::DirectedTriangle => Err(mismatch(family, Self::HOST_NAME)),
        }
    }
}

impl ForbiddenHost for Tournament {
    const HOST_NAME: &'static str = "tournament";

    fn forbidden(&self, family: Family) -> Result<Vec<[usize; 3]>> {
        match family {
            Family::DirectedTriangle => Ok(enumerate_directed_triangles(self)),
            _ => Err(mismatch(family, Self::HOST_NAME)),
        }
    }

    fn find_forbidden(&self, family: Family) -> Result<Option<[usize; 3]>> {
        match family {
            Family::DirectedTriangle => Ok(find_directed_triangle(self)),
            _ => Err(mismatch(family, Self::HOST_NAME)),
        }
    }
}

fn mismatch(family: Family, host: &'static str) -> Error {
    Error::FamilyMismatch { family: family.name(), host }
}

/// Whether `host` contains no member of `family`.
pub fn check_f_free<H: ForbiddenHost>(host: &H, family: Family) -> Result<bool> {
    Ok(host.find_forbidden(family)?.is_none())
}

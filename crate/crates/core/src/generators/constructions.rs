use super::CnfFormula;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::packing::{Packing, PackingMode, Part};

/// A generated hardness instance: yes-instance at budget `k` iff the
/// formula is satisfiable. `k` always equals the packing's lower bound.
#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: Graph,
    pub packing: Packing,
    pub k: usize,
}

fn var_of(lit: i32) -> usize {
    lit.unsigned_abs() as usize - 1
}

/// Triangle Deletion instance with an edge-disjoint triangle packing.
///
/// Variable `i` is the triangle `x_i^1 x_i^2 x_i^3` on vertices `3i..3i+3`
/// with `x^T = {x^1, x^2}` and `x^F = {x^2, x^3}`. Clause `j` is a triangle
/// `c_j^1 c_j^2 c_j^3`; its literals take the edges `c^1c^2`, `c^2c^3`,
/// `c^3c^1` in order. A positive literal on clause edge `uv` adds the
/// triangles `{u, v, x^1}` (packed) and `{v, x^1, x^2}`; a negative one adds
/// `{u, v, x^3}` (packed) and `{v, x^2, x^3}`.
pub fn cons1_triangle(phi: &CnfFormula) -> Result<Construction> {
    phi.require_width(3)?;
    let nv = phi.num_vars;
    let n = 3 * nv + 3 * phi.clauses.len();
    let mut g = Graph::new(n);
    let mut parts = Vec::new();
    for i in 0..nv {
        let x = 3 * i;
        g.add_edge(x, x + 1);
        g.add_edge(x + 1, x + 2);
        g.add_edge(x, x + 2);
        parts.push(Part::new(vec![x, x + 1, x + 2], 1));
    }
    for (j, clause) in phi.clauses.iter().enumerate() {
        let c = 3 * nv + 3 * j;
        g.add_edge(c, c + 1);
        g.add_edge(c + 1, c + 2);
        g.add_edge(c, c + 2);
        for (t, &lit) in clause.iter().enumerate() {
            let (u, v) = (c + t, c + (t + 1) % 3);
            let x = 3 * var_of(lit);
            let apex = if lit > 0 { x } else { x + 2 };
            g.add_edge(u, apex);
            g.add_edge(v, apex);
            g.add_edge(v, x + 1);
            parts.push(Part::new(vec![u, v, apex], 1));
        }
    }
    let k = parts.len();
    Ok(Construction { graph: g, packing: Packing::new(PackingMode::Edge, parts), k })
}

/// K_q-free Edge Deletion instance with a vertex-disjoint packing of the
/// variable cliques.
///
/// Variable `i` is a clique on `qi..qi+q` with `x^T` the edge between its
/// first two vertices and `x^F` the edge between the next two. Each clause
/// clique consists of the three edges its literals pick plus `q − 6` fresh
/// vertices.
pub fn cons2_kq(phi: &CnfFormula, q: usize) -> Result<Construction> {
    if q < 6 {
        return Err(Error::QTooSmall { q, min: 6 });
    }
    phi.require_width(3)?;
    let nv = phi.num_vars;
    let fresh = q - 6;
    let mut g = Graph::new(q * nv + fresh * phi.clauses.len());
    let mut parts = Vec::new();
    for i in 0..nv {
        let xs: Vec<usize> = (q * i..q * (i + 1)).collect();
        make_clique(&mut g, &xs);
        parts.push(Part::new(xs, 1));
    }
    for (j, clause) in phi.clauses.iter().enumerate() {
        let mut ys: Vec<usize> = (0..fresh).map(|f| q * nv + fresh * j + f).collect();
        for &lit in clause {
            let base = q * var_of(lit) + if lit > 0 { 0 } else { 2 };
            ys.extend([base, base + 1]);
        }
        make_clique(&mut g, &ys);
    }
    Ok(Construction { graph: g, packing: Packing::vertex_disjoint(parts), k: nv })
}

fn make_clique(g: &mut Graph, vs: &[usize]) {
    for (a, &u) in vs.iter().enumerate() {
        for &v in &vs[a + 1..] {
            g.add_edge(u, v);
        }
    }
}

/// P_q-free Vertex Deletion instance with a vertex-disjoint packing of
/// induced `P_q`s.
///
/// Each variable with `α` occurrences gets a cycle `T_1 F_1 T_2 F_2 … F_{2α}`
/// and its attachment paths. The `p`-th clause mentioning the variable uses
/// segment `2p − 1`. The literal vertices of a clause are joined into a path
/// in increasing variable order.
pub fn cons3_pq(phi: &CnfFormula, q: usize) -> Result<Construction> {
    if q < 3 {
        return Err(Error::QTooSmall { q, min: 3 });
    }
    phi.require_width(q)?;
    let nv = phi.num_vars;
    let mut occurrences: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nv];
    for (t, clause) in phi.clauses.iter().enumerate() {
        for &lit in clause {
            occurrences[var_of(lit)].push((t, lit > 0));
        }
    }

    let mut edges = Vec::new();
    let mut next = 0usize;
    let mut alloc = |count: usize| {
        let start = next;
        next += count;
        start
    };
    let mut parts = Vec::new();
    let mut literal_vertices: Vec<Vec<(usize, usize)>> = vec![Vec::new(); phi.clauses.len()];
    let attach = |edges: &mut Vec<(usize, usize)>, start: usize, to: usize| {
        let path: Vec<usize> = (start..start + q - 2).collect();
        edges.push((path[0], to));
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        path
    };

    for (i, occ) in occurrences.iter().enumerate() {
        let segments = 2 * occ.len();
        if segments == 0 {
            continue;
        }
        let base = alloc(2 * segments);
        let tv = |j: usize| base + 2 * j;
        let fv = |j: usize| base + 2 * j + 1;
        for j in 0..segments {
            edges.push((tv(j), fv(j)));
            edges.push((fv(j), tv((j + 1) % segments)));
        }
        // Segment `j + 1` in one-based numbering; zero-based even `j` is odd.
        for j in 0..segments {
            let mut packed = if j % 2 == 1 {
                let on_t = attach(&mut edges, alloc(q - 2), tv(j));
                attach(&mut edges, alloc(q - 2), fv(j));
                on_t
            } else {
                let (t, positive) = occ[j / 2];
                let (anchor, literal) = if positive { (fv(j), tv(j)) } else { (tv(j), fv(j)) };
                literal_vertices[t].push((i, literal));
                attach(&mut edges, alloc(q - 2), anchor)
            };
            packed.extend([tv(j), fv(j)]);
            parts.push(Part::new(packed, 1));
        }
    }

    let mut g = Graph::new(next);
    for (u, v) in edges {
        g.add_edge(u, v);
    }
    for (t, lits) in literal_vertices.iter_mut().enumerate() {
        lits.sort_unstable();
        let pi: Vec<usize> = lits.iter().map(|&(_, v)| v).collect();
        let before = g.induced(&pi).m();
        if before != 0 {
            return Err(Error::MalformedFormula(format!(
                "literal vertices of clause {} are already adjacent; no induced P_q on them",
                t + 1
            )));
        }
        for w in pi.windows(2) {
            g.add_edge(w[0], w[1]);
        }
    }
    let k = parts.len();
    Ok(Construction { graph: g, packing: Packing::vertex_disjoint(parts), k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::enumerate_triangles;
    use crate::oracle::{brute_pq_vertex_deletion, find_clique};
    use crate::triangle::optimum_within;

    fn single_clause() -> CnfFormula {
        CnfFormula::new(3, vec![vec![1, -2, -3]]).unwrap()
    }

    #[test]
    fn cons1_counts_and_parts() {
        let c = cons1_triangle(&single_clause()).unwrap();
        assert_eq!((c.graph.n(), c.graph.m(), c.k), (12, 21, 6));
        for part in &c.packing.parts {
            assert!(c.graph.is_clique(&part.vertices));
        }
        assert_eq!(optimum_within(&c.graph, 8), Some(6));
        let empty = cons1_triangle(&CnfFormula::new(4, vec![]).unwrap()).unwrap();
        assert_eq!((empty.k, enumerate_triangles(&empty.graph).len()), (4, 4));
        assert!(cons1_triangle(&CnfFormula::new(3, vec![vec![1, -1, 2]]).unwrap()).is_err());
    }

    #[test]
    fn cons2_counts() {
        let c = cons2_kq(&single_clause(), 6).unwrap();
        assert_eq!((c.graph.n(), c.k), (18, 3));
        let c7 = cons2_kq(&single_clause(), 7).unwrap();
        assert_eq!(c7.graph.n(), 22);
        assert!(matches!(cons2_kq(&single_clause(), 5), Err(Error::QTooSmall { .. })));
        let empty = cons2_kq(&CnfFormula::new(2, vec![]).unwrap(), 6).unwrap();
        assert_eq!(empty.graph.components().len(), 2);
        assert!(find_clique(&empty.graph, 6).is_some());
    }

    #[test]
    fn cons3_single_clause() {
        let c = cons3_pq(&single_clause(), 3).unwrap();
        assert_eq!((c.graph.n(), c.k), (21, 6));
        for part in &c.packing.parts {
            let sub = c.graph.induced(&part.vertices);
            assert_eq!(sub.m(), 2);
            assert_eq!(sub.components().len(), 1);
        }
        assert_eq!(brute_pq_vertex_deletion(&c.graph, 3, 6).unwrap(), Some(6));
    }
}

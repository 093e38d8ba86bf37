//! Instance generators: CNF formulas, the SAT-based hardness constructions,
//! the induced-path hitting-set transform and seeded random instances.

mod constructions;

pub use constructions::{cons1_triangle, cons2_kq, cons3_pq, Construction};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tournament::Tournament;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// Formula in conjunctive normal form; literal `+i` is `x_i`, `-i` is `¬x_i`
/// for `1 ≤ i ≤ num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::MalformedFormula(format!("literal {lit} outside 1..={num_vars}")));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Parses DIMACS text: a `p cnf V C` header, then clauses as signed
    /// integers each closed by `0`. Lines starting with `c` are comments.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 4 || fields[1] != "cnf" || header.is_some() {
                    return Err(Error::parse(i + 1, "expected a single header `p cnf VARS CLAUSES`"));
                }
                let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(i + 1, format!("bad count {s:?}")));
                header = Some((num(fields[2])?, num(fields[3])?));
                continue;
            }
            if header.is_none() {
                return Err(Error::parse(i + 1, "clause before the `p cnf` header"));
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| Error::parse(i + 1, format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::parse(0, "missing `p cnf` header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(Error::MalformedFormula(format!("header announces {count} clauses, found {}", clauses.len())));
        }
        CnfFormula::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    /// Checks that every clause has exactly `width` pairwise distinct variables.
    pub fn require_width(&self, width: usize) -> Result<()> {
        for (j, clause) in self.clauses.iter().enumerate() {
            let mut vars: Vec<u32> = clause.iter().map(|l| l.unsigned_abs()).collect();
            vars.sort_unstable();
            vars.dedup();
            if clause.len() != width || vars.len() != width {
                return Err(Error::MalformedFormula(format!(
                    "clause {} must hold exactly {width} distinct variables",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Whether `assignment[i]` (for variable `i + 1`) satisfies every clause.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// A satisfying assignment found by trying all of them.
    pub fn brute_force_model(&self) -> Result<Option<Vec<bool>>> {
        if self.num_vars > 24 {
            return Err(Error::CapExceeded(format!("brute-force SAT takes at most 24 variables, got {}", self.num_vars)));
        }
        for bits in 0u32..1 << self.num_vars {
            let assignment: Vec<bool> = (0..self.num_vars).map(|i| bits >> i & 1 == 1).collect();
            if self.satisfied_by(&assignment) {
                return Ok(Some(assignment));
            }
        }
        Ok(None)
    }

    pub fn is_satisfiable(&self) -> Result<bool> {
        Ok(self.brute_force_model()?.is_some())
    }
}

/// Random formula with `width` distinct variables per clause.
pub fn random_cnf(num_vars: usize, num_clauses: usize, width: usize, seed: u64) -> Result<CnfFormula> {
    if width > num_vars {
        return Err(Error::MalformedFormula(format!("cannot pick {width} distinct variables out of {num_vars}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..num_clauses)
        .map(|_| {
            let mut vars: Vec<usize> = sample(&mut rng, num_vars, width).into_vec();
            vars.sort_unstable();
            vars.into_iter().map(|v| if rng.random_bool(0.5) { v as i32 + 1 } else { -(v as i32 + 1) }).collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses)
}

/// Uniform hypergraph: every hyperedge has `d` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub d: usize,
    /// Sorted vertex sets in lexicographic order.
    pub edges: Vec<Vec<usize>>,
}

/// Hypergraph whose hyperedges are the vertex sets of induced `P_q`s of `g`.
pub fn hitting_set_transform(g: &Graph, q: usize) -> Result<Hypergraph> {
    if q < 3 {
        return Err(Error::InvalidInput(format!("induced paths need q ≥ 3, got {q}")));
    }
    let mut alive = fixedbitset::FixedBitSet::with_capacity(g.n());
    alive.insert_range(..);
    let mut edges = Vec::new();
    crate::oracle::for_each_induced_path(g, &alive, q, |p| {
        let mut e = p.to_vec();
        e.sort_unstable();
        edges.push(e);
        false
    });
    edges.sort();
    edges.dedup();
    Ok(Hypergraph { n: g.n(), d: q, edges })
}

/// Largest vertex count accepted by the random generators.
pub const RANDOM_MAX_N: usize = 4096;

/// What [`gen_random`] should produce.
#[derive(Clone, Debug, PartialEq)]
pub enum RandomKind {
    /// `G(n, p)`.
    Graph { n: usize, p: f64 },
    /// Every arc oriented by a fair coin.
    Tournament { n: usize },
    /// Disjoint cliques of the given sizes with `flips` distinct pairs toggled.
    PlantedClusters { sizes: Vec<usize>, flips: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Graph(Graph),
    Tournament(Tournament),
}

fn check_n(n: usize) -> Result<()> {
    if n > RANDOM_MAX_N {
        return Err(Error::CapExceeded(format!("random instances take n ≤ {RANDOM_MAX_N}, got {n}")));
    }
    Ok(())
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_n(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            arcs.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    Tournament::from_arcs(n, arcs)
}

pub fn planted_clusters(sizes: &[usize], flips: usize, seed: u64) -> Result<Graph> {
    let n: usize = sizes.iter().sum();
    check_n(n)?;
    let pairs = n * n.saturating_sub(1) / 2;
    if flips > pairs {
        return Err(Error::InvalidInput(format!("cannot flip {flips} of {pairs} vertex pairs")));
    }
    let mut g = Graph::new(n);
    let mut start = 0;
    for &s in sizes {
        for u in start..start + s {
            for v in u + 1..start + s {
                g.add_edge(u, v);
            }
        }
        start += s;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for idx in sample(&mut rng, pairs, flips).into_iter() {
        let (u, v) = unrank_pair(n, idx);
        g.toggle(u, v);
    }
    Ok(g)
}

/// The `idx`-th pair `(u, v)`, `u < v`, in lexicographic order.
fn unrank_pair(n: usize, mut idx: usize) -> (usize, usize) {
    for u in 0..n {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

/// Deterministic random instance for `kind` and `seed`.
pub fn gen_random(kind: &RandomKind, seed: u64) -> Result<Generated> {
    Ok(match kind {
        RandomKind::Graph { n, p } => Generated::Graph(random_graph(*n, *p, seed)?),
        RandomKind::Tournament { n } => Generated::Tournament(random_tournament(*n, seed)?),
        RandomKind::PlantedClusters { sizes, flips } => Generated::Graph(planted_clusters(sizes, *flips, seed)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::{check_f_free, Family};

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.clauses, vec![vec![1, -2, 3], vec![-1, 2, -3]]);
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("1 2 0\n").is_err());
    }

    #[test]
    fn brute_force_sat() {
        let all_eight: Vec<Vec<i32>> = (0..8)
            .map(|m| (1..=3).map(|v| if m >> (v - 1) & 1 == 1 { v } else { -v }).collect())
            .collect();
        let unsat = CnfFormula::new(3, all_eight.clone()).unwrap();
        assert!(!unsat.is_satisfiable().unwrap());
        let sat = CnfFormula::new(3, all_eight[..7].to_vec()).unwrap();
        assert!(sat.is_satisfiable().unwrap());
    }

    #[test]
    fn transform_examples() {
        let h = hitting_set_transform(&Graph::path(4), 3).unwrap();
        assert_eq!(h.edges, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(hitting_set_transform(&Graph::complete(4), 3).unwrap().edges.is_empty());
    }

    #[test]
    fn random_generators_are_deterministic() {
        let kinds = [
            RandomKind::Graph { n: 9, p: 0.4 },
            RandomKind::Tournament { n: 7 },
            RandomKind::PlantedClusters { sizes: vec![3, 4], flips: 2 },
        ];
        for kind in &kinds {
            assert_eq!(gen_random(kind, 11).unwrap(), gen_random(kind, 11).unwrap());
        }
        let clean = planted_clusters(&[3, 3], 0, 5).unwrap();
        assert!(check_f_free(&clean, Family::P3).unwrap());
        let flipped = planted_clusters(&[3, 3], 1, 5).unwrap();
        assert_eq!(clean.difference(&flipped).len(), 1);
        for idx in 0..10 {
            let (u, v) = unrank_pair(5, idx);
            assert!(u < v && v < 5);
        }
    }
}

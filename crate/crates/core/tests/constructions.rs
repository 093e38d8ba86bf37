use packedit::generators::{cons1_triangle, cons2_kq, cons3_pq, random_cnf, CnfFormula};
use packedit::oracle::{find_clique, kq_deletion_within, pq_vertex_deletion_search};
use packedit::triangle::exact_solve;
use packedit::Graph;

/// All `q`-cliques of `g` as sorted vertex lists.
fn cliques(g: &Graph, q: usize) -> Vec<Vec<usize>> {
    fn grow(g: &Graph, q: usize, cur: &mut Vec<usize>, cands: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            if cur.len() + 1 + next.len() < q {
                continue;
            }
            cur.push(v);
            grow(g, q, cur, next, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(g, q, &mut Vec::new(), (0..g.n()).collect(), &mut out);
    out
}

/// Vertex sets of the variable and clause cliques of `cons2_kq(phi, 6)`.
fn planned_cliques(phi: &CnfFormula) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..phi.num_vars).map(|i| (6 * i..6 * i + 6).collect()).collect();
    for clause in &phi.clauses {
        let mut ys: Vec<usize> = clause
            .iter()
            .flat_map(|&l| {
                let base = 6 * (l.unsigned_abs() as usize - 1) + if l > 0 { 0 } else { 2 };
                [base, base + 1]
            })
            .collect();
        ys.sort_unstable();
        out.push(ys);
    }
    out
}

#[test]
fn cons2_cliques_are_planned_when_clauses_share_no_variable() {
    let formulas = [
        CnfFormula::new(6, vec![vec![1, -2, 3], vec![-4, 5, -6]]).unwrap(),
        CnfFormula::new(3, vec![vec![-1, -2, -3]]).unwrap(),
        CnfFormula::new(4, vec![]).unwrap(),
    ];
    for phi in &formulas {
        let g = cons2_kq(phi, 6).unwrap().graph;
        let planned = planned_cliques(phi);
        for k in cliques(&g, 6) {
            assert!(planned.contains(&k), "{phi:?}: unplanned clique {k:?}");
        }
    }
}

/// Two clauses that agree on two literals and disagree on the sign of the
/// third put both edges of the third variable next to the shared vertices,
/// so their union holds a K8 that is neither a variable nor a clause clique.
#[test]
fn cons2_overlapping_clauses_create_unplanned_cliques() {
    let phi = CnfFormula::new(3, vec![vec![1, 2, 3], vec![1, 2, -3]]).unwrap();
    let g = cons2_kq(&phi, 6).unwrap().graph;
    let k8: Vec<usize> = vec![0, 1, 6, 7, 12, 13, 14, 15];
    assert!(g.is_clique(&k8));
    let planned = planned_cliques(&phi);
    assert!(cliques(&g, 6).iter().any(|k| !planned.contains(k)));
}

/// A satisfiable formula on which the construction yields a no-instance:
/// the unplanned cliques cannot all be hit with one deletion per variable.
#[test]
fn cons2_equivalence_breaks_on_overlapping_clauses() {
    let phi = CnfFormula::new(
        3,
        vec![vec![1, -2, -3], vec![-1, -2, -3], vec![-1, 2, 3], vec![-1, 2, -3]],
    )
    .unwrap();
    assert!(phi.is_satisfiable().unwrap());
    let c = cons2_kq(&phi, 6).unwrap();
    assert_eq!(kq_deletion_within(&c.graph, 6, c.k).unwrap(), None);
    // x1 = x2 = x3 = false deletes every false edge, yet a K6 survives.
    let mut g = c.graph.clone();
    for (u, v) in [(2, 3), (8, 9), (14, 15)] {
        g.remove_edge(u, v);
    }
    assert_eq!(find_clique(&g, 6), Some(vec![2, 6, 7, 12, 13, 14]));
}

/// Larger random formulas for the two constructions without that gap.
#[test]
fn cons1_and_cons3_agree_with_sat_on_longer_formulas() {
    for seed in 0..40u64 {
        let phi = random_cnf(3 + (seed % 2) as usize, 4 + (seed % 5) as usize, 3, 9000 + seed).unwrap();
        let sat = phi.is_satisfiable().unwrap();
        let c1 = cons1_triangle(&phi).unwrap();
        assert_eq!(exact_solve(&c1.graph, c1.k).is_feasible(), sat, "cons1, {phi:?}");
        let c3 = cons3_pq(&phi, 3).unwrap();
        let hint: Vec<Vec<usize>> = c3.packing.parts.iter().map(|p| p.vertices.clone()).collect();
        let found = pq_vertex_deletion_search(&c3.graph, 3, c3.k, &hint).unwrap();
        assert_eq!(found.is_some(), sat, "cons3, {phi:?}");
    }
    let all_signs: Vec<Vec<i32>> =
        (0..8).map(|m| (1..=3).map(|v| if m >> (v - 1) & 1 == 1 { -v } else { v }).collect()).collect();
    let phi = CnfFormula::new(3, all_signs).unwrap();
    let c1 = cons1_triangle(&phi).unwrap();
    assert!(!exact_solve(&c1.graph, c1.k).is_feasible());
}

#[test]
fn cons3_with_longer_paths() {
    let phi = CnfFormula::new(5, vec![vec![1, -2, 3, -4], vec![-1, 2, 4, 5]]).unwrap();
    let c = cons3_pq(&phi, 4).unwrap();
    assert_eq!(c.k, 2 * 8);
    let hint: Vec<Vec<usize>> = c.packing.parts.iter().map(|p| p.vertices.clone()).collect();
    let found = pq_vertex_deletion_search(&c.graph, 4, c.k, &hint).unwrap();
    assert!(found.is_some());
    assert!(cons3_pq(&phi, 3).is_err());
}

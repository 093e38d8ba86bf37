use packedit::cluster::{branch_solve_p3, exact_ce};
use packedit::fast::{apply_rule2_all, exact_fas, outside_inclusion_holds};
use packedit::forbidden::{check_f_free, enumerate_directed_triangles, enumerate_p3, enumerate_triangles};
use packedit::generators::{cons1_triangle, cons2_kq, cons3_pq, hitting_set_transform, random_cnf, CnfFormula};
use packedit::oracle::{brute_edit_optimum, brute_fas_optimum, brute_hitting_set, brute_pq_vertex_deletion};
use packedit::packing::{greedy_pack, local_cost, validate_packing, PackingHost};
use packedit::triangle::{branch_solve, exact_solve};
use packedit::{EditOp, EditSet, Family, Graph, Instance, PackingMode, Problem, Tournament, VertexPair};
use proptest::prelude::*;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn tournament_from_mask(n: usize, mask: u64) -> Tournament {
    let arcs = pairs(n).into_iter().enumerate().map(|(i, (u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) });
    Tournament::from_arcs(n, arcs).unwrap()
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (3..=max_n, any::<u64>()).prop_map(|(n, mask)| tournament_from_mask(n, mask))
}

fn opt(g: &Graph, family: Family) -> usize {
    let cap = (g.n() * g.n().saturating_sub(1) / 2).min(12);
    brute_edit_optimum(g, family, cap).unwrap().unwrap()
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn toggling_twice_restores_the_graph(g in graph(8), picks in prop::collection::vec(any::<u8>(), 0..10)) {
        let all = pairs(g.n());
        prop_assume!(!all.is_empty());
        let mut s = EditSet::new();
        for p in picks {
            let (u, v) = all[p as usize % all.len()];
            let op = if g.has_edge(u, v) { EditOp::Delete } else { EditOp::Insert };
            let _ = s.insert(VertexPair::new(u, v), op);
        }
        let once = s.apply_to_graph(&g).unwrap();
        prop_assert_eq!(s.toggle_pairs(&once).unwrap(), g.clone());
        prop_assert_eq!(s.inverse().apply_to_graph(&once).unwrap(), g);
    }

    #[test]
    fn reversals_keep_a_tournament(t in tournament(7), picks in prop::collection::vec(any::<u8>(), 0..8)) {
        let all = pairs(t.n());
        let mut s = EditSet::new();
        for p in picks {
            let (u, v) = all[p as usize % all.len()];
            let _ = s.insert(VertexPair::new(u, v), EditOp::Reverse);
        }
        let r = s.apply_to_tournament(&t).unwrap();
        for (u, v) in all {
            prop_assert!(r.has_arc(u, v) ^ r.has_arc(v, u));
        }
    }

    #[test]
    fn enumerations_match_a_triple_scan(g in graph(8), t in tournament(8)) {
        let (mut tri, mut p3) = (Vec::new(), Vec::new());
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                for c in b + 1..g.n() {
                    let e = [g.has_edge(a, b), g.has_edge(a, c), g.has_edge(b, c)].iter().filter(|&&x| x).count();
                    if e == 3 { tri.push([a, b, c]); }
                    if e == 2 { p3.push([a, b, c]); }
                }
            }
        }
        prop_assert_eq!(enumerate_triangles(&g), tri);
        let mut found: Vec<[usize; 3]> = enumerate_p3(&g).iter().map(|p| p.sorted()).collect();
        found.sort_unstable();
        prop_assert_eq!(found, p3);
        let mut cyc = Vec::new();
        for a in 0..t.n() {
            for b in a + 1..t.n() {
                for c in b + 1..t.n() {
                    let fwd = t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a);
                    let bwd = t.has_arc(b, a) && t.has_arc(c, b) && t.has_arc(a, c);
                    if fwd || bwd { cyc.push([a, b, c]); }
                }
            }
        }
        let mut found = enumerate_directed_triangles(&t);
        found.sort_unstable();
        prop_assert_eq!(found, cyc);
    }

    #[test]
    fn triangle_free_tournaments_are_acyclic(t in tournament(8)) {
        let free = check_f_free(&t, Family::DirectedTriangle).unwrap();
        match t.topological_order() {
            Some(order) => prop_assert!(free && t.backward_arcs(&order).is_empty()),
            None => prop_assert!(!free),
        }
    }
}

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn greedy_packings_validate_and_bound_the_optimum(g in graph(7), t in 1usize..=3) {
        for problem in [Problem::TriangleDeletion, Problem::ClusterEditing] {
            let packing = greedy_pack(&g, problem, t).unwrap();
            let inst = Instance::new(g.clone(), packing.clone(), packing.h(), t, problem);
            prop_assert!(validate_packing(&inst, t).unwrap().is_ok());
            prop_assert!(packing.h() <= opt(&g, problem.family()));
        }
    }

    #[test]
    fn greedy_fast_packings_validate_and_bound_the_optimum(t in tournament(7), tc in 1usize..=3) {
        let packing = greedy_pack(&t, Problem::Fast, tc).unwrap();
        let inst = Instance::new(t.clone(), packing.clone(), packing.h(), tc, Problem::Fast);
        prop_assert!(validate_packing(&inst, tc).unwrap().is_ok());
        prop_assert!(packing.h() <= brute_fas_optimum(&t).unwrap());
    }

    #[test]
    fn greedy_h_grows_with_t(g in graph(8)) {
        for problem in [Problem::TriangleDeletion, Problem::ClusterEditing] {
            let hs: Vec<usize> = (1..=3).map(|t| greedy_pack(&g, problem, t).unwrap().h()).collect();
            prop_assert!(hs.windows(2).all(|w| w[0] <= w[1]), "{:?}: {:?}", problem, hs);
        }
    }

    #[test]
    fn local_cost_matches_the_oracle(g in graph(6)) {
        for problem in [Problem::TriangleDeletion, Problem::ClusterEditing] {
            let got = local_cost(&g, problem, 12).unwrap();
            prop_assert_eq!(got, Some(opt(&g, problem.family())));
        }
    }

    #[test]
    fn triangle_solvers_match_the_oracle(g in graph(7), t in 1usize..=2) {
        let best = opt(&g, Family::Triangle);
        let packing = greedy_pack(&g, Problem::TriangleDeletion, t).unwrap();
        for k in [best.saturating_sub(1), best] {
            let expect = k == best;
            let inst = Instance::new(g.clone(), packing.clone(), k, t, Problem::TriangleDeletion);
            let out = branch_solve(&inst).unwrap();
            prop_assert_eq!(out.is_feasible(), expect);
            if let Some(s) = &out.solution {
                prop_assert!(check_f_free(&s.apply_to_graph(&g).unwrap(), Family::Triangle).unwrap());
                prop_assert!(out.stats.max_depth as i64 <= out.stats.initial_ell.unwrap());
                prop_assert!(out.stats.max_branch_factor <= 2 * (t + 1) + 1);
            }
            let plain = exact_solve(&g, k);
            prop_assert_eq!(plain.is_feasible(), expect);
            if let Some(s) = plain.solution {
                prop_assert!(check_f_free(&s.apply_to_graph(&g).unwrap(), Family::Triangle).unwrap());
            }
        }
    }

    #[test]
    fn fas_engine_matches_the_oracle(t in tournament(6)) {
        let best = brute_fas_optimum(&t).unwrap();
        let out = exact_fas(&t, best);
        let r = out.solution.expect("optimum is reachable");
        let done = r.reversals.apply_to_tournament(&t).unwrap();
        prop_assert!(done.is_acyclic());
        prop_assert_eq!(r.reversals.len(), best);
        prop_assert_eq!(t.backward_arcs(&r.order).len(), r.reversals.len());
        if best > 0 {
            prop_assert!(!exact_fas(&t, best - 1).is_feasible());
        }
    }

    #[test]
    fn rule2_spends_exactly_what_the_optimum_drops(t in tournament(6), tc in 1usize..=2) {
        let packing = greedy_pack(&t, Problem::Fast, tc).unwrap();
        let best = brute_fas_optimum(&t).unwrap();
        let inst = Instance::new(t.clone(), packing, best, tc, Problem::Fast);
        let pass = apply_rule2_all(&inst).unwrap();
        let used = inst.k - pass.instance.k;
        prop_assert_eq!(brute_fas_optimum(&pass.instance.host).unwrap() + used, best);
        for part in inst.packing.parts.iter().filter(|p| !pass.instance.packing.parts.contains(p)) {
            prop_assert!(outside_inclusion_holds(&pass.instance.host, &part.vertices));
        }
    }

    #[test]
    fn cluster_solvers_match_the_oracle(g in graph(6)) {
        let best = opt(&g, Family::P3);
        let out = exact_ce(&g, best);
        let s = out.solution.expect("optimum is reachable");
        let done = s.edits.apply_to_graph(&g).unwrap();
        prop_assert!(check_f_free(&done, Family::P3).unwrap());
        prop_assert_eq!(&s.clusters, &done.components());
        prop_assert!(s.clusters.iter().all(|c| done.is_clique(c)));
        if best > 0 {
            prop_assert!(!exact_ce(&g, best - 1).is_feasible());
        }
        let packing = greedy_pack(&g, Problem::ClusterEditing, 1).unwrap();
        let inst = Instance::new(g.clone(), packing, best, 1, Problem::ClusterEditing);
        let p3 = branch_solve_p3(&inst).unwrap();
        prop_assert!(p3.is_feasible());
        prop_assert!(p3.stats.max_branch_factor <= 4);
        prop_assert!(p3.stats.max_depth as i64 <= p3.stats.initial_ell.unwrap());
    }

    #[test]
    fn adding_edges_raises_the_triangle_optimum_by_at_most_their_number(g in graph(7), extra in any::<u64>()) {
        let more = graph_from_mask(g.n(), extra);
        let mut h = g.clone();
        let mut added = 0;
        for (u, v) in more.edges() {
            if h.add_edge(u, v) {
                added += 1;
            }
        }
        let (a, b) = (opt(&g, Family::Triangle), opt(&h, Family::Triangle));
        prop_assert!(b <= a + added);
        prop_assert!(a <= b);
    }

    #[test]
    fn cluster_oracle_ignores_labels(g in graph(7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let relabeled = Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert_eq!(opt(&g, Family::P3), opt(&relabeled, Family::P3));
    }

    #[test]
    fn hitting_set_transform_matches_vertex_deletion(g in graph(9)) {
        let h = hitting_set_transform(&g, 3).unwrap();
        prop_assert!(h.edges.iter().all(|e| e.len() == 3));
        prop_assert_eq!(brute_hitting_set(&h, 8).unwrap(), brute_pq_vertex_deletion(&g, 3, 8).unwrap());
    }
}

fn formula() -> impl Strategy<Value = CnfFormula> {
    (3usize..=5, 0usize..=4, any::<u64>()).prop_map(|(v, c, seed)| random_cnf(v, c, 3, seed).unwrap())
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn construction_packings_are_tight(phi in formula()) {
        let occurrences: usize = phi.clauses.iter().map(Vec::len).sum();

        let c1 = cons1_triangle(&phi).unwrap();
        prop_assert_eq!(c1.packing.mode, PackingMode::Edge);
        prop_assert_eq!(c1.k, phi.num_vars + occurrences);
        prop_assert_eq!(c1.packing.h(), c1.k);
        let mut seen = std::collections::BTreeSet::new();
        for part in &c1.packing.parts {
            prop_assert!(part.vertices.len() == 3 && c1.graph.is_clique(&part.vertices));
            for (i, &a) in part.vertices.iter().enumerate() {
                for &b in &part.vertices[i + 1..] {
                    prop_assert!(seen.insert((a, b)), "edge {{{}, {}}} packed twice", a, b);
                }
            }
        }

        let c2 = cons2_kq(&phi, 6).unwrap();
        prop_assert_eq!((c2.k, c2.packing.h()), (phi.num_vars, phi.num_vars));
        for part in &c2.packing.parts {
            prop_assert!(c2.graph.is_clique(&part.vertices));
        }

        let c3 = cons3_pq(&phi, 3).unwrap();
        prop_assert_eq!((c3.k, c3.packing.h()), (2 * occurrences, 2 * occurrences));
        let owner = c3.packing.owner_map(c3.graph.n());
        prop_assert_eq!(owner.iter().flatten().count(), 3 * c3.k);
        for part in &c3.packing.parts {
            let sub = c3.graph.induced_host(&part.vertices);
            prop_assert_eq!(sub.m(), 2);
            prop_assert_eq!(sub.components().len(), 1);
        }
    }
}

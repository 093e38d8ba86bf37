//! Browser bindings: solve, pack and generate on pasted instances.

use packedit::cluster::{branch_solve_p3, solve_cost_t_ce};
use packedit::fast::solve_above_packing_fast;
use packedit::generators::{random_graph, random_tournament};
use packedit::packing::greedy_pack;
use packedit::triangle::branch_solve;
use packedit::{io, EditSet, Error, Instance, Packing, Problem};
use wasm_bindgen::prelude::*;

/// Largest instance the page will search on.
const MAX_N: usize = 40;

fn check_size(n: usize) -> Result<(), Error> {
    if n > MAX_N {
        return Err(Error::CapExceeded(format!("the demo takes at most {MAX_N} vertices")));
    }
    Ok(())
}

fn edits_of(problem: Problem, text: &str, packing: &Packing, t: usize, k: usize) -> Result<Option<(EditSet, u64)>, Error> {
    Ok(match problem {
        Problem::Fast => {
            let inst = Instance::new(io::read_tournament(text)?, packing.clone(), k, t, problem);
            let o = solve_above_packing_fast(&inst)?;
            o.solution.map(|s| (s.reversals, o.stats.branch_nodes))
        }
        Problem::TriangleDeletion => {
            let inst = Instance::new(io::read_graph(text)?, packing.clone(), k, t, problem);
            let o = branch_solve(&inst)?;
            o.solution.map(|s| (s, o.stats.branch_nodes))
        }
        Problem::ClusterEditing => {
            let inst = Instance::new(io::read_graph(text)?, packing.clone(), k, t, problem);
            let o = if t == 1 { branch_solve_p3(&inst)? } else { solve_cost_t_ce(&inst)? };
            o.solution.map(|s| (s.edits, o.stats.branch_nodes))
        }
    })
}

fn packing_for(problem: Problem, text: &str, t: usize) -> Result<(Packing, usize), Error> {
    let (packing, n) = match problem {
        Problem::Fast => {
            let tt = io::read_tournament(text)?;
            (greedy_pack(&tt, problem, t)?, tt.n())
        }
        _ => {
            let g = io::read_graph(text)?;
            (greedy_pack(&g, problem, t)?, g.n())
        }
    };
    Ok((packing, n))
}

/// Greedy packing report for `problem` with part costs at most `t`.
pub fn pack_report(problem: &str, text: &str, t: usize) -> Result<String, Error> {
    let problem: Problem = problem.parse()?;
    let (packing, _) = packing_for(problem, text, t)?;
    Ok(format!("# h = {}\n{}", packing.h(), io::write_packing(&packing)))
}

/// Minimum edit set found by increasing the budget from the packing bound.
pub fn solve_report(problem: &str, text: &str, t: usize) -> Result<String, Error> {
    let problem: Problem = problem.parse()?;
    let (packing, n) = packing_for(problem, text, t)?;
    check_size(n)?;
    let h = packing.h();
    let mut k = h;
    loop {
        if let Some((edits, nodes)) = edits_of(problem, text, &packing, t, k)? {
            return Ok(format!(
                "# optimum {k}, packing bound {h}, {nodes} search nodes at the last budget\n{}",
                io::write_edits(&edits)
            ));
        }
        k += 1;
    }
}

/// A random graph, or a tournament for `fast`.
pub fn random_report(problem: &str, n: usize, p: f64, seed: u64) -> Result<String, Error> {
    check_size(n)?;
    Ok(match problem.parse()? {
        Problem::Fast => io::write_tournament(&random_tournament(n, seed)?),
        _ => io::write_graph(&random_graph(n, p, seed)?),
    })
}

fn to_js(r: Result<String, Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn pack(problem: &str, text: &str, t: usize) -> Result<String, JsError> {
    to_js(pack_report(problem, text, t))
}

#[wasm_bindgen]
pub fn solve(problem: &str, text: &str, t: usize) -> Result<String, JsError> {
    to_js(solve_report(problem, text, t))
}

#[wasm_bindgen]
pub fn random_instance(problem: &str, n: usize, p: f64, seed: u64) -> Result<String, JsError> {
    to_js(random_report(problem, n, p, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = include_str!("../../core/tests/fixtures/fig1.graph");

    #[test]
    fn solve_finds_the_fig1_optimum() {
        let out = solve_report("triangle-del", FIG1, 2).unwrap();
        assert!(out.starts_with("# optimum 3,"), "{out}");
        assert_eq!(out.lines().filter(|l| l.starts_with("del ")).count(), 3);
    }

    #[test]
    fn pack_reports_the_bound() {
        let out = pack_report("cluster-edit", "graph 3 2\n0 1\n1 2\n", 1).unwrap();
        assert!(out.starts_with("# h = 1\n"));
    }

    #[test]
    fn random_tournament_round_trips() {
        let text = random_report("fast", 6, 0.5, 4).unwrap();
        assert!(solve_report("fast", &text, 2).is_ok());
        assert!(random_report("fast", MAX_N + 1, 0.5, 0).is_err());
    }
}

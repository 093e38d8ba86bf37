//! Feedback Arc Set in Tournaments: the plain reversal-branching engine, the
//! packing reduction rule and the pipeline above a cost-`t` packing.

use crate::edits::EditSet;
use crate::error::{Error, Result};
use crate::forbidden::is_directed_triangle;
use crate::graph::VertexPair;
use crate::packing::{bounds, Instance, Packing, PackingMode, Part, Problem, Reduction};
use crate::stats::{Outcome, SolveStats};
use crate::tournament::Tournament;
use fixedbitset::FixedBitSet;
use std::collections::BTreeMap;

/// Reversals making a tournament acyclic, with the resulting order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FasResult {
    pub reversals: EditSet,
    /// Topological order of the reversed tournament; its backward arcs in the
    /// input are exactly `reversals`.
    pub order: Vec<usize>,
}

impl FasResult {
    fn from_final(input: &Tournament, done: &Tournament) -> Self {
        let order = done.topological_order().expect("search ends on an acyclic tournament");
        FasResult { reversals: EditSet::from_tournament_diff(input, done), order }
    }
}

/// Greedy arc-disjoint directed triangle packing, skipping triangles whose
/// arcs are all frozen.
fn lower_bound(t: &Tournament, frozen: &[FixedBitSet]) -> usize {
    let n = t.n();
    let mut used: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if used[a].contains(b) {
                continue;
            }
            for c in b + 1..n {
                if used[a].contains(c) || used[b].contains(c) || !is_directed_triangle(t, a, b, c) {
                    continue;
                }
                if frozen[a].contains(b) && frozen[a].contains(c) && frozen[b].contains(c) {
                    continue;
                }
                for (x, y) in [(a, b), (a, c), (b, c)] {
                    used[x].insert(y);
                    used[y].insert(x);
                }
                count += 1;
                break;
            }
        }
    }
    count
}

/// Pairs `(x, y)` of a triple.
fn triple_pairs([a, b, c]: [usize; 3]) -> [(usize, usize); 3] {
    [(a, b), (a, c), (b, c)]
}

struct Search<'a> {
    t: Tournament,
    /// Pairs whose direction may no longer change.
    frozen: Vec<FixedBitSet>,
    stats: &'a mut SolveStats,
}

impl Search<'_> {
    fn pick(&self) -> std::result::Result<Option<[usize; 3]>, ()> {
        let n = self.t.n();
        let mut best: Option<([usize; 3], usize)> = None;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !is_directed_triangle(&self.t, a, b, c) {
                        continue;
                    }
                    let free = triple_pairs([a, b, c]).iter().filter(|&&(x, y)| !self.frozen[x].contains(y)).count();
                    if free == 0 {
                        return Err(());
                    }
                    if best.is_none_or(|(_, f)| free < f) {
                        best = Some(([a, b, c], free));
                        if free == 1 {
                            return Ok(Some([a, b, c]));
                        }
                    }
                }
            }
        }
        Ok(best.map(|b| b.0))
    }

    fn freeze(&mut self, x: usize, y: usize, on: bool) {
        self.frozen[x].set(y, on);
        self.frozen[y].set(x, on);
    }

    fn run(&mut self, budget: usize, depth: usize) -> bool {
        self.stats.visit(depth);
        let tri = match self.pick() {
            Err(()) => return false,
            Ok(None) => return true,
            Ok(Some(tri)) => tri,
        };
        if budget == 0 || lower_bound(&self.t, &self.frozen) > budget {
            return false;
        }
        let options: Vec<(usize, usize)> =
            triple_pairs(tri).into_iter().filter(|&(x, y)| !self.frozen[x].contains(y)).collect();
        self.stats.branching(options.len());
        let mut kept = Vec::new();
        let mut found = false;
        for &(x, y) in &options {
            self.t.reverse(x, y);
            self.freeze(x, y, true);
            if self.run(budget - 1, depth + 1) {
                found = true;
                break;
            }
            self.t.reverse(x, y);
            // frozen in its original direction for the later branches
            kept.push((x, y));
        }
        for (x, y) in kept {
            self.freeze(x, y, false);
        }
        found
    }
}

fn solve_within(t: &Tournament, k: usize, stats: &mut SolveStats) -> Option<Tournament> {
    let n = t.n();
    let mut search = Search { t: t.clone(), frozen: vec![FixedBitSet::with_capacity(n); n], stats };
    search.run(k, 0).then_some(search.t)
}

fn minimum_within(t: &Tournament, k: usize, stats: &mut SolveStats) -> Option<Tournament> {
    let lb = lower_bound(t, &vec![FixedBitSet::with_capacity(t.n()); t.n()]);
    (lb..=k).find_map(|budget| solve_within(t, budget, stats))
}

/// Feedback arc set optimum of `t` if it is at most `cap`.
pub fn optimum_within(t: &Tournament, cap: usize) -> Option<usize> {
    let mut stats = SolveStats::default();
    minimum_within(t, cap, &mut stats).map(|done| t.difference(&done).len())
}

/// A minimum set of at most `k` reversals making `t` acyclic, if one exists.
///
/// Branches three ways on a directed triangle; a pair fixed by one branch is
/// frozen for the rest of that subtree.
pub fn exact_fas(t: &Tournament, k: usize) -> Outcome<FasResult> {
    let mut stats = SolveStats::new("plain");
    let solution = minimum_within(t, k, &mut stats).map(|done| FasResult::from_final(t, &done));
    Outcome { solution, stats }
}

fn outside_mask(n: usize, part: &Part) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(n);
    mask.insert_range(..);
    for &v in &part.vertices {
        mask.set(v, false);
    }
    mask
}

fn outside_out(t: &Tournament, v: usize, outside: &FixedBitSet) -> FixedBitSet {
    let mut s = t.out_set(v).clone();
    s.intersect_with(outside);
    s
}

/// Whether the arc between `a` and `b` lies in a directed triangle with an
/// outside vertex.
fn in_outside_triangle(t: &Tournament, a: usize, b: usize, outside: &FixedBitSet) -> bool {
    let (u, v) = if t.has_arc(a, b) { (a, b) } else { (b, a) };
    // u → v → w → u
    outside.ones().any(|w| t.has_arc(v, w) && t.has_arc(w, u))
}

/// Reversals settling `part`, or `None` if the rule does not apply to it.
fn settle_part(t: &Tournament, part: &Part) -> Option<Vec<VertexPair>> {
    let outside = outside_mask(t.n(), part);
    let w = &part.vertices;
    let mut work = t.clone();
    let mut forced = Vec::new();
    for (i, &a) in w.iter().enumerate() {
        for &b in &w[i + 1..] {
            if in_outside_triangle(t, a, b, &outside) {
                work.reverse(a, b);
                if in_outside_triangle(&work, a, b, &outside) {
                    return None;
                }
                forced.push(VertexPair::new(a, b));
            }
        }
    }
    if forced.len() > part.cost {
        return None;
    }
    // Without outside triangles the outside out-neighborhoods form a chain and
    // arcs between distinct neighborhoods agree with it, so only arcs inside a
    // class of equal neighborhoods can still lie on directed triangles.
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &v in w {
        classes.entry(outside_out(&work, v, &outside).ones().collect()).or_default().push(v);
    }
    let mut budget = part.cost - forced.len();
    let mut inner = Vec::new();
    for class in classes.values().filter(|c| c.len() >= 3) {
        let sub = work.induced(class);
        let mut stats = SolveStats::default();
        let done = minimum_within(&sub, budget, &mut stats)?;
        for p in sub.difference(&done) {
            inner.push(VertexPair::new(class[p.u], class[p.v]));
        }
        budget -= sub.difference(&done).len();
    }
    if budget != 0 {
        return None;
    }
    forced.extend(inner);
    Some(forced)
}

/// Checks that along the acyclic order of the part's vertices the outside
/// out-neighborhoods shrink and the outside in-neighborhoods grow.
pub fn outside_inclusion_holds(t: &Tournament, part: &[usize]) -> bool {
    let sub = t.induced(part);
    let Some(local) = sub.topological_order() else { return false };
    let outside = outside_mask(t.n(), &Part::new(part.to_vec(), 0));
    let order: Vec<usize> = local.iter().map(|&i| part[i]).collect();
    let outs: Vec<FixedBitSet> = order.iter().map(|&v| outside_out(t, v, &outside)).collect();
    // in-neighborhoods inside the outside set are complements of the out-sets,
    // so one chain condition covers both inclusions
    outs.windows(2).all(|pair| pair[1].is_subset(&pair[0]))
}

fn check_instance(inst: &Instance<Tournament>) -> Result<()> {
    if inst.problem != Problem::Fast {
        return Err(Error::ProblemMismatch { problem: inst.problem.name(), expected: "fast" });
    }
    if inst.packing.mode != PackingMode::Vertex && !inst.packing.is_empty() {
        return Err(Error::InvalidInput("the packing rule needs a vertex-disjoint packing".into()));
    }
    Ok(())
}

/// One pass of the packing rule over all parts: a part is settled when `τ(H)`
/// internal reversals leave no directed triangle through its arcs.
pub fn apply_rule2_all(inst: &Instance<Tournament>) -> Result<Reduction<Tournament>> {
    check_instance(inst)?;
    let mut t = inst.host.clone();
    let mut k = inst.k;
    let mut parts = Vec::new();
    let mut fired = 0;
    for part in &inst.packing.parts {
        match settle_part(&t, part) {
            Some(revs) => {
                for p in &revs {
                    t.reverse(p.u, p.v);
                }
                debug_assert!(outside_inclusion_holds(&t, &part.vertices));
                k = k.saturating_sub(part.cost);
                fired += 1;
            }
            None => parts.push(part.clone()),
        }
    }
    let applied = EditSet::from_tournament_diff(&inst.host, &t);
    let packing = Packing::new(inst.packing.mode, parts);
    Ok(Reduction { instance: Instance::new(t, packing, k, inst.t, inst.problem), applied, fired })
}

/// Whether the reduced instance violates `k ≤ (2t+1)ℓ`.
pub fn reject_by_bound_fast(inst: &Instance<Tournament>) -> bool {
    crate::triangle::reject_by_bound(inst)
}

/// Rule pass, bound rejection, then the plain engine with budget
/// `min(k, (2t+1)ℓ)`. The rule's reversals are part of the result.
pub fn solve_above_packing_fast(inst: &Instance<Tournament>) -> Result<Outcome<FasResult>> {
    check_instance(inst)?;
    let mut stats = SolveStats::new("above-packing");
    stats.initial_ell = Some(inst.bounds().1);
    if inst.bounds().1 < 0 {
        stats.count_rule("bound-reject", 1);
        return Ok(Outcome { solution: None, stats });
    }
    let pass = apply_rule2_all(inst)?;
    stats.count_rule("rule2", pass.fired as u64);
    let reduced = pass.instance;
    let (_, ell) = bounds(&reduced);
    if ell < 0 || reject_by_bound_fast(&reduced) {
        stats.count_rule("bound-reject", 1);
        return Ok(Outcome { solution: None, stats });
    }
    let t = reduced.packing.parts.iter().map(|p| p.cost).max().unwrap_or(0).max(reduced.t);
    let budget = reduced.k.min(((2 * t + 1) as i64 * ell) as usize);
    let inner = exact_fas(&reduced.host, budget);
    stats.absorb(&inner.stats, 0);
    let solution = inner.solution.map(|r| {
        let mut done = reduced.host.clone();
        for p in r.reversals.pairs() {
            done.reverse(p.u, p.v);
        }
        FasResult::from_final(&inst.host, &done)
    });
    Ok(Outcome { solution, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::Part;

    fn cycle3() -> Tournament {
        Tournament::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn engine_basics() {
        let out = exact_fas(&cycle3(), 1);
        let r = out.solution.unwrap();
        assert_eq!(r.reversals.len(), 1);
        assert!(!exact_fas(&cycle3(), 0).is_feasible());
        let r = exact_fas(&Tournament::transitive(5), 0).solution.unwrap();
        assert!(r.reversals.is_empty());
        assert_eq!(r.order, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rule_on_dominated_cycle() {
        // every part vertex beats 3
        let t = Tournament::from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap();
        let inst = Instance::new(t, Packing::vertex_disjoint(vec![Part::new(vec![0, 1, 2], 1)]), 1, 1, Problem::Fast);
        let pass = apply_rule2_all(&inst).unwrap();
        assert_eq!(pass.fired, 1);
        assert_eq!(pass.instance.k, 0);
        assert_eq!(pass.applied.len(), 1);
        assert!(pass.instance.host.is_acyclic());
    }

    #[test]
    fn empty_packing_is_identity() {
        let inst = Instance::new(cycle3(), Packing::default(), 1, 1, Problem::Fast);
        let pass = apply_rule2_all(&inst).unwrap();
        assert_eq!(pass.fired, 0);
        assert!(pass.applied.is_empty());
        assert_eq!(pass.instance.host, cycle3());
    }

    #[test]
    fn bound_rejection() {
        let mut inst = Instance::new(Tournament::transitive(9), Packing::default(), 7, 1, Problem::Fast);
        inst.packing.parts = vec![Part::new(vec![0, 1, 2, 3, 4, 5], 5)];
        // h = 5, ℓ = 2
        assert!(reject_by_bound_fast(&inst));
        inst.k = 6;
        inst.packing.parts[0].cost = 4;
        assert!(!reject_by_bound_fast(&inst));
    }
}

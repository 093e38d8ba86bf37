use std::collections::BTreeMap;

/// Search statistics reported by every solver.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub engine: String,
    /// Search-tree nodes visited, the root included.
    pub branch_nodes: u64,
    /// Largest number of branching decisions on any root-to-node path.
    pub max_depth: usize,
    /// Largest number of children created at a single node.
    pub max_branch_factor: usize,
    /// `ℓ = k − h` of the input, when the solver works above a packing.
    pub initial_ell: Option<i64>,
    /// Applications per reduction or branching rule.
    pub rules_applied: BTreeMap<String, u64>,
}

impl SolveStats {
    pub fn new(engine: &str) -> Self {
        SolveStats { engine: engine.to_string(), ..Default::default() }
    }

    pub fn count_rule(&mut self, rule: &str, times: u64) {
        if times > 0 {
            *self.rules_applied.entry(rule.to_string()).or_default() += times;
        }
    }

    pub fn rule_count(&self, rule: &str) -> u64 {
        self.rules_applied.get(rule).copied().unwrap_or(0)
    }

    pub(crate) fn visit(&mut self, depth: usize) {
        self.branch_nodes += 1;
        self.max_depth = self.max_depth.max(depth);
    }

    pub(crate) fn branching(&mut self, factor: usize) {
        self.max_branch_factor = self.max_branch_factor.max(factor);
    }

    /// Folds the counters of a nested solve into `self`.
    pub fn absorb(&mut self, other: &SolveStats, depth_offset: usize) {
        self.branch_nodes += other.branch_nodes;
        self.max_depth = self.max_depth.max(other.max_depth + depth_offset);
        self.max_branch_factor = self.max_branch_factor.max(other.max_branch_factor);
        for (rule, n) in &other.rules_applied {
            *self.rules_applied.entry(rule.clone()).or_default() += n;
        }
    }
}

/// A solver result: the solution if one within budget exists.
#[derive(Clone, Debug)]
pub struct Outcome<T> {
    pub solution: Option<T>,
    pub stats: SolveStats,
}

impl<T> Outcome<T> {
    pub fn is_feasible(&self) -> bool {
        self.solution.is_some()
    }
}

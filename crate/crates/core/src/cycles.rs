//! Cycles and cycle collections: the building blocks of an exchange outcome.
//!
//! Cycles are kept in canonical rotation (minimum node first, direction
//! preserved) and enumeration emits them in lexicographic order of their node
//! sequences, which pins down every "sort them" tie-break in the solvers.

use std::fmt;

use thiserror::Error;

use crate::config::{LengthBound, Objective, SolverConfig};
use crate::instance::ExchangeInstance;
use crate::weight::Weight;

/// Unbounded enumeration is exponential; it is reserved for oracle-scale
/// instances.
pub const UNBOUNDED_ENUMERATION_MAX_NODES: usize = 14;

/// A simple directed cycle, stored with its minimum node first. Direction is
/// part of the identity: `0 -> 1 -> 2` and `0 -> 2 -> 1` are distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    nodes: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle must have at least 2 nodes, got {0}")]
    TooShort(usize),
    #[error("node {0} repeats within the cycle")]
    RepeatedNode(usize),
    #[error("cycle arc {0} -> {1} is not in the instance")]
    MissingArc(usize, usize),
    #[error("cycles overlap on node {0}")]
    Overlap(usize),
    #[error("cycle length {len} exceeds bound {bound}")]
    OverLength { len: usize, bound: usize },
    #[error(
        "unbounded cycle enumeration is limited to {UNBOUNDED_ENUMERATION_MAX_NODES} nodes, \
         instance has {0}"
    )]
    TooLargeForUnbounded(usize),
    #[error("instance has more than {0} cycles")]
    TooManyCycles(usize),
}

impl Cycle {
    /// Builds a cycle from a node sequence, rotating it to canonical form.
    pub fn new(nodes: Vec<usize>) -> Result<Cycle, CycleError> {
        if nodes.len() < 2 {
            return Err(CycleError::TooShort(nodes.len()));
        }
        let mut seen = nodes.clone();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(CycleError::RepeatedNode(w[0]));
            }
        }
        let min_pos = nodes
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .unwrap();
        let mut rotated = nodes;
        rotated.rotate_left(min_pos);
        Ok(Cycle { nodes: rotated })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Consecutive arcs including the wrap-around.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.nodes.len();
        (0..n).map(move |i| (self.nodes[i], self.nodes[(i + 1) % n]))
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.contains(&node)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nodes.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Exact sum of the cycle's arc weights in `inst`.
pub fn cycle_weight(inst: &ExchangeInstance, cycle: &Cycle) -> Result<Weight, CycleError> {
    let mut total = Weight::ZERO;
    for (u, v) in cycle.arcs() {
        total += inst.arc_weight(u, v).ok_or(CycleError::MissingArc(u, v))?;
    }
    Ok(total)
}

/// Objective value of a solution: covered nodes in size mode, exact weight
/// sum in weight mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveValue {
    Size(u64),
    Weight(Weight),
}

impl ObjectiveValue {
    /// Numeric value as an exact rational, for comparisons across solutions.
    pub fn as_weight(&self) -> Weight {
        match self {
            ObjectiveValue::Size(k) => Weight::int(*k as i64),
            ObjectiveValue::Weight(w) => *w,
        }
    }
}

impl PartialOrd for ObjectiveValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.as_weight().cmp(&other.as_weight()))
    }
}

impl fmt::Display for ObjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveValue::Size(k) => write!(f, "{k}"),
            ObjectiveValue::Weight(w) => write!(f, "{w}"),
        }
    }
}

/// A feasible clearing: pairwise vertex-disjoint cycles plus the objective
/// recomputed from the instance. Only `validate_solution` builds one, so the
/// stored objective always matches its cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClearingSolution {
    cycles: Vec<Cycle>,
    objective: ObjectiveValue,
}

impl ClearingSolution {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn objective(&self) -> ObjectiveValue {
        self.objective
    }

    pub fn covered_nodes(&self) -> u64 {
        self.cycles.iter().map(|c| c.len() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Canonical text form: objective line followed by one line per cycle.
    pub fn to_text(&self) -> String {
        let mut out = format!("objective {}\n", self.objective);
        for c in &self.cycles {
            out.push_str(&format!("cycle {c}\n"));
        }
        out
    }
}

/// Checks feasibility of a cycle collection under `config` and assembles a
/// [`ClearingSolution`] with the recomputed objective. Cycles are sorted
/// canonically in the result.
pub fn validate_solution(
    inst: &ExchangeInstance,
    cycles: Vec<Cycle>,
    config: &SolverConfig,
) -> Result<ClearingSolution, CycleError> {
    let mut used = vec![false; inst.node_count()];
    let mut objective_weight = Weight::ZERO;
    let mut covered: u64 = 0;
    for cycle in &cycles {
        if let LengthBound::Bounded(bound) = config.length_bound {
            if cycle.len() > bound {
                return Err(CycleError::OverLength { len: cycle.len(), bound });
            }
        }
        objective_weight += cycle_weight(inst, cycle)?;
        covered += cycle.len() as u64;
        for &v in cycle.nodes() {
            if used[v] {
                return Err(CycleError::Overlap(v));
            }
            used[v] = true;
        }
    }
    let mut cycles = cycles;
    cycles.sort();
    let objective = match config.objective {
        Objective::Size => ObjectiveValue::Size(covered),
        Objective::Weight => ObjectiveValue::Weight(objective_weight),
    };
    Ok(ClearingSolution { cycles, objective })
}

/// What the cycle walker should do after visiting a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkAction {
    /// Keep enumerating.
    Keep,
    /// Greedy-accept: treat the cycle's nodes as deleted from here on.
    Take,
    /// Abandon the whole walk.
    Stop,
}

/// Enumerates every simple directed cycle of length within `[min_len,
/// max_len]`, canonically rotated and in lexicographic order, invoking
/// `visit` for each. `WalkAction::Take` deletes the cycle's nodes for the
/// rest of the walk, which is exactly the greedy "pick if available" scan
/// without materializing the cycle list.
fn walk_cycles(
    inst: &ExchangeInstance,
    min_len: usize,
    max_len: usize,
    blocked: &mut [bool],
    visit: &mut impl FnMut(&[usize]) -> WalkAction,
) {
    let n = inst.node_count();
    let mut path: Vec<usize> = Vec::with_capacity(max_len.min(n));
    // on_path distinguishes path membership from greedy deletion.
    let mut on_path = vec![false; n];

    // Returns false to abort the entire walk.
    fn dfs(
        inst: &ExchangeInstance,
        start: usize,
        min_len: usize,
        max_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        blocked: &mut [bool],
        visit: &mut impl FnMut(&[usize]) -> WalkAction,
    ) -> bool {
        let u = *path.last().unwrap();
        for arc in inst.out_arcs(u) {
            let v = arc.dst;
            if v == start {
                if path.len() >= min_len {
                    match visit(path) {
                        WalkAction::Keep => {}
                        WalkAction::Take => {
                            for &w in path.iter() {
                                blocked[w] = true;
                            }
                            // Start is deleted too; abandon the walk from it.
                            path.truncate(1);
                            return true;
                        }
                        WalkAction::Stop => return false,
                    }
                }
                continue;
            }
            if v < start || blocked[v] || on_path[v] || path.len() == max_len {
                continue;
            }
            path.push(v);
            on_path[v] = true;
            if !dfs(inst, start, min_len, max_len, path, on_path, blocked, visit) {
                return false;
            }
            if path.len() == 1 {
                // A cycle through the current start was taken; unwind.
                return true;
            }
            path.pop();
            on_path[v] = false;
        }
        true
    }

    for start in 0..n {
        if blocked[start] {
            continue;
        }
        path.clear();
        for f in on_path.iter_mut() {
            *f = false;
        }
        path.push(start);
        on_path[start] = true;
        if !dfs(inst, start, min_len, max_len, &mut path, &mut on_path, blocked, visit) {
            return;
        }
    }
}

fn max_len_for(inst: &ExchangeInstance, bound: LengthBound) -> Result<usize, CycleError> {
    match bound {
        LengthBound::Bounded(l) => Ok(l),
        LengthBound::Unbounded => {
            if inst.node_count() > UNBOUNDED_ENUMERATION_MAX_NODES {
                Err(CycleError::TooLargeForUnbounded(inst.node_count()))
            } else {
                Ok(inst.node_count())
            }
        }
    }
}

/// Returns every simple directed cycle of length at most `bound`, exactly
/// once, canonically rotated, sorted lexicographically by node sequence.
pub fn enumerate_cycles(
    inst: &ExchangeInstance,
    bound: LengthBound,
) -> Result<Vec<Cycle>, CycleError> {
    enumerate_cycles_capped(inst, bound, usize::MAX)
}

/// Like [`enumerate_cycles`] but aborts once more than `cap` cycles exist,
/// so guard checks never materialize an oversized list.
pub fn enumerate_cycles_capped(
    inst: &ExchangeInstance,
    bound: LengthBound,
    cap: usize,
) -> Result<Vec<Cycle>, CycleError> {
    let max_len = max_len_for(inst, bound)?;
    let mut out = Vec::new();
    let mut overflow = false;
    let mut blocked = vec![false; inst.node_count()];
    walk_cycles(inst, 2, max_len, &mut blocked, &mut |path| {
        if out.len() == cap {
            overflow = true;
            return WalkAction::Stop;
        }
        out.push(Cycle { nodes: path.to_vec() });
        WalkAction::Keep
    });
    if overflow {
        return Err(CycleError::TooManyCycles(cap));
    }
    Ok(out)
}

/// Scans cycles of length in `[min_len, max_len]` in lexicographic order and
/// keeps each cycle that is vertex-disjoint from everything kept so far.
/// Nodes flagged in `used` are unavailable from the start; accepted cycles
/// mark their nodes in `used`.
pub fn greedy_pack(
    inst: &ExchangeInstance,
    min_len: usize,
    max_len: usize,
    used: &mut [bool],
) -> Vec<Cycle> {
    let mut picked = Vec::new();
    walk_cycles(inst, min_len, max_len, used, &mut |path| {
        picked.push(Cycle { nodes: path.to_vec() });
        WalkAction::Take
    });
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Arc;

    fn unit(src: usize, dst: usize) -> Arc {
        Arc { src, dst, weight: Weight::ONE }
    }

    fn triangle() -> ExchangeInstance {
        ExchangeInstance::new(3, vec![unit(0, 1), unit(1, 2), unit(2, 0)]).unwrap()
    }

    fn full_bidirected(n: usize) -> ExchangeInstance {
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    arcs.push(unit(u, v));
                }
            }
        }
        ExchangeInstance::new(n, arcs).unwrap()
    }

    fn cyc(nodes: &[usize]) -> Cycle {
        Cycle::new(nodes.to_vec()).unwrap()
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(cyc(&[2, 0, 1]).nodes(), &[0, 1, 2]);
        assert_eq!(cyc(&[2, 1, 0]).nodes(), &[0, 2, 1]);
        assert!(Cycle::new(vec![3]).is_err());
        assert_eq!(Cycle::new(vec![1, 2, 1]), Err(CycleError::RepeatedNode(1)));
    }

    #[test]
    fn triangle_has_one_cycle() {
        let cycles = enumerate_cycles(&triangle(), LengthBound::Bounded(3)).unwrap();
        assert_eq!(cycles, vec![cyc(&[0, 1, 2])]);
    }

    #[test]
    fn full_bidirected_three_nodes() {
        let cycles = enumerate_cycles(&full_bidirected(3), LengthBound::Bounded(3)).unwrap();
        assert_eq!(
            cycles,
            vec![cyc(&[0, 1]), cyc(&[0, 1, 2]), cyc(&[0, 2]), cyc(&[0, 2, 1]), cyc(&[1, 2])]
        );
    }

    #[test]
    fn unbounded_guard() {
        let inst =
            ExchangeInstance::new(15, (0..15).map(|i| unit(i, (i + 1) % 15)).collect()).unwrap();
        assert_eq!(
            enumerate_cycles(&inst, LengthBound::Unbounded),
            Err(CycleError::TooLargeForUnbounded(15))
        );
        assert_eq!(
            enumerate_cycles(&inst, LengthBound::Bounded(3)).unwrap(),
            vec![]
        );
    }

    #[test]
    fn cycle_weights() {
        assert_eq!(cycle_weight(&triangle(), &cyc(&[0, 1, 2])).unwrap(), Weight::int(3));

        let third = Weight::new(1, 3).unwrap();
        let two_thirds = Weight::new(2, 3).unwrap();
        let inst = ExchangeInstance::new(
            2,
            vec![
                Arc { src: 0, dst: 1, weight: third },
                Arc { src: 1, dst: 0, weight: two_thirds },
            ],
        )
        .unwrap();
        assert_eq!(cycle_weight(&inst, &cyc(&[0, 1])).unwrap(), Weight::ONE);

        assert_eq!(
            cycle_weight(&triangle(), &cyc(&[0, 2])),
            Err(CycleError::MissingArc(0, 2))
        );
    }

    #[test]
    fn validate_solution_cases() {
        let inst = full_bidirected(4);
        let config = SolverConfig::default();

        let sol =
            validate_solution(&inst, vec![cyc(&[0, 1]), cyc(&[2, 3])], &config).unwrap();
        assert_eq!(sol.objective(), ObjectiveValue::Size(4));

        let err = validate_solution(&inst, vec![cyc(&[0, 1, 2]), cyc(&[2, 3])], &config);
        assert_eq!(err, Err(CycleError::Overlap(2)));

        let err = validate_solution(&inst, vec![cyc(&[0, 1, 2, 3])], &config);
        assert_eq!(err, Err(CycleError::OverLength { len: 4, bound: 3 }));
    }

    #[test]
    fn objective_recompute_matches() {
        let inst = full_bidirected(4);
        let mut config = SolverConfig::default();
        config.objective = Objective::Weight;
        let sol = validate_solution(&inst, vec![cyc(&[0, 1, 2])], &config).unwrap();
        assert_eq!(sol.objective(), ObjectiveValue::Weight(Weight::int(3)));
        assert_eq!(sol.covered_nodes(), 3);
    }

    #[test]
    fn greedy_pack_respects_order_and_deletion() {
        // 0 <-> 1 plus the triangle 0 -> 1 -> 2 -> 0: the 2-cycle comes first
        // lexicographically and blocks the triangle.
        let inst =
            ExchangeInstance::new(3, vec![unit(0, 1), unit(1, 0), unit(1, 2), unit(2, 0)])
                .unwrap();
        let mut used = vec![false; 3];
        let picked = greedy_pack(&inst, 2, 3, &mut used);
        assert_eq!(picked, vec![cyc(&[0, 1])]);
        assert!(used[0] && used[1] && !used[2]);

        // Restricting to length exactly 3 picks the triangle instead.
        let mut used = vec![false; 3];
        let picked = greedy_pack(&inst, 3, 3, &mut used);
        assert_eq!(picked, vec![cyc(&[0, 1, 2])]);
    }
}

//! Exhaustive optimal clearing on small instances. Ground truth for tests,
//! bounds checks, and the reduction roundtrips.

use thiserror::Error;

use crate::config::{Objective, SolverConfig};
use crate::cycles::{
    cycle_weight, enumerate_cycles_capped, validate_solution, ClearingSolution, Cycle, CycleError,
};
use crate::instance::ExchangeInstance;
use crate::weight::Weight;

/// Node guard: disjointness masks are `u128` bitsets.
pub const ORACLE_MAX_NODES: usize = 128;
/// Cycle-count guard before branch and bound is attempted.
pub const ORACLE_MAX_CYCLES: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle refuses instances with more than {ORACLE_MAX_NODES} nodes, got {0}")]
    TooManyNodes(usize),
    #[error("oracle refuses instances with more than {ORACLE_MAX_CYCLES} cycles")]
    TooManyCycles,
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

struct Search<'a> {
    masks: &'a [u128],
    values: &'a [Weight],
    /// `suffix[i]` = sum of values from cycle `i` on; upper bound for pruning.
    suffix: Vec<Weight>,
    best_value: Weight,
    best_set: Vec<usize>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, used: u128, value: Weight) {
        if i == self.masks.len() {
            // Ties resolve toward the lexicographically least index set,
            // which is the least cycle set since the list is sorted.
            if value > self.best_value
                || (value == self.best_value && self.chosen < self.best_set)
            {
                self.best_value = value;
                self.best_set = self.chosen.clone();
            }
            return;
        }
        // Strict inequality: equal-value subtrees may still hold the
        // lexicographically least optimum.
        if value + self.suffix[i] < self.best_value {
            return;
        }
        if self.masks[i] & used == 0 {
            self.chosen.push(i);
            self.run(i + 1, used | self.masks[i], value + self.values[i]);
            self.chosen.pop();
        }
        self.run(i + 1, used, value);
    }
}

/// Optimal vertex-disjoint cycle packing under `config`, by branch and bound
/// over the canonical cycle list. Deterministic: among optima it returns the
/// lexicographically least cycle set.
pub fn solve_exact(
    inst: &ExchangeInstance,
    config: &SolverConfig,
) -> Result<ClearingSolution, OracleError> {
    if inst.node_count() > ORACLE_MAX_NODES {
        return Err(OracleError::TooManyNodes(inst.node_count()));
    }
    let cycles = enumerate_cycles_capped(inst, config.length_bound, ORACLE_MAX_CYCLES)
        .map_err(|e| match e {
            CycleError::TooManyCycles(_) => OracleError::TooManyCycles,
            other => OracleError::Cycle(other),
        })?;

    let masks: Vec<u128> = cycles
        .iter()
        .map(|c| c.nodes().iter().fold(0u128, |m, &v| m | (1 << v)))
        .collect();
    let values: Vec<Weight> = cycles
        .iter()
        .map(|c| match config.objective {
            Objective::Size => Ok(Weight::int(c.len() as i64)),
            Objective::Weight => cycle_weight(inst, c),
        })
        .collect::<Result<_, _>>()?;

    let mut suffix = vec![Weight::ZERO; cycles.len() + 1];
    for i in (0..cycles.len()).rev() {
        suffix[i] = suffix[i + 1] + values[i];
    }

    let mut search = Search {
        masks: &masks,
        values: &values,
        suffix,
        best_value: Weight::ZERO,
        best_set: Vec::new(),
        chosen: Vec::new(),
    };
    // Seed with the empty packing so zero-value optima still compare sets.
    search.run(0, 0, Weight::ZERO);

    let picked: Vec<Cycle> = search.best_set.iter().map(|&i| cycles[i].clone()).collect();
    Ok(validate_solution(inst, picked, config)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::LengthBound;
    use crate::instance::Arc;
    use crate::weight::Weight;

    fn unit(src: usize, dst: usize) -> Arc {
        Arc { src, dst, weight: Weight::ONE }
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

    fn size_config(l: LengthBound) -> SolverConfig {
        SolverConfig::new(l, Objective::Size)
    }

    #[test]
    fn unit_triangle() {
        let inst =
            ExchangeInstance::new(3, vec![unit(0, 1), unit(1, 2), unit(2, 0)]).unwrap();
        let sol = solve_exact(&inst, &size_config(LengthBound::Bounded(3))).unwrap();
        assert_eq!(sol.objective().as_weight(), Weight::int(3));
    }

    #[test]
    fn bidirected_three_l2() {
        // Three mutual pairs but only one 2-cycle fits: the third node stays.
        let sol =
            solve_exact(&full_bidirected(3), &size_config(LengthBound::Bounded(2))).unwrap();
        assert_eq!(sol.objective().as_weight(), Weight::int(2));
    }

    #[test]
    fn bidirected_four_l2() {
        let sol =
            solve_exact(&full_bidirected(4), &size_config(LengthBound::Bounded(2))).unwrap();
        assert_eq!(sol.objective().as_weight(), Weight::int(4));
    }

    #[test]
    fn node_guard() {
        let inst = ExchangeInstance::new(200, vec![]).unwrap();
        assert_eq!(
            solve_exact(&inst, &size_config(LengthBound::Bounded(3))).unwrap_err(),
            OracleError::TooManyNodes(200)
        );
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // Two disjoint 2-cycles {0,1} and {2,3} tie with {0,2},{1,3} under
        // size; the least cycle set must be returned.
        let mut arcs = Vec::new();
        for (u, v) in [(0, 1), (2, 3), (0, 2), (1, 3)] {
            arcs.push(unit(u, v));
            arcs.push(unit(v, u));
        }
        let inst = ExchangeInstance::new(4, arcs).unwrap();
        let sol = solve_exact(&inst, &size_config(LengthBound::Bounded(2))).unwrap();
        let got: Vec<Vec<usize>> =
            sol.cycles().iter().map(|c| c.nodes().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn monotone_in_length_bound() {
        let inst = ExchangeInstance::new(
            5,
            vec![
                unit(0, 1),
                unit(1, 0),
                unit(1, 2),
                unit(2, 0),
                unit(2, 3),
                unit(3, 4),
                unit(4, 2),
            ],
        )
        .unwrap();
        let l2 = solve_exact(&inst, &size_config(LengthBound::Bounded(2))).unwrap();
        let l3 = solve_exact(&inst, &size_config(LengthBound::Bounded(3))).unwrap();
        let inf = solve_exact(&inst, &size_config(LengthBound::Unbounded)).unwrap();
        assert!(l2.objective().as_weight() <= l3.objective().as_weight());
        assert!(l3.objective().as_weight() <= inf.objective().as_weight());
    }
}

//! Exact matching kernels over derived undirected graphs.
//!
//! The clearing bounds reduce to maximum matching; the contract here is
//! exact optimality, verified against brute force in the test suites.

pub mod assignment;
pub mod bipartite;
pub mod blossom;

use thiserror::Error;

use crate::weight::{scale_to_integers, Weight};

/// An undirected weighted graph; edges are stored as `(u, v, w)` with
/// `u < v`, no duplicates, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize, Weight)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node index {index} out of range (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(usize, usize),
}

impl UndirectedGraph {
    /// Builds a graph; endpoint order within an edge does not matter.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Weight)>,
    ) -> Result<UndirectedGraph, GraphError> {
        let mut normalized: Vec<(usize, usize, Weight)> = Vec::new();
        for (u, v, w) in edges {
            if u >= n {
                return Err(GraphError::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v), w));
        }
        normalized.sort_by_key(|e| (e.0, e.1));
        for w in normalized.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(UndirectedGraph { n, edges: normalized })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Weight)] {
        &self.edges
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<Weight> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by_key(&key, |e| (e.0, e.1))
            .ok()
            .map(|i| self.edges[i].2)
    }
}

/// A set of disjoint edges of a host graph, sorted with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    fn from_mates(mates: &[Option<usize>]) -> Matching {
        let mut edges = Vec::new();
        for (u, m) in mates.iter().enumerate() {
            if let Some(v) = *m {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Matching { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covers(&self, node: usize) -> bool {
        self.edges.iter().any(|&(u, v)| u == node || v == node)
    }

    /// Total weight of the matched edges in `g`. Panics if an edge is not in
    /// the graph, which would violate the matching invariant.
    pub fn total_weight(&self, g: &UndirectedGraph) -> Weight {
        self.edges
            .iter()
            .map(|&(u, v)| g.edge_weight(u, v).expect("matching edge not in host graph"))
            .sum()
    }
}

/// Exact maximum-cardinality matching (handles odd components and blossoms).
pub fn max_cardinality_matching(g: &UndirectedGraph) -> Matching {
    let edges: Vec<(usize, usize, i64)> =
        g.edges.iter().map(|&(u, v, _)| (u, v, 1)).collect();
    let mates = blossom::max_weight_matching(g.n, &edges, true);
    Matching::from_mates(&mates)
}

/// Exact maximum-weight matching (not necessarily maximum cardinality).
/// Intended for non-negative weights.
pub fn max_weight_matching(g: &UndirectedGraph) -> Matching {
    let weights: Vec<Weight> = g.edges.iter().map(|e| e.2).collect();
    let scaled = scale_to_integers(&weights);
    let edges: Vec<(usize, usize, i64)> = g
        .edges
        .iter()
        .zip(&scaled)
        .map(|(&(u, v, _), &w)| (u, v, w))
        .collect();
    let mates = blossom::max_weight_matching(g.n, &edges, false);
    Matching::from_mates(&mates)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> UndirectedGraph {
        UndirectedGraph::new(
            n,
            edges.iter().map(|&(u, v, w)| (u, v, Weight::int(w))),
        )
        .unwrap()
    }

    #[test]
    fn invariants_enforced() {
        assert_eq!(
            UndirectedGraph::new(2, [(0, 0, Weight::ONE)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            UndirectedGraph::new(2, [(0, 1, Weight::ONE), (1, 0, Weight::ONE)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            UndirectedGraph::new(1, [(0, 3, Weight::ONE)]).unwrap_err(),
            GraphError::IndexOutOfRange { .. }
        ));
    }

    #[test]
    fn path_has_one_edge() {
        let m = max_cardinality_matching(&graph(3, &[(0, 1, 1), (1, 2, 1)]));
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn five_cycle_has_two_edges() {
        let m = max_cardinality_matching(&graph(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)],
        ));
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn triangle_with_pendant() {
        let m = max_cardinality_matching(&graph(4, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1)]));
        assert_eq!(m.len(), 2);
        assert!(m.covers(3));
    }

    #[test]
    fn weight_matching_prefers_value_over_cardinality() {
        let g = graph(3, &[(0, 1, 2), (1, 2, 3), (0, 2, 2)]);
        let m = max_weight_matching(&g);
        assert_eq!(m.edges(), &[(1, 2)]);

        let single = graph(2, &[(0, 1, 5)]);
        let m = max_weight_matching(&single);
        assert_eq!(m.total_weight(&single), Weight::int(5));
    }

    #[test]
    fn weight_matching_tie_on_path() {
        // Path weights 1,2,1: both {middle} and {two ends} reach 2.
        let g = graph(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 1)]);
        let m = max_weight_matching(&g);
        assert_eq!(m.total_weight(&g), Weight::int(2));
    }

    #[test]
    fn rational_weights_scale() {
        let g = UndirectedGraph::new(
            3,
            [
                (0, 1, Weight::new(1, 3).unwrap()),
                (1, 2, Weight::new(1, 2).unwrap()),
            ],
        )
        .unwrap();
        let m = max_weight_matching(&g);
        assert_eq!(m.edges(), &[(1, 2)]);
    }
}

//! The market graph: a directed graph with exact rational arc weights,
//! optional node labels, and a canonical, byte-stable text format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::weight::Weight;

/// A directed arc `src -> dst` with a non-negative exact weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub src: usize,
    pub dst: usize,
    pub weight: Weight,
}

/// An immutable exchange market: `n` donor-patient pairs and the compatible
/// one-way exchanges between them. Arcs are held sorted by `(src, dst)` and
/// there is at most one arc per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeInstance {
    n: usize,
    arcs: Vec<Arc>,
    /// Start offset of each node's out-arcs in `arcs` (CSR-style index).
    out_index: Vec<usize>,
    labels: Vec<Option<String>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("node index {index} out of range (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
    #[error("negative arc weight {weight} on {src} -> {dst}")]
    NegativeWeight { src: usize, dst: usize, weight: Weight },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: InstanceError,
    },
}

impl ParseError {
    fn bad(line: usize, message: impl Into<String>) -> ParseError {
        ParseError::Malformed { line, message: message.into() }
    }
}

impl ExchangeInstance {
    /// Builds a validated instance. Arcs may be given in any order; they are
    /// stored canonically sorted by `(src, dst)`.
    pub fn new(n: usize, mut arcs: Vec<Arc>) -> Result<ExchangeInstance, InstanceError> {
        for a in &arcs {
            if a.src >= n {
                return Err(InstanceError::IndexOutOfRange { index: a.src, n });
            }
            if a.dst >= n {
                return Err(InstanceError::IndexOutOfRange { index: a.dst, n });
            }
            if a.src == a.dst {
                return Err(InstanceError::SelfLoop(a.src));
            }
            if a.weight.is_negative() {
                return Err(InstanceError::NegativeWeight {
                    src: a.src,
                    dst: a.dst,
                    weight: a.weight,
                });
            }
        }
        arcs.sort_by_key(|a| (a.src, a.dst));
        for w in arcs.windows(2) {
            if w[0].src == w[1].src && w[0].dst == w[1].dst {
                return Err(InstanceError::DuplicateArc(w[0].src, w[0].dst));
            }
        }
        let mut out_index = vec![0usize; n + 1];
        for a in &arcs {
            out_index[a.src + 1] += 1;
        }
        for i in 0..n {
            out_index[i + 1] += out_index[i];
        }
        Ok(ExchangeInstance { n, arcs, out_index, labels: vec![None; n] })
    }

    pub fn with_labels(
        n: usize,
        arcs: Vec<Arc>,
        labels: Vec<Option<String>>,
    ) -> Result<ExchangeInstance, InstanceError> {
        assert_eq!(labels.len(), n, "labels must have one slot per node");
        let mut inst = ExchangeInstance::new(n, arcs)?;
        inst.labels = labels;
        Ok(inst)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn label(&self, node: usize) -> Option<&str> {
        self.labels[node].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Out-arcs of `node`, sorted by destination.
    pub fn out_arcs(&self, node: usize) -> &[Arc] {
        &self.arcs[self.out_index[node]..self.out_index[node + 1]]
    }

    pub fn has_arc(&self, src: usize, dst: usize) -> bool {
        self.arc_weight(src, dst).is_some()
    }

    pub fn arc_weight(&self, src: usize, dst: usize) -> Option<Weight> {
        let slice = self.out_arcs(src);
        slice
            .binary_search_by_key(&dst, |a| a.dst)
            .ok()
            .map(|i| slice[i].weight)
    }

    /// True iff both `u -> v` and `v -> u` exist (a pairwise exchange).
    pub fn is_mutual_pair(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.out_arcs(node).len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for a in &self.arcs {
            deg[a.dst] += 1;
        }
        deg
    }

    /// Induced subgraph on the nodes not in `removed`, with surviving nodes
    /// renumbered in increasing order of their old index. Returns the new
    /// instance and the old-to-new index map (`None` for removed nodes).
    pub fn remove_nodes(
        &self,
        removed: &BTreeSet<usize>,
    ) -> Result<(ExchangeInstance, Vec<Option<usize>>), InstanceError> {
        if let Some(&bad) = removed.iter().find(|&&v| v >= self.n) {
            return Err(InstanceError::IndexOutOfRange { index: bad, n: self.n });
        }
        let mut old_to_new = vec![None; self.n];
        let mut next = 0usize;
        for v in 0..self.n {
            if !removed.contains(&v) {
                old_to_new[v] = Some(next);
                next += 1;
            }
        }
        let arcs = self
            .arcs
            .iter()
            .filter_map(|a| {
                Some(Arc {
                    src: old_to_new[a.src]?,
                    dst: old_to_new[a.dst]?,
                    weight: a.weight,
                })
            })
            .collect();
        let labels = (0..self.n)
            .filter(|v| old_to_new[*v].is_some())
            .map(|v| self.labels[v].clone())
            .collect();
        let inst = ExchangeInstance::with_labels(next, arcs, labels)?;
        Ok((inst, old_to_new))
    }

    /// Canonical text form. `parse` of the output reproduces the instance
    /// byte for byte.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.arcs.len());
        for a in &self.arcs {
            let _ = writeln!(out, "{} {} {}", a.src, a.dst, a.weight);
        }
        for (idx, label) in self.labels.iter().enumerate() {
            if let Some(text) = label {
                let _ = writeln!(out, "label {} {}", idx, text);
            }
        }
        out
    }

    /// Parses the instance file format: a `n m` header, `m` arc lines
    /// `src dst weight`, optional trailing `label idx text` lines. Lines
    /// starting with `#` are comments. Weights are integers or `num/den`.
    pub fn parse(text: &str) -> Result<ExchangeInstance, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_no, header) = lines
            .next()
            .ok_or_else(|| ParseError::bad(1, "missing header line"))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::bad(header_no, "expected `n m` header"))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::bad(header_no, "expected `n m` header"))?;
        if it.next().is_some() {
            return Err(ParseError::bad(header_no, "trailing tokens in header"));
        }

        let mut arcs = Vec::with_capacity(m);
        for _ in 0..m {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::bad(header_no, format!("expected {m} arc lines")))?;
            let mut it = line.split_whitespace();
            let parse_idx = |t: Option<&str>| -> Result<usize, ParseError> {
                t.and_then(|t| t.parse().ok())
                    .ok_or_else(|| ParseError::bad(no, "expected `src dst weight`"))
            };
            let src = parse_idx(it.next())?;
            let dst = parse_idx(it.next())?;
            let weight: Weight = it
                .next()
                .ok_or_else(|| ParseError::bad(no, "expected `src dst weight`"))?
                .parse()
                .map_err(|e| ParseError::bad(no, format!("{e}")))?;
            if it.next().is_some() {
                return Err(ParseError::bad(no, "trailing tokens in arc line"));
            }
            // Report invariant violations with the offending line number.
            if src == dst {
                return Err(ParseError::Invalid { line: no, source: InstanceError::SelfLoop(src) });
            }
            if src >= n {
                return Err(ParseError::Invalid {
                    line: no,
                    source: InstanceError::IndexOutOfRange { index: src, n },
                });
            }
            if dst >= n {
                return Err(ParseError::Invalid {
                    line: no,
                    source: InstanceError::IndexOutOfRange { index: dst, n },
                });
            }
            if arcs.iter().any(|a: &Arc| a.src == src && a.dst == dst) {
                return Err(ParseError::Invalid {
                    line: no,
                    source: InstanceError::DuplicateArc(src, dst),
                });
            }
            if weight.is_negative() {
                return Err(ParseError::Invalid {
                    line: no,
                    source: InstanceError::NegativeWeight { src, dst, weight },
                });
            }
            arcs.push(Arc { src, dst, weight });
        }

        let mut labels = vec![None; n];
        for (no, line) in lines {
            let mut it = line.splitn(3, char::is_whitespace);
            match it.next() {
                Some("label") => {}
                _ => return Err(ParseError::bad(no, "expected `label idx text` line")),
            }
            let idx: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ParseError::bad(no, "expected `label idx text` line"))?;
            if idx >= n {
                return Err(ParseError::Invalid {
                    line: no,
                    source: InstanceError::IndexOutOfRange { index: idx, n },
                });
            }
            let text = it
                .next()
                .ok_or_else(|| ParseError::bad(no, "label line missing text"))?;
            if labels[idx].is_some() {
                return Err(ParseError::bad(no, format!("duplicate label for node {idx}")));
            }
            labels[idx] = Some(text.to_string());
        }

        ExchangeInstance::with_labels(n, arcs, labels)
            .map_err(|source| ParseError::Invalid { line: header_no, source })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(src: usize, dst: usize) -> Arc {
        Arc { src, dst, weight: Weight::ONE }
    }

    pub(crate) fn triangle() -> ExchangeInstance {
        ExchangeInstance::new(3, vec![unit(0, 1), unit(1, 2), unit(2, 0)]).unwrap()
    }

    #[test]
    fn parse_triangle() {
        let inst = ExchangeInstance::parse("3 3\n0 1 1\n1 2 1\n2 0 1").unwrap();
        assert_eq!(inst, triangle());
    }

    #[test]
    fn self_loop_reports_line() {
        let err = ExchangeInstance::parse("2 1\n0 0 1").unwrap_err();
        assert_eq!(
            err,
            ParseError::Invalid { line: 2, source: InstanceError::SelfLoop(0) }
        );
    }

    #[test]
    fn empty_graph_parses() {
        let inst = ExchangeInstance::parse("1 0").unwrap();
        assert_eq!(inst.node_count(), 1);
        assert_eq!(inst.arc_count(), 0);
        assert_eq!(ExchangeInstance::parse("0 0").unwrap().to_text(), "0 0\n");
    }

    #[test]
    fn emit_is_canonical() {
        let inst = ExchangeInstance::new(3, vec![unit(2, 0), unit(0, 1), unit(1, 2)]).unwrap();
        assert_eq!(inst.to_text(), "3 3\n0 1 1\n1 2 1\n2 0 1\n");
    }

    #[test]
    fn fractional_weight_roundtrip() {
        let inst = ExchangeInstance::new(
            2,
            vec![Arc { src: 0, dst: 1, weight: Weight::new(1, 3).unwrap() }],
        )
        .unwrap();
        let text = inst.to_text();
        assert!(text.contains("0 1 1/3"));
        assert_eq!(ExchangeInstance::parse(&text).unwrap(), inst);
    }

    #[test]
    fn comments_and_labels() {
        let text = "# a market\n2 2\n0 1 1\n1 0 2\nlabel 0 first node\nlabel 1 second";
        let inst = ExchangeInstance::parse(text).unwrap();
        assert_eq!(inst.label(0), Some("first node"));
        assert_eq!(inst.label(1), Some("second"));
        let emitted = inst.to_text();
        assert_eq!(ExchangeInstance::parse(&emitted).unwrap(), inst);
    }

    #[test]
    fn duplicate_arc_rejected() {
        let err = ExchangeInstance::parse("2 2\n0 1 1\n0 1 2").unwrap_err();
        assert_eq!(
            err,
            ParseError::Invalid { line: 3, source: InstanceError::DuplicateArc(0, 1) }
        );
        assert_eq!(
            ExchangeInstance::new(2, vec![unit(0, 1), unit(0, 1)]).unwrap_err(),
            InstanceError::DuplicateArc(0, 1)
        );
    }

    #[test]
    fn index_out_of_range_rejected() {
        let err = ExchangeInstance::parse("2 1\n0 5 1").unwrap_err();
        assert_eq!(
            err,
            ParseError::Invalid {
                line: 2,
                source: InstanceError::IndexOutOfRange { index: 5, n: 2 }
            }
        );
    }

    #[test]
    fn negative_denominator_rejected() {
        assert!(ExchangeInstance::parse("2 1\n0 1 1/-2").is_err());
        assert!(ExchangeInstance::parse("2 1\n0 1 1/0").is_err());
    }

    #[test]
    fn remove_nodes_examples() {
        let (rest, map) = triangle().remove_nodes(&BTreeSet::from([2])).unwrap();
        assert_eq!(rest.node_count(), 2);
        assert_eq!(rest.arcs(), &[unit(0, 1)]);
        assert_eq!(map, vec![Some(0), Some(1), None]);

        let (same, _) = triangle().remove_nodes(&BTreeSet::new()).unwrap();
        assert_eq!(same, triangle());

        let pair = ExchangeInstance::new(2, vec![unit(0, 1), unit(1, 0)]).unwrap();
        let (rest, _) = pair.remove_nodes(&BTreeSet::from([0])).unwrap();
        assert_eq!(rest.node_count(), 1);
        assert_eq!(rest.arc_count(), 0);

        assert!(triangle().remove_nodes(&BTreeSet::from([9])).is_err());
    }

    #[test]
    fn adjacency_queries() {
        let inst = triangle();
        assert!(inst.has_arc(0, 1));
        assert!(!inst.has_arc(1, 0));
        assert_eq!(inst.arc_weight(2, 0), Some(Weight::ONE));
        assert!(!inst.is_mutual_pair(0, 1));
        assert_eq!(inst.in_degrees(), vec![1, 1, 1]);
        assert_eq!(inst.out_degree(0), 1);
    }
}

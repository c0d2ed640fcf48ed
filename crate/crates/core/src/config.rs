//! Solver configuration shared by every clearing algorithm.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::weight::Weight;

/// Maximum allowed cycle length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthBound {
    Bounded(usize),
    Unbounded,
}

impl LengthBound {
    pub fn allows(&self, len: usize) -> bool {
        match self {
            LengthBound::Bounded(l) => len <= *l,
            LengthBound::Unbounded => true,
        }
    }
}

impl fmt::Display for LengthBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthBound::Bounded(l) => write!(f, "{l}"),
            LengthBound::Unbounded => write!(f, "unbounded"),
        }
    }
}

impl FromStr for LengthBound {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("unbounded") || s == "inf" {
            return Ok(LengthBound::Unbounded);
        }
        let l: usize = s
            .parse()
            .map_err(|_| ConfigError::BadLength(s.to_string()))?;
        if l < 2 {
            return Err(ConfigError::LengthTooSmall(l));
        }
        Ok(LengthBound::Bounded(l))
    }
}

/// What a clearing maximizes: total arc weight or total covered nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Size,
    Weight,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Size => write!(f, "size"),
            Objective::Weight => write!(f, "weight"),
        }
    }
}

impl FromStr for Objective {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "size" => Ok(Objective::Size),
            "weight" => Ok(Objective::Weight),
            other => Err(ConfigError::BadObjective(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cycle length bound must be at least 2, got {0}")]
    LengthTooSmall(usize),
    #[error("invalid cycle length bound `{0}`")]
    BadLength(String),
    #[error("invalid objective `{0}` (expected `size` or `weight`)")]
    BadObjective(String),
    #[error("matching stage weight must be positive, got {0}")]
    NonPositiveStageWeight(Weight),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub length_bound: LengthBound,
    pub objective: Objective,
    pub seed: u64,
    /// Constant weight rewarding 2-cycle preservation in the matching-based
    /// pipeline's reweighted graph.
    pub stage_weight: Weight,
    /// Run the greedy heuristic over leftover nodes after the matching-based
    /// pipeline.
    pub cleanup: bool,
}

impl SolverConfig {
    pub fn new(length_bound: LengthBound, objective: Objective) -> SolverConfig {
        SolverConfig { length_bound, objective, ..SolverConfig::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let LengthBound::Bounded(l) = self.length_bound {
            if l < 2 {
                return Err(ConfigError::LengthTooSmall(l));
            }
        }
        if self.stage_weight <= Weight::ZERO {
            return Err(ConfigError::NonPositiveStageWeight(self.stage_weight));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            length_bound: LengthBound::Bounded(3),
            objective: Objective::Size,
            seed: 0,
            stage_weight: Weight::int(10),
            cleanup: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_contract() {
        let c = SolverConfig::default();
        assert_eq!(c.length_bound, LengthBound::Bounded(3));
        assert_eq!(c.stage_weight, Weight::int(10));
        assert!(!c.cleanup);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = SolverConfig::default();
        c.length_bound = LengthBound::Bounded(1);
        assert!(c.validate().is_err());
        let mut c = SolverConfig::default();
        c.stage_weight = Weight::ZERO;
        assert!(c.validate().is_err());
    }

    #[test]
    fn parse_length_bound() {
        assert_eq!("3".parse::<LengthBound>().unwrap(), LengthBound::Bounded(3));
        assert_eq!(
            "unbounded".parse::<LengthBound>().unwrap(),
            LengthBound::Unbounded
        );
        assert!("1".parse::<LengthBound>().is_err());
    }
}

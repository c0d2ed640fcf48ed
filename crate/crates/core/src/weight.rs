//! Exact rational arc weights.
//!
//! Gadget instances carry weights like 1/3 whose cycle sums must come out
//! exactly (three 1/3 arcs make a weight-1 cycle, not 0.999...), so weights
//! are reduced rationals rather than floats.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// A rational weight in reduced canonical form (positive denominator,
/// gcd(|num|, den) = 1). Arithmetic is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Ratio<i64>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("denominator must be positive, got {0}")]
    NonPositiveDenominator(i64),
    #[error("malformed weight `{0}`")]
    Malformed(String),
}

impl Weight {
    pub const ZERO: Weight = Weight(Ratio::new_raw(0, 1));
    pub const ONE: Weight = Weight(Ratio::new_raw(1, 1));

    /// Builds `num/den`, reducing to canonical form. `den` must be positive.
    pub fn new(num: i64, den: i64) -> Result<Weight, WeightError> {
        if den <= 0 {
            return Err(WeightError::NonPositiveDenominator(den));
        }
        Ok(Weight(Ratio::new(num, den)))
    }

    pub fn int(n: i64) -> Weight {
        Weight(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::ZERO
    }
}

impl From<i64> for Weight {
    fn from(n: i64) -> Self {
        Weight::int(n)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        Weight(self.0 * rhs.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    /// Parses `n` or `num/den` with a positive denominator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightError::Malformed(s.to_string());
        match s.split_once('/') {
            None => {
                let n: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(Weight::int(n))
            }
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                let den: i64 = den.trim().parse().map_err(|_| bad())?;
                Weight::new(num, den)
            }
        }
    }
}

/// Scales a slice of weights to integers by the least common multiple of the
/// denominators. The result preserves order and ratios, which is all the
/// integer matching kernels need.
pub fn scale_to_integers(weights: &[Weight]) -> Vec<i64> {
    let lcm = weights
        .iter()
        .fold(1i64, |acc, w| acc.lcm(&w.denom()));
    weights
        .iter()
        .map(|w| w.numer() * (lcm / w.denom()))
        .collect()
}

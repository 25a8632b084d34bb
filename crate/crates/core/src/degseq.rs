//! Degree sequences, degree classes and parameter bounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ratio::{self, Rational};

/// A finite multiset of vertex degrees, kept in input order.
///
/// The length and degree sum are cached. Canonical (non-increasing) copies
/// are produced on demand by [`DegreeSequence::sorted`], so the input order
/// stays available for reporting witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
    sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSequenceError {
    #[error("empty degree sequence")]
    Empty,
    #[error("negative degree `{0}`")]
    Negative(String),
    #[error("invalid degree `{0}`")]
    InvalidToken(String),
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Self {
        let sum = degrees.iter().sum();
        DegreeSequence { degrees, sum }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.sum
    }

    pub fn max(&self) -> Option<usize> {
        self.degrees.iter().copied().max()
    }

    pub fn min(&self) -> Option<usize> {
        self.degrees.iter().copied().min()
    }

    /// Non-increasing copy of the degrees.
    pub fn sorted(&self) -> Vec<usize> {
        let mut sorted = self.degrees.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted
    }

    pub fn canonical(&self) -> DegreeSequence {
        DegreeSequence {
            degrees: self.sorted(),
            sum: self.sum,
        }
    }

    /// The positive entries together with their positions in `self`.
    pub fn nonzero(&self) -> (DegreeSequence, Vec<usize>) {
        let (positions, degrees): (Vec<usize>, Vec<usize>) = self
            .degrees
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (i, d))
            .unzip();
        (DegreeSequence::new(degrees), positions)
    }

    /// Erdős–Gallai test evaluated only at the drop points `d_k > d_{k+1}`
    /// and at `k = n`.
    pub fn is_graphic(&self) -> bool {
        if self.sum % 2 != 0 {
            return false;
        }
        let sorted = self.sorted();
        let n = sorted.len();
        let mut prefix = 0;
        for k in 1..=n {
            prefix += sorted[k - 1];
            if k < n && sorted[k - 1] == sorted[k] {
                continue;
            }
            let tail: usize = sorted[k..].iter().map(|&d| d.min(k)).sum();
            if prefix > k * (k - 1) + tail {
                return false;
            }
        }
        true
    }

    /// Whether every degree lies in `[c1·n, c2·n]`, compared exactly.
    pub fn in_class(&self, bounds: &ParamBounds) -> bool {
        let n = BigInt::from(self.len());
        let (lo, hi) = (&bounds.c1 * &n, &bounds.c2 * &n);
        self.degrees.iter().all(|&d| {
            let d = ratio::int(d);
            lo <= d && d <= hi
        })
    }
}

impl From<Vec<usize>> for DegreeSequence {
    fn from(degrees: Vec<usize>) -> Self {
        DegreeSequence::new(degrees)
    }
}

impl FromStr for DegreeSequence {
    type Err = ParseSequenceError;

    /// Whitespace- or comma-separated nonnegative integers.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let degrees = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                if tok.starts_with('-') && tok.len() > 1 && tok[1..].bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParseSequenceError::Negative(tok.to_string()));
                }
                if !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParseSequenceError::InvalidToken(tok.to_string()));
                }
                tok.parse::<usize>()
                    .map_err(|_| ParseSequenceError::InvalidToken(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if degrees.is_empty() {
            return Err(ParseSequenceError::Empty);
        }
        Ok(DegreeSequence::new(degrees))
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The set of length-`n` sequences with sum `sigma` and all degrees in
/// `[min_degree, max_degree]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeClass {
    pub n: usize,
    pub sigma: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("minimum degree {min} exceeds maximum degree {max}")]
    InvertedBounds { min: usize, max: usize },
    #[error("class of length zero")]
    ZeroLength,
    #[error("no sequence of length {n} with degrees in [{min}, {max}] sums to {sigma}")]
    Empty {
        n: usize,
        sigma: usize,
        min: usize,
        max: usize,
    },
}

impl DegreeClass {
    pub fn new(n: usize, sigma: usize, min_degree: usize, max_degree: usize) -> Self {
        DegreeClass {
            n,
            sigma,
            min_degree,
            max_degree,
        }
    }

    /// Checks `d <= Δ`, `n >= 1` and `n·d <= Σ <= n·Δ`.
    pub fn validate(&self) -> Result<(), ClassError> {
        if self.min_degree > self.max_degree {
            return Err(ClassError::InvertedBounds {
                min: self.min_degree,
                max: self.max_degree,
            });
        }
        if self.n == 0 {
            return Err(ClassError::ZeroLength);
        }
        if self.n * self.min_degree > self.sigma || self.sigma > self.n * self.max_degree {
            return Err(ClassError::Empty {
                n: self.n,
                sigma: self.sigma,
                min: self.min_degree,
                max: self.max_degree,
            });
        }
        Ok(())
    }

    pub fn contains(&self, seq: &DegreeSequence) -> bool {
        seq.len() == self.n
            && seq.sum() == self.sigma
            && seq
                .degrees()
                .iter()
                .all(|&d| self.min_degree <= d && d <= self.max_degree)
    }
}

/// Degree bounds `c1·n <= d_i <= c2·n` as exact rationals with
/// `0 <= c1 <= c2 <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamBounds {
    c1: Rational,
    c2: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bounds must satisfy 0 <= c1 <= c2 <= 1, got c1 = {c1}, c2 = {c2}")]
pub struct BoundsError {
    pub c1: String,
    pub c2: String,
}

impl ParamBounds {
    pub fn new(c1: Rational, c2: Rational) -> Result<Self, BoundsError> {
        if c1.is_negative() || c1 > c2 || c2 > Rational::one() {
            return Err(BoundsError {
                c1: ratio::Display(&c1).to_string(),
                c2: ratio::Display(&c2).to_string(),
            });
        }
        Ok(ParamBounds { c1, c2 })
    }

    /// Convenience constructor from machine-integer fractions.
    pub fn from_fractions(c1: (i64, i64), c2: (i64, i64)) -> Result<Self, BoundsError> {
        ParamBounds::new(ratio::ratio(c1.0, c1.1), ratio::ratio(c2.0, c2.1))
    }

    pub fn c1(&self) -> &Rational {
        &self.c1
    }

    pub fn c2(&self) -> &Rational {
        &self.c2
    }

    /// Integer degree window `[ceil(c1·n), floor(c2·n)]`, or `None` if empty.
    pub fn degree_window(&self, n: usize) -> Option<(usize, usize)> {
        let n = BigInt::from(n);
        let lo = ratio::ceil(&(&self.c1 * &n));
        let hi = ratio::floor(&(&self.c2 * &n));
        if lo > hi {
            return None;
        }
        let lo: usize = lo.try_into().ok()?;
        let hi: usize = hi.try_into().ok()?;
        Some((lo, hi))
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec())
    }

    #[test]
    fn parse_examples() {
        let s: DegreeSequence = "3 3 1 1".parse().unwrap();
        assert_eq!(s.degrees(), &[3, 3, 1, 1]);
        assert_eq!((s.len(), s.sum()), (4, 8));
        assert_eq!("2,2,2".parse::<DegreeSequence>().unwrap().degrees(), &[2, 2, 2]);
        assert_eq!(" 1,\n 2\t3 ".parse::<DegreeSequence>().unwrap().degrees(), &[1, 2, 3]);
        assert_eq!(
            "2 -1".parse::<DegreeSequence>(),
            Err(ParseSequenceError::Negative("-1".into()))
        );
        assert_eq!(
            "2 x".parse::<DegreeSequence>(),
            Err(ParseSequenceError::InvalidToken("x".into()))
        );
        assert_eq!(
            "2 1.5".parse::<DegreeSequence>(),
            Err(ParseSequenceError::InvalidToken("1.5".into()))
        );
        assert_eq!("  ".parse::<DegreeSequence>(), Err(ParseSequenceError::Empty));
    }

    #[test]
    fn graphic_examples() {
        assert!(seq(&[3, 3, 3, 3]).is_graphic());
        assert!(!seq(&[3, 3, 1, 1]).is_graphic());
        assert!(!seq(&[1, 1, 1]).is_graphic());
        assert!(seq(&[]).is_graphic());
        assert!(seq(&[0, 0]).is_graphic());
        assert!(!seq(&[2]).is_graphic());
    }

    #[test]
    fn class_membership_is_exact() {
        let third = ParamBounds::from_fractions((1, 3), (1, 3)).unwrap();
        assert!(seq(&[2; 6]).in_class(&third));
        let b = ParamBounds::from_fractions((1, 3), (1, 2)).unwrap();
        assert!(!seq(&[3, 3, 3, 3]).in_class(&b));
        let full = ParamBounds::from_fractions((0, 1), (1, 1)).unwrap();
        assert!(seq(&[2, 2, 3]).in_class(&full));
    }

    #[test]
    fn bounds_validation() {
        assert!(ParamBounds::from_fractions((1, 2), (1, 3)).is_err());
        assert!(ParamBounds::from_fractions((-1, 2), (1, 3)).is_err());
        assert!(ParamBounds::from_fractions((0, 1), (3, 2)).is_err());
        let b = ParamBounds::from_fractions((1, 10), (2, 5)).unwrap();
        assert_eq!(b.degree_window(54), Some((6, 21)));
        let narrow = ParamBounds::from_fractions((1, 3), (1, 3)).unwrap();
        assert_eq!(narrow.degree_window(4), None);
    }

    #[test]
    fn class_validation() {
        assert!(DegreeClass::new(5, 10, 1, 3).validate().is_ok());
        assert_eq!(
            DegreeClass::new(3, 2, 1, 3).validate(),
            Err(ClassError::Empty { n: 3, sigma: 2, min: 1, max: 3 })
        );
        assert!(DegreeClass::new(3, 3, 2, 1).validate().is_err());
        assert!(DegreeClass::new(0, 0, 0, 0).validate().is_err());
        assert!(DegreeClass::new(3, 5, 1, 2).contains(&seq(&[2, 2, 1])));
        assert!(!DegreeClass::new(3, 5, 1, 2).contains(&seq(&[3, 1, 1])));
    }

    #[test]
    fn nonzero_keeps_positions() {
        let (s, pos) = seq(&[0, 3, 0, 1]).nonzero();
        assert_eq!(s.degrees(), &[3, 1]);
        assert_eq!(pos, vec![1, 3]);
    }
}

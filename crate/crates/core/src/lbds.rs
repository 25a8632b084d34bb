//! Least balanced degree sequences and the fast bigraphicality check for a
//! pair of them.
//!
//! Within a [`DegreeClass`] `(n, Σ, d, Δ)` the least balanced member puts
//! as many vertices as possible at `Δ`, one vertex at an intermediate
//! degree, and the rest at `d`:
//!
//! ```text
//! (Δ, ..., Δ, d_int, d, ..., d)    k = floor((Σ - n·d) / (Δ - d))
//!  \___k___/         \_n-k-1_/     d_int = Σ - k·Δ - (n-k-1)·d
//! ```
//!
//! Balancing hinge-flips move from this sequence to every other member of
//! the class without breaking bigraphicality, so if the pair of least
//! balanced members is bigraphic, every pair of members is.

use thiserror::Error;

use crate::degseq::{ClassError, DegreeClass, DegreeSequence};
use crate::gale_ryser::BipartitePair;

/// Shape of the least balanced member of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LbdsShape {
    /// Number of leading `Δ` entries.
    pub k: usize,
    pub intermediate: usize,
    /// Number of trailing `d` entries, `n - k - 1`.
    pub tail: usize,
    pub class: DegreeClass,
}

impl LbdsShape {
    pub fn of(class: DegreeClass) -> Result<Self, ClassError> {
        class.validate()?;
        let DegreeClass {
            n,
            sigma,
            min_degree: d,
            max_degree: delta,
        } = class;
        if delta == d {
            // Σ = n·d is forced; the class is the single constant sequence.
            return Ok(LbdsShape {
                k: n - 1,
                intermediate: d,
                tail: 0,
                class,
            });
        }
        // k = n only when Σ = n·Δ; cap it so the shape keeps one
        // intermediate slot, which then equals Δ.
        let k = ((sigma - n * d) / (delta - d)).min(n - 1);
        let tail = n - k - 1;
        let intermediate = sigma - k * delta - tail * d;
        Ok(LbdsShape {
            k,
            intermediate,
            tail,
            class,
        })
    }

    pub fn to_sequence(&self) -> DegreeSequence {
        let c = &self.class;
        let mut degrees = vec![c.max_degree; self.k];
        degrees.push(self.intermediate);
        degrees.extend(std::iter::repeat(c.min_degree).take(self.tail));
        DegreeSequence::new(degrees)
    }
}

/// The least balanced degree sequence of a nonempty class.
pub fn lbds(class: DegreeClass) -> Result<DegreeSequence, ClassError> {
    LbdsShape::of(class).map(|shape| shape.to_sequence())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LbdsError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("class sums differ ({0} vs {1})")]
    UnequalSums(usize, usize),
}

/// Gale–Ryser indices that decide a pair of least balanced sequences:
/// `floor` and `ceil` of `(Σ - n·d) / (Δ - d)` for the first class, plus
/// `k = n`. Indices outside `1..=n` are dropped and duplicates merged.
pub fn critical_indices(class: &DegreeClass) -> Vec<usize> {
    let n = class.n;
    let mut ks = Vec::with_capacity(3);
    if class.max_degree > class.min_degree {
        let excess = class.sigma - n * class.min_degree;
        let spread = class.max_degree - class.min_degree;
        ks.push(excess / spread);
        ks.push(excess.div_ceil(spread));
    }
    // The final index is a drop point of every sequence; without it a V
    // degree larger than n slips through.
    ks.push(n);
    ks.retain(|&k| (1..=n).contains(&k));
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// Whether `(lbds(first), lbds(second))` is bigraphic, checking only the
/// inequalities at [`critical_indices`] of `first`.
pub fn lbds_pair_bigraphic(first: DegreeClass, second: DegreeClass) -> Result<bool, LbdsError> {
    if first.sigma != second.sigma {
        return Err(LbdsError::UnequalSums(first.sigma, second.sigma));
    }
    let pair = BipartitePair::new(lbds(first)?, lbds(second)?);
    Ok(critical_indices(&first)
        .into_iter()
        .all(|k| pair.inequality_holds_at(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: usize, sigma: usize, delta: usize, d: usize) -> DegreeClass {
        DegreeClass::new(n, sigma, d, delta)
    }

    #[test]
    fn lbds_examples() {
        assert_eq!(lbds(class(5, 10, 3, 1)).unwrap().degrees(), &[3, 3, 2, 1, 1]);
        let shape = LbdsShape::of(class(5, 10, 3, 1)).unwrap();
        assert_eq!((shape.k, shape.intermediate, shape.tail), (2, 2, 2));
        assert_eq!(lbds(class(4, 8, 2, 2)).unwrap().degrees(), &[2, 2, 2, 2]);
        assert_eq!(lbds(class(3, 6, 4, 1)).unwrap().degrees(), &[4, 1, 1]);
    }

    #[test]
    fn exact_division_collapses_intermediate_to_min() {
        // (10 - 4·1) / (3 - 1) = 3 exactly.
        let shape = LbdsShape::of(class(4, 10, 3, 1)).unwrap();
        assert_eq!(shape.to_sequence().degrees(), &[3, 3, 3, 1]);
        assert_eq!(shape.intermediate, 1);
    }

    #[test]
    fn full_class_is_all_max() {
        assert_eq!(lbds(class(3, 9, 3, 0)).unwrap().degrees(), &[3, 3, 3]);
    }

    #[test]
    fn empty_class_rejected() {
        assert!(matches!(lbds(class(3, 10, 3, 1)), Err(ClassError::Empty { .. })));
        assert!(matches!(lbds(class(3, 2, 3, 1)), Err(ClassError::Empty { .. })));
    }

    #[test]
    fn pair_examples() {
        let c = class(3, 6, 2, 2);
        assert!(lbds_pair_bigraphic(c, c).unwrap());
        assert!(lbds_pair_bigraphic(class(2, 6, 3, 3), class(4, 6, 2, 1)).unwrap());
        assert!(!lbds_pair_bigraphic(class(2, 8, 4, 4), class(3, 8, 3, 2)).unwrap());
        assert_eq!(
            lbds_pair_bigraphic(class(2, 6, 3, 3), class(3, 8, 3, 2)),
            Err(LbdsError::UnequalSums(6, 8))
        );
    }

    #[test]
    fn last_index_is_critical() {
        // lbds = (2) against (2, 0, 0, 0, 0): floor and ceil are both 0.
        let first = class(1, 2, 4, 2);
        let second = class(5, 2, 2, 0);
        assert_eq!(critical_indices(&first), vec![1]);
        assert!(!lbds_pair_bigraphic(first, second).unwrap());
    }
}

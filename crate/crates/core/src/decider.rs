//! Deciding bipartite realizability for degree sequences with degrees in
//! `[c1·n, c2·n]`.
//!
//! Parameter pairs fall into one of four regions:
//!
//! | region              | condition                                   | status                    |
//! |---------------------|---------------------------------------------|---------------------------|
//! | `LowTractable`      | `c2² + c1·c2 - c1 <= 0`, `c2 < 1`            | any equal-sum split works |
//! | `HighTractable`     | `c1 > 1/2`                                  | never bipartite           |
//! | `ConditionallyHard` | `0 < c2 < 1/2`, `(c1 + c2)² > 2·c1`          | as hard as the general case |
//! | `Unclassified`      | anything else                               | no guarantee              |
//!
//! The first condition is the square-root-free form of
//! `c2 <= (sqrt(c1·(c1+4)) - c1) / 2`, the third of `c2 > sqrt(2·c1) - c1`.
//! All region tests run on exact rationals so boundary points, which belong
//! to the tractable region, classify correctly.

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::degseq::{DegreeSequence, ParamBounds};
use crate::gale_ryser::{construct_realization, LabeledRealization};
use crate::partition::{self, Side, SplitWitness};
use crate::ratio::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionClass {
    LowTractable,
    HighTractable,
    ConditionallyHard,
    Unclassified,
}

impl RegionClass {
    pub fn name(self) -> &'static str {
        match self {
            RegionClass::LowTractable => "LowTractable",
            RegionClass::HighTractable => "HighTractable",
            RegionClass::ConditionallyHard => "ConditionallyHard",
            RegionClass::Unclassified => "Unclassified",
        }
    }
}

pub fn classify_region(bounds: &ParamBounds) -> RegionClass {
    let (c1, c2) = (bounds.c1(), bounds.c2());
    let half = ratio::ratio(1, 2);
    if *c1 > half {
        return RegionClass::HighTractable;
    }
    if is_low_tractable(c1, c2) {
        return RegionClass::LowTractable;
    }
    let sum = c1 + c2;
    if c2.is_positive() && *c2 < half && &sum * &sum > c1 * ratio::int(2) {
        return RegionClass::ConditionallyHard;
    }
    RegionClass::Unclassified
}

/// `c1 >= c2² / (1 - c2)` written as `c2² + c1·c2 - c1 <= 0`, with `c2 < 1`.
fn is_low_tractable(c1: &Rational, c2: &Rational) -> bool {
    *c2 < Rational::one() && c1 <= c2 && !(c2 * c2 + c1 * c2 - c1).is_positive()
}

/// The upper edge of the low tractable region as a function of `c1`.
#[derive(Debug, Clone)]
pub struct Threshold {
    pub c1: Rational,
    /// `(sqrt(c1·(c1+4)) - c1) / 2` in floating point.
    pub value: f64,
}

impl Threshold {
    /// Exact test of `c2 <= value`, via `c1·(1 - c2) >= c2²` for `c2 < 1`.
    pub fn at_or_below(&self, c2: &Rational) -> bool {
        !c2.is_negative()
            && *c2 < Rational::one()
            && !(c2 * c2 + &self.c1 * c2 - &self.c1).is_positive()
    }
}

pub fn threshold_c2(c1: &Rational) -> Threshold {
    Threshold {
        c1: c1.clone(),
        value: threshold_value(ratio::to_f64(c1)),
    }
}

fn threshold_value(c1: f64) -> f64 {
    ((c1 * (c1 + 4.0)).sqrt() - c1) / 2.0
}

/// Maximizes `threshold(c1) - c1` over `[0, 1/2]`; returns `(argmax, max)`.
///
/// The objective is concave, so its derivative
/// `(c1 + 2) / (2·sqrt(c1·(c1+4))) - 3/2` is decreasing and a bisection on
/// its sign pins the maximizer to machine precision.
pub fn max_degree_gap() -> (f64, f64) {
    let slope = |c: f64| (c + 2.0) / (2.0 * (c * (c + 4.0)).sqrt()) - 1.5;
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, 0.5);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let argmax = 0.5 * (lo + hi);
    (argmax, threshold_value(argmax) - argmax)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Bipartite,
    NotBipartite,
    Undecided,
}

impl Verdict {
    /// CLI exit code: 0, 1 or 2.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Bipartite => 0,
            Verdict::NotBipartite => 1,
            Verdict::Undecided => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    MinDegreeTooLarge,
    NoEqualSumSplit,
    GaleRyserViolation,
    SplitFound,
    ExactSearch,
    ExactSearchAvailable,
    PrecheckDegreeAtLeastHalfSum,
    /// Exact search gave up before finding an answer.
    BudgetExceeded,
    #[serde(rename = "trivial-(1,1)")]
    TrivialPair,
}

/// Outcome of a decision with its witnesses.
///
/// A `Bipartite` verdict always carries both a split and a labeled
/// realization whose vertex degrees reproduce the input sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub reason: Reason,
    pub split: Option<SplitWitness>,
    pub realization: Option<LabeledRealization>,
    pub region: Option<RegionClass>,
}

impl Decision {
    fn negative(reason: Reason) -> Self {
        Decision {
            verdict: Verdict::NotBipartite,
            reason,
            split: None,
            realization: None,
            region: None,
        }
    }

    /// Checks a `Bipartite` verdict's witnesses against `seq`; other
    /// verdicts pass trivially.
    pub fn verify(&self, seq: &DegreeSequence) -> bool {
        if self.verdict != Verdict::Bipartite {
            return true;
        }
        match (&self.split, &self.realization) {
            (Some(split), Some(real)) => {
                split.is_valid_for(seq)
                    && real.realizes(seq)
                    && real.u_labels == split.u_indices()
                    && real.v_labels == split.v_indices()
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("sequence is outside the degree bounds [c1·n, c2·n]")]
    OutOfClass,
    #[error("exact search exceeded its budget of {0} splits")]
    BudgetExceeded(usize),
    #[error("equal-sum split in the low tractable region failed to realize: {0}")]
    TractabilityViolated(String),
}

/// Realizes a given split as a labeled graph, or `None` if not bigraphic.
pub fn realize_split(seq: &DegreeSequence, split: &SplitWitness) -> Option<LabeledRealization> {
    let graph = construct_realization(&split.pair(seq))?;
    Some(LabeledRealization {
        graph,
        u_labels: split.u_indices(),
        v_labels: split.v_indices(),
    })
}

fn positive(split: SplitWitness, real: LabeledRealization, reason: Reason) -> Decision {
    Decision {
        verdict: Verdict::Bipartite,
        reason,
        split: Some(split),
        realization: Some(real),
        region: None,
    }
}

/// Cheap rules that settle a sequence outright, or `None` to pass through.
///
/// Zero entries are ignored by every rule (and land on side `V` in any
/// witness). In order: odd sum; a degree above half the sum; two or more
/// degrees equal to half the sum unless the sequence is `(1, 1)`; `(1, 1)`
/// itself; exactly one degree equal to half the sum, which forces that
/// vertex alone on its side; minimum positive degree above half the number
/// of positive entries.
pub fn precheck(seq: &DegreeSequence) -> Option<Decision> {
    let (positive_seq, positions) = seq.nonzero();
    let sigma = seq.sum();
    if sigma % 2 != 0 {
        return Some(Decision::negative(Reason::NoEqualSumSplit));
    }
    if sigma == 0 {
        // Empty graph.
        let split = SplitWitness {
            sides: vec![Side::V; seq.len()],
            half_sum: 0,
        };
        let real = realize_split(seq, &split).expect("empty graph");
        return Some(positive(split, real, Reason::TrivialPair));
    }
    let half = sigma / 2;
    let d = positive_seq.degrees();
    if d.iter().any(|&x| x > half) {
        return Some(Decision::negative(Reason::PrecheckDegreeAtLeastHalfSum));
    }
    let at_half: Vec<usize> = (0..d.len()).filter(|&i| d[i] == half).collect();
    if d == [1, 1] {
        let mut sides = vec![Side::V; seq.len()];
        sides[positions[0]] = Side::U;
        let split = SplitWitness { sides, half_sum: 1 };
        let real = realize_split(seq, &split).expect("single edge");
        return Some(positive(split, real, Reason::TrivialPair));
    }
    if at_half.len() >= 2 {
        return Some(Decision::negative(Reason::PrecheckDegreeAtLeastHalfSum));
    }
    if let [i] = at_half[..] {
        let mut sides = vec![Side::V; seq.len()];
        sides[positions[i]] = Side::U;
        let split = SplitWitness {
            sides,
            half_sum: half,
        };
        // The split is forced; it fails only when the rest are not all 1s.
        return Some(match realize_split(seq, &split) {
            Some(real) => positive(split, real, Reason::PrecheckDegreeAtLeastHalfSum),
            None => Decision::negative(Reason::PrecheckDegreeAtLeastHalfSum),
        });
    }
    let min = d.iter().copied().min().unwrap_or(0);
    if 2 * min > d.len() {
        return Some(Decision::negative(Reason::MinDegreeTooLarge));
    }
    None
}

/// Decision for a sequence inside the bounds' degree window.
///
/// In the low tractable region the answer is "bipartite iff an equal-sum
/// split exists", and the witness realizes the first split the subset-sum
/// search finds. Above `c1 = 1/2` every sequence is rejected. Elsewhere the
/// verdict is `Undecided`; [`decide_exact`] can settle it.
pub fn decide_bdr(seq: &DegreeSequence, bounds: &ParamBounds) -> Result<Decision, DecideError> {
    if !seq.in_class(bounds) {
        return Err(DecideError::OutOfClass);
    }
    let region = classify_region(bounds);
    let decision = match precheck(seq) {
        Some(decision) => decision,
        None => match region {
            RegionClass::HighTractable => Decision::negative(Reason::MinDegreeTooLarge),
            RegionClass::LowTractable => match partition::find_equal_sum_split(seq) {
                None => Decision::negative(Reason::NoEqualSumSplit),
                Some(split) => {
                    let real = realize_split(seq, &split).ok_or_else(|| {
                        DecideError::TractabilityViolated(format!(
                            "sequence ({seq}), U = {:?}",
                            split.u_indices()
                        ))
                    })?;
                    positive(split, real, Reason::SplitFound)
                }
            },
            _ => Decision {
                verdict: Verdict::Undecided,
                reason: Reason::ExactSearchAvailable,
                split: None,
                realization: None,
                region: None,
            },
        },
    };
    Ok(Decision {
        region: Some(region),
        ..decision
    })
}

/// Default cap on the number of splits [`decide_exact`] examines.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Exhaustive decision: tries every equal-sum split (up to permuting equal
/// degrees) against Gale–Ryser.
///
/// Fails with [`DecideError::BudgetExceeded`] rather than answer once more
/// than `budget` splits have been examined.
pub fn decide_exact(seq: &DegreeSequence, budget: usize) -> Result<Decision, DecideError> {
    if let Some(decision) = precheck(seq) {
        return Ok(decision);
    }
    let mut examined = 0;
    for split in partition::enumerate_multiset_splits(seq) {
        examined += 1;
        if examined > budget {
            return Err(DecideError::BudgetExceeded(budget));
        }
        if split.pair().is_bigraphic() {
            let witness = split.witness(seq);
            let real = realize_split(seq, &witness)
                .expect("bigraphic split has a greedy realization");
            return Ok(positive(witness, real, Reason::ExactSearch));
        }
    }
    Ok(Decision::negative(if examined == 0 {
        Reason::NoEqualSumSplit
    } else {
        Reason::GaleRyserViolation
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    fn bounds(c1: (i64, i64), c2: (i64, i64)) -> ParamBounds {
        ParamBounds::from_fractions(c1, c2).unwrap()
    }

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec())
    }

    #[test]
    fn region_examples() {
        assert_eq!(classify_region(&bounds((1, 3), (1, 3))), RegionClass::LowTractable);
        assert_eq!(classify_region(&bounds((3, 5), (7, 10))), RegionClass::HighTractable);
        assert_eq!(
            classify_region(&bounds((1, 10), (2, 5))),
            RegionClass::ConditionallyHard
        );
        assert_eq!(classify_region(&bounds((0, 1), (0, 1))), RegionClass::LowTractable);
        assert_eq!(classify_region(&bounds((0, 1), (1, 1))), RegionClass::Unclassified);
        // Not hard ((17/20)² < 4/5) but inside the low region.
        assert_eq!(classify_region(&bounds((2, 5), (9, 20))), RegionClass::LowTractable);
        assert_eq!(classify_region(&bounds((1, 2), (1, 2))), RegionClass::LowTractable);
    }

    #[test]
    fn region_boundary_is_inclusive() {
        // c1 = 1/2: threshold is exactly 1/2.
        assert!(threshold_c2(&ratio(1, 2)).at_or_below(&ratio(1, 2)));
        // c2 = 1/3 needs c1 >= (1/9)/(2/3) = 1/6.
        assert_eq!(classify_region(&bounds((1, 6), (1, 3))), RegionClass::LowTractable);
        assert_eq!(classify_region(&bounds((1, 7), (1, 3))), RegionClass::Unclassified);
        // c2 = sqrt(2·c1) - c1 at c1 = 1/8 is 3/8: on the curve, so not hard.
        assert_eq!(classify_region(&bounds((1, 8), (3, 8))), RegionClass::Unclassified);
        assert_eq!(
            classify_region(&bounds((1, 8), (19, 50))),
            RegionClass::ConditionallyHard
        );
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_c2(&ratio(0, 1)).value, 0.0);
        assert!((threshold_c2(&ratio(1, 2)).value - 0.5).abs() < 1e-15);
        let c1_star = 1.5 * 2f64.sqrt() - 2.0;
        let t = threshold_value(c1_star);
        assert!((t - c1_star - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!((t - c1_star - 0.17157).abs() < 1e-5);
    }

    #[test]
    fn max_gap_examples() {
        let (arg, gap) = max_degree_gap();
        assert!((gap - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-9);
        assert!((arg - (1.5 * 2f64.sqrt() - 2.0)).abs() < 1e-6);
        assert!((gap - 0.171573).abs() < 1e-6);
        assert!((arg - 0.121320).abs() < 1e-6);
        assert_eq!(threshold_value(0.0) - 0.0, 0.0);
    }

    #[test]
    fn precheck_examples() {
        let d = precheck(&seq(&[1, 1])).unwrap();
        assert_eq!((d.verdict, d.reason), (Verdict::Bipartite, Reason::TrivialPair));
        assert!(d.verify(&seq(&[1, 1])));

        let d = precheck(&seq(&[3, 3, 3, 3])).unwrap();
        assert_eq!((d.verdict, d.reason), (Verdict::NotBipartite, Reason::MinDegreeTooLarge));

        assert!(precheck(&seq(&[4, 2, 1, 1, 1, 1, 1, 1])).is_none());

        let d = precheck(&seq(&[1, 1, 1])).unwrap();
        assert_eq!(d.reason, Reason::NoEqualSumSplit);
        let d = precheck(&seq(&[2, 2])).unwrap();
        assert_eq!(
            (d.verdict, d.reason),
            (Verdict::NotBipartite, Reason::PrecheckDegreeAtLeastHalfSum)
        );
        let d = precheck(&seq(&[5, 1, 1, 1])).unwrap();
        assert_eq!(d.reason, Reason::PrecheckDegreeAtLeastHalfSum);
    }

    #[test]
    fn precheck_star_and_zeros() {
        let s = seq(&[0, 3, 1, 0, 1, 1]);
        let d = precheck(&s).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        assert!(d.verify(&s));
        assert_eq!(d.split.as_ref().unwrap().u_indices(), vec![1]);

        // One degree at half the sum but the rest cannot hang off it.
        let d = precheck(&seq(&[3, 2, 1])).unwrap();
        assert_eq!(d.verdict, Verdict::NotBipartite);

        let s = seq(&[0, 1, 1, 0]);
        let d = precheck(&s).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        assert!(d.verify(&s));

        let s = seq(&[0, 0]);
        let d = precheck(&s).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        assert!(d.verify(&s));
    }

    #[test]
    fn decide_bdr_examples() {
        let s = seq(&[2; 6]);
        let d = decide_bdr(&s, &bounds((1, 3), (1, 3))).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        assert_eq!(d.region, Some(RegionClass::LowTractable));
        assert!(d.verify(&s));
        assert_eq!(d.realization.as_ref().unwrap().graph.edge_count(), 6);

        let d = decide_bdr(&seq(&[3; 4]), &bounds((3, 4), (3, 4))).unwrap();
        assert_eq!(d.verdict, Verdict::NotBipartite);

        // 5 > 1·4, so (5,1,1,1) is outside every window; the exact search
        // still rejects it.
        let s = seq(&[5, 1, 1, 1]);
        assert_eq!(decide_bdr(&s, &bounds((0, 1), (1, 1))), Err(DecideError::OutOfClass));
        assert_eq!(decide_exact(&s, DEFAULT_BUDGET).unwrap().verdict, Verdict::NotBipartite);

        let s = seq(&[2, 2, 1, 1, 1, 1]);
        let d = decide_bdr(&s, &bounds((0, 1), (1, 1))).unwrap();
        assert_eq!((d.verdict, d.reason), (Verdict::Undecided, Reason::ExactSearchAvailable));

        assert_eq!(
            decide_bdr(&seq(&[3; 4]), &bounds((1, 3), (1, 2))),
            Err(DecideError::OutOfClass)
        );
    }

    #[test]
    fn decide_exact_examples() {
        let s = seq(&[2, 2, 2, 2]);
        let d = decide_exact(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        assert!(d.verify(&s));

        // (3,3,2,2,1,1): {3,3} | {2,2,1,1} passes Gale–Ryser.
        let s = seq(&[3, 3, 2, 2, 1, 1]);
        let d = decide_exact(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        assert!(d.verify(&s));

        let s = seq(&[1, 1, 1, 1]);
        let d = decide_exact(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        assert_eq!(d.realization.as_ref().unwrap().graph.edge_count(), 2);

        // (3,3,3,1,1,1): the only split is {3,3} | {3,1,1,1}, which fails
        // Gale–Ryser at k = 2.
        let s = seq(&[3, 3, 3, 1, 1, 1]);
        let d = decide_exact(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.verdict, Verdict::NotBipartite);
        assert_eq!(d.reason, Reason::GaleRyserViolation);
    }

    #[test]
    fn exact_budget_is_enforced() {
        let s = seq(&[3, 3, 3, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1]);
        assert!(matches!(
            decide_exact(&s, 0),
            Err(DecideError::BudgetExceeded(0))
        ));
    }

    #[test]
    fn reason_serializes_kebab_case() {
        let json = |r: Reason| serde_json::to_string(&r).unwrap();
        assert_eq!(json(Reason::MinDegreeTooLarge), "\"min-degree-too-large\"");
        assert_eq!(json(Reason::TrivialPair), "\"trivial-(1,1)\"");
        assert_eq!(
            json(Reason::PrecheckDegreeAtLeastHalfSum),
            "\"precheck-degree-at-least-half-sum\""
        );
    }
}

//! Deciding whether a degree sequence has a simple bipartite realization.
//!
//! The crate covers the building blocks (graphicality, Gale–Ryser,
//! least balanced degree sequences, equal-sum splits), a decision procedure
//! for sequences whose degrees lie in `[c1·n, c2·n]`, the padding reduction
//! that embeds an arbitrary instance into a bounded one, and brute-force
//! oracles used to cross-check all of it.
//!
//! ```
//! use bdr_core::{decide_bdr, DegreeSequence, ParamBounds, Verdict};
//!
//! let seq: DegreeSequence = "2 2 2 2 2 2".parse().unwrap();
//! let bounds = ParamBounds::from_fractions((1, 3), (1, 3)).unwrap();
//! let decision = decide_bdr(&seq, &bounds).unwrap();
//! assert_eq!(decision.verdict, Verdict::Bipartite);
//! assert!(decision.verify(&seq));
//! ```

pub mod decider;
pub mod degseq;
pub mod gale_ryser;
pub mod lbds;
pub mod oracle;
pub mod partition;
pub mod ratio;
pub mod reduction;

pub use decider::{
    classify_region, decide_bdr, decide_exact, max_degree_gap, precheck, threshold_c2, Decision,
    DecideError, Reason, RegionClass, Verdict,
};
pub use degseq::{DegreeClass, DegreeSequence, ParamBounds};
pub use gale_ryser::{construct_realization, BipartitePair, BipartiteRealization, LabeledRealization};
pub use lbds::{lbds, lbds_pair_bigraphic, LbdsShape};
pub use partition::{
    enumerate_equal_sum_splits, equal_sum_split_exists, find_equal_sum_split, Side, SplitWitness,
};
pub use ratio::{parse_rational, Rational};
pub use reduction::{build_hard_instance, ReductionInstance, Role};

// The guide's code listings run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/degree-sequences.md")]
    mod degree_sequences {}
    #[doc = include_str!("../../../book/src/gale-ryser.md")]
    mod gale_ryser {}
    #[doc = include_str!("../../../book/src/lbds.md")]
    mod lbds {}
    #[doc = include_str!("../../../book/src/splits.md")]
    mod splits {}
    #[doc = include_str!("../../../book/src/regions.md")]
    mod regions {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
}

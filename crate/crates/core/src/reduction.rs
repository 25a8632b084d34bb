//! Padding reduction from an arbitrary instance to one whose degrees lie in
//! `[c1·n, c2·n]`, for bounds in the conditionally hard region.
//!
//! From the bounds we pick a rational `r` strictly between
//! `sqrt(1 - 2·c2)` and `1 - sqrt(2·c1)` and set
//!
//! ```text
//! c̃1 = (1 - r)² / 2        c̃2 = (1 - r²) / 2
//! ```
//!
//! which satisfy `c1 < c̃1`, `c̃2 < c2` and `(c̃1 + c̃2)² = 2·c̃1`. For a
//! sequence `D` with degree sum `S` and a padding size `n`, the padded
//! sequence `D'` has `n + S` entries in four groups:
//!
//! | group   | count                 | degree                  |
//! |---------|-----------------------|-------------------------|
//! | big     | `(c̃1 + c̃2)·n`          | `c̃2·n + S/2`            |
//! | shifted | `|D|`                 | `d_i + (c̃1 + c̃2)/2·n`   |
//! | filler  | `S - |D|`             | `(c̃1 + c̃2)/2·n`         |
//! | small   | `n - (c̃1 + c̃2)·n`      | `c̃1·n`                  |
//!
//! `D` is bipartite-realizable iff `D'` is. [`lift_realization`] and
//! [`project_realization`] carry witnesses across in both directions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::decider::{self, classify_region, DecideError, Decision, RegionClass, Verdict};
use crate::degseq::{DegreeSequence, ParamBounds};
use crate::gale_ryser::{construct_realization, BipartitePair, BipartiteRealization, LabeledRealization};
use crate::ratio::{self, floor_offset_sqrt, int, pow10, Rational, SqrtSign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("bounds are not in the conditionally hard region (0 < c2 < 1/2, (c1+c2)² > 2·c1)")]
    NotInHardRegion,
    #[error("sequence has no positive degrees")]
    EmptySource,
    #[error("degree sum {0} is odd")]
    OddSum(usize),
    #[error("degree {degree} at position {position} is at least half the sum ({half})")]
    DegreeAtLeastHalfSum {
        position: usize,
        degree: usize,
        half: usize,
    },
    #[error("padding arithmetic overflowed")]
    Overflow,
    #[error("no semi-regular bipartite graph with {a_count}×{a_deg} and {b_count}×{b_deg}")]
    InvalidSemiregular {
        a_count: usize,
        a_deg: usize,
        b_count: usize,
        b_deg: usize,
    },
    #[error("realization does not realize the source sequence")]
    SourceNotRealized,
    #[error("realization side has {size} vertices, more than S/2 = {half}")]
    SideTooLarge { size: usize, half: usize },
    #[error("internal reduction invariant failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// Failure of the audits run before projecting a realization of `D'`.
/// Any of these on a genuine realization would contradict the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("graph does not realize the padded sequence")]
    NotARealization,
    #[error("big vertices split {u} / {v}, expected {expected} per side")]
    BigCountMismatch { u: usize, v: usize, expected: usize },
    #[error("shifted vertices carry source degree {u} on U and {v} on V")]
    ShiftedSumMismatch { u: usize, v: usize },
    #[error("entry {label} has residual degree {found}, expected {expected}")]
    ResidualMismatch {
        label: usize,
        expected: usize,
        found: usize,
    },
}

/// The digits of `sqrt(1 - 2·c2)` and `1 - sqrt(2·c1)` first differ at
/// position `k`; both are rounded (half up) to `k` decimals and averaged.
/// If rounding pushes the average out of the open interval, one more digit
/// is used.
pub fn compute_rational_r(bounds: &ParamBounds) -> Result<Rational, ReductionError> {
    if classify_region(bounds) != RegionClass::ConditionallyHard {
        return Err(ReductionError::NotInHardRegion);
    }
    let (c1, c2) = (bounds.c1(), bounds.c2());
    let lower_sq = Rational::one() - c2 * int(2); // (lower endpoint)²
    let two_c1 = c1 * int(2);
    let half = ratio::ratio(1, 2);

    // floor(10^k · x + shift) for both endpoints.
    let scaled = |k: u32, shift: &Rational| -> (BigInt, BigInt) {
        let p = pow10(k);
        let p2 = &p * &p;
        let lower = floor_offset_sqrt(shift, SqrtSign::Plus, &(&lower_sq * &p2));
        let upper = floor_offset_sqrt(
            &(int(p.clone()) + shift),
            SqrtSign::Minus,
            &(&two_c1 * &p2),
        );
        (lower, upper)
    };

    let zero = Rational::zero();
    let mut k = 0u32;
    loop {
        let (lo, hi) = scaled(k, &zero);
        if lo != hi {
            break;
        }
        k += 1;
    }
    loop {
        let (lo, hi) = scaled(k, &half);
        let r = Rational::new(lo + hi, pow10(k) * 2);
        let one_minus = Rational::one() - &r;
        let above_lower = !r.is_negative() && &r * &r > lower_sq;
        let below_upper = one_minus.is_positive() && &one_minus * &one_minus > two_c1;
        if above_lower && below_upper {
            return Ok(r);
        }
        k += 1;
    }
}

/// `(c̃1, c̃2) = ((1 - r)² / 2, (1 - r²) / 2)`.
pub fn tilde_constants(r: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let two = int(2);
    let c1 = (&one - r) * (&one - r) / &two;
    let c2 = (&one - r * r) / &two;
    (c1, c2)
}

/// Smallest positive `n` with `n·c` a multiple of `h`, for `c = p/q`.
fn multiple_modulus(c: &Rational, h: &BigInt) -> BigInt {
    let q_h = c.denom() * h;
    let g = q_h.gcd(c.numer());
    q_h / g
}

/// The modulus every padding size must be a multiple of: `c̃1·n`,
/// `c̃2·n` and `(c̃1+c̃2)/2·n` integral, `c̃1·n` and `c̃2·n` multiples of
/// `S/2`, and `n` even so each side gets `n/2` padding vertices.
pub fn padding_modulus(sum: usize, c1_tilde: &Rational, c2_tilde: &Rational) -> BigInt {
    let h = BigInt::from(sum / 2);
    let mid = (c1_tilde + c2_tilde) / int(2);
    [
        c1_tilde.denom().clone(),
        c2_tilde.denom().clone(),
        mid.denom().clone(),
        multiple_modulus(c1_tilde, &h),
        multiple_modulus(c2_tilde, &h),
        BigInt::from(2),
    ]
    .iter()
    .fold(BigInt::one(), |acc, m| acc.lcm(m))
}

/// Both strict thresholds that put every entry of `D'` inside the bounds:
/// `(c̃2·n + S/2) / (n + S) < c2` and `c̃1·n / (n + S) > c1`.
pub fn padding_thresholds_hold(n: &BigInt, sum: usize, bounds: &ParamBounds, r: &Rational) -> bool {
    let (c1t, c2t) = tilde_constants(r);
    let s = int(sum);
    let n = int(n.clone());
    let total = &n + &s;
    let big = &c2t * &n + &s / int(2);
    big < bounds.c2() * &total && &c1t * &n > bounds.c1() * &total
}

/// Smallest admissible padding size: the first multiple of
/// [`padding_modulus`] satisfying [`padding_thresholds_hold`].
///
/// Both thresholds are linear in `n`, so the multiple is computed
/// directly from `n > S·(1/2 - c2)/(c2 - c̃2)` and `n > S·c1/(c̃1 - c1)`.
pub fn choose_padding_n(sum: usize, bounds: &ParamBounds, r: &Rational) -> Result<usize, ReductionError> {
    let (c1t, c2t) = tilde_constants(r);
    let (c1, c2) = (bounds.c1(), bounds.c2());
    if !(c1 < &c1t && &c2t < c2) {
        return Err(ReductionError::Internal("r does not separate the bounds".into()));
    }
    let s = int(sum);
    let upper = &s * (ratio::ratio(1, 2) - c2) / (c2 - &c2t);
    let lower = &s * c1 / (&c1t - c1);
    let bound = upper.max(lower);
    let modulus = padding_modulus(sum, &c1t, &c2t);
    let steps: BigInt = ratio::floor(&(bound / int(modulus.clone()))) + 1;
    let n = steps.max(BigInt::one()) * modulus;
    debug_assert!(padding_thresholds_hold(&n, sum, bounds, r));
    n.to_usize().ok_or(ReductionError::Overflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum Role {
    Big,
    /// Carries `source[source] + (c̃1+c̃2)/2·n`.
    Shifted { source: usize },
    Filler,
    Small,
}

/// A padded instance with all derived constants and per-entry roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    /// The input with zero entries removed.
    pub source: DegreeSequence,
    /// Position of each `source` entry in the caller's sequence.
    pub source_positions: Vec<usize>,
    pub sum: usize,
    pub r: Rational,
    pub c1_tilde: Rational,
    pub c2_tilde: Rational,
    pub n: usize,
    pub d_prime: DegreeSequence,
    pub roles: Vec<Role>,
}

impl ReductionInstance {
    pub fn half_sum(&self) -> usize {
        self.sum / 2
    }

    fn times_n(&self, c: &Rational) -> usize {
        let v = c * int(self.n);
        debug_assert!(v.is_integer());
        v.to_integer().to_usize().expect("fits: checked at construction")
    }

    /// `(c̃1 + c̃2)/2·n`: big vertices per side and the shift amount.
    pub fn block(&self) -> usize {
        self.times_n(&((&self.c1_tilde + &self.c2_tilde) / int(2)))
    }

    /// `c̃1·n`.
    pub fn small_degree(&self) -> usize {
        self.times_n(&self.c1_tilde)
    }

    /// `c̃2·n + S/2`.
    pub fn big_degree(&self) -> usize {
        self.times_n(&self.c2_tilde) + self.half_sum()
    }

    pub fn role_count(&self, pred: impl Fn(&Role) -> bool) -> usize {
        self.roles.iter().filter(|r| pred(r)).count()
    }

    /// First index of each group in `d_prime`: big, shifted, filler, small.
    fn offsets(&self) -> [usize; 4] {
        let big = 2 * self.block();
        let shifted = big + self.source.len();
        let filler = big + self.sum;
        [0, big, shifted, filler]
    }

    /// Checks every structural invariant exactly; returns the first failure.
    pub fn audit(&self, bounds: &ParamBounds) -> Result<(), String> {
        let n = int(self.n);
        let h = self.half_sum();
        let (c1t, c2t) = tilde_constants(&self.r);
        if (c1t.clone(), c2t.clone()) != (self.c1_tilde.clone(), self.c2_tilde.clone()) {
            return Err("tilde constants do not match r".into());
        }
        let mid = (&c1t + &c2t) / int(2);
        for (name, c) in [("c̃1·n", &c1t), ("c̃2·n", &c2t), ("(c̃1+c̃2)/2·n", &mid)] {
            if !(c * &n).is_integer() {
                return Err(format!("{name} is not an integer"));
            }
        }
        for (name, c) in [("c̃1·n", &c1t), ("c̃2·n", &c2t)] {
            if !(c * &n / int(h)).is_integer() {
                return Err(format!("{name} is not a multiple of S/2"));
            }
        }
        let sum = &c1t + &c2t;
        if &sum * &sum != &c1t * int(2) {
            return Err("(c̃1 + c̃2)² != 2·c̃1".into());
        }
        if !padding_thresholds_hold(&BigInt::from(self.n), self.sum, bounds, &self.r) {
            return Err("strict padding thresholds fail".into());
        }
        if !(bounds.c1() < &c1t && &c2t < bounds.c2()) {
            return Err("c1 < c̃1 and c̃2 < c2 fail".into());
        }
        let big = self.role_count(|r| *r == Role::Big);
        let shifted = self.role_count(|r| matches!(r, Role::Shifted { .. }));
        let filler = self.role_count(|r| *r == Role::Filler);
        let small = self.role_count(|r| *r == Role::Small);
        let expected = (
            2 * self.block(),
            self.source.len(),
            self.sum - self.source.len(),
            self.n - 2 * self.block(),
        );
        if (big, shifted, filler, small) != expected {
            return Err(format!(
                "role counts {:?} != expected {:?}",
                (big, shifted, filler, small),
                expected
            ));
        }
        if self.d_prime.len() != self.n + self.sum || self.roles.len() != self.d_prime.len() {
            return Err("padded length is not n + S".into());
        }
        for (i, (&d, role)) in self.d_prime.degrees().iter().zip(&self.roles).enumerate() {
            let want = match *role {
                Role::Big => self.big_degree(),
                Role::Shifted { source } => self.source.degrees()[source] + self.block(),
                Role::Filler => self.block(),
                Role::Small => self.small_degree(),
            };
            if d != want {
                return Err(format!("entry {i} has degree {d}, role wants {want}"));
            }
        }
        if !self.d_prime.in_class(bounds) {
            return Err("padded sequence is outside the bounds".into());
        }
        Ok(())
    }
}

/// Builds `D'` for `seq` under `bounds`.
///
/// Zero entries are dropped first. The remaining sequence must have an even
/// sum and every degree strictly below half the sum; other inputs are
/// settled directly by [`decider::precheck`].
pub fn build_hard_instance(
    seq: &DegreeSequence,
    bounds: &ParamBounds,
) -> Result<ReductionInstance, ReductionError> {
    let (source, source_positions) = seq.nonzero();
    if source.is_empty() {
        return Err(ReductionError::EmptySource);
    }
    let sum = source.sum();
    if sum % 2 != 0 {
        return Err(ReductionError::OddSum(sum));
    }
    let half = sum / 2;
    if let Some(i) = source.degrees().iter().position(|&d| d >= half) {
        return Err(ReductionError::DegreeAtLeastHalfSum {
            position: source_positions[i],
            degree: source.degrees()[i],
            half,
        });
    }
    let r = compute_rational_r(bounds)?;
    let (c1_tilde, c2_tilde) = tilde_constants(&r);
    let n = choose_padding_n(sum, bounds, &r)?;

    let as_usize = |c: &Rational| -> Result<usize, ReductionError> {
        let v = c * int(n);
        if !v.is_integer() {
            return Err(ReductionError::Internal("non-integral group size".into()));
        }
        v.to_integer().to_usize().ok_or(ReductionError::Overflow)
    };
    let block = as_usize(&((&c1_tilde + &c2_tilde) / int(2)))?;
    let big_degree = as_usize(&c2_tilde)? + half;
    let small_degree = as_usize(&c1_tilde)?;

    let mut degrees = Vec::with_capacity(n + sum);
    let mut roles = Vec::with_capacity(n + sum);
    let mut push = |d: usize, role: Role, count: usize| {
        degrees.extend(std::iter::repeat(d).take(count));
        roles.extend(std::iter::repeat(role).take(count));
    };
    push(big_degree, Role::Big, 2 * block);
    for (i, &d) in source.degrees().iter().enumerate() {
        push(d + block, Role::Shifted { source: i }, 1);
    }
    push(block, Role::Filler, sum - source.len());
    push(small_degree, Role::Small, n - 2 * block);

    let inst = ReductionInstance {
        source,
        source_positions,
        sum,
        r,
        c1_tilde,
        c2_tilde,
        n,
        d_prime: DegreeSequence::new(degrees),
        roles,
    };
    inst.audit(bounds).map_err(ReductionError::Internal)?;
    Ok(inst)
}

/// Bipartite graph with `a_count` vertices of degree `a_deg` against
/// `b_count` vertices of degree `b_deg`.
///
/// A-vertex `i` is joined to B-vertices `(i·a_deg + t) mod b_count` for
/// `t < a_deg`: consecutive windows around a cycle, which spread the edges
/// evenly.
pub fn semiregular_bipartite(
    a_count: usize,
    a_deg: usize,
    b_count: usize,
    b_deg: usize,
) -> Result<BipartiteRealization, ReductionError> {
    let invalid = ReductionError::InvalidSemiregular {
        a_count,
        a_deg,
        b_count,
        b_deg,
    };
    if a_count * a_deg != b_count * b_deg || a_deg > b_count || b_deg > a_count {
        return Err(invalid);
    }
    if a_deg == 0 {
        return Ok(BipartiteRealization::empty(a_count, b_count));
    }
    let edges = (0..a_count).flat_map(|i| (0..a_deg).map(move |t| (i, (i * a_deg + t) % b_count)));
    let graph = BipartiteRealization::new(a_count, b_count, edges).ok();
    let regular = |g: &BipartiteRealization| {
        g.u_degrees().iter().all(|&d| d == a_deg) && g.v_degrees().iter().all(|&d| d == b_deg)
    };
    match graph {
        Some(g) if regular(&g) => Ok(g),
        _ => {
            let pair = BipartitePair::new(vec![a_deg; a_count], vec![b_deg; b_count]);
            construct_realization(&pair).ok_or(invalid)
        }
    }
}

/// Turns a realization of `inst.source` into one of `inst.d_prime`.
///
/// Each side of `g` is padded with isolated filler vertices to `S/2`
/// vertices. Each side then gains `(c̃1+c̃2)/2·n` big vertices, joined
/// completely to the other side's big and original vertices, and
/// `n/2 - (c̃1+c̃2)/2·n` small vertices, joined semi-regularly to the other
/// side's big vertices.
pub fn lift_realization(
    g: &LabeledRealization,
    inst: &ReductionInstance,
) -> Result<LabeledRealization, ReductionError> {
    if !g.realizes(&inst.source) {
        return Err(ReductionError::SourceNotRealized);
    }
    let h = inst.half_sum();
    for size in [g.graph.u_count(), g.graph.v_count()] {
        if size > h {
            return Err(ReductionError::SideTooLarge { size, half: h });
        }
    }
    let block = inst.block();
    let small_per_side = inst.n / 2 - block;
    let link_deg = inst.big_degree() - block - h; // (c̃2 - c̃1)/2·n
    if block * link_deg != small_per_side * inst.small_degree() {
        return Err(ReductionError::Internal("semi-regular block sums differ".into()));
    }
    let [_, shifted_at, filler_at, small_at] = inst.offsets();

    let mut fillers = filler_at..small_at;
    let mut side_labels = |own: &[usize], big: std::ops::Range<usize>, small: std::ops::Range<usize>| {
        let mut labels: Vec<usize> = own.iter().map(|&i| shifted_at + i).collect();
        labels.extend(fillers.by_ref().take(h - own.len()));
        labels.extend(big);
        labels.extend(small);
        labels
    };
    let u_labels = side_labels(&g.u_labels, 0..block, small_at..small_at + small_per_side);
    let v_labels = side_labels(
        &g.v_labels,
        block..2 * block,
        small_at + small_per_side..small_at + 2 * small_per_side,
    );

    // Local layout on each side: [0, h) original + padding, [h, h+block)
    // big, [h+block, h+block+small_per_side) small.
    let big = h..h + block;
    let small = h + block..h + block + small_per_side;
    let mut edges: Vec<(usize, usize)> = g.graph.edges().collect();
    for u in big.clone() {
        edges.extend(big.clone().map(|v| (u, v)));
        edges.extend((0..h).map(|v| (u, v)));
    }
    for v in big.clone() {
        edges.extend((0..h).map(|u| (u, v)));
    }
    let semi = semiregular_bipartite(block, link_deg, small_per_side, inst.small_degree())?;
    for (a, b) in semi.edges() {
        edges.push((big.start + a, small.start + b));
        edges.push((small.start + b, big.start + a));
    }
    let side = h + block + small_per_side;
    let graph = BipartiteRealization::new(side, side, edges)
        .map_err(|e| ReductionError::Internal(e.to_string()))?;
    let lifted = LabeledRealization {
        graph,
        u_labels,
        v_labels,
    };
    if !lifted.realizes(&inst.d_prime) {
        return Err(ReductionError::Internal("lifted graph fails the degree audit".into()));
    }
    Ok(lifted)
}

/// Recovers a realization of `inst.source` from any realization of
/// `inst.d_prime` by deleting every edge at a big vertex.
pub fn project_realization(
    g: &LabeledRealization,
    inst: &ReductionInstance,
) -> Result<LabeledRealization, ProjectionError> {
    if !g.realizes(&inst.d_prime) {
        return Err(ProjectionError::NotARealization);
    }
    let role = |label: usize| inst.roles[label];
    let count_big = |labels: &[usize]| labels.iter().filter(|&&l| role(l) == Role::Big).count();
    let (u_big, v_big) = (count_big(&g.u_labels), count_big(&g.v_labels));
    if u_big != inst.block() || v_big != inst.block() {
        return Err(ProjectionError::BigCountMismatch {
            u: u_big,
            v: v_big,
            expected: inst.block(),
        });
    }
    let d = inst.d_prime.degrees();
    let source_degree = |label: usize| match role(label) {
        Role::Shifted { source } => inst.source.degrees()[source],
        _ => 0,
    };
    let shifted_sum = |labels: &[usize]| -> usize { labels.iter().map(|&l| source_degree(l)).sum() };
    let (u_sum, v_sum) = (shifted_sum(&g.u_labels), shifted_sum(&g.v_labels));
    if u_sum != v_sum {
        return Err(ProjectionError::ShiftedSumMismatch { u: u_sum, v: v_sum });
    }

    let kept: Vec<(usize, usize)> = g
        .graph
        .edges()
        .filter(|&(u, v)| role(g.u_labels[u]) != Role::Big && role(g.v_labels[v]) != Role::Big)
        .collect();
    let mut residual = vec![0usize; d.len()];
    for &(u, v) in &kept {
        residual[g.u_labels[u]] += 1;
        residual[g.v_labels[v]] += 1;
    }
    for (label, &found) in residual.iter().enumerate() {
        let expected = source_degree(label);
        if found != expected {
            return Err(ProjectionError::ResidualMismatch {
                label,
                expected,
                found,
            });
        }
    }

    // Reindex the shifted vertices on each side.
    let reindex = |labels: &[usize]| -> (Vec<Option<usize>>, Vec<usize>) {
        let mut local = vec![None; labels.len()];
        let mut sources = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            if let Role::Shifted { source } = role(l) {
                local[i] = Some(sources.len());
                sources.push(source);
            }
        }
        (local, sources)
    };
    let (u_local, u_labels) = reindex(&g.u_labels);
    let (v_local, v_labels) = reindex(&g.v_labels);
    let edges = kept
        .into_iter()
        .map(|(u, v)| (u_local[u].expect("residual audit"), v_local[v].expect("residual audit")));
    let graph = BipartiteRealization::new(u_labels.len(), v_labels.len(), edges)
        .expect("subgraph of a simple graph");
    Ok(LabeledRealization {
        graph,
        u_labels,
        v_labels,
    })
}

/// Exact verdicts on both sides of the reduction, plus the witness
/// transfers when available.
#[derive(Debug, Clone)]
pub struct RoundtripReport {
    pub instance: ReductionInstance,
    pub source: Decision,
    pub padded: Decision,
    /// `Some(ok)` when the source is bipartite: the lifted witness realizes `D'`.
    pub lift_ok: Option<bool>,
    /// Present when `D'` is bipartite: projecting the exact-search witness.
    /// `Ok(ok)` tells whether the projected graph realizes `D`; `Err` is an
    /// audit failure, meaning the witness splits the big or shifted
    /// vertices unevenly.
    pub projection: Option<Result<bool, ProjectionError>>,
}

impl RoundtripReport {
    pub fn verdicts_agree(&self) -> bool {
        self.source.verdict == self.padded.verdict
    }

    /// The exact-search witness for `D'` could not be projected.
    pub fn projection_audit_failed(&self) -> bool {
        matches!(self.projection, Some(Err(_)))
    }

    /// Verdicts agree, every lift is valid, and every projection that
    /// passes its audits realizes `D`.
    pub fn passed(&self) -> bool {
        self.verdicts_agree()
            && self.lift_ok != Some(false)
            && !matches!(self.projection, Some(Ok(false)))
    }
}

pub fn verify_reduction_roundtrip(
    seq: &DegreeSequence,
    bounds: &ParamBounds,
    budget: usize,
) -> Result<RoundtripReport, ReductionError> {
    let instance = build_hard_instance(seq, bounds)?;
    let (source, padded) = std::thread::scope(|scope| {
        let padded = scope.spawn(|| decider::decide_exact(&instance.d_prime, budget));
        let source = decider::decide_exact(&instance.source, budget);
        (source, padded.join().expect("exact search panicked"))
    });
    let (source, padded) = (source?, padded?);

    let lift_ok = (source.verdict == Verdict::Bipartite).then(|| {
        source
            .realization
            .as_ref()
            .and_then(|g| lift_realization(g, &instance).ok())
            .is_some_and(|lifted| lifted.realizes(&instance.d_prime))
    });
    let projection = match (&padded.verdict, &padded.realization) {
        (Verdict::Bipartite, Some(g)) => {
            Some(project_realization(g, &instance).map(|p| p.realizes(&instance.source)))
        }
        (Verdict::Bipartite, None) => Some(Ok(false)),
        _ => None,
    };
    Ok(RoundtripReport {
        instance,
        source,
        padded,
        lift_ok,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    fn hard() -> ParamBounds {
        ParamBounds::from_fractions((1, 10), (2, 5)).unwrap()
    }

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec())
    }

    #[test]
    fn r_for_worked_bounds() {
        let r = compute_rational_r(&hard()).unwrap();
        assert_eq!(r, ratio(1, 2));
        let (c1t, c2t) = tilde_constants(&r);
        assert_eq!((c1t.clone(), c2t.clone()), (ratio(1, 8), ratio(3, 8)));
        assert!(ratio(1, 10) < c1t && c2t < ratio(2, 5));
    }

    #[test]
    fn r_outside_hard_region() {
        let b = ParamBounds::from_fractions((2, 5), (9, 20)).unwrap();
        assert_eq!(compute_rational_r(&b), Err(ReductionError::NotInHardRegion));
    }

    #[test]
    fn r_with_zero_lower_bound() {
        // Upper endpoint is exactly 1; the first rounding lands on it.
        let b = ParamBounds::from_fractions((0, 1), (2, 5)).unwrap();
        let r = compute_rational_r(&b).unwrap();
        let (c1t, c2t) = tilde_constants(&r);
        assert!(c1t > ratio(0, 1) && c2t < ratio(2, 5));
        assert!(r < ratio(1, 1));
    }

    #[test]
    fn padding_examples() {
        let r = ratio(1, 2);
        assert_eq!(choose_padding_n(4, &hard(), &r).unwrap(), 32);
        assert_eq!(padding_modulus(4, &ratio(1, 8), &ratio(3, 8)), 16.into());
        assert!(!padding_thresholds_hold(&16.into(), 4, &hard(), &r));
        assert_eq!(choose_padding_n(6, &hard(), &r).unwrap(), 48);
        assert_eq!(padding_modulus(6, &ratio(1, 8), &ratio(3, 8)), 24.into());
        assert!(!padding_thresholds_hold(&24.into(), 6, &hard(), &r));
    }

    #[test]
    fn padding_modulus_forces_even_n() {
        // r = 3/5 gives c̃1 = 2/25, c̃2 = 8/25: the other constraints alone
        // allow odd n.
        let (c1t, c2t) = tilde_constants(&ratio(3, 5));
        assert_eq!((c1t.clone(), c2t.clone()), (ratio(2, 25), ratio(8, 25)));
        assert_eq!(padding_modulus(2, &c1t, &c2t), 50.into());
    }

    #[test]
    fn worked_instance() {
        let inst = build_hard_instance(&seq(&[2, 1, 1, 1, 1]), &hard()).unwrap();
        assert_eq!(inst.sum, 6);
        assert_eq!(inst.r, ratio(1, 2));
        assert_eq!(inst.n, 48);
        assert_eq!(inst.d_prime.len(), 54);
        let mut expected = vec![21; 24];
        expected.extend([14, 13, 13, 13, 13, 12]);
        expected.extend([6; 24]);
        assert_eq!(inst.d_prime.degrees(), &expected[..]);
        assert!(inst.audit(&hard()).is_ok());
    }

    #[test]
    fn instance_preconditions() {
        assert!(matches!(
            build_hard_instance(&seq(&[1, 1]), &hard()),
            Err(ReductionError::DegreeAtLeastHalfSum { .. })
        ));
        assert!(matches!(
            build_hard_instance(&seq(&[3, 1, 1, 1]), &hard()),
            Err(ReductionError::DegreeAtLeastHalfSum { degree: 3, half: 3, .. })
        ));
        assert_eq!(
            build_hard_instance(&seq(&[2, 1, 1, 1]), &hard()),
            Err(ReductionError::OddSum(5))
        );
        assert_eq!(
            build_hard_instance(&seq(&[0, 0]), &hard()),
            Err(ReductionError::EmptySource)
        );
        let low = ParamBounds::from_fractions((1, 3), (1, 3)).unwrap();
        assert_eq!(
            build_hard_instance(&seq(&[2, 1, 1, 1, 1]), &low),
            Err(ReductionError::NotInHardRegion)
        );
    }

    #[test]
    fn zeros_are_stripped_but_tracked() {
        let inst = build_hard_instance(&seq(&[0, 2, 1, 0, 1, 1, 1]), &hard()).unwrap();
        assert_eq!(inst.source.degrees(), &[2, 1, 1, 1, 1]);
        assert_eq!(inst.source_positions, vec![1, 2, 4, 5, 6]);
    }

    #[test]
    fn semiregular_examples() {
        let g = semiregular_bipartite(4, 3, 6, 2).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.u_degrees(), vec![3; 4]);
        assert_eq!(g.v_degrees(), vec![2; 6]);
        let k22 = semiregular_bipartite(2, 2, 2, 2).unwrap();
        assert_eq!(k22.edge_count(), 4);
        assert!(matches!(
            semiregular_bipartite(3, 2, 4, 2),
            Err(ReductionError::InvalidSemiregular { .. })
        ));
        assert_eq!(semiregular_bipartite(3, 0, 5, 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn block_identities_hold() {
        let inst = build_hard_instance(&seq(&[2, 1, 1, 1, 1]), &hard()).unwrap();
        let (block, small) = (inst.block(), inst.n / 2 - inst.block());
        let link = (inst.c2_tilde.clone() - inst.c1_tilde.clone()) / int(2) * int(inst.n);
        let link = link.to_integer().to_usize().unwrap();
        assert_eq!(block * link, small * inst.small_degree());
        assert_eq!(block + inst.half_sum() + link, inst.big_degree());
    }

    #[test]
    fn lift_then_project_worked_instance() {
        let s = seq(&[2, 1, 1, 1, 1]);
        let inst = build_hard_instance(&s, &hard()).unwrap();
        let d = decider::decide_exact(&inst.source, decider::DEFAULT_BUDGET).unwrap();
        assert_eq!(d.verdict, Verdict::Bipartite);
        let g = d.realization.unwrap();
        let lifted = lift_realization(&g, &inst).unwrap();
        assert!(lifted.realizes(&inst.d_prime));
        assert_eq!(lifted.graph.u_count() + lifted.graph.v_count(), 54);
        let back = project_realization(&lifted, &inst).unwrap();
        assert!(back.realizes(&inst.source));
        assert_eq!(back.u_labels, g.u_labels);
        assert_eq!(back.v_labels, g.v_labels);
        assert_eq!(back.graph, g.graph);
    }

    #[test]
    fn roundtrip_examples() {
        let report = verify_reduction_roundtrip(&seq(&[2, 1, 1, 1, 1]), &hard(), 100_000).unwrap();
        assert_eq!(report.source.verdict, Verdict::Bipartite);
        assert_eq!(report.lift_ok, Some(true));
        assert!(report.passed());

        let report = verify_reduction_roundtrip(&seq(&[2, 2, 1, 1, 1, 1]), &hard(), 100_000).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn uneven_big_split_is_realizable() {
        // Thirteen big vertices against eleven, all shifted vertices on the
        // short side: sides sum to 363 each and Gale–Ryser holds, yet the
        // shifted vertices carry source degree 0 and 6. Such a witness
        // cannot be projected.
        let inst = build_hard_instance(&seq(&[2, 1, 1, 1, 1]), &hard()).unwrap();
        let mut u: Vec<usize> = (0..13).collect();
        u.push(29);
        u.extend(30..43);
        let mut v: Vec<usize> = (13..29).collect();
        v.extend(43..54);
        let d = inst.d_prime.degrees();
        let pair = BipartitePair::new(
            u.iter().map(|&i| d[i]).collect::<Vec<_>>(),
            v.iter().map(|&i| d[i]).collect::<Vec<_>>(),
        );
        assert!(pair.is_bigraphic());
        let graph = construct_realization(&pair).unwrap();
        let g = LabeledRealization {
            graph,
            u_labels: u,
            v_labels: v,
        };
        assert!(g.realizes(&inst.d_prime));
        assert_eq!(
            project_realization(&g, &inst),
            Err(ProjectionError::BigCountMismatch {
                u: 13,
                v: 11,
                expected: 12
            })
        );
    }

    #[test]
    fn roundtrip_negative_instance() {
        // (3,3,3,1,1,1): the only split fails Gale–Ryser.
        let report =
            verify_reduction_roundtrip(&seq(&[3, 3, 3, 1, 1, 1]), &hard(), 1_000_000).unwrap();
        assert_eq!(report.source.verdict, Verdict::NotBipartite);
        assert_eq!(report.padded.verdict, Verdict::NotBipartite);
        assert!(report.passed());
    }

    #[test]
    fn projection_rejects_foreign_graphs() {
        let inst = build_hard_instance(&seq(&[2, 1, 1, 1, 1]), &hard()).unwrap();
        let bogus = LabeledRealization {
            graph: BipartiteRealization::empty(0, 0),
            u_labels: vec![],
            v_labels: vec![],
        };
        assert_eq!(
            project_realization(&bogus, &inst),
            Err(ProjectionError::NotARealization)
        );
    }
}

//! Equal-sum splits of a degree sequence.
//!
//! A bipartite realization needs the degrees split into two sides with equal
//! sums. Existence and a witness come from a subset-sum bitset over
//! `0..=Σ/2`; [`EqualSumSplits`] enumerates every split by index set and
//! [`MultisetSplits`] enumerates them up to swapping equal degrees.
//!
//! Zero degrees never affect a split. They are left out of the search and
//! always placed on side `V`. The first positive entry is always on side
//! `U`, so each unordered split is produced once.

use serde::Serialize;

use crate::degseq::DegreeSequence;
use crate::gale_ryser::BipartitePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    U,
    V,
}

/// Per-index side labels with equal degree sums on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitWitness {
    pub sides: Vec<Side>,
    pub half_sum: usize,
}

impl SplitWitness {
    pub fn u_indices(&self) -> Vec<usize> {
        self.indices(Side::U)
    }

    pub fn v_indices(&self) -> Vec<usize> {
        self.indices(Side::V)
    }

    fn indices(&self, side: Side) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&i| self.sides[i] == side)
            .collect()
    }

    /// The two sides as a pair, each in index order.
    pub fn pair(&self, seq: &DegreeSequence) -> BipartitePair {
        let d = seq.degrees();
        let pick = |idx: Vec<usize>| idx.into_iter().map(|i| d[i]).collect::<Vec<_>>();
        BipartitePair::new(pick(self.u_indices()), pick(self.v_indices()))
    }

    /// Both side sums equal `half_sum` and the labels cover `seq`.
    pub fn is_valid_for(&self, seq: &DegreeSequence) -> bool {
        if self.sides.len() != seq.len() || 2 * self.half_sum != seq.sum() {
            return false;
        }
        let u_sum: usize = self
            .u_indices()
            .into_iter()
            .map(|i| seq.degrees()[i])
            .sum();
        u_sum == self.half_sum
    }
}

/// Growable bitset of reachable subset sums.
#[derive(Clone)]
struct SumSet {
    words: Vec<u64>,
    bits: usize,
}

impl SumSet {
    fn with_zero(bits: usize) -> Self {
        let mut words = vec![0u64; bits.div_ceil(64)];
        words[0] = 1;
        SumSet { words, bits }
    }

    fn contains(&self, sum: usize) -> bool {
        sum < self.bits && self.words[sum / 64] >> (sum % 64) & 1 == 1
    }

    /// `self |= self << shift`, truncated to the capacity.
    fn add_item(&mut self, shift: usize) {
        if shift == 0 || shift >= self.bits {
            return;
        }
        let (word_shift, bit_shift) = (shift / 64, shift % 64);
        for i in (word_shift..self.words.len()).rev() {
            let mut moved = self.words[i - word_shift] << bit_shift;
            if bit_shift > 0 && i > word_shift {
                moved |= self.words[i - word_shift - 1] >> (64 - bit_shift);
            }
            self.words[i] |= moved;
        }
        let spare = self.words.len() * 64 - self.bits;
        if spare > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> spare;
        }
    }
}

pub fn equal_sum_split_exists(seq: &DegreeSequence) -> bool {
    if seq.sum() % 2 != 0 {
        return false;
    }
    let target = seq.sum() / 2;
    let mut reach = SumSet::with_zero(target + 1);
    for &d in seq.degrees() {
        reach.add_item(d);
        if reach.contains(target) {
            return true;
        }
    }
    reach.contains(target)
}

/// A split found by subset-sum back-tracking, or `None`.
///
/// Reconstruction walks the items from last to first and leaves an item
/// out whenever the remaining target is reachable without it.
pub fn find_equal_sum_split(seq: &DegreeSequence) -> Option<SplitWitness> {
    if seq.sum() % 2 != 0 {
        return None;
    }
    let target = seq.sum() / 2;
    let (positive, positions) = seq.nonzero();
    let items = positive.degrees();

    // rows[i] = sums reachable from the first i positive items.
    let mut rows = Vec::with_capacity(items.len() + 1);
    let mut reach = SumSet::with_zero(target + 1);
    rows.push(reach.clone());
    for &d in items {
        reach.add_item(d);
        rows.push(reach.clone());
    }
    if !reach.contains(target) {
        return None;
    }

    let mut chosen = vec![false; items.len()];
    let mut remaining = target;
    for i in (0..items.len()).rev() {
        if rows[i].contains(remaining) {
            continue;
        }
        chosen[i] = true;
        remaining -= items[i];
    }
    debug_assert_eq!(remaining, 0);

    let mut sides = vec![Side::V; seq.len()];
    for (i, &c) in chosen.iter().enumerate() {
        if c {
            sides[positions[i]] = Side::U;
        }
    }
    Some(canonicalize(sides, &positions, target))
}

/// Swap sides if needed so the first positive entry sits on `U`.
fn canonicalize(mut sides: Vec<Side>, positions: &[usize], half_sum: usize) -> SplitWitness {
    if let Some(&first) = positions.first() {
        if sides[first] == Side::V {
            for &p in positions {
                sides[p] = match sides[p] {
                    Side::U => Side::V,
                    Side::V => Side::U,
                };
            }
        }
    }
    SplitWitness { sides, half_sum }
}

/// Iterator over all unordered equal-sum splits, by index set.
///
/// The `U` side always holds the first positive entry; splits come out in
/// lexicographic order of the sorted `U` index lists. Created by
/// [`enumerate_equal_sum_splits`].
pub struct EqualSumSplits {
    len: usize,
    positions: Vec<usize>,
    items: Vec<usize>,
    /// suffix[i] = sum of items[i..].
    suffix: Vec<usize>,
    target: usize,
    choice: Vec<bool>,
    sum: usize,
    descending: bool,
    remaining: Option<usize>,
    done: bool,
}

/// Enumerates equal-sum splits; `limit = None` means no bound.
pub fn enumerate_equal_sum_splits(seq: &DegreeSequence, limit: Option<usize>) -> EqualSumSplits {
    let (positive, positions) = seq.nonzero();
    let items = positive.degrees().to_vec();
    let mut suffix = vec![0; items.len() + 1];
    for i in (0..items.len()).rev() {
        suffix[i] = suffix[i + 1] + items[i];
    }
    let odd = seq.sum() % 2 != 0;
    let mut iter = EqualSumSplits {
        len: seq.len(),
        positions,
        items,
        suffix,
        target: seq.sum() / 2,
        choice: Vec::new(),
        sum: 0,
        descending: true,
        remaining: limit,
        done: odd || limit == Some(0),
    };
    if !iter.items.is_empty() {
        iter.choice.push(true);
        iter.sum = iter.items[0];
    }
    iter
}

impl EqualSumSplits {
    fn emit(&self) -> SplitWitness {
        let mut sides = vec![Side::V; self.len];
        for (i, &c) in self.choice.iter().enumerate() {
            if c {
                sides[self.positions[i]] = Side::U;
            }
        }
        SplitWitness {
            sides,
            half_sum: self.target,
        }
    }

    /// Pops back to the most recent included item and excludes it instead.
    /// The root item stays included.
    fn backtrack(&mut self) -> bool {
        while self.choice.len() > 1 {
            let depth = self.choice.len() - 1;
            if self.choice.pop() == Some(true) {
                self.sum -= self.items[depth];
                self.choice.push(false);
                self.descending = true;
                return true;
            }
        }
        false
    }

    fn advance(&mut self) -> Option<SplitWitness> {
        if self.items.is_empty() {
            // All degrees zero: the single split puts everything on V.
            self.done = true;
            return Some(self.emit());
        }
        loop {
            if !self.descending && !self.backtrack() {
                self.done = true;
                return None;
            }
            let depth = self.choice.len();
            if self.sum == self.target {
                self.descending = false;
                return Some(self.emit());
            }
            if self.sum > self.target
                || depth == self.items.len()
                || self.sum + self.suffix[depth] < self.target
            {
                self.descending = false;
                continue;
            }
            if self.sum + self.items[depth] <= self.target {
                self.sum += self.items[depth];
                self.choice.push(true);
            } else {
                self.choice.push(false);
            }
        }
    }
}

impl Iterator for EqualSumSplits {
    type Item = SplitWitness;

    fn next(&mut self) -> Option<SplitWitness> {
        if self.done {
            return None;
        }
        let next = self.advance();
        if next.is_some() {
            if let Some(r) = self.remaining.as_mut() {
                *r -= 1;
                if *r == 0 {
                    self.done = true;
                }
            }
        }
        next
    }
}

/// Equal-sum splits up to permuting equal degrees.
///
/// Each item is a count vector over the distinct positive degrees
/// (descending): how many copies of each value go to `U`. A split and its
/// mirror image are reported once, as whichever count vector is
/// lexicographically larger.
pub struct MultisetSplits {
    values: Vec<usize>,
    multiplicity: Vec<usize>,
    /// max_rest[i] = sum over j >= i of values[j] * multiplicity[j].
    max_rest: Vec<usize>,
    target: usize,
    counts: Vec<usize>,
    sum: usize,
    started: bool,
    done: bool,
}

pub fn enumerate_multiset_splits(seq: &DegreeSequence) -> MultisetSplits {
    let sorted = seq.sorted();
    let mut values = Vec::new();
    let mut multiplicity = Vec::new();
    for d in sorted.into_iter().filter(|&d| d > 0) {
        if values.last() == Some(&d) {
            *multiplicity.last_mut().unwrap() += 1;
        } else {
            values.push(d);
            multiplicity.push(1);
        }
    }
    let mut max_rest = vec![0; values.len() + 1];
    for i in (0..values.len()).rev() {
        max_rest[i] = max_rest[i + 1] + values[i] * multiplicity[i];
    }
    MultisetSplits {
        target: seq.sum() / 2,
        done: seq.sum() % 2 != 0,
        values,
        multiplicity,
        max_rest,
        counts: Vec::new(),
        sum: 0,
        started: false,
    }
}

/// One count-vector split: `u_counts[i]` copies of `values[i]` on `U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountSplit {
    pub values: Vec<usize>,
    pub multiplicity: Vec<usize>,
    pub u_counts: Vec<usize>,
}

impl CountSplit {
    /// Both sides as degree sequences (non-increasing, zeros omitted).
    pub fn pair(&self) -> BipartitePair {
        let mut u = Vec::new();
        let mut v = Vec::new();
        for ((&val, &m), &c) in self.values.iter().zip(&self.multiplicity).zip(&self.u_counts) {
            u.extend(std::iter::repeat(val).take(c));
            v.extend(std::iter::repeat(val).take(m - c));
        }
        BipartitePair::new(u, v)
    }

    /// Concrete witness: for each value, its lowest-index copies go to `U`.
    pub fn witness(&self, seq: &DegreeSequence) -> SplitWitness {
        let mut left = self.u_counts.clone();
        let sides = seq
            .degrees()
            .iter()
            .map(|&d| match self.values.iter().position(|&v| v == d) {
                Some(i) if left[i] > 0 => {
                    left[i] -= 1;
                    Side::U
                }
                _ => Side::V,
            })
            .collect();
        SplitWitness {
            sides,
            half_sum: seq.sum() / 2,
        }
    }

    fn is_canonical(&self) -> bool {
        for (&c, &m) in self.u_counts.iter().zip(&self.multiplicity) {
            match c.cmp(&(m - c)) {
                std::cmp::Ordering::Greater => return true,
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
        true
    }
}

impl MultisetSplits {
    fn current(&self) -> CountSplit {
        CountSplit {
            values: self.values.clone(),
            multiplicity: self.multiplicity.clone(),
            u_counts: self.counts.clone(),
        }
    }

    /// Moves to the next complete count vector with the right sum
    /// (canonical or not). Depth-first, largest counts first.
    fn step(&mut self) -> bool {
        if !self.started {
            self.started = true;
            if !self.descend() {
                return self.retreat();
            }
            return true;
        }
        self.retreat()
    }

    /// Extends the partial vector greedily; false on a dead end.
    fn descend(&mut self) -> bool {
        while self.counts.len() < self.values.len() {
            let i = self.counts.len();
            let room = (self.target - self.sum) / self.values[i];
            let c = room.min(self.multiplicity[i]);
            self.counts.push(c);
            self.sum += c * self.values[i];
            if self.sum + self.max_rest[i + 1] < self.target {
                return false;
            }
        }
        self.sum == self.target
    }

    /// Decrements the deepest decrementable count and descends again.
    fn retreat(&mut self) -> bool {
        loop {
            let Some(c) = self.counts.pop() else {
                return false;
            };
            let i = self.counts.len();
            self.sum -= c * self.values[i];
            if c == 0 {
                continue;
            }
            let c = c - 1;
            self.counts.push(c);
            self.sum += c * self.values[i];
            if self.sum + self.max_rest[i + 1] < self.target {
                // Smaller counts here only make it worse.
                self.counts.pop();
                self.sum -= c * self.values[i];
                continue;
            }
            if self.descend() {
                return true;
            }
        }
    }
}

impl Iterator for MultisetSplits {
    type Item = CountSplit;

    fn next(&mut self) -> Option<CountSplit> {
        if self.done {
            return None;
        }
        if self.values.is_empty() {
            self.done = true;
            return Some(self.current());
        }
        while self.step() {
            let split = self.current();
            if split.is_canonical() {
                return Some(split);
            }
        }
        self.done = true;
        None
    }
}

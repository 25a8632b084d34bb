//! Brute-force ground truth.
//!
//! [`brute_force_bipartite_realizable`] tries every equal-sum split (up to
//! permuting equal degrees) against Gale–Ryser. [`exhaustive_graph_search`]
//! does not use Gale–Ryser at all: it searches for an explicit bipartite
//! graph, so it also checks the Gale–Ryser implementation itself.

use thiserror::Error;

use crate::degseq::DegreeSequence;
use crate::gale_ryser::BipartitePair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("sequence of length {len} exceeds the exhaustive search limit of {limit}")]
    TooLarge { len: usize, limit: usize },
    #[error("oracle budget of {0} splits exceeded")]
    BudgetExceeded(usize),
}

/// Largest sequence [`exhaustive_graph_search`] accepts.
pub const EXHAUSTIVE_LIMIT: usize = 8;

pub const DEFAULT_ORACLE_BUDGET: usize = 5_000_000;

/// Whether some equal-sum split of `seq` is bigraphic.
///
/// Splits are enumerated as count vectors over the distinct degree values,
/// so the cost depends on the number of distinct values rather than the
/// length. More than `budget` complete vectors is an error.
pub fn brute_force_bipartite_realizable(
    seq: &DegreeSequence,
    budget: usize,
) -> Result<bool, OracleError> {
    if seq.sum() % 2 != 0 {
        return Ok(false);
    }
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for d in seq.sorted() {
        match groups.last_mut() {
            Some((value, count)) if *value == d => *count += 1,
            _ => groups.push((d, 1)),
        }
    }
    let mut search = CountSearch {
        groups,
        half: seq.sum() / 2,
        u: Vec::new(),
        v: Vec::new(),
        examined: 0,
        budget,
    };
    search.run(0, 0)
}

struct CountSearch {
    groups: Vec<(usize, usize)>,
    half: usize,
    u: Vec<usize>,
    v: Vec<usize>,
    examined: usize,
    budget: usize,
}

impl CountSearch {
    fn run(&mut self, group: usize, u_sum: usize) -> Result<bool, OracleError> {
        if group == self.groups.len() {
            if u_sum != self.half {
                return Ok(false);
            }
            self.examined += 1;
            if self.examined > self.budget {
                return Err(OracleError::BudgetExceeded(self.budget));
            }
            let pair = BipartitePair::new(self.u.clone(), self.v.clone());
            return Ok(pair.is_bigraphic());
        }
        let (value, count) = self.groups[group];
        for take in 0..=count {
            let sum = u_sum + take * value;
            if sum > self.half {
                break;
            }
            let (u_len, v_len) = (self.u.len(), self.v.len());
            self.u.extend(std::iter::repeat(value).take(take));
            self.v.extend(std::iter::repeat(value).take(count - take));
            let found = self.run(group + 1, sum);
            self.u.truncate(u_len);
            self.v.truncate(v_len);
            if found? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Whether some simple bipartite graph has degree sequence `seq`, by
/// trying every 2-colouring and searching for the cross edges directly.
pub fn exhaustive_graph_search(seq: &DegreeSequence) -> Result<bool, OracleError> {
    let n = seq.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(OracleError::TooLarge {
            len: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(true);
    }
    let d = seq.degrees();
    // Vertex 0 is always coloured U.
    for mask in 0u32..1 << (n - 1) {
        let (mut u, mut v) = (vec![d[0]], Vec::new());
        for (i, &deg) in d.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                u.push(deg);
            } else {
                v.push(deg);
            }
        }
        if exhaustive_pair_search(&u, &v) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether a simple bipartite graph with `U` degrees `u` and `V` degrees
/// `v` exists, by backtracking over neighbourhoods. Independent of the
/// Gale–Ryser inequalities.
pub fn exhaustive_pair_search(u: &[usize], v: &[usize]) -> bool {
    if u.iter().sum::<usize>() != v.iter().sum::<usize>() {
        return false;
    }
    if u.iter().any(|&d| d > v.len()) || v.iter().any(|&d| d > u.len()) {
        return false;
    }
    let mut residual = v.to_vec();
    place(u, 0, &mut residual)
}

fn place(u: &[usize], i: usize, residual: &mut [usize]) -> bool {
    if i == u.len() {
        return residual.iter().all(|&r| r == 0);
    }
    let left = u.len() - i;
    // A V vertex cannot take more edges than there are U vertices left.
    if residual.iter().any(|&r| r > left) {
        return false;
    }
    choose(u, i, u[i], 0, residual)
}

/// Picks `need` more neighbours for `u[i]` among V vertices `from..`.
fn choose(u: &[usize], i: usize, need: usize, from: usize, residual: &mut [usize]) -> bool {
    if need == 0 {
        return place(u, i + 1, residual);
    }
    for j in from..residual.len() {
        if residual.len() - j < need {
            break;
        }
        if residual[j] == 0 {
            continue;
        }
        residual[j] -= 1;
        let found = choose(u, i, need - 1, j + 1, residual);
        residual[j] += 1;
        if found {
            return true;
        }
    }
    false
}

//! Bigraphic pairs: the Gale–Ryser test, the unipartite embedding, greedy
//! construction and hinge-flips on realizations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::degseq::DegreeSequence;

/// Degree sequences for the two vertex classes `U` and `V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartitePair {
    pub u: DegreeSequence,
    pub v: DegreeSequence,
}

/// Which inequalities of the Gale–Ryser family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InequalityScan {
    /// Only where the sorted `U` degrees drop, plus the last index.
    #[default]
    DropPoints,
    /// Every `k = 1..=|U|`. Slow path kept for differential testing.
    Exhaustive,
}

impl BipartitePair {
    pub fn new(u: impl Into<DegreeSequence>, v: impl Into<DegreeSequence>) -> Self {
        BipartitePair {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn is_bigraphic(&self) -> bool {
        self.is_bigraphic_with(InequalityScan::DropPoints)
    }

    pub fn is_bigraphic_with(&self, scan: InequalityScan) -> bool {
        if self.u.sum() != self.v.sum() {
            return false;
        }
        let u = self.u.sorted();
        let n = u.len();
        let mut prefix = 0;
        for k in 1..=n {
            prefix += u[k - 1];
            if scan == InequalityScan::DropPoints && k < n && u[k - 1] == u[k] {
                continue;
            }
            if prefix > capacity(self.v.degrees(), k) {
                return false;
            }
        }
        true
    }

    /// Gale–Ryser inequality at a single `k` (1-based) on the sorted `U`
    /// side. Indices outside `1..=|U|` hold vacuously.
    pub fn inequality_holds_at(&self, k: usize) -> bool {
        if k == 0 || k > self.u.len() {
            return true;
        }
        let u = self.u.sorted();
        let prefix: usize = u[..k].iter().sum();
        prefix <= capacity(self.v.degrees(), k)
    }

    /// `(d_{1,1}+n-1, ..., d_{1,n}+n-1, d_{2,1}, ..., d_{2,m})` with
    /// `n = |U|`, in input order.
    pub fn to_unipartite(&self) -> DegreeSequence {
        let shift = self.u.len().saturating_sub(1);
        let degrees = self
            .u
            .degrees()
            .iter()
            .map(|&d| d + shift)
            .chain(self.v.degrees().iter().copied())
            .collect::<Vec<_>>();
        DegreeSequence::new(degrees)
    }
}

/// `sum_j min(k, v_j)`.
fn capacity(v: &[usize], k: usize) -> usize {
    v.iter().map(|&d| d.min(k)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("edge ({u}, {v}) out of range for {u_count}+{v_count} vertices")]
    OutOfRange {
        u: usize,
        v: usize,
        u_count: usize,
        v_count: usize,
    },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("malformed realization text: {0}")]
    Malformed(String),
}

/// A simple bipartite graph on `u_count + v_count` vertices.
///
/// Vertices are `0..u_count` on the `U` side and `0..v_count` on the `V`
/// side; edges are `(u, v)` pairs stored in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteRealization {
    u_count: usize,
    v_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteRealization {
    pub fn new(
        u_count: usize,
        v_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RealizationError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= u_count || v >= v_count {
                return Err(RealizationError::OutOfRange {
                    u,
                    v,
                    u_count,
                    v_count,
                });
            }
            if !set.insert((u, v)) {
                return Err(RealizationError::DuplicateEdge(u, v));
            }
        }
        Ok(BipartiteRealization {
            u_count,
            v_count,
            edges: set,
        })
    }

    pub fn empty(u_count: usize, v_count: usize) -> Self {
        BipartiteRealization {
            u_count,
            v_count,
            edges: BTreeSet::new(),
        }
    }

    pub fn u_count(&self) -> usize {
        self.u_count
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn u_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.u_count];
        for &(u, _) in &self.edges {
            deg[u] += 1;
        }
        deg
    }

    pub fn v_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v_count];
        for &(_, v) in &self.edges {
            deg[v] += 1;
        }
        deg
    }

    /// Degree lists match the pair exactly, index by index.
    pub fn realizes(&self, pair: &BipartitePair) -> bool {
        self.u_degrees() == pair.u.degrees() && self.v_degrees() == pair.v.degrees()
    }

    /// Moves the `U` endpoint of edge `(from, v)` to `to`.
    pub fn hinge_flip(&self, from: usize, to: usize, v: usize) -> Result<Self, InvalidMove> {
        if from == to {
            return Err(InvalidMove::SameVertex(from));
        }
        if from >= self.u_count || to >= self.u_count || v >= self.v_count {
            return Err(InvalidMove::OutOfRange);
        }
        if !self.has_edge(from, v) {
            return Err(InvalidMove::MissingEdge(from, v));
        }
        if self.has_edge(to, v) {
            return Err(InvalidMove::EdgePresent(to, v));
        }
        let mut next = self.clone();
        next.edges.remove(&(from, v));
        next.edges.insert((to, v));
        Ok(next)
    }

    /// Hinge-flip from `U` vertex `j` to `U` vertex `i`, which requires
    /// `deg(i) < deg(j) - 1`. Uses the lowest-index `v` adjacent to `j` but
    /// not to `i`; one exists because `j` has more neighbours than `i`.
    pub fn balancing_hinge_flip(&self, i: usize, j: usize) -> Result<Self, InvalidMove> {
        if i >= self.u_count || j >= self.u_count {
            return Err(InvalidMove::OutOfRange);
        }
        let deg = self.u_degrees();
        if deg[i] + 1 >= deg[j] {
            return Err(InvalidMove::NotUnbalanced {
                i,
                j,
                deg_i: deg[i],
                deg_j: deg[j],
            });
        }
        let v = (0..self.v_count)
            .find(|&v| self.has_edge(j, v) && !self.has_edge(i, v))
            .expect("vertex with more neighbours has a private neighbour");
        self.hinge_flip(j, i, v)
    }
}

/// Text format: a header `p bipartite <u_count> <v_count> <edge_count>`
/// followed by one `u v` line per edge, 0-based.
impl fmt::Display for BipartiteRealization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "p bipartite {} {} {}",
            self.u_count,
            self.v_count,
            self.edges.len()
        )?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for BipartiteRealization {
    type Err = RealizationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = |msg: &str| RealizationError::Malformed(msg.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| malformed("missing header"))?
            .split_whitespace()
            .collect();
        let [p, kind, u_count, v_count, edge_count] = header[..] else {
            return Err(malformed("header must have five fields"));
        };
        if p != "p" || kind != "bipartite" {
            return Err(malformed("header must start with `p bipartite`"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| malformed(s));
        let (u_count, v_count, edge_count) = (num(u_count)?, num(v_count)?, num(edge_count)?);
        let edges = lines
            .map(|line| {
                let mut it = line.split_whitespace();
                match (it.next(), it.next(), it.next()) {
                    (Some(u), Some(v), None) => Ok((num(u)?, num(v)?)),
                    _ => Err(malformed(line)),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if edges.len() != edge_count {
            return Err(malformed("edge count does not match header"));
        }
        BipartiteRealization::new(u_count, v_count, edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidMove {
    #[error("hinge-flip endpoints coincide ({0})")]
    SameVertex(usize),
    #[error("vertex index out of range")]
    OutOfRange,
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(usize, usize),
    #[error("edge ({0}, {1}) is already present")]
    EdgePresent(usize, usize),
    #[error("deg(u{i}) = {deg_i} is not below deg(u{j}) - 1 = {deg_j} - 1")]
    NotUnbalanced {
        i: usize,
        j: usize,
        deg_i: usize,
        deg_j: usize,
    },
}

/// Greedy realization of a pair, or `None` when the pair is not bigraphic.
///
/// `U` vertices are processed in non-increasing degree order (ties by
/// index); each is joined to the `V` vertices of largest residual degree,
/// ties broken by lowest index. The result realizes the pair in its
/// original index order.
pub fn construct_realization(pair: &BipartitePair) -> Option<BipartiteRealization> {
    if pair.u.sum() != pair.v.sum() {
        return None;
    }
    let u = pair.u.degrees();
    let mut residual = pair.v.degrees().to_vec();
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by(|&a, &b| u[b].cmp(&u[a]).then(a.cmp(&b)));

    let mut edges = BTreeSet::new();
    let mut targets: Vec<usize> = (0..residual.len()).collect();
    for &ui in &order {
        let need = u[ui];
        if need == 0 {
            continue;
        }
        targets.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));
        if need > targets.len() || residual[targets[need - 1]] == 0 {
            return None;
        }
        for &vj in &targets[..need] {
            residual[vj] -= 1;
            edges.insert((ui, vj));
        }
    }
    if residual.iter().any(|&r| r > 0) {
        return None;
    }
    Some(BipartiteRealization {
        u_count: u.len(),
        v_count: pair.v.len(),
        edges,
    })
}

/// A realization whose vertices are tied to positions in a degree
/// sequence: `U` vertex `i` is entry `u_labels[i]`, `V` vertex `j` is entry
/// `v_labels[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledRealization {
    pub graph: BipartiteRealization,
    pub u_labels: Vec<usize>,
    pub v_labels: Vec<usize>,
}

impl LabeledRealization {
    /// Every position of `seq` appears exactly once as a label and each
    /// vertex has the degree of its position.
    pub fn realizes(&self, seq: &DegreeSequence) -> bool {
        if self.u_labels.len() != self.graph.u_count()
            || self.v_labels.len() != self.graph.v_count()
            || self.u_labels.len() + self.v_labels.len() != seq.len()
        {
            return false;
        }
        let mut seen = vec![false; seq.len()];
        for &label in self.u_labels.iter().chain(&self.v_labels) {
            if label >= seq.len() || std::mem::replace(&mut seen[label], true) {
                return false;
            }
        }
        let d = seq.degrees();
        let ok_u = self
            .graph
            .u_degrees()
            .iter()
            .zip(&self.u_labels)
            .all(|(&deg, &l)| deg == d[l]);
        let ok_v = self
            .graph
            .v_degrees()
            .iter()
            .zip(&self.v_labels)
            .all(|(&deg, &l)| deg == d[l]);
        ok_u && ok_v
    }

    /// Edges rewritten as pairs of sequence positions.
    pub fn labeled_edges(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .map(|(u, v)| (self.u_labels[u], self.v_labels[v]))
            .collect()
    }

    /// Sorted multiset of all vertex degrees.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut all = self.graph.u_degrees();
        all.extend(self.graph.v_degrees());
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(u: &[usize], v: &[usize]) -> BipartitePair {
        BipartitePair::new(u.to_vec(), v.to_vec())
    }

    #[test]
    fn bigraphic_examples() {
        assert!(pair(&[2, 2], &[2, 2]).is_bigraphic());
        assert!(!pair(&[3, 1], &[2, 2]).is_bigraphic());
        assert!(pair(&[2, 2, 2], &[3, 3]).is_bigraphic());
        assert!(!pair(&[1], &[2]).is_bigraphic());
        assert!(pair(&[], &[]).is_bigraphic());
        assert!(pair(&[0, 0], &[0]).is_bigraphic());
        assert!(pair(&[1, 1], &[2, 0, 0]).is_bigraphic());
        assert!(!pair(&[2], &[2]).is_bigraphic());
    }

    #[test]
    fn unipartite_examples() {
        assert_eq!(pair(&[2, 2], &[2, 2]).to_unipartite().degrees(), &[3, 3, 2, 2]);
        assert_eq!(pair(&[1], &[1]).to_unipartite().degrees(), &[1, 1]);
        assert_eq!(
            pair(&[2, 1, 1], &[2, 1, 1]).to_unipartite().degrees(),
            &[4, 3, 3, 2, 1, 1]
        );
    }

    #[test]
    fn construct_examples() {
        let g = construct_realization(&pair(&[2, 2], &[2, 2])).unwrap();
        assert_eq!(g.edge_count(), 4);
        let g = construct_realization(&pair(&[2], &[1, 1])).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1)]);
        assert!(construct_realization(&pair(&[3, 1], &[2, 2])).is_none());
        assert!(construct_realization(&pair(&[1], &[2])).is_none());
    }

    #[test]
    fn hinge_flip_examples() {
        let k22 = construct_realization(&pair(&[2, 2], &[2, 2])).unwrap();
        assert_eq!(k22.hinge_flip(0, 1, 0), Err(InvalidMove::EdgePresent(1, 0)));

        let g = BipartiteRealization::new(2, 2, [(0, 0), (0, 1)]).unwrap();
        assert_eq!((g.u_degrees(), g.v_degrees()), (vec![2, 0], vec![1, 1]));
        let h = g.hinge_flip(0, 1, 1).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert_eq!((h.u_degrees(), h.v_degrees()), (vec![1, 1], vec![1, 1]));
        assert_eq!(g.hinge_flip(1, 0, 0), Err(InvalidMove::MissingEdge(1, 0)));
        assert_eq!(g.hinge_flip(0, 0, 0), Err(InvalidMove::SameVertex(0)));
    }

    #[test]
    fn balancing_flip_examples() {
        let g = construct_realization(&pair(&[3, 1], &[2, 1, 1])).unwrap();
        let h = g.balancing_hinge_flip(1, 0).unwrap();
        assert_eq!(h.u_degrees(), vec![2, 2]);
        assert_eq!(h.v_degrees(), g.v_degrees());
        assert_eq!(h.edge_count(), g.edge_count());

        let k22 = construct_realization(&pair(&[2, 2], &[2, 2])).unwrap();
        assert!(matches!(
            k22.balancing_hinge_flip(0, 1),
            Err(InvalidMove::NotUnbalanced { .. })
        ));
    }

    #[test]
    fn text_format_roundtrip() {
        let g = construct_realization(&pair(&[2, 1], &[1, 1, 1])).unwrap();
        let text = g.to_string();
        assert!(text.starts_with("p bipartite 2 3 3\n"));
        assert_eq!(text.parse::<BipartiteRealization>().unwrap(), g);
        assert!("p bipartite 1 1 1\n0 1\n".parse::<BipartiteRealization>().is_err());
        assert!("p bipartite 1 1 2\n0 0\n".parse::<BipartiteRealization>().is_err());
        assert!("p bipartite 2 2 2\n0 0\n0 0\n".parse::<BipartiteRealization>().is_err());
    }
}

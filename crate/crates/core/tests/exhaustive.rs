mod common;

use bdr_core::degseq::DegreeClass;
use bdr_core::gale_ryser::InequalityScan;
use bdr_core::oracle::{self, DEFAULT_ORACLE_BUDGET};
use bdr_core::{
    enumerate_equal_sum_splits, equal_sum_split_exists, find_equal_sum_split, lbds,
    lbds_pair_bigraphic, BipartitePair, DegreeSequence,
};

/// Whether a simple graph with degree list `d` exists, by choosing the
/// later neighbours of each vertex in turn.
fn labeled_graph_exists(d: &[usize]) -> bool {
    fn go(i: usize, residual: &mut Vec<usize>) -> bool {
        let n = residual.len();
        if i == n {
            return true;
        }
        pick(i, i + 1, residual[i], residual)
    }
    fn pick(i: usize, from: usize, need: usize, residual: &mut Vec<usize>) -> bool {
        if need == 0 {
            return go(i + 1, residual);
        }
        for j in from..residual.len() {
            if residual.len() - j < need {
                break;
            }
            if residual[j] == 0 {
                continue;
            }
            residual[j] -= 1;
            let found = pick(i, j + 1, need - 1, residual);
            residual[j] += 1;
            if found {
                return true;
            }
        }
        false
    }
    d.iter().sum::<usize>() % 2 == 0 && go(0, &mut d.to_vec())
}

#[test]
fn graphic_matches_labeled_graph_search() {
    let mut checked = 0;
    for n in 0..=7 {
        for d in common::tuples(n, 6) {
            checked += 1;
            assert_eq!(
                DegreeSequence::new(d.clone()).is_graphic(),
                labeled_graph_exists(&d),
                "{d:?}"
            );
        }
    }
    assert_eq!(checked, (0..=7).map(|n| 7usize.pow(n)).sum::<usize>());
}

#[test]
fn drop_point_scan_matches_every_index() {
    for total in 0..=8 {
        for a in 0..=total {
            for u in common::tuples(a, 4) {
                for v in common::tuples(total - a, 4) {
                    let pair = BipartitePair::new(u.clone(), v.clone());
                    assert_eq!(
                        pair.is_bigraphic_with(InequalityScan::DropPoints),
                        pair.is_bigraphic_with(InequalityScan::Exhaustive),
                        "{u:?} / {v:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn lbds_fast_check_matches_full_check() {
    // Degrees above 12 have no room against at most 12 partners, so the
    // grid caps Δ there.
    let classes = |sigma: usize| -> Vec<DegreeClass> {
        let mut out = Vec::new();
        for n in 1..=12 {
            for delta in 0..=12 {
                for d in 0..=delta {
                    let class = DegreeClass::new(n, sigma, d, delta);
                    if class.validate().is_ok() {
                        out.push(class);
                    }
                }
            }
        }
        out
    };
    let mut pairs = 0usize;
    for sigma in 0..=80 {
        let all = classes(sigma);
        let seqs: Vec<DegreeSequence> = all.iter().map(|&c| lbds(c).unwrap()).collect();
        for (i, &first) in all.iter().enumerate() {
            for (j, &second) in all.iter().enumerate() {
                pairs += 1;
                let full = BipartitePair::new(seqs[i].clone(), seqs[j].clone()).is_bigraphic();
                assert_eq!(
                    lbds_pair_bigraphic(first, second).unwrap(),
                    full,
                    "{first:?} / {second:?}"
                );
            }
        }
    }
    assert!(pairs > 1_000_000);
}

#[test]
fn brute_force_matches_exhaustive_graph_search() {
    for n in 0..=8 {
        for seq in common::multisets(n, 0, 6) {
            assert_eq!(
                oracle::brute_force_bipartite_realizable(&seq, DEFAULT_ORACLE_BUDGET).unwrap(),
                oracle::exhaustive_graph_search(&seq).unwrap(),
                "({seq})"
            );
        }
    }
}

#[test]
fn split_existence_matches_enumeration() {
    for n in 0..=16 {
        for seq in common::multisets(n, 0, 4) {
            let exists = equal_sum_split_exists(&seq);
            assert_eq!(exists, enumerate_equal_sum_splits(&seq, Some(1)).next().is_some(), "({seq})");
            let found = find_equal_sum_split(&seq);
            assert_eq!(exists, found.is_some(), "({seq})");
            if let Some(w) = found {
                assert!(w.is_valid_for(&seq), "({seq})");
            }
        }
    }
}

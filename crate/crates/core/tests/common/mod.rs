#![allow(dead_code)]

use bdr_core::DegreeSequence;

/// Every non-increasing sequence of length `n` with entries in `lo..=hi`.
pub fn multisets(n: usize, lo: usize, hi: usize) -> Vec<DegreeSequence> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fill(n, lo, hi, &mut cur, &mut out);
    out
}

fn fill(n: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
    if cur.len() == n {
        out.push(DegreeSequence::new(cur.clone()));
        return;
    }
    if lo > hi {
        return;
    }
    let top = cur.last().copied().unwrap_or(hi).min(hi);
    for d in lo..=top {
        cur.push(d);
        fill(n, lo, hi, cur, out);
        cur.pop();
    }
}

/// Every sequence (not just sorted ones) of length `n` with entries `0..=max`.
pub fn tuples(n: usize, max: usize) -> impl Iterator<Item = Vec<usize>> {
    let base = max + 1;
    let count = base.pow(n as u32);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(code % base);
            code /= base;
        }
        v
    })
}

/// Integer partitions of `total` into positive parts at most `max_part`,
/// in non-increasing order.
pub fn partitions(total: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, &mut Vec::new(), &mut out);
    out
}

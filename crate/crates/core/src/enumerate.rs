//! Exhaustive and random quiver generation for sweeps.

use alloc::vec;
use alloc::vec::Vec;

use crate::quiver::{Arrow, Quiver, UnionFind};

/// All connected loop-less quivers with exactly `k` arrows, every
/// orientation and arrow order, one representative per vertex relabeling:
/// vertices are numbered in order of first appearance along the arrow list.
pub fn connected_quivers(k: usize) -> Vec<Quiver> {
    let mut out = Vec::new();
    let mut arrows = Vec::with_capacity(k);
    extend(k, 0, &mut arrows, &mut out);
    out
}

fn extend(k: usize, used: usize, arrows: &mut Vec<Arrow>, out: &mut Vec<Quiver>) {
    if arrows.len() == k {
        if is_connected(used, arrows) {
            out.push(Quiver::new(used, arrows.clone()).expect("generated quivers are loop-less"));
        }
        return;
    }
    for s in 0..=used {
        let used_s = used.max(s + 1);
        for t in 0..=used_s {
            if t == s {
                continue;
            }
            let used_t = used_s.max(t + 1);
            arrows.push((s, t));
            extend(k, used_t, arrows, out);
            arrows.pop();
        }
    }
}

fn is_connected(m: usize, arrows: &[Arrow]) -> bool {
    let mut uf = UnionFind::new(m);
    let merges = arrows.iter().filter(|&&(s, t)| uf.union(s, t)).count();
    m > 0 && merges + 1 == m
}

/// Connected quivers with `k` arrows on exactly `k + 1 - c` vertices.
pub fn connected_quivers_of_corank(k: usize, c: usize) -> Vec<Quiver> {
    connected_quivers(k).into_iter().filter(|q| q.n_vertices() + c == k + 1).collect()
}

/// Random connected quiver with `m` vertices and `k >= m - 1` arrows:
/// a random spanning tree, extra random arrows, then shuffled arrow order.
/// `pick(n)` must return a uniform value in `0..n`.
pub fn random_connected_quiver(m: usize, k: usize, pick: &mut impl FnMut(usize) -> usize) -> Quiver {
    assert!(m >= 2 && k + 1 >= m, "need m >= 2 and at least m - 1 arrows");
    let mut arrows: Vec<Arrow> = Vec::with_capacity(k);
    for v in 1..m {
        let u = pick(v);
        arrows.push(if pick(2) == 0 { (u, v) } else { (v, u) });
    }
    while arrows.len() < k {
        let s = pick(m);
        let t = (s + 1 + pick(m - 1)) % m;
        arrows.push((s, t));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    shuffle(&mut perm, pick);
    shuffle(&mut arrows, pick);
    let arrows = arrows.into_iter().map(|(s, t)| (perm[s], perm[t])).collect();
    Quiver::new(m, arrows).expect("generated quivers are loop-less")
}

/// Random connected quiver with between 1 and `max_arrows` arrows.
pub fn random_small_quiver(max_arrows: usize, pick: &mut impl FnMut(usize) -> usize) -> Quiver {
    let k = 1 + pick(max_arrows);
    let m = 2 + pick(k);
    random_connected_quiver(m, k, pick)
}

fn shuffle<T>(items: &mut [T], pick: &mut impl FnMut(usize) -> usize) {
    for i in (1..items.len()).rev() {
        let j = pick(i + 1);
        items.swap(i, j);
    }
}

/// Distinct elements in first-seen order.
pub fn dedup_stable<T: Clone + Eq + core::hash::Hash + Ord>(items: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = vec![];
    for x in items {
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: all arrow lists on at most k+1 labelled vertices,
    // reduced to a canonical relabeling by brute force over permutations.
    fn brute_force_count(k: usize) -> usize {
        let mut seen = alloc::collections::BTreeSet::new();
        let m_max = k + 1;
        let pairs: Vec<Arrow> =
            (0..m_max).flat_map(|s| (0..m_max).filter(move |&t| t != s).map(move |t| (s, t))).collect();
        let total = pairs.len().pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let arrows: Vec<Arrow> = (0..k).map(|_| { let p = pairs[c % pairs.len()]; c /= pairs.len(); p }).collect();
            let mut used: Vec<usize> = arrows.iter().flat_map(|&(s, t)| [s, t]).collect();
            used.sort_unstable();
            used.dedup();
            let m = used.len();
            let relabeled: Vec<Arrow> = arrows
                .iter()
                .map(|&(s, t)| (used.binary_search(&s).unwrap(), used.binary_search(&t).unwrap()))
                .collect();
            if !is_connected(m, &relabeled) {
                continue;
            }
            let mut best: Option<Vec<Arrow>> = None;
            for perm in permutations(m) {
                let cand: Vec<Arrow> = relabeled.iter().map(|&(s, t)| (perm[s], perm[t])).collect();
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
            seen.insert(best.unwrap());
        }
        seen.len()
    }

    fn permutations(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in permutations(m - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, m - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn counts_match_brute_force() {
        let counts: Vec<usize> = (1..=3).map(|k| connected_quivers(k).len()).collect();
        assert_eq!(counts, vec![1, 6, 68]);
        for k in 1..=3 {
            assert_eq!(connected_quivers(k).len(), brute_force_count(k));
        }
    }

    // Frozen from an independent count (canonical relabeling by brute force
    // over vertex permutations, run once offline for k = 4, 5).
    #[test]
    fn frozen_counts() {
        assert_eq!(connected_quivers(4).len(), 1240);
        assert_eq!(connected_quivers(5).len(), 32272);
        assert_eq!(connected_quivers_of_corank(4, 0).len(), 400);
        assert_eq!(connected_quivers_of_corank(5, 0).len(), 6912);
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let all = connected_quivers(4);
        assert_eq!(dedup_stable(all.iter().cloned()).len(), all.len());
    }

    #[test]
    fn random_quivers_are_connected() {
        let mut state = 12345u64;
        let mut pick = |n: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % n as u64) as usize
        };
        for _ in 0..200 {
            let q = random_small_quiver(10, &mut pick);
            assert!(q.is_connected());
            assert!(q.n_arrows() >= 1 && q.n_arrows() <= 10);
        }
    }
}

//! Brute-force reference implementations shared by the integration tests.
//! They are deliberately naive: no bitmasks, no ordering heuristics.

#![allow(dead_code)]

use itertools::Itertools;
use skolem::{DiffMultiset, Pairing, Permutation};

/// Every perfect matching of `positions`, pairing the first element with
/// each later one in turn.
pub fn all_matchings(positions: &[u32]) -> Vec<Vec<(u32, u32)>> {
    let Some((&first, rest)) = positions.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for (k, &other) in rest.iter().enumerate() {
        let mut remaining = rest.to_vec();
        remaining.remove(k);
        for mut m in all_matchings(&remaining) {
            m.push((first, other));
            out.push(m);
        }
    }
    out
}

fn sorted_diffs(m: &[(u32, u32)]) -> Vec<u32> {
    m.iter()
        .map(|&(t, s)| s - t)
        .sorted_unstable()
        .rev()
        .collect()
}

/// Pairings of `positions` realising `diffs`, canonicalised and sorted.
pub fn naive_solutions(positions: &[u32], diffs: &DiffMultiset) -> Vec<Pairing> {
    if positions.len() != 2 * diffs.len() {
        return Vec::new();
    }
    all_matchings(positions)
        .into_iter()
        .filter(|m| sorted_diffs(m) == diffs.as_slice())
        .map(|m| Pairing::new(m).unwrap())
        .sorted_by(|a, b| a.pairs().cmp(b.pairs()))
        .collect()
}

/// Pairings of `{1..2n}` with pairwise distinct differences.
pub fn naive_perfect_count(n: u32) -> u64 {
    let positions: Vec<u32> = (1..=2 * n).collect();
    all_matchings(&positions)
        .iter()
        .filter(|m| sorted_diffs(m).iter().all_unique())
        .count() as u64
}

pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(|v| Permutation::new(v).unwrap())
}

/// Random perfect matching of `{1..2n}` from a shuffled position list.
pub fn matching_from_shuffle(shuffled: &[u32]) -> Pairing {
    Pairing::new(shuffled.chunks(2).map(|c| (c[0], c[1]))).unwrap()
}

mod common;

use std::collections::BTreeMap;

use common::{all_permutations, naive_perfect_count, naive_solutions};
use skolem::displacement::{count_realizations, derangement_count, pattern_of};
use skolem::enumeration::{count_family, CountOptions, Family};
use skolem::solver::{enumerate_solutions, Order};
use skolem::{max_diagonal_load, DiffMultiset, PositionSet, Solver};

fn count(f: Family, n: usize) -> u64 {
    count_family(f, n, &CountOptions::default())
        .unwrap()
        .count
        .try_into()
        .unwrap()
}

#[test]
fn skolem_counts_match_naive_enumeration() {
    for n in 1..=6u32 {
        let p: Vec<u32> = (1..=2 * n).collect();
        let expected = naive_solutions(&p, &DiffMultiset::skolem(n)).len() as u64;
        assert_eq!(count(Family::Skolem, n as usize), expected, "n = {n}");
    }
}

#[test]
fn perfect_counts_match_naive_enumeration() {
    for n in 1..=6 {
        assert_eq!(
            count(Family::Perfect, n),
            naive_perfect_count(n as u32),
            "n = {n}"
        );
    }
}

#[test]
fn perfect_extremal_counts_match_diagonal_oracle() {
    // distinct displacements means at most one entry on each diagonal
    for n in 1..=9usize {
        let expected = all_permutations(n)
            .filter(|p| max_diagonal_load(p) <= 1)
            .count() as u64;
        assert_eq!(count(Family::PerfectExtremal, n), expected, "n = {n}");
    }
}

#[test]
fn perfect_extremal_order_nine() {
    assert_eq!(count(Family::PerfectExtremal, 9), 12657);
}

#[test]
fn derangements_match_fixed_point_free_count() {
    for n in 0..=8usize {
        let expected = all_permutations(n)
            .filter(|p| p.fixed_points().next().is_none())
            .count();
        assert_eq!(derangement_count(n as u32), expected.into(), "n = {n}");
    }
}

#[test]
fn pattern_buckets_match_extremal_solver() {
    for n in 1..=6 {
        let mut buckets = BTreeMap::new();
        for p in all_permutations(n) {
            *buckets.entry(pattern_of(&p)).or_insert(0u64) += 1;
        }
        for (alpha, expected) in buckets {
            assert_eq!(count_realizations(&alpha).unwrap(), expected, "{alpha}");
        }
    }
}

#[test]
fn enumeration_matches_naive_on_sparse_positions() {
    let cases = [
        ("1,2,4,5,7,8", "1,2,3"),
        ("1-8", "1,1,3,3"),
        ("2,3,5,6,9,10", "3,3,4"),
        ("1-10", "1,2,2,5,5"),
        ("1,2,4,5", "1,3"),
    ];
    for (p, a) in cases {
        let p: PositionSet = p.parse().unwrap();
        let a: DiffMultiset = a.parse().unwrap();
        let expected = naive_solutions(p.as_slice(), &a);
        let got = enumerate_solutions(&p, &a, None).unwrap();
        assert_eq!(got, expected, "P = {p}, A = {a}");
        let solver = Solver::new(&p, &a).unwrap();
        assert_eq!(solver.count().solutions, expected.len() as u64);
        assert_eq!(
            solver.count_with(Order::LeftmostPosition).solutions,
            expected.len() as u64
        );
    }
}

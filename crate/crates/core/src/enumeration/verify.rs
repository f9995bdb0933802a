//! Exhaustive checks of the conjectured characterisations against the
//! solver, and the perfect-set counter built on the same sweep.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::{par, CountOptions};
use crate::conditions::{
    conjecture2_predicate, necessary_conditions_perfect, two_missing_predicate,
};
use crate::error::Result;
use crate::model::DiffMultiset;
use crate::solver::{is_perfect_extremal, Solver};

/// One set where a predicate and the solver disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    #[serde(serialize_with = "as_list")]
    pub set: DiffMultiset,
    pub predicate: bool,
    pub solvable: bool,
}

fn as_list<S: serde::Serializer>(d: &DiffMultiset, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(d.iter())
}

fn as_lists<S: serde::Serializer>(
    v: &[DiffMultiset],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.as_slice().to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conjecture2Report {
    pub max_card: usize,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
    /// `(n, number of perfect sets of order n)` found by the solver.
    pub accepted_per_order: Vec<(usize, u64)>,
}

/// All `n`-subsets of `{1, ..., 2n-1}`; larger elements violate density.
fn candidate_sets(n: usize) -> Vec<DiffMultiset> {
    (1..2 * n as u32)
        .combinations(n)
        .map(|c| DiffMultiset::new(c).expect("positive"))
        .collect()
}

/// Compare the conjectured characterisation with the solver for every set
/// of cardinality `1..=max_card`.
pub fn verify_conjecture2(max_card: usize, opts: &CountOptions) -> Result<Conjecture2Report> {
    opts.ceilings
        .check("conjecture 2", max_card, opts.ceilings.perfect_sets)?;
    let mut report = Conjecture2Report {
        max_card,
        checked: 0,
        mismatches: Vec::new(),
        accepted_per_order: Vec::new(),
    };
    for n in 1..=max_card {
        let sets = candidate_sets(n);
        let rows = par::map(&sets, opts.jobs, |a| -> Result<(bool, bool)> {
            opts.check_cancel()?;
            let predicate = conjecture2_predicate(a)?;
            let solvable = Solver::perfect(a)?.decide().is_some();
            Ok((predicate, solvable))
        });
        let mut accepted = 0;
        for (a, row) in sets.into_iter().zip(rows) {
            let (predicate, solvable) = row?;
            report.checked += 1;
            accepted += u64::from(solvable);
            if predicate != solvable {
                report.mismatches.push(Mismatch {
                    set: a,
                    predicate,
                    solvable,
                });
            }
        }
        report.accepted_per_order.push((n, accepted));
    }
    Ok(report)
}

/// Number of perfect sets of order `n` and the solver nodes spent. Sets
/// failing the necessary conditions are skipped; the rest stop at the first
/// witness.
pub(crate) fn perfect_set_tally(n: usize, opts: &CountOptions) -> Result<(u64, u64)> {
    let sets: Vec<DiffMultiset> = candidate_sets(n)
        .into_iter()
        .filter(|a| necessary_conditions_perfect(a).passes())
        .collect();
    let rows = par::map(&sets, opts.jobs, |a| -> Result<(bool, u64)> {
        opts.check_cancel()?;
        let (w, nodes) = Solver::perfect(a)?.decide_counted();
        Ok((w.is_some(), nodes))
    });
    rows.into_iter().try_fold((0, 0), |(c, nodes), r| {
        let (ok, k) = r?;
        Ok((c + u64::from(ok), nodes + k))
    })
}

pub fn perfect_set_count(n: usize, opts: &CountOptions) -> Result<u64> {
    opts.ceilings
        .check("perfect-sets", n, opts.ceilings.perfect_sets)?;
    Ok(perfect_set_tally(n, opts)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoMissingMismatch {
    pub n: u32,
    pub missing: (u32, u32),
    #[serde(serialize_with = "as_list")]
    pub set: DiffMultiset,
    pub predicate: bool,
    pub solvable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoMissingReport {
    pub max_n: usize,
    pub checked: u64,
    pub mismatches: Vec<TwoMissingMismatch>,
    /// Sets whose missing pair has the required parity, yet no pairing exists.
    #[serde(serialize_with = "as_lists")]
    pub parity_ok_unsolvable: Vec<DiffMultiset>,
    /// Sets whose missing pair has the required parity but density fails.
    #[serde(serialize_with = "as_lists")]
    pub parity_ok_density_fails: Vec<DiffMultiset>,
}

/// Sweep `{1..n} \ {i, j}` for `3 <= n <= max_n`.
pub fn verify_two_missing(max_n: usize, opts: &CountOptions) -> Result<TwoMissingReport> {
    opts.ceilings
        .check("two-missing", max_n, opts.ceilings.two_missing)?;
    let cases: Vec<(u32, u32, u32)> = (3..=max_n as u32)
        .flat_map(|n| (1..=n).tuple_combinations().map(move |(i, j)| (n, i, j)))
        .collect();
    let rows = par::map(
        &cases,
        opts.jobs,
        |&(n, i, j)| -> Result<(DiffMultiset, bool, bool, bool)> {
            opts.check_cancel()?;
            let a = DiffMultiset::new((1..=n).filter(|&x| x != i && x != j))?;
            let solvable = Solver::perfect(&a)?.decide().is_some();
            let parity_ok = necessary_conditions_perfect(&a).parity_ok;
            Ok((a, parity_ok, two_missing_predicate(n, i, j)?, solvable))
        },
    );
    let mut report = TwoMissingReport {
        max_n,
        checked: 0,
        mismatches: Vec::new(),
        parity_ok_unsolvable: Vec::new(),
        parity_ok_density_fails: Vec::new(),
    };
    let (mut unsolvable, mut density) = (BTreeSet::new(), BTreeSet::new());
    for (&(n, i, j), row) in cases.iter().zip(rows) {
        let (a, parity_ok, predicate, solvable) = row?;
        report.checked += 1;
        if parity_ok && !solvable {
            unsolvable.insert(a.clone());
        }
        if parity_ok && !necessary_conditions_perfect(&a).density_ok {
            density.insert(a.clone());
        }
        if predicate != solvable {
            report.mismatches.push(TwoMissingMismatch {
                n,
                missing: (i, j),
                set: a,
                predicate,
                solvable,
            });
        }
    }
    report.parity_ok_unsolvable = unsolvable.into_iter().collect();
    report.parity_ok_density_fails = density.into_iter().collect();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub max_card: usize,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
    /// `(n, number of extremal perfect sets of order n)`.
    pub accepted_per_order: Vec<(usize, u64)>,
}

/// The extremal special case: sets with `Σ a = n²`, predicate against the
/// straddling solver.
pub fn verify_extremal(max_card: usize, opts: &CountOptions) -> Result<ExtremalReport> {
    opts.ceilings
        .check("extremal conjecture", max_card, opts.ceilings.perfect_sets)?;
    let mut report = ExtremalReport {
        max_card,
        checked: 0,
        mismatches: Vec::new(),
        accepted_per_order: Vec::new(),
    };
    for n in 1..=max_card {
        let square = (n * n) as u64;
        let sets: Vec<DiffMultiset> = candidate_sets(n)
            .into_iter()
            .filter(|a| a.sum() == square)
            .collect();
        let rows = par::map(&sets, opts.jobs, |a| -> Result<(bool, bool)> {
            opts.check_cancel()?;
            Ok((conjecture2_predicate(a)?, is_perfect_extremal(a)?.is_some()))
        });
        let mut accepted = 0;
        for (a, row) in sets.into_iter().zip(rows) {
            let (predicate, solvable) = row?;
            report.checked += 1;
            accepted += u64::from(solvable);
            if predicate != solvable {
                report.mismatches.push(Mismatch {
                    set: a,
                    predicate,
                    solvable,
                });
            }
        }
        report.accepted_per_order.push((n, accepted));
    }
    Ok(report)
}

//! Exact counting engines, the conjecture harnesses, and closed forms.
//!
//! Every engine splits its search tree into independent subproblems and
//! sums the exact partial counts, so the result does not depend on
//! [`CountOptions::jobs`].

mod par;
mod space;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{DiffMultiset, Pairing};
use crate::solver::{Branch, Solver, Tally};

pub use par::PARALLEL;
pub use verify::{
    perfect_set_count, verify_conjecture2, verify_extremal, verify_two_missing, Conjecture2Report,
    ExtremalReport, Mismatch, TwoMissingMismatch, TwoMissingReport,
};

pub(crate) use space::FreeSpace;

/// What is being counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Pairings of `{1..2n}` into `{1..n}`.
    Skolem,
    /// Pairings of `{1..2n}` with `n` distinct differences.
    Perfect,
    /// As `Perfect`, with every pair straddling the midpoint.
    PerfectExtremal,
    /// Distinct sets `A` admitting a pairing of `{1..2n}`.
    PerfectSets,
    /// All pairings of `{1..2n}`.
    Multi,
    /// All pairings of `{1..2n}` straddling the midpoint.
    ExtremalMulti,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Skolem,
        Family::Perfect,
        Family::PerfectExtremal,
        Family::PerfectSets,
        Family::Multi,
        Family::ExtremalMulti,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Skolem => "skolem",
            Family::Perfect => "perfect",
            Family::PerfectExtremal => "perfect-extremal",
            Family::PerfectSets => "perfect-sets",
            Family::Multi => "multi",
            Family::ExtremalMulti => "extremal-multi",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Order ceilings for the exhaustive engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ceilings {
    pub skolem: usize,
    pub perfect: usize,
    pub perfect_extremal: usize,
    pub perfect_sets: usize,
    pub multi: usize,
    pub extremal_multi: usize,
    /// Largest `n` for the two-missing sweep over `{1..n}`.
    pub two_missing: usize,
    /// Largest pattern length for displacement counting.
    pub displacement: usize,
}

impl Default for Ceilings {
    fn default() -> Self {
        Self {
            skolem: 12,
            perfect: 9,
            perfect_extremal: 10,
            perfect_sets: 10,
            multi: 6,
            extremal_multi: 6,
            two_missing: 14,
            displacement: 10,
        }
    }
}

/// Environment variable that overrides every ceiling.
pub const MAX_ORDER_ENV: &str = "SKOLEM_MAX_ORDER";

impl Ceilings {
    /// Every ceiling set to `max`.
    pub fn uniform(max: usize) -> Self {
        Self {
            skolem: max,
            perfect: max,
            perfect_extremal: max,
            perfect_sets: max,
            multi: max,
            extremal_multi: max,
            two_missing: max,
            displacement: max,
        }
    }

    /// Defaults, or [`Ceilings::uniform`] when `SKOLEM_MAX_ORDER` is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_ORDER_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Self::uniform)
                .map_err(|_| Error::Parse(format!("{MAX_ORDER_ENV}={v:?} is not an integer"))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn for_family(&self, family: Family) -> usize {
        match family {
            Family::Skolem => self.skolem,
            Family::Perfect => self.perfect,
            Family::PerfectExtremal => self.perfect_extremal,
            Family::PerfectSets => self.perfect_sets,
            Family::Multi => self.multi,
            Family::ExtremalMulti => self.extremal_multi,
        }
    }

    pub fn check(&self, what: impl Into<String>, order: usize, ceiling: usize) -> Result<()> {
        if order > ceiling {
            return Err(Error::ResourceLimit {
                what: what.into(),
                order,
                ceiling,
            });
        }
        Ok(())
    }
}

/// Knobs shared by the counting engines.
#[derive(Debug, Clone)]
pub struct CountOptions {
    /// Worker threads; 1 runs on the calling thread, 0 uses every core.
    pub jobs: usize,
    pub ceilings: Ceilings,
    /// Set to abandon the count; the call then returns [`Error::Cancelled`].
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            ceilings: Ceilings::default(),
            cancel: None,
        }
    }
}

impl CountOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        Self {
            jobs,
            ..Self::default()
        }
    }

    pub(crate) fn cancel_flag(&self) -> Option<&AtomicBool> {
        self.cancel.as_deref()
    }

    pub(crate) fn check_cancel(&self) -> Result<()> {
        match self.cancel_flag() {
            Some(c) if c.load(Ordering::Relaxed) => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }

    /// How many subproblems to cut the tree into.
    fn split_target(&self) -> usize {
        if self.jobs == 1 {
            1
        } else {
            256
        }
    }
}

/// Exact count of one family at one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub family: Family,
    pub order: usize,
    pub count: BigUint,
    pub elapsed: Duration,
    pub nodes: u64,
}

/// `{"family", "order", "count" (decimal string), "nodes", "elapsed_ms"}`.
impl Serialize for CountReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            family: &'a str,
            order: usize,
            count: String,
            nodes: u64,
            elapsed_ms: u128,
        }
        Wire {
            family: self.family.name(),
            order: self.order,
            count: self.count.to_string(),
            nodes: self.nodes,
            elapsed_ms: self.elapsed.as_millis(),
        }
        .serialize(s)
    }
}

fn sum_tallies(parts: Vec<Result<Tally>>) -> Result<Tally> {
    parts.into_iter().sum()
}

/// Count a family at order `n` exactly.
pub fn count_family(family: Family, n: usize, opts: &CountOptions) -> Result<CountReport> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "order",
            value: 0,
            lo: 1,
            hi: opts.ceilings.for_family(family) as i64,
        });
    }
    opts.ceilings
        .check(family.name(), n, opts.ceilings.for_family(family))?;
    let start = Instant::now();
    let tally = match family {
        Family::Skolem => count_skolem(n, opts)?,
        Family::Perfect => count_free(n, true, false, opts)?,
        Family::PerfectExtremal => count_free(n, true, true, opts)?,
        Family::Multi => count_free(n, false, false, opts)?,
        Family::ExtremalMulti => count_free(n, false, true, opts)?,
        Family::PerfectSets => {
            let (count, nodes) = verify::perfect_set_tally(n, opts)?;
            Tally {
                solutions: count,
                nodes,
            }
        }
    };
    Ok(CountReport {
        family,
        order: n,
        count: BigUint::from(tally.solutions),
        elapsed: start.elapsed(),
        nodes: tally.nodes,
    })
}

fn count_skolem(n: usize, opts: &CountOptions) -> Result<Tally> {
    let solver = Solver::perfect(&DiffMultiset::skolem(n as u32))?;
    let mut branches: Vec<Branch> = vec![solver.root()];
    for _ in 0..n {
        if branches.len() >= opts.split_target() {
            break;
        }
        branches = branches.iter().flat_map(|b| solver.expand(b)).collect();
    }
    sum_tallies(par::map(&branches, opts.jobs, |b| {
        opts.check_cancel()?;
        solver.count_branch(b, opts.cancel_flag())
    }))
}

fn count_free(n: usize, distinct: bool, straddle: bool, opts: &CountOptions) -> Result<Tally> {
    let space = FreeSpace::new(n as u32, distinct, straddle)?;
    let nodes = space.split(opts.split_target());
    sum_tallies(par::map(&nodes, opts.jobs, |&node| {
        opts.check_cancel()?;
        space.count(node, opts.cancel_flag())
    }))
}

/// `(2n-1)!! = (2n-1)(2n-3)...(3)(1)`: the number of pairings of `{1..2n}`.
pub fn double_factorial_count(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * (2 * k - 1))
}

/// `n!`: the number of extremal pairings of `{1..2n}`.
pub fn factorial_count(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Perfect sequences of one order, and those equal to their own reversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalCensus {
    pub order: usize,
    pub total: u64,
    pub reversal_fixed: u64,
    /// The reversal-fixed pairings themselves.
    pub fixed: Vec<Pairing>,
}

pub fn reversal_census(n: usize, opts: &CountOptions) -> Result<ReversalCensus> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "order",
            value: 0,
            lo: 1,
            hi: opts.ceilings.perfect as i64,
        });
    }
    opts.ceilings
        .check("reversal census", n, opts.ceilings.perfect)?;
    let space = FreeSpace::new(n as u32, true, false)?;
    let last = 2 * n - 1;
    let (mut total, mut fixed) = (0u64, Vec::new());
    space.visit_all(|partner, _| {
        total += 1;
        if (0..=last).all(|i| partner[last - i] as usize == last - partner[i] as usize) {
            let pairs = (0..=last)
                .filter(|&i| (partner[i] as usize) > i)
                .map(|i| (i as u32 + 1, partner[i] as u32 + 1));
            fixed.push(Pairing::new(pairs).expect("partner array is an involution"));
        }
    });
    opts.check_cancel()?;
    Ok(ReversalCensus {
        order: n,
        total,
        reversal_fixed: fixed.len() as u64,
        fixed,
    })
}

/// One row of the residue check on perfect-sequence counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residue {
    pub order: usize,
    #[serde(serialize_with = "decimal")]
    pub count: BigUint,
    pub residue: u32,
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Perfect-sequence counts and their residues mod 4.
pub fn mod4_check(orders: &[usize], opts: &CountOptions) -> Result<Vec<Residue>> {
    orders
        .iter()
        .map(|&n| {
            let r = count_family(Family::Perfect, n, opts)?;
            let residue = (&r.count % 4u32).try_into().expect("residue below 4");
            Ok(Residue {
                order: n,
                count: r.count,
                residue,
            })
        })
        .collect()
}

/// Distinct difference sets among all perfect sequences of order `n`.
pub fn perfect_sets_from_sequences(n: usize, opts: &CountOptions) -> Result<Vec<DiffMultiset>> {
    opts.ceilings.check("perfect", n, opts.ceilings.perfect)?;
    let space = FreeSpace::new(n as u32, true, false)?;
    let mut masks = std::collections::BTreeSet::new();
    space.visit_all(|_, used| {
        masks.insert(used);
    });
    Ok(masks
        .into_iter()
        .map(|m| DiffMultiset::new((1..64).filter(|d| m & (1u64 << d) != 0)).expect("positive"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(f: Family, n: usize) -> u64 {
        count_family(f, n, &CountOptions::default())
            .unwrap()
            .count
            .try_into()
            .unwrap()
    }

    #[test]
    fn family_examples() {
        assert_eq!(count(Family::Skolem, 8), 504);
        assert_eq!(count(Family::Perfect, 3), 5);
        assert_eq!(count(Family::PerfectExtremal, 6), 83);
        assert_eq!(count(Family::PerfectSets, 5), 35);
        assert_eq!(count(Family::Multi, 3), 15);
        assert_eq!(count(Family::ExtremalMulti, 4), 24);
        assert_eq!(count(Family::Skolem, 2), 0);
    }

    #[test]
    fn family_errors() {
        let opts = CountOptions::default();
        assert!(matches!(
            count_family(Family::Multi, 7, &opts),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            count_family(Family::Skolem, 0, &opts),
            Err(Error::OutOfRange { .. })
        ));
        assert!("bogus".parse::<Family>().is_err());
        assert_eq!(
            "perfect-extremal".parse::<Family>(),
            Ok(Family::PerfectExtremal)
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(double_factorial_count(3), BigUint::from(15u32));
        assert_eq!(factorial_count(4), BigUint::from(24u32));
        assert_eq!(double_factorial_count(0), BigUint::from(1u32));
        assert_eq!(factorial_count(0), BigUint::from(1u32));
        assert_eq!(
            factorial_count(25).to_string(),
            "15511210043330985984000000"
        );
    }

    #[test]
    fn census_examples() {
        let opts = CountOptions::default();
        let c = reversal_census(4, &opts).unwrap();
        assert_eq!((c.total, c.reversal_fixed), (29, 1));
        assert_eq!(reversal_census(1, &opts).unwrap().reversal_fixed, 1);
        let c = reversal_census(3, &opts).unwrap();
        assert_eq!((c.total, c.reversal_fixed), (5, 1));
        assert_eq!(
            crate::model::render(&c.fixed[0])
                .unwrap()
                .compact()
                .as_deref(),
            Some("531135")
        );
    }

    #[test]
    fn mod4_examples() {
        let rows = mod4_check(&[2, 5, 7], &CountOptions::default()).unwrap();
        let got: Vec<(usize, String, u32)> = rows
            .iter()
            .map(|r| (r.order, r.count.to_string(), r.residue))
            .collect();
        assert_eq!(
            got,
            vec![
                (2, "1".into(), 1),
                (5, "145".into(), 1),
                (7, "8397".into(), 1)
            ]
        );
    }

    #[test]
    fn cancelled_count_reports_nothing() {
        let opts = CountOptions {
            cancel: Some(Arc::new(AtomicBool::new(true))),
            ..CountOptions::default()
        };
        assert_eq!(
            count_family(Family::Perfect, 6, &opts),
            Err(Error::Cancelled)
        );
    }

    #[test]
    fn report_json_shape() {
        let r = CountReport {
            family: Family::Skolem,
            order: 8,
            count: BigUint::from(504u32),
            elapsed: Duration::from_millis(3),
            nodes: 10,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"family":"skolem","order":8,"count":"504","nodes":10,"elapsed_ms":3}"#
        );
    }
}

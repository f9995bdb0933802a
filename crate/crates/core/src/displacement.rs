//! Displacement patterns of permutations and their exact correspondence
//! with extremal pairings.
//!
//! A permutation `π ∈ S_n` corresponds to the pairing of `{1..2n}` with
//! pairs `(i, π(i) + n)`; the pair difference is `π(i) - i + n`. So `π` has
//! pattern `α` iff that pairing realises the multiset `{a + n : a ∈ α}`,
//! and every such pairing straddles the midpoint.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::model::{DiffMultiset, Pairing, PositionSet};
use crate::perm::Permutation;
use crate::solver::Solver;

/// Sorted (descending) multiset of displacements `π(i) - i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DisplacementPattern {
    values: Vec<i64>,
}

impl DisplacementPattern {
    pub fn new<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut values: Vec<i64> = values.into_iter().collect();
        values.sort_unstable_by(|a, b| b.cmp(a));
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0; n] }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(-a_n, ..., -a_1)`: the pattern of the inverse permutation.
    pub fn negate_reverse(&self) -> Self {
        Self {
            values: self.values.iter().rev().map(|&a| -a).collect(),
        }
    }

    /// `{a + n}`, or `None` when some shifted value is not positive (no
    /// permutation can move an element that far left).
    pub fn shifted_diffs(&self) -> Option<DiffMultiset> {
        let n = self.values.len() as i64;
        let shifted: Option<Vec<u32>> = self
            .values
            .iter()
            .map(|&a| u32::try_from(a + n).ok().filter(|&d| d > 0))
            .collect();
        DiffMultiset::new(shifted?).ok()
    }

    fn straddling_solver(&self) -> Result<Option<Solver>> {
        let Some(diffs) = self.shifted_diffs() else {
            return Ok(None);
        };
        let positions = PositionSet::contiguous(2 * self.values.len() as u32);
        Solver::straddling(&positions, &diffs).map(Some)
    }
}

/// Written as `(4,1,0,-2,-3)`.
impl fmt::Display for DisplacementPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DisplacementPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad displacement {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(values))
    }
}

pub fn pattern_of(p: &Permutation) -> DisplacementPattern {
    DisplacementPattern::new((1..=p.len() as u32).map(|i| i64::from(p.apply(i)) - i64::from(i)))
}

pub fn inverse_pattern_of(p: &Permutation) -> DisplacementPattern {
    pattern_of(&p.inverse())
}

/// Density prefix bounds `a_1 + ... + a_m <= m(n - m)` with equality at
/// `m = n`, and the parity rule: an even number of even entries when `n` is
/// even, an even number of odd entries when `n` is odd.
pub fn displacement_necessary(alpha: &DisplacementPattern) -> bool {
    let n = alpha.len() as i64;
    let mut prefix = 0i64;
    for (i, &a) in alpha.as_slice().iter().enumerate() {
        let m = i as i64 + 1;
        prefix += a;
        if prefix > m * (n - m) {
            return false;
        }
    }
    if prefix != 0 {
        return false;
    }
    let evens = alpha.as_slice().iter().filter(|&&a| a % 2 == 0).count();
    let odds = alpha.len() - evens;
    if n % 2 == 0 {
        evens % 2 == 0
    } else {
        odds.is_multiple_of(2)
    }
}

/// The straddling pairing `(i, π(i) + n)` of `{1..2n}`.
pub fn permutation_to_pairing(p: &Permutation) -> Pairing {
    let n = p.len() as u32;
    Pairing::new((1..=n).map(|i| (i, p.apply(i) + n))).expect("straddling pairs are disjoint")
}

/// Inverse of [`permutation_to_pairing`]: `π(t) = s - n`.
pub fn pairing_to_permutation(w: &Pairing) -> Result<Permutation> {
    let n = w.len() as u32;
    if !w.positions()?.is_contiguous() {
        return Err(Error::NotContiguous);
    }
    if !w.straddles(n) {
        return Err(Error::InvalidWitness("pairing is not extremal".into()));
    }
    let mut mapping = vec![0; n as usize];
    for &(t, s) in w.pairs() {
        mapping[t as usize - 1] = s - n;
    }
    Permutation::new(mapping)
}

/// A permutation with pattern `alpha`, found through the extremal solver.
pub fn realize_pattern(alpha: &DisplacementPattern) -> Result<Option<Permutation>> {
    let Some(solver) = alpha.straddling_solver()? else {
        return Ok(None);
    };
    solver
        .decide()
        .map(|w| pairing_to_permutation(&w))
        .transpose()
}

/// Number of permutations with pattern `alpha`.
pub fn count_realizations(alpha: &DisplacementPattern) -> Result<u64> {
    Ok(alpha
        .straddling_solver()?
        .map_or(0, |s| s.count().solutions))
}

/// `n! Σ (-1)^i / i!`, evaluated as `Σ (-1)^i n!/i!` in exact integers.
pub fn derangement_count(n: u32) -> BigUint {
    let mut total = BigInt::from(0);
    // n!/i! for i = n, n-1, ..., 0
    let mut tail = BigInt::from(1);
    for i in (0..=n).rev() {
        if i % 2 == 0 {
            total += &tail;
        } else {
            total -= &tail;
        }
        tail *= i.max(1);
    }
    total
        .to_biguint()
        .expect("derangement counts are non-negative")
}

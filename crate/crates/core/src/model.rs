//! Domain values: difference multisets, position sets, pairings and their
//! rendered sequence form.
//!
//! A *pairing* partitions a position set `P` into pairs `(t, s)`, `t < s`,
//! whose differences `s - t` are exactly the multiset `A`. Sequences are
//! identified with pairings; [`SequenceText`] is the printable view.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Multiset of positive differences, kept sorted in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DiffMultiset {
    diffs: Vec<u32>,
}

impl DiffMultiset {
    pub fn new<I: IntoIterator<Item = u32>>(diffs: I) -> Result<Self> {
        let mut diffs: Vec<u32> = diffs.into_iter().collect();
        if diffs.contains(&0) {
            return Err(Error::ZeroDifference);
        }
        diffs.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { diffs })
    }

    /// `{1, ..., n}`, the classical Skolem set.
    pub fn skolem(n: u32) -> Self {
        Self::interval(1, n)
    }

    /// `{lo, ..., hi}`; empty when `hi < lo`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        assert!(lo >= 1);
        Self {
            diffs: (lo..=hi).rev().collect(),
        }
    }

    /// `{1^m, ..., n^m}`.
    pub fn m_fold(n: u32, m: usize) -> Self {
        Self {
            diffs: (1..=n)
                .rev()
                .flat_map(|d| std::iter::repeat_n(d, m))
                .collect(),
        }
    }

    /// Cardinality counted with multiplicity.
    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Elements in descending order.
    pub fn as_slice(&self) -> &[u32] {
        &self.diffs
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.diffs.iter().copied()
    }

    pub fn is_set(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0] != w[1])
    }

    pub fn sum(&self) -> u64 {
        self.diffs.iter().map(|&d| u64::from(d)).sum()
    }

    pub fn max(&self) -> Option<u32> {
        self.diffs.first().copied()
    }

    /// Distinct values in descending order with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &d in &self.diffs {
            match out.last_mut() {
                Some((v, c)) if *v == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        let mut diffs = self.diffs.clone();
        diffs.extend_from_slice(&other.diffs);
        diffs.sort_unstable_by(|a, b| b.cmp(a));
        Self { diffs }
    }

    /// Every element shifted up by `k`.
    pub fn shifted(&self, k: u32) -> Self {
        Self {
            diffs: self.diffs.iter().map(|&d| d + k).collect(),
        }
    }
}

/// Written as `{6,5,3,2}`.
impl fmt::Display for DiffMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(&self.diffs, ","))
    }
}

/// Accepts integers separated by commas and/or whitespace, optionally in braces.
impl FromStr for DiffMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_list(s)?)
    }
}

/// Strictly increasing set of positive positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PositionSet {
    positions: Vec<u32>,
}

impl PositionSet {
    /// Sorts the input; duplicates and zero are rejected.
    pub fn new<I: IntoIterator<Item = u32>>(positions: I) -> Result<Self> {
        let mut positions: Vec<u32> = positions.into_iter().collect();
        positions.sort_unstable();
        if positions.first() == Some(&0) {
            return Err(Error::ZeroPosition);
        }
        if let Some(w) = positions.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePosition(w[0]));
        }
        Ok(Self { positions })
    }

    /// `{1, ..., len}`.
    pub fn contiguous(len: u32) -> Self {
        Self {
            positions: (1..=len).collect(),
        }
    }

    /// `{1, ..., len} \ {hook}`.
    pub fn with_hook(len: u32, hook: u32) -> Self {
        Self {
            positions: (1..=len).filter(|&p| p != hook).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.positions
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.positions.iter().copied()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    pub fn max(&self) -> Option<u32> {
        self.positions.last().copied()
    }

    pub fn sum(&self) -> u64 {
        self.positions.iter().map(|&p| u64::from(p)).sum()
    }

    /// True when the set is exactly `{1, ..., len}`.
    pub fn is_contiguous(&self) -> bool {
        self.positions
            .iter()
            .enumerate()
            .all(|(i, &p)| p as usize == i + 1)
    }
}

/// Written as `{1,2,4,5}`.
impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(&self.positions, ","))
    }
}

/// Comma/whitespace separated integers; `a-b` denotes an inclusive range.
impl FromStr for PositionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in tokens(s) {
            match tok.split_once('-') {
                Some((lo, hi)) => {
                    let lo = parse_u32(lo)?;
                    let hi = parse_u32(hi)?;
                    if hi < lo {
                        return Err(Error::Parse(format!("empty range {tok}")));
                    }
                    out.extend(lo..=hi);
                }
                None => out.push(parse_u32(tok)?),
            }
        }
        Self::new(out)
    }
}

/// A partition of positions into pairs `(t, s)` with `t < s`, sorted by `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "RawPairing")]
pub struct Pairing {
    pairs: Vec<(u32, u32)>,
}

#[derive(Deserialize)]
struct RawPairing {
    pairs: Vec<(u32, u32)>,
}

impl TryFrom<RawPairing> for Pairing {
    type Error = Error;

    fn try_from(raw: RawPairing) -> Result<Self> {
        Self::new(raw.pairs)
    }
}

impl Pairing {
    /// Orients every pair as `(min, max)`, sorts by first coordinate and
    /// checks that no position is used twice.
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self> {
        let mut pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        for &(t, s) in &pairs {
            if t == s {
                return Err(Error::DegeneratePair(t, s));
            }
            if t == 0 {
                return Err(Error::ZeroPosition);
            }
        }
        pairs.sort_unstable();
        let p = Self { pairs };
        p.positions()?;
        Ok(p)
    }

    /// Pairs already in canonical order with no shared position.
    pub(crate) fn from_sorted_unchecked(pairs: Vec<(u32, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Union of all positions.
    pub fn positions(&self) -> Result<PositionSet> {
        PositionSet::new(self.pairs.iter().flat_map(|&(t, s)| [t, s]))
    }

    /// Multiset of pair differences.
    pub fn diffs(&self) -> DiffMultiset {
        DiffMultiset {
            diffs: {
                let mut d: Vec<u32> = self.pairs.iter().map(|&(t, s)| s - t).collect();
                d.sort_unstable_by(|a, b| b.cmp(a));
                d
            },
        }
    }

    /// True iff every pair has `t <= mid < s`.
    pub fn straddles(&self, mid: u32) -> bool {
        self.pairs.iter().all(|&(t, s)| t <= mid && s > mid)
    }

    /// Extremal over `{1..2n}`: every pair has one end in each half.
    pub fn is_extremal(&self) -> bool {
        self.straddles(self.pairs.len() as u32)
    }

    pub fn to_json(&self) -> String {
        let body: Vec<String> = self
            .pairs
            .iter()
            .map(|(t, s)| format!("[{t},{s}]"))
            .collect();
        format!("{{\"pairs\": [{}]}}", body.join(","))
    }
}

/// True iff `pairing` partitions `positions` into exactly the differences `diffs`.
pub fn validate(pairing: &Pairing, positions: &PositionSet, diffs: &DiffMultiset) -> bool {
    if pairing.len() != diffs.len() || positions.len() != 2 * diffs.len() {
        return false;
    }
    match pairing.positions() {
        Ok(p) if p == *positions => {}
        _ => return false,
    }
    pairing.diffs() == *diffs
}

/// Array view of a pairing: cell `i` (one-based) holds a label or a blank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceText {
    cells: Vec<Option<u32>>,
}

impl SequenceText {
    pub fn cells(&self) -> &[Option<u32>] {
        &self.cells
    }

    /// The digits-only form such as `42324311` or `66_11_66`; `None` when a
    /// label has more than one digit.
    pub fn compact(&self) -> Option<String> {
        let mut out = String::with_capacity(self.cells.len());
        for c in &self.cells {
            match c {
                None => out.push('_'),
                Some(d) if *d < 10 => out.push(char::from(b'0' + *d as u8)),
                Some(_) => return None,
            }
        }
        Some(out)
    }

    /// Recovers the pairing. Scanning left to right, a label `d` closes the
    /// open cell `d` places back if it carries the same label.
    pub fn to_pairing(&self) -> Result<Pairing> {
        let mut open = vec![false; self.cells.len()];
        let mut pairs = Vec::with_capacity(self.cells.len() / 2);
        for (i, cell) in self.cells.iter().enumerate() {
            let Some(d) = *cell else { continue };
            if d == 0 {
                return Err(Error::ZeroDifference);
            }
            let back = i.checked_sub(d as usize);
            match back {
                Some(j) if open[j] && self.cells[j] == Some(d) => {
                    open[j] = false;
                    pairs.push((j as u32 + 1, i as u32 + 1));
                }
                _ => open[i] = true,
            }
        }
        if let Some(i) = open.iter().position(|&o| o) {
            return Err(Error::Parse(format!(
                "label {} at position {} has no partner",
                self.cells[i].unwrap(),
                i + 1
            )));
        }
        Pairing::new(pairs)
    }
}

/// Space separated labels with `_` for blanks, e.g. `6 6 _ 1 1 _ 6 6`.
impl fmt::Display for SequenceText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match c {
                Some(d) => write!(f, "{d}")?,
                None => f.write_str("_")?,
            }
        }
        Ok(())
    }
}

/// Accepts the spaced form, or the compact single-digit form when the input
/// has no separators.
impl FromStr for SequenceText {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let cell = |tok: &str| -> Result<Option<u32>> {
            if tok == "_" {
                Ok(None)
            } else {
                parse_u32(tok).map(Some)
            }
        };
        let cells = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            tokens(s).map(cell).collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| cell(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self { cells })
    }
}

/// Writes label `s - t` into cells `t` and `s` of every pair.
pub fn render(pairing: &Pairing) -> Result<SequenceText> {
    let len = pairing.pairs.iter().map(|&(_, s)| s).max().unwrap_or(0) as usize;
    let mut cells = vec![None; len];
    for &(t, s) in &pairing.pairs {
        for p in [t, s] {
            let slot = &mut cells[p as usize - 1];
            if slot.is_some() {
                return Err(Error::DuplicatePosition(p));
            }
            *slot = Some(s - t);
        }
    }
    Ok(SequenceText { cells })
}

/// Mirror image of a pairing over `{1, ..., 2n}`: `(t, s) ↦ (2n+1-s, 2n+1-t)`.
pub fn reverse(pairing: &Pairing) -> Result<Pairing> {
    if !pairing.positions()?.is_contiguous() {
        return Err(Error::NotContiguous);
    }
    let end = 2 * pairing.len() as u32 + 1;
    Pairing::new(pairing.pairs.iter().map(|&(t, s)| (end - s, end - t)))
}

/// The fixed-point-free involution of `S_2n` whose 2-cycles are the pairs.
pub fn as_involution(pairing: &Pairing) -> Result<Permutation> {
    if !pairing.positions()?.is_contiguous() {
        return Err(Error::NotContiguous);
    }
    let mut mapping = vec![0; 2 * pairing.len()];
    for &(t, s) in &pairing.pairs {
        mapping[t as usize - 1] = s;
        mapping[s as usize - 1] = t;
    }
    Permutation::new(mapping)
}

/// Inverse of [`as_involution`]; fixed points are left out of the pairing,
/// so an involution with one fixed point `k` yields a pairing of
/// `{1, ..., 2n+1} \ {k}`.
pub fn pairing_from_involution(perm: &Permutation) -> Result<Pairing> {
    if !perm.is_involution() {
        return Err(Error::InvalidPermutation("not an involution".into()));
    }
    Pairing::new(
        (1..=perm.len() as u32)
            .filter(|&i| perm.apply(i) > i)
            .map(|i| (i, perm.apply(i))),
    )
}

/// Largest number of ones on any northwest-to-southeast diagonal of the
/// 0/1 permutation matrix (`row, col` with `col - row` constant).
pub fn max_diagonal_load(perm: &Permutation) -> usize {
    let n = perm.len();
    let mut matrix = vec![vec![false; n]; n];
    for i in 1..=n as u32 {
        matrix[i as usize - 1][perm.apply(i) as usize - 1] = true;
    }
    let mut load: BTreeMap<i64, usize> = BTreeMap::new();
    for (r, row) in matrix.iter().enumerate() {
        for (c, &one) in row.iter().enumerate() {
            if one {
                *load.entry(c as i64 - r as i64).or_default() += 1;
            }
        }
    }
    load.values().copied().max().unwrap_or(0)
}

fn join(xs: &[u32], sep: &str) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.trim()
        .trim_start_matches(['{', '[', '('])
        .trim_end_matches(['}', ']', ')'])
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
}

fn parse_u32(tok: &str) -> Result<u32> {
    tok.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, got {tok:?}")))
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u32>> {
    tokens(s).map(parse_u32).collect()
}

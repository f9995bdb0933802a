//! Exhaustive backtracking over pairings of a position set `P` into a
//! difference multiset `A`.
//!
//! Two branch orders are available:
//!
//! * [`Order::LargestFirst`] places differences in descending order and, for
//!   each, scans first positions ascending. Equal differences are placed with
//!   strictly increasing first positions so each pairing appears once. This
//!   is the order used by [`Solver::decide`] and [`Solver::count`].
//! * [`Order::LeftmostPosition`] always pairs the smallest free position,
//!   trying partners in ascending order. Solutions come out in lexicographic
//!   order of their canonical form; [`Solver::solutions`] uses it.
//!
//! Occupancy is a `u128` bitmask over position indices, so instances are
//! limited to 128 positions.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};
use crate::model::{DiffMultiset, Pairing, PositionSet};

/// Largest supported `|P|`.
pub const MAX_POSITIONS: usize = 128;

const NO_PARTNER: u8 = u8::MAX;
const CANCEL_POLL: u64 = 1 << 14;

/// Branching strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    LargestFirst,
    LeftmostPosition,
}

#[derive(Debug, Clone)]
struct Group {
    count: u8,
    /// `partner[i]` is the index of position `P[i] + value`, if present.
    partner: Vec<u8>,
}

/// A prepared instance `(P, A)`.
#[derive(Debug, Clone)]
pub struct Solver {
    positions: Vec<u32>,
    /// Descending by value.
    groups: Vec<Group>,
    pairs: usize,
    straddle: bool,
}

fn at_or_above(index: u8) -> u128 {
    if index >= 128 {
        0
    } else {
        !((1u128 << index) - 1)
    }
}

/// Search statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub solutions: u64,
    pub nodes: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            solutions: self.solutions + o.solutions,
            nodes: self.nodes + o.nodes,
        }
    }
}

impl std::iter::Sum for Tally {
    fn sum<I: Iterator<Item = Tally>>(iter: I) -> Tally {
        iter.fold(Tally::default(), |a, b| a + b)
    }
}

/// A partial largest-first placement; independent of every sibling branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    occupied: u128,
    group: usize,
    copies_left: u8,
    min_index: u8,
    placed: Vec<(u8, u8)>,
}

impl Branch {
    pub fn depth(&self) -> usize {
        self.placed.len()
    }
}

struct Ctx<'a, F> {
    nodes: u64,
    cancel: Option<&'a AtomicBool>,
    cancelled: bool,
    stack: Vec<(u8, u8)>,
    visit: F,
}

impl<F> Ctx<'_, F> {
    fn tick(&mut self) -> ControlFlow<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CANCEL_POLL) {
            if let Some(flag) = self.cancel {
                if flag.load(Ordering::Relaxed) {
                    self.cancelled = true;
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    }
}

impl Solver {
    pub fn new(positions: &PositionSet, diffs: &DiffMultiset) -> Result<Self> {
        Self::build(positions, diffs, false)
    }

    /// Every pair must take one of the `n` smallest and one of the `n`
    /// largest positions. On `{1..2n}` this is the extremal split.
    pub fn straddling(positions: &PositionSet, diffs: &DiffMultiset) -> Result<Self> {
        Self::build(positions, diffs, true)
    }

    /// Instance on `{1, ..., 2n}`.
    pub fn perfect(diffs: &DiffMultiset) -> Result<Self> {
        Self::new(&PositionSet::contiguous(2 * diffs.len() as u32), diffs)
    }

    fn build(positions: &PositionSet, diffs: &DiffMultiset, straddle: bool) -> Result<Self> {
        if positions.len() != 2 * diffs.len() {
            return Err(Error::SizeMismatch {
                positions: positions.len(),
                diffs: diffs.len(),
            });
        }
        if positions.len() > MAX_POSITIONS {
            return Err(Error::Capacity {
                got: positions.len(),
                max: MAX_POSITIONS,
            });
        }
        let p = positions.as_slice();
        let groups = diffs
            .multiplicities()
            .into_iter()
            .map(|(value, count)| Group {
                count: count as u8,
                partner: p
                    .iter()
                    .map(|&x| {
                        x.checked_add(value)
                            .and_then(|y| p.binary_search(&y).ok())
                            .map_or(NO_PARTNER, |j| j as u8)
                    })
                    .collect(),
            })
            .collect();
        Ok(Self {
            positions: p.to_vec(),
            groups,
            pairs: diffs.len(),
            straddle,
        })
    }

    pub fn order(&self) -> usize {
        self.pairs
    }

    fn full_mask(&self) -> u128 {
        if self.positions.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.positions.len()) - 1
        }
    }

    fn left_mask(&self) -> u128 {
        if self.pairs == 128 {
            u128::MAX
        } else {
            (1u128 << self.pairs) - 1
        }
    }

    fn to_pairing(&self, placed: &[(u8, u8)]) -> Pairing {
        let mut pairs: Vec<(u32, u32)> = placed
            .iter()
            .map(|&(i, j)| (self.positions[i as usize], self.positions[j as usize]))
            .collect();
        pairs.sort_unstable();
        Pairing::from_sorted_unchecked(pairs)
    }

    /// Some pairing if one exists. Deterministic: always the first one met
    /// in largest-first order.
    pub fn decide(&self) -> Option<Pairing> {
        self.decide_counted().0
    }

    /// [`Solver::decide`] plus the number of search nodes it took.
    pub fn decide_counted(&self) -> (Option<Pairing>, u64) {
        let mut found = None;
        let (_, nodes) = self.run(&self.root(), None, |placed| {
            found = Some(self.to_pairing(placed));
            ControlFlow::Break(())
        });
        (found, nodes)
    }

    /// Exact number of pairings with search statistics.
    pub fn count(&self) -> Tally {
        self.count_branch(&self.root(), None)
            .expect("search without a cancel flag cannot be cancelled")
    }

    /// Count using the given branch order.
    pub fn count_with(&self, order: Order) -> Tally {
        match order {
            Order::LargestFirst => self.count(),
            Order::LeftmostPosition => {
                let mut iter = self.solutions();
                let solutions = iter.by_ref().count() as u64;
                Tally {
                    solutions,
                    nodes: iter.nodes,
                }
            }
        }
    }

    /// All pairings in lexicographic order of canonical form.
    pub fn solutions(&self) -> Solutions<'_> {
        Solutions::new(self)
    }

    /// Call `visit` on every pairing until it breaks.
    pub fn for_each<F>(&self, mut visit: F) -> u64
    where
        F: FnMut(&Pairing) -> ControlFlow<()>,
    {
        let (_, nodes) = self.run(&self.root(), None, |placed| visit(&self.to_pairing(placed)));
        nodes
    }

    /// The empty placement.
    pub fn root(&self) -> Branch {
        Branch {
            occupied: 0,
            group: 0,
            copies_left: self.groups.first().map_or(0, |g| g.count),
            min_index: 0,
            placed: Vec::new(),
        }
    }

    /// Independent subproblems, one per placement of the largest difference.
    pub fn root_split(&self) -> Vec<Branch> {
        self.expand(&self.root())
    }

    /// Children of a branch: every legal placement of its next difference.
    /// A complete branch expands to itself.
    pub fn expand(&self, branch: &Branch) -> Vec<Branch> {
        let Some(branch) = self.normalize(branch.clone()) else {
            return Vec::new();
        };
        if branch.group == self.groups.len() {
            return vec![branch];
        }
        let mut out = Vec::new();
        self.for_each_move(&branch, |i, j| {
            let mut child = branch.clone();
            child.occupied |= (1u128 << i) | (1u128 << j);
            child.copies_left -= 1;
            child.min_index = i + 1;
            child.placed.push((i, j));
            out.push(child);
        });
        out
    }

    /// Advance past exhausted groups; `None` when nothing remains to place
    /// for a non-complete branch (cannot happen for consistent branches).
    fn normalize(&self, mut b: Branch) -> Option<Branch> {
        while b.group < self.groups.len() && b.copies_left == 0 {
            b.group += 1;
            b.min_index = 0;
            b.copies_left = self.groups.get(b.group).map_or(0, |g| g.count);
        }
        Some(b)
    }

    fn for_each_move(&self, b: &Branch, mut f: impl FnMut(u8, u8)) {
        let group = &self.groups[b.group];
        let mut cand = !b.occupied & self.full_mask() & at_or_above(b.min_index);
        if self.straddle {
            cand &= self.left_mask();
        }
        while cand != 0 {
            let i = cand.trailing_zeros() as u8;
            cand &= cand - 1;
            let j = group.partner[i as usize];
            if j == NO_PARTNER || b.occupied & (1u128 << j) != 0 {
                continue;
            }
            if self.straddle && (j as usize) < self.pairs {
                continue;
            }
            f(i, j);
        }
    }

    /// Number of pairings extending `branch`.
    pub fn count_branch(&self, branch: &Branch, cancel: Option<&AtomicBool>) -> Result<Tally> {
        let mut solutions = 0u64;
        let (cancelled, nodes) = self.run(branch, cancel, |_| {
            solutions += 1;
            ControlFlow::Continue(())
        });
        if cancelled {
            return Err(Error::Cancelled);
        }
        Ok(Tally { solutions, nodes })
    }

    /// First pairing extending `branch`.
    pub fn decide_branch(&self, branch: &Branch) -> Option<Pairing> {
        let mut found = None;
        let _ = self.run(branch, None, |placed| {
            found = Some(self.to_pairing(placed));
            ControlFlow::Break(())
        });
        found
    }

    /// Returns (cancelled, nodes).
    fn run<F>(&self, branch: &Branch, cancel: Option<&AtomicBool>, visit: F) -> (bool, u64)
    where
        F: FnMut(&[(u8, u8)]) -> ControlFlow<()>,
    {
        let Some(b) = self.normalize(branch.clone()) else {
            return (false, 0);
        };
        let mut ctx = Ctx {
            nodes: 0,
            cancel,
            cancelled: false,
            stack: b.placed.clone(),
            visit,
        };
        let _ = self.descend(&mut ctx, b.occupied, b.group, b.copies_left, b.min_index);
        (ctx.cancelled, ctx.nodes)
    }

    fn descend<F>(
        &self,
        ctx: &mut Ctx<'_, F>,
        occupied: u128,
        mut group: usize,
        mut copies_left: u8,
        mut min_index: u8,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[(u8, u8)]) -> ControlFlow<()>,
    {
        ctx.tick()?;
        while copies_left == 0 {
            group += 1;
            if group >= self.groups.len() {
                return (ctx.visit)(&ctx.stack);
            }
            copies_left = self.groups[group].count;
            min_index = 0;
        }
        let g = &self.groups[group];
        let mut cand = !occupied & self.full_mask() & at_or_above(min_index);
        if self.straddle {
            cand &= self.left_mask();
        }
        while cand != 0 {
            let i = cand.trailing_zeros() as u8;
            cand &= cand - 1;
            let j = g.partner[i as usize];
            if j == NO_PARTNER || occupied & (1u128 << j) != 0 {
                continue;
            }
            if self.straddle && (j as usize) < self.pairs {
                continue;
            }
            ctx.stack.push((i, j));
            let r = self.descend(
                ctx,
                occupied | (1u128 << i) | (1u128 << j),
                group,
                copies_left - 1,
                i + 1,
            );
            ctx.stack.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
}

struct Frame {
    index: u8,
    /// Next group to try, counted in ascending difference order.
    next: usize,
    chosen: Option<(usize, u8)>,
}

/// Lazy lexicographic enumeration; see [`Solver::solutions`].
pub struct Solutions<'a> {
    solver: &'a Solver,
    occupied: u128,
    remaining: Vec<u8>,
    frames: Vec<Frame>,
    placed: Vec<(u8, u8)>,
    state: IterState,
    /// Search nodes expanded so far.
    pub nodes: u64,
}

#[derive(PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl<'a> Solutions<'a> {
    fn new(solver: &'a Solver) -> Self {
        Self {
            solver,
            occupied: 0,
            remaining: solver.groups.iter().rev().map(|g| g.count).collect(),
            frames: Vec::new(),
            placed: Vec::new(),
            state: IterState::Fresh,
            nodes: 0,
        }
    }

    fn push_frame(&mut self) {
        let free = !self.occupied & self.solver.full_mask();
        self.frames.push(Frame {
            index: free.trailing_zeros() as u8,
            next: 0,
            chosen: None,
        });
        self.nodes += 1;
    }
}

impl Iterator for Solutions<'_> {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        let s = self.solver;
        let ngroups = s.groups.len();
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Running;
                if s.pairs == 0 {
                    self.state = IterState::Done;
                    return Some(Pairing::default());
                }
                self.push_frame();
            }
            IterState::Running => {}
        }
        loop {
            let Some(frame) = self.frames.last_mut() else {
                self.state = IterState::Done;
                return None;
            };
            if let Some((g, j)) = frame.chosen.take() {
                self.occupied &= !((1u128 << frame.index) | (1u128 << j));
                self.remaining[g] += 1;
                self.placed.pop();
            }
            let i = frame.index;
            let mut pick = None;
            if !(s.straddle && i as usize >= s.pairs) {
                while frame.next < ngroups {
                    let g = frame.next;
                    frame.next += 1;
                    if self.remaining[g] == 0 {
                        continue;
                    }
                    let j = s.groups[ngroups - 1 - g].partner[i as usize];
                    if j == NO_PARTNER || self.occupied & (1u128 << j) != 0 {
                        continue;
                    }
                    if s.straddle && (j as usize) < s.pairs {
                        continue;
                    }
                    pick = Some((g, j));
                    break;
                }
            }
            match pick {
                None => {
                    self.frames.pop();
                }
                Some((g, j)) => {
                    frame.chosen = Some((g, j));
                    self.occupied |= (1u128 << i) | (1u128 << j);
                    self.remaining[g] -= 1;
                    self.placed.push((i, j));
                    if self.placed.len() == s.pairs {
                        return Some(s.to_pairing(&self.placed));
                    }
                    self.push_frame();
                }
            }
        }
    }
}

/// Some pairing of `positions` into `diffs`.
pub fn decide(positions: &PositionSet, diffs: &DiffMultiset) -> Result<Option<Pairing>> {
    Ok(Solver::new(positions, diffs)?.decide())
}

/// Every pairing in lexicographic order, at most `limit` of them.
pub fn enumerate_solutions(
    positions: &PositionSet,
    diffs: &DiffMultiset,
    limit: Option<usize>,
) -> Result<Vec<Pairing>> {
    let solver = Solver::new(positions, diffs)?;
    Ok(solver
        .solutions()
        .take(limit.unwrap_or(usize::MAX))
        .collect())
}

/// A pairing of `{1..2n}` into the set `diffs`.
pub fn is_perfect_skolem_set(diffs: &DiffMultiset) -> Result<Option<Pairing>> {
    if !diffs.is_set() {
        return Err(Error::NotASet);
    }
    is_perfect_multi_skolem_set(diffs)
}

/// A pairing of `{1..2n}` into the multiset `diffs`.
pub fn is_perfect_multi_skolem_set(diffs: &DiffMultiset) -> Result<Option<Pairing>> {
    Ok(Solver::perfect(diffs)?.decide())
}

/// Extremal witness: every pair has `t <= n < s`.
pub fn is_perfect_extremal(diffs: &DiffMultiset) -> Result<Option<Pairing>> {
    let n = diffs.len() as u64;
    if !crate::conditions::is_extremal_candidate(diffs) {
        return Err(Error::NotExtremal {
            sum: diffs.sum(),
            square: n * n,
        });
    }
    let p = PositionSet::contiguous(2 * diffs.len() as u32);
    Ok(Solver::straddling(&p, diffs)?.decide())
}

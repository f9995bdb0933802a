//! Pairings of `{1..2n}` whose differences are not fixed in advance.
//!
//! The search always pairs the smallest free position. With `distinct` set,
//! a bitmask of used differences forbids repeats; candidate partners are
//! `free & !(used << i)`. With `straddle` set, partners come from the right
//! half only, which yields exactly the extremal pairings.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};
use crate::solver::Tally;

/// Largest `2n` handled by the `u64` masks.
pub(crate) const MAX_LEN: u32 = 64;

const CANCEL_POLL: u64 = 1 << 16;

#[derive(Debug, Clone, Copy)]
pub(crate) struct FreeSpace {
    len: u32,
    full: u64,
    right: u64,
    distinct: bool,
    straddle: bool,
}

/// Partial pairing: occupied positions and used differences (bit `d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Node {
    pub occupied: u64,
    pub used: u64,
}

impl FreeSpace {
    pub fn new(order: u32, distinct: bool, straddle: bool) -> Result<Self> {
        let len = 2 * order;
        if len > MAX_LEN {
            return Err(Error::Capacity {
                got: len as usize,
                max: MAX_LEN as usize,
            });
        }
        let full = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let left = if order == 0 { 0 } else { (1u64 << order) - 1 };
        Ok(Self {
            len,
            full,
            right: full & !left,
            distinct,
            straddle,
        })
    }

    pub fn root(&self) -> Node {
        Node {
            occupied: 0,
            used: 0,
        }
    }

    fn candidates(&self, node: Node, i: u32) -> u64 {
        let mut cand = !node.occupied & self.full & !((2u64 << i) - 1);
        if self.straddle {
            cand &= self.right;
        }
        if self.distinct {
            cand &= !(node.used << i);
        }
        cand
    }

    fn step(node: Node, i: u32, j: u32) -> Node {
        Node {
            occupied: node.occupied | (1u64 << i) | (1u64 << j),
            used: node.used | (1u64 << (j - i)),
        }
    }

    pub fn is_complete(&self, node: Node) -> bool {
        node.occupied == self.full
    }

    pub fn children(&self, node: Node) -> Vec<Node> {
        if self.is_complete(node) {
            return vec![node];
        }
        let i = (!node.occupied).trailing_zeros();
        let mut cand = self.candidates(node, i);
        let mut out = Vec::with_capacity(cand.count_ones() as usize);
        while cand != 0 {
            let j = cand.trailing_zeros();
            cand &= cand - 1;
            out.push(Self::step(node, i, j));
        }
        out
    }

    /// Breadth-first expansion until at least `target` nodes or complete.
    pub fn split(&self, target: usize) -> Vec<Node> {
        let mut level = vec![self.root()];
        while level.len() < target && level.iter().any(|&n| !self.is_complete(n)) {
            level = level.iter().flat_map(|&n| self.children(n)).collect();
        }
        level
    }

    pub fn count(&self, node: Node, cancel: Option<&AtomicBool>) -> Result<Tally> {
        let mut t = Tally::default();
        let mut cancelled = false;
        self.count_rec(node, &mut t, cancel, &mut cancelled);
        if cancelled {
            return Err(Error::Cancelled);
        }
        Ok(t)
    }

    fn count_rec(
        &self,
        node: Node,
        t: &mut Tally,
        cancel: Option<&AtomicBool>,
        cancelled: &mut bool,
    ) {
        t.nodes += 1;
        if t.nodes.is_multiple_of(CANCEL_POLL) && cancel.is_some_and(|c| c.load(Ordering::Relaxed))
        {
            *cancelled = true;
        }
        if *cancelled {
            return;
        }
        if node.occupied == self.full {
            t.solutions += 1;
            return;
        }
        let i = (!node.occupied).trailing_zeros();
        let mut cand = self.candidates(node, i);
        while cand != 0 {
            let j = cand.trailing_zeros();
            cand &= cand - 1;
            self.count_rec(Self::step(node, i, j), t, cancel, cancelled);
        }
    }

    /// Visit every completion of `node` with its `partner` array (zero-based
    /// indices) and used-difference mask. Returns the node count.
    pub fn visit<F: FnMut(&[u8], u64)>(&self, node: Node, partner: &mut [u8], f: &mut F) -> u64 {
        let mut nodes = 1;
        if node.occupied == self.full {
            f(&partner[..self.len as usize], node.used);
            return nodes;
        }
        let i = (!node.occupied).trailing_zeros();
        let mut cand = self.candidates(node, i);
        while cand != 0 {
            let j = cand.trailing_zeros();
            cand &= cand - 1;
            partner[i as usize] = j as u8;
            partner[j as usize] = i as u8;
            nodes += self.visit(Self::step(node, i, j), partner, f);
        }
        nodes
    }

    /// Visit every complete pairing.
    pub fn visit_all<F: FnMut(&[u8], u64)>(&self, mut f: F) -> u64 {
        let mut partner = vec![0u8; self.len as usize];
        self.visit(self.root(), &mut partner, &mut f)
    }
}

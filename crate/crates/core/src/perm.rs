//! One-based permutations of `{1, ..., n}`.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{1, ..., n}`; entry `i - 1` of the mapping holds `π(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<u32>,
}

impl Permutation {
    pub fn new(mapping: Vec<u32>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// `π(i)` for one-based `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.mapping[i as usize - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &v) in self.mapping.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Self { mapping: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different degree"
        );
        Self {
            mapping: other.mapping.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.mapping
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize == i + 1)
            .map(|(i, _)| i as u32 + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.mapping
            .iter()
            .enumerate()
            .all(|(i, &v)| self.apply(v) as usize == i + 1)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 1..=self.len() as u32 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

/// Cycle notation, e.g. `(15)(23)(46)`; multi-digit entries are comma separated.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        let wide = self.len() > 9;
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(if wide { "," } else { "" }))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Permutation::new(vec![5, 3, 1, 4, 2]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
        assert_eq!(p.inverse().as_slice(), &[3, 5, 2, 4, 1]);
    }

    #[test]
    fn cycle_notation() {
        let p = Permutation::new(vec![5, 3, 2, 6, 1, 4]).unwrap();
        assert_eq!(p.to_string(), "(15)(23)(46)");
        assert!(p.is_involution());
        assert_eq!(p.fixed_points().count(), 0);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}

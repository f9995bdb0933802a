//! Explicit constructions of extremal sets with witnesses.
//!
//! Every function returns a [`Construction`] whose pairing has already been
//! checked against its difference multiset and against the extremal split;
//! a failed check surfaces as [`Error::Invariant`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{as_involution, validate, DiffMultiset, Pairing, PositionSet};
use crate::perm::Permutation;
use crate::solver::Solver;

/// A difference multiset together with a pairing of `{1..2n}` realising it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub diffs: DiffMultiset,
    pub pairing: Pairing,
}

impl Construction {
    /// Checks a witness for an extremal set on `{1..2n}`.
    pub fn extremal(diffs: DiffMultiset, pairing: Pairing) -> Result<Self> {
        let c = Self { diffs, pairing };
        if !c.is_valid_extremal() {
            return Err(Error::InvalidWitness(format!(
                "pairing {} is not an extremal witness for {}",
                c.pairing.to_json(),
                c.diffs
            )));
        }
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_valid_extremal(&self) -> bool {
        let n = self.diffs.len() as u32;
        validate(&self.pairing, &PositionSet::contiguous(2 * n), &self.diffs)
            && self.pairing.straddles(n)
    }

    fn checked(self, what: &str) -> Result<Self> {
        if self.is_valid_extremal() {
            Ok(self)
        } else {
            Err(Error::Invariant(format!(
                "{what} produced {} with pairing {}, which does not validate",
                self.diffs,
                self.pairing.to_json()
            )))
        }
    }
}

fn require_witness(w: &Pairing, positions: &PositionSet, diffs: &DiffMultiset) -> Result<()> {
    if validate(w, positions, diffs) {
        Ok(())
    } else {
        Err(Error::InvalidWitness(format!(
            "{} does not pair {positions} into {diffs}",
            w.to_json()
        )))
    }
}

/// Pairs `x` with `σ(x) + len` for an involution `σ` of `{1..len}`.
fn lift_involution(sigma: &Permutation) -> Pairing {
    let len = sigma.len() as u32;
    Pairing::new((1..=len).map(|x| (x, sigma.apply(x) + len))).expect("lifted pairs are disjoint")
}

/// From a pairing `w` of `{1..2n}` into `A`, the extremal set
/// `{2n + a} ∪ {2n - a}` of order `2n`.
pub fn extremal_from_skolem(diffs: &DiffMultiset, w: &Pairing) -> Result<Construction> {
    let len = 2 * diffs.len() as u32;
    require_witness(w, &PositionSet::contiguous(len), diffs)?;
    let sigma = as_involution(w)?;
    let set = DiffMultiset::new(diffs.iter().flat_map(|a| [len + a, len - a]))?;
    Construction {
        diffs: set,
        pairing: lift_involution(&sigma),
    }
    .checked("extremal_from_skolem")
}

/// From a pairing `w` of `{1..2n+1} \ {k}` into `A`, the extremal set
/// `{2n+1 + a} ∪ {2n+1} ∪ {2n+1 - a}` of order `2n + 1`. The hook `k`
/// becomes the pair `(k, k + 2n + 1)`.
pub fn extremal_from_k_extended(
    diffs: &DiffMultiset,
    hook: u32,
    w: &Pairing,
) -> Result<Construction> {
    let len = 2 * diffs.len() as u32 + 1;
    if hook == 0 || hook > len {
        return Err(Error::OutOfRange {
            what: "k",
            value: hook.into(),
            lo: 1,
            hi: len.into(),
        });
    }
    require_witness(w, &PositionSet::with_hook(len, hook), diffs)?;
    let sigma = hooked_involution(w, len)?;
    let set = DiffMultiset::new(
        diffs
            .iter()
            .flat_map(|a| [len + a, len - a])
            .chain(std::iter::once(len)),
    )?;
    Construction {
        diffs: set,
        pairing: lift_involution(&sigma),
    }
    .checked("extremal_from_k_extended")
}

/// A perfect witness read as a hooked one with the hook past the end,
/// giving `{2n+1 ± a} ∪ {2n+1}`.
pub fn extremal_from_zero_extended(diffs: &DiffMultiset, w: &Pairing) -> Result<Construction> {
    extremal_from_k_extended(diffs, 2 * diffs.len() as u32 + 1, w)
}

/// Solver witness for `A` on `{1..2n}`, then [`extremal_from_skolem`].
pub fn extremal_from_perfect(diffs: &DiffMultiset) -> Result<Option<Construction>> {
    Solver::perfect(diffs)?
        .decide()
        .map(|w| extremal_from_skolem(diffs, &w))
        .transpose()
}

/// Solver witness on `{1..2n+1} \ {k}`, then [`extremal_from_k_extended`].
pub fn extremal_from_hooked(diffs: &DiffMultiset, hook: u32) -> Result<Option<Construction>> {
    let len = 2 * diffs.len() as u32 + 1;
    if hook == 0 || hook > len {
        return Err(Error::OutOfRange {
            what: "k",
            value: hook.into(),
            lo: 1,
            hi: len.into(),
        });
    }
    Solver::new(&PositionSet::with_hook(len, hook), diffs)?
        .decide()
        .map(|w| extremal_from_k_extended(diffs, hook, &w))
        .transpose()
}

/// The extremal set `{3n-1, ..., n-1} \ {2n-1+m, 2n-1-m}` (`1 <= m < n`),
/// built from a near-Skolem witness for `{1..n} \ {m}` or, failing that, a
/// hooked one with the hook at position `2n - 2`.
pub fn extremal_from_near_skolem(n: u32, m: u32) -> Result<Construction> {
    if n < 2 || m == 0 || m >= n {
        return Err(Error::OutOfRange {
            what: "m",
            value: m.into(),
            lo: 1,
            hi: i64::from(n) - 1,
        });
    }
    let near = DiffMultiset::new((1..=n).filter(|&x| x != m))?;
    let w_perfect = Solver::perfect(&near)?.decide();
    let built = match w_perfect {
        Some(w) => extremal_from_zero_extended(&near, &w)?,
        None => extremal_from_hooked(&near, 2 * n - 2)?.ok_or_else(|| {
            Error::Invariant(format!("{near} has neither a perfect nor a hooked witness"))
        })?,
    };
    let expected = DiffMultiset::new(
        (n - 1..=3 * n - 1).filter(|&x| x != 2 * n - 1 + m && x != 2 * n - 1 - m),
    )?;
    if built.diffs != expected {
        return Err(Error::Invariant(format!(
            "expected {expected}, built {}",
            built.diffs
        )));
    }
    Ok(built)
}

/// Extremal set of `{2n - a}`: pair `(t, s)` becomes `(s - n, t + n)`,
/// which is the inverse permutation read back as a pairing.
pub fn mirror_extremal(c: &Construction) -> Result<Construction> {
    let n = c.order() as u32;
    if !c.is_valid_extremal() {
        return Err(Error::InvalidWitness(
            "input is not an extremal witness".into(),
        ));
    }
    let set = DiffMultiset::new(c.diffs.iter().map(|a| 2 * n - a))?;
    let pairing = Pairing::new(c.pairing.pairs().iter().map(|&(t, s)| (s - n, t + n)))?;
    Construction {
        diffs: set,
        pairing,
    }
    .checked("mirror_extremal")
}

/// How two extremal witnesses are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeVariant {
    /// `A ∪ (B + 2n)` from `(S_B^L + 2n) S_A (S_B^R + 2n)`.
    C,
    /// `B ∪ (A + 2m)` from `(S_A^L + 2m) S_B (S_A^R + 2m)`.
    D,
    /// `(A + m) ∪ (B + n)` from `(S_A^L + m)(S_B^L + n)(S_A^R + m)(S_B^R + n)`.
    E,
}

impl FromStr for ComposeVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().trim_start_matches("compose-") {
            "c" => Ok(Self::C),
            "d" => Ok(Self::D),
            "e" => Ok(Self::E),
            other => Err(Error::Parse(format!(
                "unknown composition variant {other:?}"
            ))),
        }
    }
}

impl fmt::Display for ComposeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
        })
    }
}

/// Combine extremal witnesses `a` (order `n`) and `b` (order `m`) into one
/// of order `n + m`.
pub fn compose(
    a: &Construction,
    b: &Construction,
    variant: ComposeVariant,
) -> Result<Construction> {
    for (name, c) in [("A", a), ("B", b)] {
        if !c.is_valid_extremal() {
            return Err(Error::InvalidWitness(format!(
                "{name} is not an extremal witness"
            )));
        }
    }
    let n = a.order() as u32;
    let m = b.order() as u32;
    let ap = a.pairing.pairs().iter().copied();
    let bp = b.pairing.pairs().iter().copied();
    let (diffs, pairs): (DiffMultiset, Vec<(u32, u32)>) = match variant {
        ComposeVariant::C => (
            a.diffs.union(&b.diffs.shifted(2 * n)),
            ap.map(|(t, s)| (t + m, s + m))
                .chain(bp.map(|(t, s)| (t, s + 2 * n)))
                .collect(),
        ),
        ComposeVariant::D => (
            b.diffs.union(&a.diffs.shifted(2 * m)),
            bp.map(|(t, s)| (t + n, s + n))
                .chain(ap.map(|(t, s)| (t, s + 2 * m)))
                .collect(),
        ),
        ComposeVariant::E => (
            a.diffs.shifted(m).union(&b.diffs.shifted(n)),
            ap.map(|(t, s)| (t, s + m))
                .chain(bp.map(|(t, s)| (t + n, s + 2 * n)))
                .collect(),
        ),
    };
    Construction {
        diffs,
        pairing: Pairing::new(pairs)?,
    }
    .checked("compose")
}

/// The extremal near-Langford set `{a, ..., 3a} \ {2a}` with the pairs
/// `(2a - 2j, 3a - j)` for `j ∈ [0, a-1]` and `(4a + 1 - 2j, 5a + 1 - j)`
/// for `j ∈ [a+1, 2a]`; both rows have difference `a + j`.
pub fn near_langford_extremal(a: u32) -> Result<Construction> {
    if a == 0 {
        return Err(Error::OutOfRange {
            what: "a",
            value: 0,
            lo: 1,
            hi: i64::from(u32::MAX),
        });
    }
    let low = (0..a).map(|j| (2 * a - 2 * j, 3 * a - j));
    let high = (a + 1..=2 * a).map(|j| (4 * a + 1 - 2 * j, 5 * a + 1 - j));
    let diffs = DiffMultiset::new((a..=3 * a).filter(|&x| x != 2 * a))?;
    Construction {
        diffs,
        pairing: Pairing::new(low.chain(high))?,
    }
    .checked("near_langford_extremal")
}

/// `{a..b} \ {m}` (with `a < m < b`) is an extremal perfect set exactly
/// when `b = 3a` and `m = 2a`.
pub fn near_langford_extremal_verdict(a: u32, b: u32, m: u32) -> Result<bool> {
    if !(a < m && m < b) {
        return Err(Error::OutOfRange {
            what: "m",
            value: m.into(),
            lo: i64::from(a) + 1,
            hi: i64::from(b) - 1,
        });
    }
    Ok(b == 3 * a && m == 2 * a)
}

/// A pairing of `{1..len}` minus fixed points as an involution.
fn hooked_involution(w: &Pairing, len: u32) -> Result<Permutation> {
    let mut mapping: Vec<u32> = (1..=len).collect();
    for &(t, s) in w.pairs() {
        if s > len {
            return Err(Error::OutOfRange {
                what: "position",
                value: s.into(),
                lo: 1,
                hi: len.into(),
            });
        }
        mapping[t as usize - 1] = s;
        mapping[s as usize - 1] = t;
    }
    Permutation::new(mapping)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{render, SequenceText};

    fn set(xs: &[u32]) -> DiffMultiset {
        DiffMultiset::new(xs.iter().copied()).unwrap()
    }

    fn seq(s: &str) -> Pairing {
        s.parse::<SequenceText>().unwrap().to_pairing().unwrap()
    }

    fn compact(w: &Pairing) -> String {
        render(w).unwrap().compact().unwrap()
    }

    fn single() -> Construction {
        Construction::extremal(set(&[1]), seq("11")).unwrap()
    }

    #[test]
    fn from_skolem_examples() {
        let c = extremal_from_skolem(&set(&[4, 3, 2, 1]), &seq("42324311")).unwrap();
        assert_eq!(c.diffs, set(&[12, 11, 10, 9, 7, 6, 5, 4]));
        assert!(c.is_valid_extremal());

        let c = extremal_from_skolem(&set(&[1]), &seq("11")).unwrap();
        assert_eq!(c.diffs, set(&[3, 1]));
        assert_eq!(c.pairing, Pairing::new([(1, 4), (2, 3)]).unwrap());
        assert_eq!(compact(&c.pairing), "3113");

        assert!(matches!(
            extremal_from_skolem(&set(&[2, 1]), &seq("11")),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn from_k_extended_examples() {
        let a = set(&[4, 3, 2, 1]);
        let c = extremal_from_hooked(&a, 1).unwrap().unwrap();
        assert_eq!(c.diffs, set(&[13, 12, 11, 10, 9, 8, 7, 6, 5]));

        let c = extremal_from_k_extended(&set(&[1]), 1, &Pairing::new([(2, 3)]).unwrap()).unwrap();
        assert_eq!(c.diffs, set(&[4, 3, 2]));
        assert_eq!(c.pairing, Pairing::new([(1, 4), (2, 6), (3, 5)]).unwrap());

        assert!(matches!(
            extremal_from_k_extended(&set(&[1]), 5, &Pairing::new([(2, 3)]).unwrap()),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            extremal_from_k_extended(&set(&[1]), 2, &Pairing::new([(2, 3)]).unwrap()),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn zero_extended_uses_trailing_hook() {
        let c = extremal_from_zero_extended(&set(&[1]), &seq("11")).unwrap();
        assert_eq!(c.diffs, set(&[4, 3, 2]));
    }

    #[test]
    fn compose_examples() {
        let c = compose(&single(), &single(), ComposeVariant::C).unwrap();
        assert_eq!(c.diffs, set(&[3, 1]));
        assert_eq!(compact(&c.pairing), "3113");

        let e = compose(&single(), &single(), ComposeVariant::E).unwrap();
        assert_eq!(e.diffs, set(&[2, 2]));
        assert_eq!(compact(&e.pairing), "2222");

        let b = Construction::extremal(set(&[3, 1]), seq("3113")).unwrap();
        let d = compose(&single(), &b, ComposeVariant::D).unwrap();
        assert_eq!(d.diffs, set(&[5, 3, 1]));
        assert_eq!(compact(&d.pairing), "531135");
    }

    #[test]
    fn compose_rejects_non_extremal() {
        let skolem = Construction {
            diffs: set(&[4, 3, 2, 1]),
            pairing: seq("42324311"),
        };
        assert!(compose(&single(), &skolem, ComposeVariant::C).is_err());
        assert!(Construction::extremal(set(&[4, 3, 2, 1]), seq("42324311")).is_err());
    }

    #[test]
    fn near_langford_examples() {
        let c = near_langford_extremal(1).unwrap();
        assert_eq!(c.diffs, set(&[3, 1]));
        assert_eq!(compact(&c.pairing), "3113");

        let c = near_langford_extremal(2).unwrap();
        assert_eq!(c.diffs, set(&[6, 5, 3, 2]));
        assert_eq!(
            c.pairing,
            Pairing::new([(4, 6), (2, 5), (3, 8), (1, 7)]).unwrap()
        );
        assert_eq!(compact(&c.pairing), "63523265");

        let c = near_langford_extremal(3).unwrap();
        assert_eq!(c.diffs, set(&[9, 8, 7, 5, 4, 3]));
        assert_eq!(c.pairing.len(), 6);
        assert!(near_langford_extremal(0).is_err());
    }

    #[test]
    fn near_langford_verdict_examples() {
        assert!(near_langford_extremal_verdict(2, 6, 4).unwrap());
        assert!(!near_langford_extremal_verdict(2, 6, 5).unwrap());
        assert!(!near_langford_extremal_verdict(2, 7, 4).unwrap());
        assert!(near_langford_extremal_verdict(2, 6, 6).is_err());
    }

    #[test]
    fn mirror_takes_complement() {
        let c = near_langford_extremal(2).unwrap();
        let m = mirror_extremal(&c).unwrap();
        assert_eq!(m.diffs, set(&[6, 5, 3, 2]));
        assert_eq!(mirror_extremal(&m).unwrap(), c);
    }

    #[test]
    fn near_skolem_family_is_extremal() {
        for n in 2..=8 {
            for m in 1..n {
                let c = extremal_from_near_skolem(n, m).unwrap();
                assert!(c.is_valid_extremal());
                assert!(c.diffs.is_set());
            }
        }
    }
}

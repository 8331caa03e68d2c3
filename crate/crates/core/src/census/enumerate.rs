use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{contains_at, sphere_size, CensusMode, CensusPattern, CensusRow, CensusTable, Semantics, Slot};
use crate::cobordism::{CanonicalWord, Letter};
use crate::error::CensusError;

pub const ENUMERATION_BOUND: usize = 12;

/// The canonical word with index `idx < 2·3ⁿ`: base-3 digits pick `X` with
/// incoming bit 0 or 1, or `Y`; the top bit is the closing twist.
pub fn unrank(n: usize, idx: u64) -> CanonicalWord {
    let mut letters = Vec::with_capacity(n);
    let mut chain = vec![false; n + 1];
    let mut r = idx;
    for k in 0..n {
        match r % 3 {
            0 => letters.push(Letter::X),
            1 => {
                letters.push(Letter::X);
                chain[k] = true;
            }
            _ => letters.push(Letter::Y),
        }
        r /= 3;
    }
    chain[n] = r & 1 == 1;
    CanonicalWord { letters, chain }
}

/// Some word equivalent to `c` carries `slots` letter for letter from
/// 0-based position `k`.
///
/// Equivalent words have the same letters and the same interface bits up
/// to toggling both bits around a `Y`. Inside the pattern the interface
/// bits are pinned; at the ends of the word the closing twists are pinned
/// too, while an interface shared with a letter outside the pattern can be
/// absorbed by that letter.
pub fn class_contains_at(c: &CanonicalWord, slots: &[Slot], k: usize) -> bool {
    let (n, m) = (c.len(), slots.len());
    if k + m > n || slots.iter().zip(&c.letters[k..]).any(|(s, &l)| s.letter != l) {
        return false;
    }
    let mut pinned: Vec<(usize, bool)> = Vec::new();
    if k == 0 {
        if let Some(l) = slots[0].left {
            pinned.push((0, l));
        }
    }
    for i in 0..m - 1 {
        if let (Some(r), Some(l)) = (slots[i].right, slots[i + 1].left) {
            pinned.push((k + i + 1, r ^ l));
        }
    }
    if k + m == n {
        if let Some(r) = slots[m - 1].right {
            pinned.push((n, r));
        }
    }
    // Interface j is toggled by the Y letters at positions j-1 and j.
    let lo = k.saturating_sub(1);
    let hi = (k + m).min(n - 1);
    let ys: Vec<usize> = (lo..=hi).filter(|&p| c.letters[p] == Letter::Y).collect();
    (0u32..1 << ys.len()).any(|mask| {
        let x = |p: usize| ys.iter().position(|&q| q == p).is_some_and(|i| mask >> i & 1 == 1);
        pinned.iter().all(|&(j, want)| {
            let left = j > 0 && x(j - 1);
            let right = j < n && x(j);
            (c.chain[j] ^ left ^ right) == want
        })
    })
}

/// 0-based end positions of the occurrences of `p` in `c`.
pub fn occurrence_ends(c: &CanonicalWord, p: CensusPattern, sem: Semantics) -> Vec<usize> {
    let m = p.letter_count();
    (0..c.len()).filter(|&k| contains_at(c, p, k, sem)).map(|k| k + m - 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub n: usize,
    pub pattern: CensusPattern,
    pub semantics: Semantics,
    pub total: u64,
    pub avoiding: u64,
    pub containing: u64,
    /// First occurrence ends at the last letter.
    pub terminal: u64,
}

pub fn enumerate_counts(n: usize, pattern: CensusPattern, sem: Semantics) -> Result<Counts, CensusError> {
    if n == 0 {
        return Err(CensusError::InvalidArgument("n must be positive".into()));
    }
    if n > ENUMERATION_BOUND {
        return Err(CensusError::BoundExceeded { n, bound: ENUMERATION_BOUND });
    }
    let total = 2 * 3u64.pow(n as u32);
    let (avoiding, terminal) = (0..total)
        .into_par_iter()
        .map(|i| {
            let ends = occurrence_ends(&unrank(n, i), pattern, sem);
            (ends.is_empty() as u64, (ends.first() == Some(&(n - 1))) as u64)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(Counts { n, pattern, semantics: sem, total, avoiding, containing: total - avoiding, terminal })
}

pub fn enumeration_table(n_max: usize, pattern: CensusPattern, sem: Semantics) -> Result<CensusTable, CensusError> {
    let rows = (1..=n_max)
        .map(|n| {
            let c = enumerate_counts(n, pattern, sem)?;
            debug_assert_eq!(BigUint::from(c.total), sphere_size(n));
            Ok(CensusRow { n, total: c.total.into(), avoiding: c.avoiding.into(), terminal: c.terminal.into() })
        })
        .collect::<Result<_, CensusError>>()?;
    let derivation = vec![format!("exhaustive count over canonical forms, {sem} semantics")];
    Ok(CensusTable { pattern, mode: CensusMode::Enumeration(sem), rows, derivation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::equivalence_class;
    use std::collections::BTreeSet;

    #[test]
    fn unrank_is_a_bijection() {
        for n in 1..=4 {
            let got: BTreeSet<_> = (0..2 * 3u64.pow(n as u32)).map(|i| unrank(n, i)).collect();
            let want: BTreeSet<_> = CanonicalWord::all(n).into_iter().collect();
            assert_eq!(got, want);
        }
    }

    /// Closure oracle: walk the whole class and look for a literal match.
    #[test]
    fn class_semantics_matches_closure() {
        for p in [CensusPattern::Y00Y00, CensusPattern::Y0sY0s, CensusPattern::Omega0] {
            for n in 1..=4 {
                for c in CanonicalWord::all(n) {
                    let class = equivalence_class(&c.representative());
                    for k in 0..n {
                        let oracle = k + p.letter_count() <= n
                            && class.iter().any(|w| p.slots().iter().zip(&w.letters()[k..]).all(|(s, &g)| s.matches(g)));
                        assert_eq!(class_contains_at(&c, p.slots(), k), oracle, "{c} {p} at {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_counts() {
        for sem in [Semantics::Representative, Semantics::Class] {
            let c1 = enumerate_counts(1, CensusPattern::Y00Y00, sem).unwrap();
            assert_eq!((c1.total, c1.avoiding), (6, 6));
            let c2 = enumerate_counts(2, CensusPattern::Y00Y00, sem).unwrap();
            assert_eq!((c2.total, c2.avoiding, c2.terminal), (18, 17, 1));
        }
        // Y0*Y0* also catches Y00·Y01.
        assert_eq!(enumerate_counts(2, CensusPattern::Y0sY0s, Semantics::Representative).unwrap().avoiding, 16);
    }

    #[test]
    fn three_letter_counts_differ_from_recurrence() {
        let class = enumerate_counts(3, CensusPattern::Y00Y00, Semantics::Class).unwrap();
        let rep = enumerate_counts(3, CensusPattern::Y00Y00, Semantics::Representative).unwrap();
        assert_eq!(class.terminal, 4);
        assert_eq!(rep.terminal, 2);
    }

    #[test]
    fn bound() {
        assert!(matches!(
            enumerate_counts(13, CensusPattern::Y00Y00, Semantics::Class),
            Err(CensusError::BoundExceeded { .. })
        ));
    }
}

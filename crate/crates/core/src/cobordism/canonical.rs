//! Canonical forms for words modulo moving σ across interfaces and
//! `Y00 ∼ Y11`, `Y01 ∼ Y10`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Generator, Letter, Word};
use crate::error::CobordismError;

/// Letters plus the twist chain `t0..tn`: `t0` is the left twist of the
/// first letter, `tk` (0 < k < n) the combined twist at interface k, `tn`
/// the right twist of the last letter. Every `Y` at position k has
/// `t_{k-1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalWord {
    pub letters: Vec<Letter>,
    pub chain: Vec<bool>,
}

fn chain_of(w: &Word) -> Vec<bool> {
    let g = w.letters();
    let n = g.len();
    let mut t = Vec::with_capacity(n + 1);
    t.push(g[0].left);
    for k in 1..n {
        t.push(g[k - 1].right ^ g[k].left);
    }
    t.push(g[n - 1].right);
    t
}

/// Push twists rightwards through `Y` letters: a `Y` whose incoming bit is
/// set absorbs it by toggling both of its bits.
fn normalize(letters: &[Letter], chain: &mut [bool]) {
    for (k, &l) in letters.iter().enumerate() {
        if l == Letter::Y && chain[k] {
            chain[k] = false;
            chain[k + 1] ^= true;
        }
    }
}

pub fn canonicalize(w: &Word) -> CanonicalWord {
    let letters: Vec<Letter> = w.letters().iter().map(|g| g.letter).collect();
    let mut chain = chain_of(w);
    normalize(&letters, &mut chain);
    CanonicalWord { letters, chain }
}

pub fn equivalent_words(a: &Word, b: &Word) -> bool {
    canonicalize(a) == canonicalize(b)
}

impl CanonicalWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.chain.len() == self.letters.len() + 1
            && !self.letters.is_empty()
            && self.letters.iter().enumerate().all(|(k, &l)| l == Letter::X || !self.chain[k])
    }

    /// Designated representative: the first letter carries `t0` on the
    /// left, every letter k carries `tk` on the right. All `Y` letters come
    /// out as `Y0j`.
    pub fn representative(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .enumerate()
            .map(|(k, &l)| Generator::new(l, k == 0 && self.chain[0], self.chain[k + 1]))
            .collect();
        Word::new(letters).expect("nonempty")
    }

    /// All canonical words of length `n`, `2·3^n` of them, in increasing order.
    pub fn all(n: usize) -> Vec<CanonicalWord> {
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let letters: Vec<Letter> = (0..n).map(|k| if mask >> k & 1 == 1 { Letter::Y } else { Letter::X }).collect();
            let free: Vec<usize> = (0..=n).filter(|&k| k == n || letters[k] == Letter::X).collect();
            for bits in 0u64..(1 << free.len()) {
                let mut chain = vec![false; n + 1];
                for (i, &k) in free.iter().enumerate() {
                    chain[k] = bits >> i & 1 == 1;
                }
                out.push(CanonicalWord { letters: letters.clone(), chain });
            }
        }
        out.sort();
        out
    }

    pub fn letter_string(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect()
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.chain.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "{}|{}", self.letter_string(), bits)
    }
}

impl FromStr for CanonicalWord {
    type Err = CobordismError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CobordismError::BadGenerator(s.to_string());
        let (l, b) = s.split_once('|').ok_or_else(bad)?;
        let letters = l
            .chars()
            .map(|c| match c {
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let chain = b
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let w = CanonicalWord { letters, chain };
        if w.is_canonical() {
            Ok(w)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for CanonicalWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Every word (over all eight letters `X_ij`, `Y_ij`) reachable from `w` by
/// toggling the twist pair at an interface or both twists of a `Y`.
/// Exponential in `|w|`; meant as a test oracle.
pub fn equivalence_class(w: &Word) -> BTreeSet<Word> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut q = VecDeque::from([w.clone()]);
    while let Some(u) = q.pop_front() {
        let g = u.letters();
        let mut next = Vec::new();
        for k in 0..g.len() {
            if k + 1 < g.len() {
                let mut v = g.to_vec();
                v[k].right ^= true;
                v[k + 1].left ^= true;
                next.push(v);
            }
            if g[k].letter == Letter::Y {
                let mut v = g.to_vec();
                v[k].left ^= true;
                v[k].right ^= true;
                next.push(v);
            }
        }
        for v in next {
            let v = Word::new(v).expect("nonempty");
            if seen.insert(v.clone()) {
                q.push_back(v);
            }
        }
    }
    seen
}

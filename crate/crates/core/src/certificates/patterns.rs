//! The four letter patterns that force two intersecting cycles in `R`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cobordism::{canonicalize, CanonicalWord, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    /// `Y Y`.
    A,
    /// `X X X`, both inner interfaces twisted.
    B,
    /// `X Y X Y X`.
    C,
    /// `X Y X X Y X`, the middle interface twisted.
    D,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::A, Pattern::B, Pattern::C, Pattern::D];

    pub fn letters(self) -> &'static [Letter] {
        use Letter::{X, Y};
        match self {
            Pattern::A => &[Y, Y],
            Pattern::B => &[X, X, X],
            Pattern::C => &[X, Y, X, Y, X],
            Pattern::D => &[X, Y, X, X, Y, X],
        }
    }

    /// Interfaces (offsets within the pattern, `i` sitting between pattern
    /// letters `i-1` and `i`) whose twist bit must be 1.
    pub fn twisted(self) -> &'static [usize] {
        match self {
            Pattern::B => &[1, 2],
            Pattern::D => &[3],
            _ => &[],
        }
    }

    pub fn len(self) -> usize {
        self.letters().len()
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pattern::A => 'a',
            Pattern::B => 'b',
            Pattern::C => 'c',
            Pattern::D => 'd',
        };
        write!(f, "{c}")
    }
}

/// A pattern occurrence starting at letter `position` (1-based) of
/// `w.rotate(rotation)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternMatch {
    pub pattern: Pattern,
    pub position: usize,
    pub rotation: usize,
}

/// Twist bit of the interface before letter `k` (0-based) read cyclically:
/// the closure interface carries `t0 xor tn`.
fn cyclic_bit(c: &CanonicalWord, k: usize) -> bool {
    let n = c.len();
    if k % n == 0 {
        c.chain[0] ^ c.chain[n]
    } else {
        c.chain[k % n]
    }
}

fn matches_at(c: &CanonicalWord, pat: Pattern, start: usize, cyclic: bool) -> bool {
    let n = c.len();
    let len = pat.len();
    if len > n || (!cyclic && start + len > n) {
        return false;
    }
    let letters_ok = pat.letters().iter().enumerate().all(|(i, &l)| c.letters[(start + i) % n] == l);
    let bits_ok = pat.twisted().iter().all(|&i| {
        if cyclic {
            cyclic_bit(c, start + i)
        } else {
            c.chain[start + i]
        }
    });
    letters_ok && bits_ok
}

/// All occurrences, evaluated on the canonical chain. Linear scans report
/// `rotation = 0`; cyclic scans report each occurrence once, at the
/// rotation that brings it to position 1.
pub fn forbidden_pattern_scan(w: &Word, cyclic: bool) -> Vec<PatternMatch> {
    let c = canonicalize(w);
    scan_canonical(&c, cyclic)
}

pub fn scan_canonical(c: &CanonicalWord, cyclic: bool) -> Vec<PatternMatch> {
    let n = c.len();
    let mut out = Vec::new();
    for pattern in Pattern::ALL {
        for start in 0..n {
            if matches_at(c, pattern, start, cyclic) {
                let m = if cyclic {
                    PatternMatch { pattern, position: 1, rotation: start }
                } else {
                    PatternMatch { pattern, position: start + 1, rotation: 0 }
                };
                out.push(m);
            }
        }
    }
    out
}

pub fn has_forbidden_pattern(c: &CanonicalWord, cyclic: bool) -> bool {
    Pattern::ALL.iter().any(|&p| (0..c.len()).any(|s| matches_at(c, p, s, cyclic)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(s: &str) -> Vec<Pattern> {
        forbidden_pattern_scan(&s.parse().unwrap(), false).into_iter().map(|m| m.pattern).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(scan("Y00.Y01"), vec![Pattern::A]);
        assert_eq!(scan("X00.X10.X10"), vec![Pattern::B]);
        // Second interface is 0⊕0; only the cyclic scan sees (b), across the closure.
        assert!(scan("X00.X10.X01").is_empty());
        let cyclic = forbidden_pattern_scan(&"X00.X10.X01".parse().unwrap(), true);
        assert_eq!(cyclic, vec![PatternMatch { pattern: Pattern::B, position: 1, rotation: 2 }]);
        assert!(scan("X00.X00.X00").is_empty());
        assert_eq!(scan("X00.Y00.X00.Y01.X11"), vec![Pattern::C]);
        assert_eq!(scan("X00.Y00.X01.X00.Y00.X00"), vec![Pattern::D]);
        assert!(scan("X00.Y00.X00.X00.Y00.X00").is_empty());
    }

    #[test]
    fn cyclic_scan_wraps() {
        let w: Word = "Y00.X00.Y00".parse().unwrap();
        assert!(forbidden_pattern_scan(&w, false).is_empty());
        let m = forbidden_pattern_scan(&w, true);
        assert_eq!(m, vec![PatternMatch { pattern: Pattern::A, position: 1, rotation: 2 }]);
    }

    #[test]
    fn subscript_form_of_b() {
        // X_{*k} X_{k̄l} X_{l̄*} over all representatives with standard
        // subscripts agrees with the chain test.
        use crate::cobordism::Generator;
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    let g = |v: u8| Generator::new(Letter::X, v & 2 != 0, v & 1 != 0);
                    let (ga, gb, gc) = (g(a), g(b), g(c));
                    let direct = ga.right != gb.left && gb.right != gc.left;
                    let w = Word::new(vec![ga, gb, gc]).unwrap();
                    let found = forbidden_pattern_scan(&w, false).iter().any(|m| m.pattern == Pattern::B);
                    assert_eq!(direct, found);
                }
            }
        }
    }
}

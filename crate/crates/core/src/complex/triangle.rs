use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::label::SignedLabel;

/// An oriented triangle whose boundary reads `sides[0] sides[1] sides[2]`.
///
/// Equality is up to cyclic rotation and up to inversion (reverse the word
/// and negate every side); both describe the same 2-cell.
#[derive(Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Triangle {
    pub sides: [SignedLabel; 3],
}

/// One of the six ways to read a triangle's boundary: start at side
/// `start` and go forwards, or backwards with every sign flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reading {
    pub start: usize,
    pub reflected: bool,
}

impl Reading {
    pub const ALL: [Reading; 6] = [
        Reading { start: 0, reflected: false },
        Reading { start: 1, reflected: false },
        Reading { start: 2, reflected: false },
        Reading { start: 0, reflected: true },
        Reading { start: 1, reflected: true },
        Reading { start: 2, reflected: true },
    ];

    /// Position (in the stored triangle) of the `k`-th side of this reading.
    #[inline]
    pub fn position(self, k: usize) -> usize {
        if self.reflected {
            (self.start + 3 - (k % 3)) % 3
        } else {
            (self.start + k) % 3
        }
    }

    /// The reading whose side 0 is stored position `pos`, traversed in the
    /// stored direction (`reflected = false`) or against it.
    pub fn from_position(pos: usize, reflected: bool) -> Self {
        Reading { start: pos, reflected }
    }
}

impl Triangle {
    pub fn new(a: SignedLabel, b: SignedLabel, c: SignedLabel) -> Self {
        Triangle { sides: [a, b, c] }
    }

    pub fn inverse(&self) -> Triangle {
        let [a, b, c] = &self.sides;
        Triangle::new(-c, -b, -a)
    }

    /// Side `k` of the triangle read according to `r`.
    pub fn read(&self, r: Reading, k: usize) -> SignedLabel {
        self.sides[r.position(k)].clone().signed(r.reflected)
    }

    pub fn readings(&self) -> impl Iterator<Item = [SignedLabel; 3]> + '_ {
        Reading::ALL.iter().map(move |&r| [self.read(r, 0), self.read(r, 1), self.read(r, 2)])
    }

    /// Smallest of the six readings; equal triangles share it.
    pub fn canonical(&self) -> [SignedLabel; 3] {
        self.readings().min().expect("six readings")
    }

    pub fn map<F: FnMut(&SignedLabel) -> SignedLabel>(&self, mut f: F) -> Triangle {
        Triangle::new(f(&self.sides[0]), f(&self.sides[1]), f(&self.sides[2]))
    }
}

impl PartialEq for Triangle {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for Triangle {}

impl Hash for Triangle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.sides[0], self.sides[1], self.sides[2])
    }
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Edge labels and their orientations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ComplexError;

/// Name of an edge of a triangle presentation.
///
/// Labels order "naturally": purely numeric names compare as integers and
/// sort before everything else, other names compare as strings. This keeps
/// `2 < 11 < a < x < x'`, which is the order every deterministic choice in
/// the crate (spanning trees, vertex classes, output listings) relies on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Result<Self, ComplexError> {
        if name.is_empty() {
            return Err(ComplexError::InvalidLabel(name.to_string()));
        }
        if !name.chars().all(is_label_char) {
            return Err(ComplexError::InvalidLabel(name.to_string()));
        }
        Ok(Label(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u64> {
        if self.0.bytes().all(|b| b.is_ascii_digit()) {
            self.0.parse().ok()
        } else {
            None
        }
    }

    pub fn positive(&self) -> SignedLabel {
        SignedLabel::new(self.clone(), false)
    }

    pub fn negative(&self) -> SignedLabel {
        SignedLabel::new(self.clone(), true)
    }
}

pub(crate) fn is_label_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '#'
}

/// Shorthand for building labels from literals known to be valid.
pub(crate) fn lbl(name: &str) -> Label {
    Label::new(name).expect("static label")
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Label {
    type Err = ComplexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::new(s)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Label::new(&s).map_err(serde::de::Error::custom)
    }
}

/// A label together with an orientation. `-x` is the edge `x` traversed
/// against its orientation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLabel {
    pub label: Label,
    pub negative: bool,
}

impl SignedLabel {
    pub fn new(label: Label, negative: bool) -> Self {
        SignedLabel { label, negative }
    }

    /// Flip the orientation when `flip` is set.
    pub fn signed(self, flip: bool) -> Self {
        SignedLabel { label: self.label, negative: self.negative ^ flip }
    }
}

impl Neg for SignedLabel {
    type Output = SignedLabel;
    fn neg(self) -> SignedLabel {
        SignedLabel { label: self.label, negative: !self.negative }
    }
}

impl Neg for &SignedLabel {
    type Output = SignedLabel;
    fn neg(self) -> SignedLabel {
        -self.clone()
    }
}

impl fmt::Display for SignedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-{}", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

impl fmt::Debug for SignedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SignedLabel {
    type Err = ComplexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_prefix('-') {
            Some(rest) if rest.starts_with('-') || rest.starts_with('+') => {
                Err(ComplexError::MalformedSign { position: 0, text: s.to_string() })
            }
            Some(rest) => Ok(SignedLabel::new(Label::new(rest)?, true)),
            None => match s.strip_prefix('+') {
                Some(rest) if rest.starts_with('-') || rest.starts_with('+') => {
                    Err(ComplexError::MalformedSign { position: 0, text: s.to_string() })
                }
                Some(rest) => Ok(SignedLabel::new(Label::new(rest)?, false)),
                None => Ok(SignedLabel::new(Label::new(s)?, false)),
            },
        }
    }
}

impl Serialize for SignedLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignedLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order_puts_numbers_first() {
        let mut v: Vec<Label> = ["x'", "11", "a", "2", "x", "z"].iter().map(|s| lbl(s)).collect();
        v.sort();
        let names: Vec<&str> = v.iter().map(|l| l.as_str()).collect();
        assert_eq!(names, ["2", "11", "a", "x", "x'", "z"]);
    }

    #[test]
    fn negation_is_an_involution() {
        let y: SignedLabel = "y".parse().unwrap();
        assert_eq!(-(-y.clone()), y);
        assert_eq!((-y).to_string(), "-y");
    }

    #[test]
    fn rejects_bad_signs_and_names() {
        assert!("--y".parse::<SignedLabel>().is_err());
        assert!("-".parse::<SignedLabel>().is_err());
        assert!("a b".parse::<SignedLabel>().is_err());
        assert!(Label::new("").is_err());
    }
}

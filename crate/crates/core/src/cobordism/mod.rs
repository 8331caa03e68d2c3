//! The semigroup generated by the six cobordisms `X00, X01, X10, X11, Y00,
//! Y01`: generators, the twist σ of the collar, words, canonical forms,
//! composition and closure.

mod canonical;
mod compose;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{Triangle, TrianglePresentation};
use crate::error::CobordismError;
use crate::label::{lbl, Label, SignedLabel};

pub use canonical::{canonicalize, equivalence_class, equivalent_words, CanonicalWord};
pub use compose::{
    close_up, close_up_tracked, compose, compose_fresh, equivalent_bodies, fresh_relabel, word_cobordism, ClosedComplex,
    Origin,
};

pub const COLLAR_TEXT: &str = "(x,a,d),(y,c,d),(z,c,b),(x',d,a),(y',b,a),(z',b,c)";

/// Labels of the collar: strands first, then the four horizontals.
pub const COLLAR_LABELS: [&str; 10] = ["x", "y", "z", "x'", "y'", "z'", "a", "b", "c", "d"];
pub const LEFT_STRANDS: [&str; 3] = ["x", "y", "z"];
pub const RIGHT_STRANDS: [&str; 3] = ["x'", "y'", "z'"];
pub const HORIZONTALS: [&str; 4] = ["a", "b", "c", "d"];

const X00_TEXT: &str = "(x,a,d),(y,c,d),(z,c,b),(1,1,2),(2,a',d'),(4,c',d'),(3,c',b'),\
                        (4,d,a),(3,b,a),(2,b,c),(1,3,4),(x',d',a'),(y',b',a'),(z',b',c')";
const Y00_TEXT: &str = "(x,a,d),(y,c,d),(z,c,b),(1,2,3),(4,a',d'),(2,c',d'),(1,c',b'),\
                        (1,d,a),(3,b,a),(4,b,c),(2,4,3),(x',d',a'),(y',b',a'),(z',b',c')";

pub fn collar() -> TrianglePresentation {
    TrianglePresentation::parse(COLLAR_TEXT).expect("collar text parses")
}

/// The order-two automorphism of the collar.
pub fn sigma(l: &SignedLabel) -> Result<SignedLabel, CobordismError> {
    let image = match l.label.as_str() {
        "x" => "z",
        "z" => "x",
        "y" => "y",
        "x'" => "z'",
        "z'" => "x'",
        "y'" => "y'",
        "a" => "b",
        "b" => "a",
        "c" => "d",
        "d" => "c",
        _ => return Err(CobordismError::UnknownCollarLabel(l.label.clone())),
    };
    Ok(SignedLabel::new(lbl(image), !l.negative))
}

pub(crate) fn sigma_pow(l: &SignedLabel, twist: bool) -> SignedLabel {
    if twist {
        sigma(l).expect("collar label")
    } else {
        l.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "X",
            Letter::Y => "Y",
        })
    }
}

/// `Z_ij`: the core `Z` with boundary maps `L∘σ^i` and `R∘σ^j`.
///
/// `Y10` and `Y11` are accepted as letters; they are equivalent to `Y01`
/// and `Y00` and never appear in canonical representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub letter: Letter,
    pub left: bool,
    pub right: bool,
}

impl Generator {
    pub const fn new(letter: Letter, left: bool, right: bool) -> Self {
        Generator { letter, left, right }
    }

    pub const X00: Generator = Generator::new(Letter::X, false, false);
    pub const X01: Generator = Generator::new(Letter::X, false, true);
    pub const X10: Generator = Generator::new(Letter::X, true, false);
    pub const X11: Generator = Generator::new(Letter::X, true, true);
    pub const Y00: Generator = Generator::new(Letter::Y, false, false);
    pub const Y01: Generator = Generator::new(Letter::Y, false, true);
    pub const Y10: Generator = Generator::new(Letter::Y, true, false);
    pub const Y11: Generator = Generator::new(Letter::Y, true, true);

    /// The six generators of the semigroup.
    pub const ALL: [Generator; 6] =
        [Generator::X00, Generator::X01, Generator::X10, Generator::X11, Generator::Y00, Generator::Y01];

    pub fn is_standard(&self) -> bool {
        self.letter == Letter::X || !self.left
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.letter, self.left as u8, self.right as u8)
    }
}

impl FromStr for Generator {
    type Err = CobordismError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CobordismError::BadGenerator(s.to_string());
        let mut chars = s.chars();
        let letter = match chars.next() {
            Some('X') => Letter::X,
            Some('Y') => Letter::Y,
            _ => return Err(bad()),
        };
        let bit = |c: Option<char>| match c {
            Some('0') => Ok(false),
            Some('1') => Ok(true),
            _ => Err(bad()),
        };
        let left = bit(chars.next())?;
        let right = bit(chars.next())?;
        if chars.next().is_some() {
            return Err(bad());
        }
        Ok(Generator { letter, left, right })
    }
}

/// A nonempty product of generators, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Result<Self, CobordismError> {
        if letters.is_empty() {
            return Err(CobordismError::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Letters `start..=end`, 1-based.
    pub fn subword(&self, start: usize, end: usize) -> Option<Word> {
        (1 <= start && start <= end && end <= self.len()).then(|| Word(self.0[start - 1..end].to_vec()))
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.rotate_left(k % self.len());
        Word(v)
    }

    /// All cyclic rotations, starting with the word itself.
    pub fn rotations(&self) -> Vec<Word> {
        (0..self.len()).map(|k| self.rotate(k)).collect()
    }

    pub fn letter_string(&self) -> String {
        self.0.iter().map(|g| g.letter.to_string()).collect()
    }
}

pub fn rotations(w: &Word) -> Vec<Word> {
    w.rotations()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Letters separated by `.`, `·`, `*`, whitespace, or nothing: `X01.X00`,
/// `X01X00`.
impl FromStr for Word {
    type Err = CobordismError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !matches!(c, '.' | '·' | '*') && !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(CobordismError::EmptyWord);
        }
        if cleaned.len() % 3 != 0 || !cleaned.is_ascii() {
            return Err(CobordismError::BadGenerator(s.to_string()));
        }
        let letters = cleaned.as_bytes().chunks(3).map(|c| std::str::from_utf8(c).unwrap().parse()).collect::<Result<_, _>>()?;
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A body with two marked copies of the collar.
#[derive(Clone, Debug)]
pub struct Cobordism {
    pub(crate) body: TrianglePresentation,
    pub(crate) left: BTreeMap<Label, SignedLabel>,
    pub(crate) right: BTreeMap<Label, SignedLabel>,
    pub(crate) origins: Vec<Origin>,
    pub(crate) letter_maps: Vec<BTreeMap<Label, SignedLabel>>,
}

impl Cobordism {
    /// Builds a cobordism from maps on the positive collar labels.
    pub fn new(
        body: TrianglePresentation,
        left: BTreeMap<Label, SignedLabel>,
        right: BTreeMap<Label, SignedLabel>,
    ) -> Result<Self, CobordismError> {
        let origins = (0..body.len()).map(|t| Origin { letter: 0, triangle: t }).collect();
        let identity = body.labels().iter().map(|l| (l.clone(), l.positive())).collect();
        let c = Cobordism { body, left, right, origins, letter_maps: vec![identity] };
        c.check()?;
        Ok(c)
    }

    pub fn body(&self) -> &TrianglePresentation {
        &self.body
    }

    pub fn left(&self, l: &SignedLabel) -> Result<SignedLabel, CobordismError> {
        apply(&self.left, l)
    }

    pub fn right(&self, l: &SignedLabel) -> Result<SignedLabel, CobordismError> {
        apply(&self.right, l)
    }

    pub fn left_map(&self) -> &BTreeMap<Label, SignedLabel> {
        &self.left
    }

    pub fn right_map(&self) -> &BTreeMap<Label, SignedLabel> {
        &self.right
    }

    /// Letter and generator-body triangle each body triangle came from.
    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    /// For each letter, generator-body label ↦ label in this body.
    pub fn letter_maps(&self) -> &[BTreeMap<Label, SignedLabel>] {
        &self.letter_maps
    }

    pub fn with_twists(&self, left: bool, right: bool) -> Cobordism {
        let twist = |m: &BTreeMap<Label, SignedLabel>, t: bool| -> BTreeMap<Label, SignedLabel> {
            COLLAR_LABELS
                .iter()
                .map(|&n| {
                    let l = lbl(n);
                    let image = apply(m, &sigma_pow(&l.positive(), t)).expect("collar label");
                    (l, image)
                })
                .collect()
        };
        Cobordism { left: twist(&self.left, left), right: twist(&self.right, right), ..self.clone() }
    }

    /// Both maps send collar triangles to body triangles; left strands and
    /// right primed strands land on labels occurring once.
    pub fn check(&self) -> Result<(), CobordismError> {
        let c = collar();
        for (name, map) in [("left", &self.left), ("right", &self.right)] {
            for l in COLLAR_LABELS {
                if !map.contains_key(&lbl(l)) {
                    return Err(CobordismError::MergeConflict(format!("{name} map misses {l}")));
                }
            }
            for t in c.triangles() {
                let image = t.map(|s| apply(map, s).expect("collar label"));
                if !self.body.triangles().contains(&image) {
                    return Err(CobordismError::MergeConflict(format!("{name} image {image} of {t} is not a body triangle")));
                }
            }
        }
        for (map, strands) in [(&self.left, LEFT_STRANDS), (&self.right, RIGHT_STRANDS)] {
            for s in strands {
                let image = &map[&lbl(s)];
                if self.body.arity(&image.label) != 1 {
                    return Err(CobordismError::MergeConflict(format!("boundary strand {s} maps to {image} of arity {}", self.body.arity(&image.label))));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn apply(map: &BTreeMap<Label, SignedLabel>, l: &SignedLabel) -> Result<SignedLabel, CobordismError> {
    map.get(&l.label).map(|s| s.clone().signed(l.negative)).ok_or_else(|| CobordismError::UnknownCollarLabel(l.label.clone()))
}

pub(crate) fn core_body(letter: Letter) -> TrianglePresentation {
    TrianglePresentation::parse(match letter {
        Letter::X => X00_TEXT,
        Letter::Y => Y00_TEXT,
    })
    .expect("generator text parses")
}

/// Untwisted boundary maps `L`, `R` of the core.
pub(crate) fn core_maps(letter: Letter) -> (BTreeMap<Label, SignedLabel>, BTreeMap<Label, SignedLabel>) {
    let (left_strands, right_strands) = match letter {
        Letter::X => (["4", "3", "2"], ["2", "4", "3"]),
        Letter::Y => (["1", "3", "4"], ["4", "2", "1"]),
    };
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (i, s) in LEFT_STRANDS.iter().enumerate() {
        left.insert(lbl(s), lbl(s).positive());
        right.insert(lbl(s), lbl(right_strands[i]).positive());
    }
    for (i, s) in RIGHT_STRANDS.iter().enumerate() {
        left.insert(lbl(s), lbl(left_strands[i]).positive());
        right.insert(lbl(s), lbl(s).positive());
    }
    for h in HORIZONTALS {
        left.insert(lbl(h), lbl(h).positive());
        right.insert(lbl(h), lbl(&format!("{h}'")).positive());
    }
    (left, right)
}

pub fn generator_cobordism(g: Generator) -> Cobordism {
    let (left, right) = core_maps(g.letter);
    Cobordism::new(core_body(g.letter), left, right).expect("generator data is consistent").with_twists(g.left, g.right)
}

/// Image of the collar triangle `t` under `map`.
pub(crate) fn map_triangle(map: &BTreeMap<Label, SignedLabel>, t: &Triangle) -> Triangle {
    t.map(|s| apply(map, s).expect("collar label"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> SignedLabel {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_table() {
        assert_eq!(sigma(&sl("y")).unwrap(), sl("-y"));
        assert_eq!(sigma(&sl("a")).unwrap(), sl("-b"));
        assert_eq!(sigma(&sl("-x'")).unwrap(), sl("z'"));
        assert!(sigma(&sl("q")).is_err());
        for l in COLLAR_LABELS {
            assert_eq!(sigma(&sigma(&sl(l)).unwrap()).unwrap(), sl(l));
        }
    }

    #[test]
    fn sigma_preserves_the_collar() {
        let c = collar();
        let image = TrianglePresentation::new(c.triangles().iter().map(|t| t.map(|s| sigma(s).unwrap())).collect());
        assert!(image.same_triangles(&c));
    }

    #[test]
    fn generator_parsing() {
        assert_eq!("X01".parse::<Generator>().unwrap(), Generator::X01);
        assert!("X99".parse::<Generator>().is_err());
        assert!("Z00".parse::<Generator>().is_err());
        let w: Word = "X01.X00".parse().unwrap();
        assert_eq!(w.letters(), [Generator::X01, Generator::X00]);
        assert_eq!("X01X00".parse::<Word>().unwrap(), w);
        assert_eq!(w.to_string(), "X01.X00");
        assert_eq!("".parse::<Word>(), Err(CobordismError::EmptyWord));
    }

    #[test]
    fn generators_carry_the_listed_bodies() {
        let x = generator_cobordism(Generator::X00);
        assert_eq!(x.body().len(), 14);
        assert!(x.body().triangles().contains(&"(1,1,2)".parse::<TrianglePresentation>().unwrap().triangles()[0]));
        assert_eq!(x.left(&sl("x'")).unwrap(), sl("4"));
        assert_eq!(x.right(&sl("y")).unwrap(), sl("4"));
        let y = generator_cobordism(Generator::Y00);
        assert_eq!(y.right(&sl("z")).unwrap(), sl("1"));
        let x10 = generator_cobordism(Generator::X10);
        assert_eq!(x10.left(&sl("x'")).unwrap(), sl("-2"));
        assert_eq!(x10.right(&sl("x")).unwrap(), sl("2"));
        for g in Generator::ALL {
            generator_cobordism(g).check().unwrap();
        }
    }

    #[test]
    fn rotations_of_words() {
        let w: Word = "X00.Y00".parse().unwrap();
        let r: Vec<String> = rotations(&w).iter().map(|w| w.to_string()).collect();
        assert_eq!(r, ["X00.Y00", "Y00.X00"]);
        assert_eq!(rotations(&"X11".parse().unwrap()).len(), 1);
    }
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::triangle::Triangle;
use crate::error::ComplexError;
use crate::label::{is_label_char, Label, SignedLabel};

/// Where a label sits: side `position` of triangle `triangle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Occurrence {
    pub triangle: usize,
    pub position: usize,
}

/// A side in index form: label id into [`TrianglePresentation::labels`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub label: usize,
    pub negative: bool,
}

/// A 2-complex given by oriented labeled triangles; sides with equal labels
/// are glued respecting orientation.
#[derive(Clone)]
pub struct TrianglePresentation {
    triangles: Vec<Triangle>,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    sides: Vec<[Side; 3]>,
    occurrences: Vec<Vec<Occurrence>>,
}

impl TrianglePresentation {
    pub fn new(triangles: Vec<Triangle>) -> Self {
        let mut labels: Vec<Label> =
            triangles.iter().flat_map(|t| t.sides.iter().map(|s| s.label.clone())).collect();
        labels.sort();
        labels.dedup();
        let index: HashMap<Label, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut occurrences = vec![Vec::new(); labels.len()];
        let sides = triangles
            .iter()
            .enumerate()
            .map(|(ti, t)| {
                let mut out = [Side { label: 0, negative: false }; 3];
                for (p, s) in t.sides.iter().enumerate() {
                    let id = index[&s.label];
                    occurrences[id].push(Occurrence { triangle: ti, position: p });
                    out[p] = Side { label: id, negative: s.negative };
                }
                out
            })
            .collect();
        TrianglePresentation { triangles, labels, index, sides, occurrences }
    }

    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        Ok(TrianglePresentation::new(parse_triples(text)?))
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Sorted label set.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_id(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: usize) -> &Label {
        &self.labels[id]
    }

    pub fn sides(&self, triangle: usize) -> &[Side; 3] {
        &self.sides[triangle]
    }

    pub fn side(&self, occ: Occurrence) -> Side {
        self.sides[occ.triangle][occ.position]
    }

    pub fn occurrences(&self, id: usize) -> &[Occurrence] {
        &self.occurrences[id]
    }

    pub fn occurrences_of(&self, label: &Label) -> &[Occurrence] {
        self.label_id(label).map(|id| self.occurrences(id)).unwrap_or(&[])
    }

    pub fn arity(&self, label: &Label) -> usize {
        self.occurrences_of(label).len()
    }

    pub fn signed(&self, side: Side) -> SignedLabel {
        SignedLabel::new(self.labels[side.label].clone(), side.negative)
    }

    pub fn side_id(&self, s: &SignedLabel) -> Option<Side> {
        self.label_id(&s.label).map(|label| Side { label, negative: s.negative })
    }

    /// Canonical text form: `(x,a,d),(y,c,d),...` with a `-` prefix on
    /// negatively oriented sides and no whitespace.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.triangles.iter().map(|t| t.to_string()).collect();
        parts.join(",")
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson { triangles: self.triangles.iter().map(|t| t.sides.clone()).collect() }
    }

    pub fn from_json(json: &PresentationJson) -> Self {
        TrianglePresentation::new(
            json.triangles.iter().map(|[a, b, c]| Triangle::new(a.clone(), b.clone(), c.clone())).collect(),
        )
    }

    pub fn from_json_str(text: &str) -> Result<Self, ComplexError> {
        let json: PresentationJson =
            serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        Ok(Self::from_json(&json))
    }

    /// Same triangle multiset (triangles compared up to rotation/inversion).
    pub fn same_triangles(&self, other: &TrianglePresentation) -> bool {
        let mut a: Vec<_> = self.triangles.iter().map(Triangle::canonical).collect();
        let mut b: Vec<_> = other.triangles.iter().map(Triangle::canonical).collect();
        a.sort();
        b.sort();
        a == b
    }

    pub fn relabel<F: FnMut(&SignedLabel) -> SignedLabel>(&self, mut f: F) -> Self {
        TrianglePresentation::new(self.triangles.iter().map(|t| t.map(&mut f)).collect())
    }

    pub fn validate(&self, mode: ValidationMode) -> ValidationReport {
        let arities: BTreeMap<Label, usize> =
            self.labels.iter().enumerate().map(|(i, l)| (l.clone(), self.occurrences[i].len())).collect();
        let mut violations = Vec::new();
        for (label, &count) in &arities {
            let expected = match mode {
                ValidationMode::Closed => 3,
                ValidationMode::Cobordism if is_boundary_strand(label) => 1,
                ValidationMode::Cobordism => 3,
            };
            if count != expected {
                violations.push(ArityViolation { label: label.clone(), count, expected });
            }
        }
        ValidationReport { mode, triangles: self.len(), arities, violations }
    }
}

fn is_boundary_strand(label: &Label) -> bool {
    matches!(label.as_str(), "x" | "y" | "z" | "x'" | "y'" | "z'")
}

impl PartialEq for TrianglePresentation {
    /// Presentations are equal when they list the same triangles in the
    /// same order (each compared up to rotation/inversion).
    fn eq(&self, other: &Self) -> bool {
        self.triangles == other.triangles
    }
}

impl Eq for TrianglePresentation {}

impl fmt::Display for TrianglePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for TrianglePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrianglePresentation[{}]", self.to_text())
    }
}

impl FromStr for TrianglePresentation {
    type Err = ComplexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// JSON schema: `{"triangles": [["x","a","d"],["-z","b","c"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub triangles: Vec<[SignedLabel; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationMode {
    /// Every label occurs on exactly three triangle sides.
    Closed,
    /// Boundary strands `x,y,z,x',y',z'` occur once, all other labels three times.
    Cobordism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityViolation {
    pub label: Label,
    pub count: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub mode: ValidationMode,
    pub triangles: usize,
    pub arities: BTreeMap<Label, usize>,
    pub violations: Vec<ArityViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&self) -> Result<(), ComplexError> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(ComplexError::Arity { label: v.label.clone(), count: v.count, expected: v.expected }),
        }
    }
}

struct Scanner<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { chars: src.char_indices().collect(), at: 0, src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|c| c.0).unwrap_or(self.src.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ComplexError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some(c) => Err(ComplexError::Syntax { position: self.pos(), message: format!("expected '{want}', found '{c}'") }),
            None => Err(ComplexError::Syntax { position: self.pos(), message: format!("expected '{want}', found end of input") }),
        }
    }

    fn side(&mut self) -> Result<SignedLabel, ComplexError> {
        self.skip_ws();
        let start = self.pos();
        let mut negative = false;
        let mut signs = 0;
        while let Some(c @ ('-' | '+')) = self.peek() {
            negative ^= c == '-';
            signs += 1;
            self.at += 1;
        }
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c == '\u{2032}' {
                name.push('\'');
            } else if is_label_char(c) {
                name.push(c);
            } else {
                break;
            }
            self.at += 1;
        }
        if signs > 1 || (signs == 1 && name.is_empty()) {
            let end = self.pos();
            return Err(ComplexError::MalformedSign { position: start, text: self.src[start..end].to_string() });
        }
        if name.is_empty() {
            let found = self.peek().map(|c| format!("'{c}'")).unwrap_or_else(|| "end of input".into());
            return Err(ComplexError::Syntax { position: start, message: format!("expected a label, found {found}") });
        }
        Ok(SignedLabel::new(Label::new(&name)?, negative))
    }
}

/// Parse a comma separated list of parenthesised signed triples.
pub fn parse_triples(text: &str) -> Result<Vec<Triangle>, ComplexError> {
    let mut sc = Scanner::new(text);
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(ComplexError::EmptyInput);
    }
    let mut out = Vec::new();
    loop {
        sc.expect('(')?;
        sc.skip_ws();
        if sc.peek() == Some(')') {
            return Err(ComplexError::EmptyTriple { position: sc.pos() });
        }
        let a = sc.side()?;
        sc.expect(',')?;
        let b = sc.side()?;
        sc.expect(',')?;
        let c = sc.side()?;
        sc.expect(')')?;
        out.push(Triangle::new(a, b, c));
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(',') => sc.at += 1,
            Some(c) => {
                return Err(ComplexError::Syntax { position: sc.pos(), message: format!("expected ',' between triples, found '{c}'") })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::lbl;

    const COLLAR: &str = "(x,a,d),(y,c,d),(z,c,b),(x',d,a),(y',b,a),(z',b,c)";

    #[test]
    fn parses_the_collar() {
        let c = TrianglePresentation::parse(COLLAR).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.labels().len(), 10);
        assert_eq!(c.arity(&lbl("a")), 3);
        assert_eq!(c.arity(&lbl("x'")), 1);
        assert_eq!(c.to_text(), COLLAR);
    }

    #[test]
    fn whitespace_and_primes_normalize() {
        let c = TrianglePresentation::parse(" ( x , a, d ) ,\n(x\u{2032}, -d,a)").unwrap();
        assert_eq!(c.to_text(), "(x,a,d),(x',-d,a)");
    }

    #[test]
    fn reports_errors_with_positions() {
        assert_eq!(TrianglePresentation::parse(""), Err(ComplexError::EmptyInput));
        assert_eq!(TrianglePresentation::parse("   "), Err(ComplexError::EmptyInput));
        assert_eq!(TrianglePresentation::parse("(x,a,d),()"), Err(ComplexError::EmptyTriple { position: 9 }));
        assert!(matches!(TrianglePresentation::parse("(x,--a,d)"), Err(ComplexError::MalformedSign { position: 3, .. })));
        assert!(matches!(TrianglePresentation::parse("(x,-,d)"), Err(ComplexError::MalformedSign { .. })));
        assert!(matches!(TrianglePresentation::parse("(x,a)"), Err(ComplexError::Syntax { position: 4, .. })));
        assert!(matches!(TrianglePresentation::parse("(x,a,d)(y,c,d)"), Err(ComplexError::Syntax { position: 7, .. })));
    }

    #[test]
    fn occurrence_index_matches_triangles() {
        let c = TrianglePresentation::parse(COLLAR).unwrap();
        let total: usize = (0..c.labels().len()).map(|i| c.occurrences(i).len()).sum();
        assert_eq!(total, 18);
        for id in 0..c.labels().len() {
            for &occ in c.occurrences(id) {
                assert_eq!(c.triangles()[occ.triangle].sides[occ.position].label, *c.label(id));
            }
        }
    }

    #[test]
    fn json_schema_round_trip() {
        let c = TrianglePresentation::parse("(x,a,d),(-z,b,c)").unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(text, r#"{"triangles":[["x","a","d"],["-z","b","c"]]}"#);
        assert_eq!(TrianglePresentation::from_json_str(&text).unwrap(), c);
    }

    #[test]
    fn collar_is_not_closed() {
        let c = TrianglePresentation::parse(COLLAR).unwrap();
        let report = c.validate(ValidationMode::Closed);
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.label == lbl("x") && v.count == 1));
        assert!(c.validate(ValidationMode::Cobordism).is_valid());
    }
}

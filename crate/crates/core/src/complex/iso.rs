//! Exhaustive search for sign-respecting label bijections between
//! presentations.

use std::collections::BTreeMap;

use super::presentation::{Side, TrianglePresentation};
use super::triangle::Reading;
use crate::error::ComplexError;
use crate::label::{Label, SignedLabel};

/// A label map `ℓ ↦ ±ℓ'` carrying the triangles of `p1` onto those of `p2`
/// (as multisets, up to triangle equality) and extending `constraints`.
///
/// `Ok(None)` is a proof that no such map exists.
pub fn complex_isomorphic(
    p1: &TrianglePresentation,
    p2: &TrianglePresentation,
    constraints: &BTreeMap<Label, SignedLabel>,
) -> Result<Option<BTreeMap<Label, SignedLabel>>, ComplexError> {
    let n = p1.labels().len();
    let mut map: Vec<Option<Side>> = vec![None; n];
    let mut inverse: Vec<Option<usize>> = vec![None; p2.labels().len()];
    for (from, to) in constraints {
        let a = p1.label_id(from).ok_or_else(|| ComplexError::InconsistentConstraints(format!("{from} is not a label of the source")))?;
        let b = p2.side_id(to).ok_or_else(|| ComplexError::InconsistentConstraints(format!("{} is not a label of the target", to.label)))?;
        if inverse[b.label].is_some_and(|x| x != a) {
            return Err(ComplexError::InconsistentConstraints(format!("two labels map to {}", to.label)));
        }
        map[a] = Some(b);
        inverse[b.label] = Some(a);
    }
    if p1.len() != p2.len() || n != p2.labels().len() {
        return Ok(None);
    }
    let mut ar1: Vec<usize> = (0..n).map(|l| p1.occurrences(l).len()).collect();
    let mut ar2: Vec<usize> = (0..n).map(|l| p2.occurrences(l).len()).collect();
    for l in 0..n {
        if let Some(s) = map[l] {
            if ar1[l] != ar2[s.label] {
                return Ok(None);
            }
        }
    }
    let mut s = Search { p1, p2, map, inverse, used: vec![false; p2.len()], done: vec![false; p1.len()] };
    ar1.sort_unstable();
    ar2.sort_unstable();
    if ar1 != ar2 || !s.solve(p1.len()) {
        return Ok(None);
    }
    Ok(Some(
        (0..n)
            .map(|l| {
                let side = s.map[l].expect("all labels occur in some triangle");
                (p1.label(l).clone(), p2.signed(side))
            })
            .collect(),
    ))
}

struct Search<'a> {
    p1: &'a TrianglePresentation,
    p2: &'a TrianglePresentation,
    map: Vec<Option<Side>>,
    inverse: Vec<Option<usize>>,
    used: Vec<bool>,
    done: Vec<bool>,
}

impl Search<'_> {
    fn solve(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        // Most-constrained source triangle first.
        let t = (0..self.p1.len())
            .filter(|&t| !self.done[t])
            .max_by_key(|&t| (self.p1.sides(t).iter().filter(|s| self.map[s.label].is_some()).count(), std::cmp::Reverse(t)))
            .expect("remaining > 0");
        let src = *self.p1.sides(t);
        self.done[t] = true;
        let mut tried: Vec<[Side; 3]> = Vec::new();
        for u in 0..self.p2.len() {
            if self.used[u] {
                continue;
            }
            let dst = *self.p2.sides(u);
            for r in Reading::ALL {
                let read = [0, 1, 2].map(|k| {
                    let s = dst[r.position(k)];
                    Side { label: s.label, negative: s.negative ^ r.reflected }
                });
                // Identical target triangles give identical subtrees.
                if tried.contains(&read) {
                    continue;
                }
                let mut assigned = Vec::new();
                if self.assign(&src, &read, &mut assigned) {
                    tried.push(read);
                    self.used[u] = true;
                    if self.solve(remaining - 1) {
                        return true;
                    }
                    self.used[u] = false;
                }
                for l in assigned {
                    let b = self.map[l].take().unwrap();
                    self.inverse[b.label] = None;
                }
            }
        }
        self.done[t] = false;
        false
    }

    fn assign(&mut self, src: &[Side; 3], dst: &[Side; 3], assigned: &mut Vec<usize>) -> bool {
        for k in 0..3 {
            let (a, b) = (src[k], dst[k]);
            let want = Side { label: b.label, negative: a.negative ^ b.negative };
            match self.map[a.label] {
                Some(have) if have != want => return false,
                Some(_) => {}
                None => {
                    if self.inverse[b.label].is_some()
                        || self.p1.occurrences(a.label).len() != self.p2.occurrences(b.label).len()
                    {
                        return false;
                    }
                    self.map[a.label] = Some(want);
                    self.inverse[b.label] = Some(a.label);
                    assigned.push(a.label);
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COLLAR: &str = "(x,a,d),(y,c,d),(z,c,b),(x',d,a),(y',b,a),(z',b,c)";

    #[test]
    fn identity_on_the_collar() {
        let c = TrianglePresentation::parse(COLLAR).unwrap();
        let f = complex_isomorphic(&c, &c, &BTreeMap::new()).unwrap().unwrap();
        assert_eq!(f.len(), 10);
    }

    #[test]
    fn detects_non_isomorphic_pairs() {
        let a = TrianglePresentation::parse("(e,e,f)").unwrap();
        let b = TrianglePresentation::parse("(e,f,g)").unwrap();
        assert_eq!(complex_isomorphic(&a, &b, &BTreeMap::new()), Ok(None));
    }

    #[test]
    fn constraints_are_honored() {
        let c = TrianglePresentation::parse(COLLAR).unwrap();
        let mut k = BTreeMap::new();
        k.insert("x".parse().unwrap(), "-z".parse().unwrap());
        let f = complex_isomorphic(&c, &c, &k).unwrap().unwrap();
        assert_eq!(f[&"a".parse::<Label>().unwrap()].to_string(), "-b");
        k.insert("q".parse().unwrap(), "x".parse().unwrap());
        assert!(matches!(complex_isomorphic(&c, &c, &k), Err(ComplexError::InconsistentConstraints(_))));
    }
}

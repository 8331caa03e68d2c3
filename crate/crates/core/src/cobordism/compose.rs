//! Gluing cobordisms along collars, and closing words up into complexes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{
    apply, collar, core_body, core_maps, map_triangle, sigma_pow, Cobordism, Generator, Word,
    COLLAR_LABELS, LEFT_STRANDS, RIGHT_STRANDS,
};
use crate::complex::{Triangle, TrianglePresentation, ValidationMode};
use crate::error::CobordismError;
use crate::label::{lbl, Label, SignedLabel};

/// Provenance of a body triangle: `letter` (0-based) and its index in that
/// letter's generator body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Origin {
    pub letter: usize,
    pub triangle: usize,
}

/// Union-find over label ids where each element carries its orientation
/// relative to the root.
struct SignedDsu {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl SignedDsu {
    fn new(n: usize) -> Self {
        SignedDsu { parent: (0..n).collect(), flip: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (r, f) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.flip[x] ^= f;
        (r, self.flip[x])
    }

    /// Record `a = b` if `flip` is false, `a = -b` otherwise. Returns false
    /// on a contradiction.
    fn union(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return fa ^ fb == flip;
        }
        self.parent[rb] = ra;
        self.flip[rb] = fa ^ fb ^ flip;
        true
    }
}

/// Identify labels in `pairs` (`(u, v)` meaning `u = v` as signed labels)
/// and pick one representative per class, the first maximal element under
/// `rank`. Returns the relabeling of every label of `labels`.
fn merge_labels(
    labels: &[Label],
    pairs: &[(SignedLabel, SignedLabel)],
    rank: impl Fn(&Label) -> (usize, usize),
) -> Result<HashMap<Label, SignedLabel>, CobordismError> {
    let index: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut dsu = SignedDsu::new(labels.len());
    for (u, v) in pairs {
        let (Some(&a), Some(&b)) = (index.get(&u.label), index.get(&v.label)) else {
            return Err(CobordismError::MergeConflict(format!("{u} or {v} is not a body label")));
        };
        if !dsu.union(a, b, u.negative ^ v.negative) {
            return Err(CobordismError::MergeConflict(format!("gluing {u} to {v} identifies an edge with its inverse")));
        }
    }
    let mut best: HashMap<usize, usize> = HashMap::new();
    for i in 0..labels.len() {
        let (r, _) = dsu.find(i);
        let e = best.entry(r).or_insert(i);
        let (cur, new) = (rank(&labels[*e]), rank(&labels[i]));
        if new > cur {
            *e = i;
        }
    }
    let mut out = HashMap::new();
    for i in 0..labels.len() {
        let (r, fi) = dsu.find(i);
        let rep = best[&r];
        let (_, fr) = dsu.find(rep);
        out.insert(labels[i].clone(), SignedLabel::new(labels[rep].clone(), fi ^ fr));
    }
    Ok(out)
}

fn relabel_map(map: &BTreeMap<Label, SignedLabel>, f: &HashMap<Label, SignedLabel>) -> BTreeMap<Label, SignedLabel> {
    map.iter().map(|(k, v)| (k.clone(), f[&v.label].clone().signed(v.negative))).collect()
}

fn relabel_triangle(t: &Triangle, f: &HashMap<Label, SignedLabel>) -> Triangle {
    t.map(|s| f[&s.label].clone().signed(s.negative))
}

/// Indices of the body triangles that are images of the six collar
/// triangles under `map`, in collar order.
fn collar_copy(body: &[Triangle], map: &BTreeMap<Label, SignedLabel>) -> Result<Vec<usize>, CobordismError> {
    let mut taken = vec![false; body.len()];
    let mut out = Vec::with_capacity(6);
    for t in collar().triangles() {
        let image = map_triangle(map, t);
        let i = (0..body.len())
            .find(|&i| !taken[i] && body[i] == image)
            .ok_or_else(|| CobordismError::MergeConflict(format!("collar image {image} missing from body")))?;
        taken[i] = true;
        out.push(i);
    }
    Ok(out)
}

/// Glue the right collar of `a` to the left collar of `b` along `σ^twist`.
/// The six collar triangles of `b` are dropped, so the result has
/// `|a| + |b| - 6` triangles.
pub fn compose(a: &Cobordism, b: &Cobordism, twist: bool) -> Result<Cobordism, CobordismError> {
    let a_labels: BTreeSet<&Label> = a.body.labels().iter().collect();
    if let Some(shared) = b.body.labels().iter().find(|l| a_labels.contains(l)) {
        return Err(CobordismError::SharedLabel(shared.clone()));
    }
    let mut labels: Vec<Label> = a.body.labels().to_vec();
    labels.extend(b.body.labels().iter().cloned());
    let pairs: Vec<(SignedLabel, SignedLabel)> = COLLAR_LABELS
        .iter()
        .map(|&n| {
            let c = lbl(n).positive();
            let u = apply(&a.right, &c).expect("collar label");
            let v = apply(&b.left, &sigma_pow(&c, twist)).expect("collar label");
            (u, v)
        })
        .collect();
    // Prefer labels of higher arity in their own body, then labels of `a`.
    let rank = |l: &Label| match a.body.label_id(l) {
        Some(id) => (a.body.occurrences(id).len(), 1),
        None => (b.body.arity(l), 0),
    };
    let f = merge_labels(&labels, &pairs, rank)?;

    let a_tris: Vec<Triangle> = a.body.triangles().iter().map(|t| relabel_triangle(t, &f)).collect();
    let b_tris: Vec<Triangle> = b.body.triangles().iter().map(|t| relabel_triangle(t, &f)).collect();
    let a_right = relabel_map(&a.right, &f);
    let b_left = relabel_map(&b.left, &f);
    let a_copy = collar_copy(&a_tris, &a_right)?;
    let b_twisted: BTreeMap<Label, SignedLabel> = COLLAR_LABELS
        .iter()
        .map(|&n| (lbl(n), apply(&b_left, &sigma_pow(&lbl(n).positive(), twist)).expect("collar label")))
        .collect();
    let b_copy = collar_copy(&b_tris, &b_twisted)?;
    for (&i, &j) in a_copy.iter().zip(&b_copy) {
        if a_tris[i] != b_tris[j] {
            return Err(CobordismError::MergeConflict(format!("collar triangles {} and {} disagree", a_tris[i], b_tris[j])));
        }
    }
    let drop: BTreeSet<usize> = b_copy.into_iter().collect();
    let mut triangles = a_tris;
    let mut origins = a.origins.clone();
    let shift = a.letter_maps.len();
    for (j, t) in b_tris.into_iter().enumerate() {
        if !drop.contains(&j) {
            triangles.push(t);
            let o = b.origins[j];
            origins.push(Origin { letter: o.letter + shift, triangle: o.triangle });
        }
    }
    let letter_maps = a.letter_maps.iter().chain(&b.letter_maps).map(|m| relabel_map(m, &f)).collect();
    Ok(Cobordism {
        body: TrianglePresentation::new(triangles),
        left: relabel_map(&a.left, &f),
        right: relabel_map(&b.right, &f),
        origins,
        letter_maps,
    })
}

/// Rename every label of `b` that also occurs in `avoid` to a fresh one.
pub fn fresh_relabel(b: &Cobordism, avoid: &BTreeSet<Label>) -> Cobordism {
    let mut taken: BTreeSet<Label> = avoid.iter().chain(b.body.labels()).cloned().collect();
    let mut f: HashMap<Label, SignedLabel> = HashMap::new();
    for l in b.body.labels() {
        if !avoid.contains(l) {
            f.insert(l.clone(), l.positive());
            continue;
        }
        let mut k = 1;
        let fresh = loop {
            let candidate = lbl(&format!("{l}#{k}"));
            if !taken.contains(&candidate) {
                break candidate;
            }
            k += 1;
        };
        taken.insert(fresh.clone());
        f.insert(l.clone(), fresh.positive());
    }
    Cobordism {
        body: TrianglePresentation::new(b.body.triangles().iter().map(|t| relabel_triangle(t, &f)).collect()),
        left: relabel_map(&b.left, &f),
        right: relabel_map(&b.right, &f),
        origins: b.origins.clone(),
        letter_maps: b.letter_maps.iter().map(|m| relabel_map(m, &f)).collect(),
    }
}

/// [`compose`] after renaming clashing labels of `b`.
pub fn compose_fresh(a: &Cobordism, b: &Cobordism, twist: bool) -> Result<Cobordism, CobordismError> {
    let avoid: BTreeSet<Label> = a.body.labels().iter().cloned().collect();
    compose(a, &fresh_relabel(b, &avoid), twist)
}

/// Label of letter `k` (1-based) of an `n`-letter word in the composed body:
/// interior `i` becomes `10(k-1)+i`, left horizontals `a,d,c,b` become
/// `10(k-1)+5..8`, right horizontals `10k+5..8`. Labels that disappear in
/// the gluing get temporary `#` names.
fn letter_label(l: &Label, k: usize, n: usize) -> Label {
    let s = l.as_str();
    let base = 10 * (k - 1);
    let horizontal = |h: &str| ["a", "d", "c", "b"].iter().position(|&x| x == h).map(|i| i + 5);
    if let Ok(i) = s.parse::<usize>() {
        return lbl(&(base + i).to_string());
    }
    if let Some(h) = s.strip_suffix('\'').and_then(horizontal) {
        return lbl(&(base + 10 + h).to_string());
    }
    if let Some(h) = horizontal(s) {
        return if k == 1 { lbl(&(base + h).to_string()) } else { lbl(&format!("#{k}{s}")) };
    }
    if LEFT_STRANDS.contains(&s) {
        return if k == 1 { l.clone() } else { lbl(&format!("#{k}{s}")) };
    }
    if RIGHT_STRANDS.contains(&s) {
        return if k == n { l.clone() } else { lbl(&format!("#{k}{s}")) };
    }
    unreachable!("generator bodies only use digits, strands and horizontals")
}

fn letter_cobordism(g: Generator, k: usize, n: usize) -> Cobordism {
    let body = core_body(g.letter);
    let name: HashMap<Label, SignedLabel> =
        body.labels().iter().map(|l| (l.clone(), letter_label(l, k, n).positive())).collect();
    let (left, right) = core_maps(g.letter);
    let twisted = |m: &BTreeMap<Label, SignedLabel>, t: bool| -> BTreeMap<Label, SignedLabel> {
        COLLAR_LABELS
            .iter()
            .map(|&c| {
                let image = apply(m, &sigma_pow(&lbl(c).positive(), t)).expect("collar label");
                (lbl(c), name[&image.label].clone().signed(image.negative))
            })
            .collect()
    };
    Cobordism {
        body: TrianglePresentation::new(body.triangles().iter().map(|t| relabel_triangle(t, &name)).collect()),
        left: twisted(&left, g.left),
        right: twisted(&right, g.right),
        origins: (0..body.len()).map(|t| Origin { letter: 0, triangle: t }).collect(),
        letter_maps: vec![body.labels().iter().map(|l| (l.clone(), name[l].clone())).collect()],
    }
}

/// The body `X_ω` of a word: its letters glued in order.
pub fn word_cobordism(w: &Word) -> Result<Cobordism, CobordismError> {
    let n = w.len();
    let mut acc = letter_cobordism(w.letters()[0], 1, n);
    for (i, &g) in w.letters().iter().enumerate().skip(1) {
        acc = compose(&acc, &letter_cobordism(g, i + 1, n), false)?;
    }
    Ok(acc)
}

/// A closed complex together with the provenance of its triangles.
#[derive(Clone, Debug)]
pub struct ClosedComplex {
    pub word: Word,
    pub presentation: TrianglePresentation,
    pub origins: Vec<Origin>,
    pub letter_maps: Vec<BTreeMap<Label, SignedLabel>>,
    /// Relabeling from the open body to the closed complex.
    pub closure_map: BTreeMap<Label, SignedLabel>,
}

/// Identify the right collar with the left collar. The boundary maps
/// already carry the twists `t0` and `tn`.
pub fn close_up_tracked(w: &Word) -> Result<ClosedComplex, CobordismError> {
    let open = word_cobordism(w)?;
    let labels = open.body.labels().to_vec();
    let pairs: Vec<(SignedLabel, SignedLabel)> = COLLAR_LABELS
        .iter()
        .map(|&n| {
            let c = lbl(n).positive();
            (apply(&open.right, &c).expect("collar label"), apply(&open.left, &c).expect("collar label"))
        })
        .collect();
    let left_images: BTreeSet<Label> = open.left.values().map(|s| s.label.clone()).collect();
    let rank = |l: &Label| (open.body.arity(l), left_images.contains(l) as usize);
    let f = merge_labels(&labels, &pairs, rank)?;
    let tris: Vec<Triangle> = open.body.triangles().iter().map(|t| relabel_triangle(t, &f)).collect();
    let left_copy = collar_copy(&tris, &relabel_map(&open.left, &f))?;
    let right_copy = collar_copy(&tris, &relabel_map(&open.right, &f))?;
    for (&i, &j) in left_copy.iter().zip(&right_copy) {
        if tris[i] != tris[j] {
            return Err(CobordismError::MergeConflict(format!("closing identifies {} with {}", tris[i], tris[j])));
        }
    }
    let drop: BTreeSet<usize> = right_copy.into_iter().collect();
    let mut triangles = Vec::new();
    let mut origins = Vec::new();
    for (i, t) in tris.into_iter().enumerate() {
        if !drop.contains(&i) {
            triangles.push(t);
            origins.push(open.origins[i]);
        }
    }
    let presentation = TrianglePresentation::new(triangles);
    presentation.validate(ValidationMode::Closed).check()?;
    let closure_map = labels.iter().map(|l| (l.clone(), f[l].clone())).collect();
    Ok(ClosedComplex {
        word: w.clone(),
        presentation,
        origins,
        letter_maps: open.letter_maps.iter().map(|m| relabel_map(m, &f)).collect(),
        closure_map,
    })
}

pub fn close_up(w: &Word) -> Result<TrianglePresentation, CobordismError> {
    Ok(close_up_tracked(w)?.presentation)
}

/// Semantic equivalence: an isomorphism of bodies that commutes with both
/// boundary maps.
pub fn equivalent_bodies(a: &Cobordism, b: &Cobordism) -> Result<bool, CobordismError> {
    let mut constraints: BTreeMap<Label, SignedLabel> = BTreeMap::new();
    for (ma, mb) in [(&a.left, &b.left), (&a.right, &b.right)] {
        for n in COLLAR_LABELS {
            let (u, v) = (&ma[&lbl(n)], &mb[&lbl(n)]);
            let target = v.clone().signed(u.negative);
            match constraints.get(&u.label) {
                Some(t) if *t != target => return Ok(false),
                _ => {
                    constraints.insert(u.label.clone(), target);
                }
            }
        }
    }
    let targets: BTreeSet<&Label> = constraints.values().map(|s| &s.label).collect();
    if targets.len() != constraints.len() {
        return Ok(false);
    }
    Ok(crate::complex::complex_isomorphic(&a.body, &b.body, &constraints)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::super::generator_cobordism;
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn composition_drops_six_triangles() {
        let x = generator_cobordism(Generator::X00);
        let xx = compose_fresh(&x, &x, false).unwrap();
        assert_eq!(xx.body().len(), 22);
        xx.check().unwrap();
        assert!(matches!(compose(&x, &x, false), Err(CobordismError::SharedLabel(_))));
    }

    #[test]
    fn closed_x00() {
        let c = close_up_tracked(&w("X00")).unwrap();
        assert_eq!(c.presentation.len(), 8);
        assert!(c.presentation.validate(ValidationMode::Closed).is_valid());
        let names: Vec<&str> = c.presentation.labels().iter().map(|l| l.as_str()).collect();
        assert_eq!(names, ["1", "2", "3", "4", "5", "6", "7", "8"]);
    }

    #[test]
    fn word_bodies_keep_boundary_strands() {
        for s in ["Y00.Y00.Y00", "X01.X10.Y01", "X11"] {
            let c = word_cobordism(&w(s)).unwrap();
            c.check().unwrap();
            assert!(c.body().validate(ValidationMode::Cobordism).is_valid());
            assert_eq!(c.body().len(), 14 + 8 * (w(s).len() - 1));
        }
    }

    #[test]
    fn closing_omega0_gives_24_triangles() {
        assert_eq!(close_up(&w("Y00.Y00.Y00")).unwrap().len(), 24);
    }

    #[test]
    fn letter_labels() {
        assert_eq!(letter_label(&lbl("3"), 2, 3), lbl("13"));
        assert_eq!(letter_label(&lbl("b'"), 2, 3), lbl("28"));
        assert_eq!(letter_label(&lbl("a"), 1, 3), lbl("5"));
        assert_eq!(letter_label(&lbl("a"), 2, 3), lbl("#2a"));
        assert_eq!(letter_label(&lbl("x'"), 3, 3), lbl("x'"));
        assert_eq!(letter_label(&lbl("x'"), 2, 3), lbl("#2x'"));
    }

    #[test]
    fn fresh_labels_avoid_collisions() {
        let x = generator_cobordism(Generator::X00);
        let avoid: BTreeSet<Label> = x.body().labels().iter().cloned().collect();
        let y = fresh_relabel(&x, &avoid);
        assert!(y.body().labels().iter().all(|l| !avoid.contains(l)));
        y.check().unwrap();
    }

    #[test]
    fn is_collar_helper() {
        assert!(COLLAR_LABELS.contains(&"x'"));
        assert!(!COLLAR_LABELS.contains(&"1"));
        assert_eq!(super::super::HORIZONTALS.len(), 4);
    }
}

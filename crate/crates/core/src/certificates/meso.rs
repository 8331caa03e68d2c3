//! Words containing `ω₀ = Y00·Y00·Y00`: the flat plane spanned by the outer
//! cycle of `R(ω₀)` and the strip that leaves it along `A`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cobordism::{canonicalize, close_up_tracked, word_cobordism, Generator, Letter, Word};
use crate::complex::{orient_geodesic, vertex_partition, TrianglePresentation};
use crate::label::{Label, SignedLabel};
use crate::rgraph::strip::rotated;
use crate::rgraph::{annulus_graph, subword_embedding, CycleWitness, RGraph, Strip};

/// Labels of `X_{ω₀}` used by the replay.
pub const OUTER_CYCLE: [&str; 6] = ["1", "14", "21", "24", "11", "4"];
pub const GEODESIC_A: [&str; 6] = ["18", "26", "23", "27", "15", "2"];
pub const LOOP_B: &str = "14";
pub const PARALLEL_A1: [&str; 2] = ["14", "11"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesoChecks {
    pub outer_cycle: bool,
    pub a_geodesic: bool,
    pub b_loop: bool,
    pub a1_strip: bool,
}

impl MesoChecks {
    pub fn all(&self) -> bool {
        self.outer_cycle && self.a_geodesic && self.b_loop && self.a1_strip
    }
}

/// The replay on `rewritten`, an equivalent rotation of `word` whose first
/// three letters carry the copy of `ω₀`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesoWitness {
    pub word: Word,
    pub rotation: usize,
    pub rewritten: Word,
    /// The first three letters of `rewritten`; `Y00·Y00·Y00` unless the
    /// word has length three and an odd closing twist, in which case it is
    /// `Y00·Y00·Y01`, whose body is the body of `ω₀`.
    pub subword: Word,
    /// Outer cycle in `R` of the body of `rewritten`.
    pub outer_cycle: Option<CycleWitness>,
    /// `A`, `B` and `A₁` in the closed complex of `rewritten`.
    pub a: Option<Vec<SignedLabel>>,
    pub b: SignedLabel,
    pub a1: Vec<Label>,
    /// A strip with bottom `a` and top a cube of a rotation of `A₁`.
    pub strip: Option<Strip>,
    /// Distinct circles reached from `A` in one step of the annulus graph.
    pub branching: usize,
    pub checks: MesoChecks,
}

/// Position (0-based) of three cyclically consecutive `Y` letters.
pub fn yyy_position(w: &Word) -> Option<usize> {
    let c = canonicalize(w);
    let n = c.len();
    (n >= 3).then_some(())?;
    (0..n).find(|&k| (0..3).all(|i| c.letters[(k + i) % n] == Letter::Y))
}

/// An equivalent word starting with the copy of `ω₀`; see
/// [`MesoWitness::subword`].
pub fn rewrite_with_omega0(w: &Word, k: usize) -> Word {
    let c = canonicalize(&w.rotate(k));
    let mut letters = c.representative().letters().to_vec();
    debug_assert!(letters[..3].iter().all(|g| g.letter == Letter::Y && !g.left));
    if letters[2].right && letters.len() > 3 {
        letters[2].right = false;
        letters[3].left ^= true;
    }
    Word::new(letters).expect("nonempty")
}

fn lbl(s: &str) -> Label {
    Label::new(s).expect("valid label")
}

fn cycle_in(g: &RGraph, labels: &[Label]) -> Option<CycleWitness> {
    let k = labels.len();
    let idx: Vec<usize> = labels.iter().map(|l| g.vertex_index(l)).collect::<Option<_>>()?;
    let edges: Vec<usize> = (0..k)
        .map(|i| {
            let (a, b) = (idx[i], idx[(i + 1) % k]);
            (0..g.edges.len()).find(|&e| {
                let (x, y) = g.endpoints(e);
                (x, y) == (a, b) || (x, y) == (b, a)
            })
        })
        .collect::<Option<_>>()?;
    CycleWitness::from_edges(g, idx[0], edges)
}

/// Is `c` a cube of a two-edge circle on the labels of `pair`?
fn is_cube_of(c: &[SignedLabel], pair: &[Label; 2]) -> bool {
    c.len() == 6
        && (0..6).all(|i| c[i] == c[(i + 2) % 6])
        && ((c[0].label == pair[0] && c[1].label == pair[1]) || (c[0].label == pair[1] && c[1].label == pair[0]))
}

/// Search limits for the strip onto `A₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesoBounds {
    /// Longest boundary circle admitted in the annulus graph.
    pub annulus_len: usize,
    pub node_budget: usize,
}

impl Default for MesoBounds {
    fn default() -> Self {
        MesoBounds { annulus_len: 6, node_budget: 10_000 }
    }
}

pub fn mesoscopic_certificate(w: &Word) -> Option<MesoWitness> {
    mesoscopic_certificate_with(w, &MesoBounds::default())
}

pub fn mesoscopic_certificate_with(w: &Word, bounds: &MesoBounds) -> Option<MesoWitness> {
    mesoscopic_replay(w, bounds).filter(|m| m.checks.all())
}

/// The replay with every check recorded, whether or not it passes; `None`
/// only when the word has no three consecutive `Y`.
pub fn mesoscopic_replay(w: &Word, bounds: &MesoBounds) -> Option<MesoWitness> {
    let k = yyy_position(w)?;
    let rewritten = rewrite_with_omega0(w, k);
    let subword = rewritten.subword(1, 3)?;
    let omega0: Word = "Y00.Y00.Y00".parse().expect("valid word");
    if !word_cobordism(&subword).ok()?.body().same_triangles(word_cobordism(&omega0).ok()?.body()) {
        return None;
    }
    let emb = subword_embedding(&rewritten, 1, 3).ok()?;
    let closed = close_up_tracked(&rewritten).ok()?;
    let p = &closed.presentation;
    // Body of ω₀ -> body of the rewritten word -> its closed complex.
    let to_closed: BTreeMap<Label, SignedLabel> = emb
        .label_map
        .iter()
        .map(|(l, s)| (l.clone(), closed.closure_map[&s.label].clone().signed(s.negative)))
        .collect();
    let body_label = |s: &str| emb.label_map.get(&lbl(s)).map(|x| x.label.clone());
    let closed_label = |s: &str| to_closed.get(&lbl(s)).map(|x| x.label.clone());

    let outer: Option<Vec<Label>> = OUTER_CYCLE.iter().map(|s| body_label(s)).collect();
    let outer_cycle = outer.and_then(|ls| cycle_in(&emb.host, &ls)).filter(|c| !c.loop_supported && c.consecutive_distinct);

    let a_labels: Option<Vec<Label>> = GEODESIC_A.iter().map(|s| closed_label(s)).collect();
    let a = a_labels.and_then(|ls| orient_geodesic(p, &ls).ok().flatten());

    let b_label = closed_label(LOOP_B)?;
    let b_loop = is_loop_geodesic(p, &b_label);

    let a1 = [closed_label(PARALLEL_A1[0])?, closed_label(PARALLEL_A1[1])?];
    let mut strip = None;
    let mut branching = 0;
    if let Some(a) = a.as_ref().filter(|a| a.len() <= bounds.annulus_len) {
        let reversed: Vec<SignedLabel> = a.iter().rev().map(|s| -s).collect();
        let g = annulus_graph(p, &[a.clone(), reversed], bounds.node_budget);
        for v in 0..g.nodes.len().min(2) {
            let arc = g.arcs.iter().find(|arc| arc.from == v && is_cube_of(&g.nodes[arc.to].circle, &a1));
            if let (None, Some(arc)) = (&strip, arc) {
                strip = Some(arc.strip.clone());
            }
            branching = branching.max(g.branching(v));
        }
    }
    let checks = MesoChecks {
        outer_cycle: outer_cycle.is_some(),
        a_geodesic: a.is_some(),
        b_loop,
        a1_strip: strip.is_some(),
    };
    Some(MesoWitness {
        word: w.clone(),
        rotation: k,
        rewritten,
        subword,
        outer_cycle,
        a,
        b: b_label.positive(),
        a1: a1.to_vec(),
        strip,
        branching,
        checks,
    })
}

/// A single edge that starts and ends at the same vertex and is a closed
/// local geodesic.
fn is_loop_geodesic(p: &TrianglePresentation, l: &Label) -> bool {
    let Some(id) = p.label_id(l) else { return false };
    vertex_partition(p).is_loop(id) && orient_geodesic(p, std::slice::from_ref(l)).ok().flatten().is_some()
}

/// Independent re-check of the strip and the geodesics in the closed
/// complex of `m.rewritten`.
pub fn verify_meso(m: &MesoWitness) -> bool {
    let Ok(closed) = close_up_tracked(&m.rewritten) else { return false };
    let p = &closed.presentation;
    let (Some(a), Some(strip)) = (&m.a, &m.strip) else { return false };
    let geodesic = crate::complex::local_geodesic_check(p, a).unwrap_or(false);
    let top = strip.top(p);
    let bottom = strip.bottom(p);
    let bottom_is_a = (0..a.len()).any(|i| rotated(&bottom, i) == *a)
        || (0..a.len()).any(|i| rotated(&bottom, i) == a.iter().rev().map(|s| -s).collect::<Vec<_>>());
    let a1 = [m.a1[0].clone(), m.a1[1].clone()];
    geodesic
        && strip.is_valid(p)
        && bottom_is_a
        && is_cube_of(&top, &a1)
        && crate::complex::local_geodesic_check(p, &top).unwrap_or(false)
        && is_loop_geodesic(p, &m.b.label)
        && m.rewritten.letters()[..3].iter().all(|g| g.letter == Letter::Y)
        && m.subword.letters()[..2] == [Generator::Y00, Generator::Y00]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega0_replay() {
        let w: Word = "Y00.Y00.Y00".parse().unwrap();
        let m = mesoscopic_certificate(&w).expect("witness");
        assert!(m.checks.all());
        assert!(m.branching >= 2);
        assert!(verify_meso(&m));
    }

    #[test]
    fn no_three_consecutive_y() {
        assert!(mesoscopic_certificate(&"Y00.X00.Y00.X00.Y00".parse().unwrap()).is_none());
    }

    #[test]
    fn flips_normalize_subscripts() {
        let w: Word = "X00.Y00.Y01.Y00.X11".parse().unwrap();
        let m = mesoscopic_certificate(&w).expect("witness");
        assert_eq!(m.subword.to_string(), "Y00.Y00.Y00");
        assert!(crate::cobordism::equivalent_words(&m.rewritten, &w.rotate(m.rotation)));
        assert!(verify_meso(&m));
    }
}

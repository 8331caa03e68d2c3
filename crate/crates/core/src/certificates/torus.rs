//! Flat tori: stacks of strips closed up top to bottom.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::transport::{map_strip, rotation_map, triangle_map};
use crate::cobordism::{close_up_tracked, word_cobordism, Word};
use crate::complex::geodesic::GEODESIC_LINK_DISTANCE;
use crate::complex::vertex::LinkDistances;
use crate::complex::{EdgeEnd, Occurrence, TrianglePresentation};
use crate::label::{Label, SignedLabel};
use crate::rgraph::strip::{by_bottom, top_key};
use crate::rgraph::{
    cycles_up_to, cylinders, seam_key_of_unit, geodesic_circles, joint_offsets, strips_on, unit_strips, Cylinder, CycleWitness, LinkData,
    RGraph, Strip,
};

/// Where a torus came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusSource {
    /// A cycle of `R` of the open body of `w.rotate(rotation)`, traversed
    /// `laps` times.
    RCycle { rotation: usize, cycle: CycleWitness, laps: usize },
    /// A cycle of `R` of the closed complex itself.
    ClosedRCycle { cycle: CycleWitness, laps: usize },
    /// Strips of circumference `circumference` found by the annulus search.
    StripSearch { circumference: usize },
}

/// Strips `S_0 .. S_{k-1}` with `S_{i+1}` glued on top of `S_i` (cyclically)
/// so that `bottom(S_{i+1})[(j + offsets[i]) % m] = top(S_i)[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusWitness {
    pub word: Word,
    pub source: TorusSource,
    pub strips: Vec<Strip>,
    pub offsets: Vec<usize>,
    /// For circumference-one stacks, the cylinder of each strip.
    pub cylinders: Vec<Cylinder>,
    /// Every face as read, strip by strip, `U_0 D_0 U_1 ...`.
    pub faces: Vec<[SignedLabel; 3]>,
}

impl TorusWitness {
    pub fn height(&self) -> usize {
        self.strips.len()
    }

    pub fn circumference(&self) -> usize {
        self.strips.first().map_or(0, Strip::len)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn faces_of(p: &TrianglePresentation, strips: &[Strip]) -> Vec<[SignedLabel; 3]> {
    strips
        .iter()
        .flat_map(|s| s.up.iter().zip(&s.down).flat_map(|(u, d)| [*u, *d]))
        .map(|pl| [0, 1, 2].map(|k| pl.read(p, k)))
        .collect()
}

/// Outcome of [`check_torus`], one flag per condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCheck {
    pub strips_valid: bool,
    pub joints_valid: bool,
    pub faces_match: bool,
    pub cylinders_match: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    /// Every vertex has six corners forming an embedded hexagon whose
    /// opposite points are at link distance at least 3.
    pub locally_flat: bool,
}

impl TorusCheck {
    pub fn ok(&self) -> bool {
        self.strips_valid
            && self.joints_valid
            && self.faces_match
            && self.cylinders_match
            && self.euler_characteristic == 0
            && self.locally_flat
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a.max(b)] = a.min(b);
    }
}

/// Re-derive the surface from the witness alone: glue faces along seams
/// and joints, count cells, and inspect every vertex link.
pub fn check_torus(t: &TorusWitness, p: &TrianglePresentation) -> TorusCheck {
    let mut c = TorusCheck {
        strips_valid: false,
        joints_valid: false,
        faces_match: false,
        cylinders_match: false,
        vertices: 0,
        edges: 0,
        faces: 0,
        euler_characteristic: i64::MIN,
        locally_flat: false,
    };
    let k = t.strips.len();
    let m = t.circumference();
    if k == 0 || m == 0 || t.offsets.len() != k || t.strips.iter().any(|s| s.len() != m || s.down.len() != m) {
        return c;
    }
    c.strips_valid = t.strips.iter().all(|s| s.is_valid(p));
    if !c.strips_valid {
        return c;
    }
    let faces: Vec<_> = t.strips.iter().flat_map(|s| s.up.iter().zip(&s.down).flat_map(|(u, d)| [*u, *d])).collect();
    c.faces_match = t.faces.len() == faces.len() && faces.iter().zip(&t.faces).all(|(pl, f)| (0..3).all(|i| pl.read(p, i) == f[i]));
    let cs = cylinders(p);
    c.cylinders_match = if m == 1 {
        let keys: BTreeSet<_> = cs.iter().map(|c| c.key()).collect();
        t.cylinders.len() == k
            && t.strips.iter().zip(&t.cylinders).all(|(s, cyl)| {
                let key = seam_key_of_unit(s);
                key.is_some_and(|key| key == cyl.key() && keys.contains(&key))
            })
    } else {
        t.cylinders.is_empty()
    };

    // Face f, side i; faces are numbered strip by strip, U_j = 2j, D_j = 2j+1.
    let face = |s: usize, j: usize, down: bool| 2 * (s * m + j) + down as usize;
    let mut gluings: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for s in 0..k {
        for j in 0..m {
            gluings.push(((face(s, j, false), 1), (face(s, j, true), 1)));
            gluings.push(((face(s, j, true), 2), (face(s, (j + 1) % m, false), 2)));
            gluings.push(((face(s, j, true), 0), (face((s + 1) % k, (j + t.offsets[s]) % m, false), 0)));
        }
    }
    let mut used = vec![0u8; 3 * faces.len()];
    let mut ok = true;
    for &((fa, ia), (fb, ib)) in &gluings {
        used[3 * fa + ia] += 1;
        used[3 * fb + ib] += 1;
        let (a, b) = (faces[fa], faces[fb]);
        let (sa, sb) = (a.side(p, ia), b.side(p, ib));
        ok &= sa.label == sb.label && sa.negative != sb.negative && a.occurrence(ia) != b.occurrence(ib);
    }
    c.joints_valid = ok && used.iter().all(|&u| u == 1);

    // Corner i of a face is where its side i starts.
    let mut dsu = Dsu((0..3 * faces.len()).collect());
    for &((fa, ia), (fb, ib)) in &gluings {
        dsu.union(3 * fa + ia, 3 * fb + (ib + 1) % 3);
        dsu.union(3 * fa + (ia + 1) % 3, 3 * fb + ib);
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..3 * faces.len() {
        classes.entry(dsu.find(x)).or_default().push(x);
    }
    c.vertices = classes.len();
    c.edges = gluings.len();
    c.faces = faces.len();
    c.euler_characteristic = c.vertices as i64 - c.edges as i64 + c.faces as i64;

    let dist = LinkDistances::new(p);
    c.locally_flat = classes.values().all(|corners| {
        if corners.len() != 6 {
            return false;
        }
        let link_edges: Vec<(EdgeEnd, EdgeEnd)> = corners
            .iter()
            .map(|&x| {
                let (pl, i) = (faces[x / 3], x % 3);
                (EdgeEnd::into(pl.side(p, i)), EdgeEnd::out_of(pl.side(p, (i + 2) % 3)))
            })
            .collect();
        hexagon(&link_edges).is_some_and(|h| (0..3).all(|i| dist.get(h[i], h[i + 3]) >= GEODESIC_LINK_DISTANCE))
    });
    c
}

/// The six link edges as an embedded 6-cycle, listed by its vertices.
fn hexagon(edges: &[(EdgeEnd, EdgeEnd)]) -> Option<Vec<EdgeEnd>> {
    let mut adj: BTreeMap<EdgeEnd, Vec<(usize, EdgeEnd)>> = BTreeMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            return None;
        }
        adj.entry(a).or_default().push((i, b));
        adj.entry(b).or_default().push((i, a));
    }
    if adj.len() != 6 || adj.values().any(|v| v.len() != 2) {
        return None;
    }
    let start = *adj.keys().next()?;
    let mut order = vec![start];
    let (mut prev_edge, mut cur) = adj[&start][0];
    while cur != start {
        order.push(cur);
        let &(e, next) = adj[&cur].iter().find(|&&(e, _)| e != prev_edge)?;
        prev_edge = e;
        cur = next;
    }
    (order.len() == 6).then_some(order)
}

pub fn verify_torus(t: &TorusWitness, p: &TrianglePresentation) -> bool {
    check_torus(t, p).ok()
}

/// Bounds used by [`z2_certificate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2Bounds {
    /// Longest R-graph cycle tried.
    pub max_cycle: usize,
    /// R-graph cycles tried per graph.
    pub cycles_per_graph: usize,
    /// Largest strip circumference in the fallback.
    pub max_circumference: usize,
    /// Geodesic circles per circumference in the fallback.
    pub circle_budget: usize,
    /// Search steps when lifting or closing up stacks.
    pub step_budget: usize,
}

impl Default for Z2Bounds {
    fn default() -> Self {
        Z2Bounds { max_cycle: 8, cycles_per_graph: 64, max_circumference: 8, circle_budget: 20_000, step_budget: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Z2Outcome {
    Witness(Box<TorusWitness>),
    Inconclusive { bounds: Z2Bounds },
}

impl Z2Outcome {
    pub fn witness(&self) -> Option<&TorusWitness> {
        match self {
            Z2Outcome::Witness(w) => Some(w),
            Z2Outcome::Inconclusive { .. } => None,
        }
    }
}

/// Stacks of unit strips following `cycle` (traversed `laps` times) in
/// `p`, closed up with distinct sides at every joint.
struct Units {
    strips: Vec<Strip>,
    keys: Vec<[[Occurrence; 2]; 2]>,
}

impl Units {
    fn new(p: &TrianglePresentation) -> Self {
        let strips = unit_strips(p);
        let keys = strips.iter().map(|s| seam_key_of_unit(s).expect("unit strip")).collect();
        Units { strips, keys }
    }
}

fn lift_cycle(
    p: &TrianglePresentation,
    g: &RGraph,
    units: &Units,
    cycle: &CycleWitness,
    laps: usize,
    budget: &mut usize,
    mut accept: impl FnMut(Vec<Strip>) -> bool,
) -> bool {
    let (units, key_of) = (&units.strips, &units.keys);
    let k = cycle.len() * laps;
    let options: Vec<Vec<&Strip>> = (0..k)
        .map(|i| {
            let e = cycle.edges[i % cycle.len()];
            let key = g.edges[e].key();
            let bottom = &cycle.vertices[i % cycle.len()];
            units
                .iter()
                .zip(key_of)
                .filter(|(s, kk)| **kk == key && p.signed(s.bottom_sides(p)[0]).label == *bottom)
                .map(|(s, _)| s)
                .collect()
        })
        .collect();
    fn go(
        p: &TrianglePresentation,
        options: &[Vec<&Strip>],
        chosen: &mut Vec<Strip>,
        budget: &mut usize,
        accept: &mut dyn FnMut(Vec<Strip>) -> bool,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let i = chosen.len();
        if i == options.len() {
            return !joint_offsets(p, &chosen[i - 1], &chosen[0]).is_empty() && accept(chosen.clone());
        }
        for &s in &options[i] {
            if i > 0 && joint_offsets(p, &chosen[i - 1], s).is_empty() {
                continue;
            }
            chosen.push(s.clone());
            if go(p, options, chosen, budget, accept) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(p, &options, &mut Vec::new(), budget, &mut accept)
}

fn assemble(word: &Word, source: TorusSource, p: &TrianglePresentation, strips: Vec<Strip>) -> TorusWitness {
    let k = strips.len();
    let offsets = (0..k).map(|i| joint_offsets(p, &strips[i], &strips[(i + 1) % k]).first().copied().unwrap_or(0)).collect();
    let cs = cylinders(p);
    let cylinders = if strips.iter().all(|s| s.len() == 1) {
        strips
            .iter()
            .filter_map(|s| {
                let key = seam_key_of_unit(s)?;
                cs.iter().find(|c| c.key() == key).cloned()
            })
            .collect()
    } else {
        Vec::new()
    };
    let faces = faces_of(p, &strips);
    TorusWitness { word: word.clone(), source, strips, offsets, cylinders, faces }
}

/// Carry a torus of `from` into `to` along a label isomorphism, e.g. one
/// from [`rotation_map`]. The source is kept; offsets are recomputed.
pub fn transport_torus(
    t: &TorusWitness,
    from: &TrianglePresentation,
    to_word: &Word,
    to: &TrianglePresentation,
    f: &BTreeMap<Label, SignedLabel>,
) -> Option<TorusWitness> {
    let tm = triangle_map(from, to, f)?;
    let strips = t.strips.iter().map(|s| map_strip(&tm, s)).collect();
    Some(assemble(to_word, t.source.clone(), to, strips))
}

/// A flat torus in the closed complex of `w`: first from non-loop cycles of
/// `R` over all rotations, then from `R` of the closed complex, then from a
/// bounded search over stacks of strips.
pub fn z2_certificate(w: &Word, bounds: &Z2Bounds) -> Z2Outcome {
    let inconclusive = Z2Outcome::Inconclusive { bounds: *bounds };
    let Ok(base) = close_up_tracked(w) else { return inconclusive };
    let p = &base.presentation;
    let mut budget = bounds.step_budget;

    for k in 0..w.len() {
        let rw = w.rotate(k);
        let Ok(rot) = close_up_tracked(&rw) else { continue };
        let Ok(body) = word_cobordism(&rw) else { continue };
        let bp = body.body();
        let g = RGraph::of_presentation(bp);
        let Some(to_base) = rotation_map(w, k, &rot, &base) else { continue };
        // Body labels, through the closure of the rotation, into w's complex.
        let f: BTreeMap<_, _> = rot.closure_map.iter().map(|(l, s)| (l.clone(), to_base[&s.label].clone().signed(s.negative))).collect();
        let Some(tm) = triangle_map(bp, p, &f) else { continue };
        let units = Units::new(bp);
        for cycle in cycles_up_to(&g, bounds.max_cycle, bounds.cycles_per_graph) {
            for laps in [1, 2] {
                let mut found = None;
                lift_cycle(bp, &g, &units, &cycle, laps, &mut budget, |strips| {
                    let moved: Vec<Strip> = strips.iter().map(|s| map_strip(&tm, s)).collect();
                    let t = assemble(w, TorusSource::RCycle { rotation: k, cycle: cycle.clone(), laps }, p, moved);
                    let ok = verify_torus(&t, p);
                    if ok {
                        found = Some(t);
                    }
                    ok
                });
                if let Some(t) = found {
                    return Z2Outcome::Witness(Box::new(t));
                }
            }
        }
    }

    let g = RGraph::of_presentation(p);
    let units = Units::new(p);
    for cycle in cycles_up_to(&g, bounds.max_cycle, bounds.cycles_per_graph) {
        for laps in [1, 2] {
            let mut found = None;
            lift_cycle(p, &g, &units, &cycle, laps, &mut budget, |strips| {
                let t = assemble(w, TorusSource::ClosedRCycle { cycle: cycle.clone(), laps }, p, strips);
                let ok = verify_torus(&t, p);
                if ok {
                    found = Some(t);
                }
                ok
            });
            if let Some(t) = found {
                return Z2Outcome::Witness(Box::new(t));
            }
        }
    }

    let links = LinkData::new(p);
    for m in 1..=bounds.max_circumference {
        if let Some(t) = strip_search(w, p, &links, m, bounds.circle_budget, &mut budget) {
            return Z2Outcome::Witness(Box::new(t));
        }
    }
    inconclusive
}

/// Closed chains of strips of circumference `m` between geodesic circles.
fn strip_search(w: &Word, p: &TrianglePresentation, links: &LinkData, m: usize, circle_budget: usize, budget: &mut usize) -> Option<TorusWitness> {
    let circles = geodesic_circles(p, links, m, circle_budget);
    let mut strips = Vec::new();
    for c in &circles {
        for s in strips_on(p, c, usize::MAX) {
            if links.is_geodesic(&s.top_sides(p)) {
                strips.push(s);
            }
        }
    }
    let starts = by_bottom(p, &strips);
    let succ: Vec<Vec<usize>> = strips
        .iter()
        .map(|s| {
            starts
                .get(&top_key(p, s))
                .map(|v| v.iter().copied().filter(|&j| !joint_offsets(p, s, &strips[j]).is_empty()).collect())
                .unwrap_or_default()
        })
        .collect();
    // Simple cycles through each start, over strips with larger index only.
    for s0 in 0..strips.len() {
        let mut path = vec![s0];
        let mut on_path = vec![false; strips.len()];
        on_path[s0] = true;
        let mut stack = vec![0usize];
        while let Some(&i) = stack.last() {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let v = *path.last().unwrap();
            if i == succ[v].len() {
                stack.pop();
                on_path[v] = false;
                path.pop();
                if let Some(x) = stack.last_mut() {
                    *x += 1;
                }
                continue;
            }
            let u = succ[v][i];
            if u == s0 {
                let chain: Vec<Strip> = path.iter().map(|&x| strips[x].clone()).collect();
                let t = assemble(w, TorusSource::StripSearch { circumference: m }, p, chain);
                if verify_torus(&t, p) {
                    return Some(t);
                }
            } else if u > s0 && !on_path[u] {
                on_path[u] = true;
                path.push(u);
                stack.push(0);
                continue;
            }
            *stack.last_mut().unwrap() += 1;
        }
    }
    None
}

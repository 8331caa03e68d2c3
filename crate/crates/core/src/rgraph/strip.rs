//! Strips of height one between closed geodesics, and the annulus graph
//! they span. A strip of circumference `m` is a row of triangles
//! `U_0 D_0 U_1 D_1 ... U_{m-1} D_{m-1}` closed up into an annulus:
//!
//! ```text
//!   T_0 ---- T_1 ---- T_2      top, read left to right
//!   / \  D_0 / \  D_1 /
//!  / U_0 \  / U_1 \  /
//! B_0 ---- B_1 ---- B_2       bottom, read left to right
//! ```
//!
//! `U_i` is read bottom (left to right), right side (up), left side (down);
//! `D_i` is read top (right to left), left side (down), right side (up).
//! Both readings go counterclockwise, so glued sides read as inverses.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::geodesic::GEODESIC_LINK_DISTANCE;
use crate::complex::vertex::LinkDistances;
use crate::complex::{vertex_partition, EdgeEnd, Occurrence, Reading, Side, TrianglePresentation, VertexPartition};
use crate::label::SignedLabel;

/// A triangle together with the order in which its sides are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub triangle: usize,
    pub reading: Reading,
}

impl Placement {
    pub fn side(&self, p: &TrianglePresentation, k: usize) -> Side {
        let s = p.sides(self.triangle)[self.reading.position(k)];
        Side { label: s.label, negative: s.negative ^ self.reading.reflected }
    }

    pub fn read(&self, p: &TrianglePresentation, k: usize) -> SignedLabel {
        p.signed(self.side(p, k))
    }

    pub fn occurrence(&self, k: usize) -> Occurrence {
        Occurrence { triangle: self.triangle, position: self.reading.position(k) }
    }

    /// The placement of the triangle at `occ` whose side `k` reads `want`.
    pub fn with_side(p: &TrianglePresentation, occ: Occurrence, k: usize, want: Side) -> Placement {
        let stored = p.side(occ);
        let reflected = stored.negative != want.negative;
        let start = if reflected { (occ.position + k) % 3 } else { (occ.position + 3 - k % 3) % 3 };
        let pl = Placement { triangle: occ.triangle, reading: Reading { start, reflected } };
        debug_assert_eq!(pl.occurrence(k), occ);
        pl
    }
}

fn inv(s: Side) -> Side {
    Side { label: s.label, negative: !s.negative }
}

/// An annulus of height one; see the module docs for the layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Strip {
    pub up: Vec<Placement>,
    pub down: Vec<Placement>,
}

impl Strip {
    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn bottom_sides(&self, p: &TrianglePresentation) -> Vec<Side> {
        self.up.iter().map(|u| u.side(p, 0)).collect()
    }

    pub fn top_sides(&self, p: &TrianglePresentation) -> Vec<Side> {
        self.down.iter().map(|d| inv(d.side(p, 0))).collect()
    }

    pub fn bottom(&self, p: &TrianglePresentation) -> Vec<SignedLabel> {
        self.bottom_sides(p).into_iter().map(|s| p.signed(s)).collect()
    }

    pub fn top(&self, p: &TrianglePresentation) -> Vec<SignedLabel> {
        self.top_sides(p).into_iter().map(|s| p.signed(s)).collect()
    }

    pub fn bottom_occurrences(&self) -> Vec<Occurrence> {
        self.up.iter().map(|u| u.occurrence(0)).collect()
    }

    pub fn top_occurrences(&self) -> Vec<Occurrence> {
        self.down.iter().map(|d| d.occurrence(0)).collect()
    }

    /// The same annulus turned upside down.
    pub fn flipped(&self) -> Strip {
        Strip { up: self.down.iter().rev().copied().collect(), down: self.up.iter().rev().copied().collect() }
    }

    /// Seams `(U_i|D_i)` and `(D_i|U_{i+1})` as pairs of placement sides.
    pub fn seams(&self) -> Vec<((Placement, usize), (Placement, usize))> {
        let m = self.len();
        (0..m)
            .flat_map(|i| [((self.up[i], 1), (self.down[i], 1)), ((self.down[i], 2), (self.up[(i + 1) % m], 2))])
            .collect()
    }

    /// Every seam glues two distinct sides carrying inverse labels.
    pub fn is_valid(&self, p: &TrianglePresentation) -> bool {
        let in_range = |pl: &Placement| pl.triangle < p.len() && pl.reading.start < 3;
        !self.is_empty()
            && self.up.len() == self.down.len()
            && self.up.iter().chain(&self.down).all(in_range)
            && self.seams().iter().all(|&((a, i), (b, j))| {
                a.occurrence(i) != b.occurrence(j) && a.side(p, i) == inv(b.side(p, j))
            })
    }
}

/// All strips whose bottom reads exactly `bottom`, up to `limit` of them.
pub fn strips_on(p: &TrianglePresentation, bottom: &[Side], limit: usize) -> Vec<Strip> {
    let m = bottom.len();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let ups: Vec<Vec<Placement>> = bottom
        .iter()
        .map(|&s| p.occurrences(s.label).iter().map(|&o| Placement::with_side(p, o, 0, s)).collect())
        .collect();
    let mut up = Vec::with_capacity(m);
    let mut down = Vec::with_capacity(m);
    fn downs(p: &TrianglePresentation, u: Placement, next: Placement) -> Vec<Placement> {
        let want = inv(u.side(p, 1));
        p.occurrences(want.label)
            .iter()
            .filter(|&&o| o != u.occurrence(1))
            .map(|&o| Placement::with_side(p, o, 1, want))
            .filter(|d| d.occurrence(2) != next.occurrence(2) && d.side(p, 2) == inv(next.side(p, 2)))
            .collect()
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        p: &TrianglePresentation,
        ups: &[Vec<Placement>],
        up: &mut Vec<Placement>,
        down: &mut Vec<Placement>,
        out: &mut Vec<Strip>,
        limit: usize,
    ) {
        let m = ups.len();
        if out.len() >= limit {
            return;
        }
        let i = up.len();
        if i == m {
            for d in downs(p, up[m - 1], up[0]) {
                down.push(d);
                out.push(Strip { up: up.clone(), down: down.clone() });
                down.pop();
            }
            return;
        }
        for &u in &ups[i] {
            if i > 0 {
                for d in downs(p, up[i - 1], u) {
                    up.push(u);
                    down.push(d);
                    go(p, ups, up, down, out, limit);
                    down.pop();
                    up.pop();
                }
            } else {
                up.push(u);
                go(p, ups, up, down, out, limit);
                up.pop();
            }
        }
    }
    go(p, &ups, &mut up, &mut down, &mut out, limit);
    out.truncate(limit);
    out
}

/// All strips of circumference one.
pub fn unit_strips(p: &TrianglePresentation) -> Vec<Strip> {
    let mut out = Vec::new();
    for label in 0..p.labels().len() {
        for negative in [false, true] {
            out.extend(strips_on(p, &[Side { label, negative }], usize::MAX));
        }
    }
    out
}

/// Vertex and link-distance data shared by the searches below.
pub struct LinkData {
    pub vp: VertexPartition,
    pub dist: LinkDistances,
}

impl LinkData {
    pub fn new(p: &TrianglePresentation) -> Self {
        LinkData { vp: vertex_partition(p), dist: LinkDistances::new(p) }
    }

    /// Link distance at the vertex where `a` ends and `b` starts.
    pub fn junction(&self, a: Side, b: Side) -> Option<u32> {
        let (x, y) = (EdgeEnd::out_of(a), EdgeEnd::into(b));
        (self.vp.class_of(x) == self.vp.class_of(y)).then(|| self.dist.get(x, y))
    }

    pub fn is_geodesic(&self, circle: &[Side]) -> bool {
        let m = circle.len();
        m > 0 && (0..m).all(|i| self.junction(circle[i], circle[(i + 1) % m]).is_some_and(|d| d >= GEODESIC_LINK_DISTANCE))
    }
}

/// Rotation index of the lexicographically least rotation.
fn least_rotation<T: Ord>(c: &[T]) -> usize {
    (0..c.len()).min_by(|&a, &b| c[a..].iter().chain(&c[..a]).cmp(c[b..].iter().chain(&c[..b]))).unwrap_or(0)
}

pub(crate) fn rotated<T: Clone>(c: &[T], k: usize) -> Vec<T> {
    c[k..].iter().chain(&c[..k]).cloned().collect()
}

/// Closed local geodesics of exactly `m` edges, one per rotation class,
/// each in its least rotation; at most `limit` of them.
pub fn geodesic_circles(p: &TrianglePresentation, links: &LinkData, m: usize, limit: usize) -> Vec<Vec<Side>> {
    let all_sides: Vec<Side> =
        (0..p.labels().len()).flat_map(|label| [false, true].map(|negative| Side { label, negative })).collect();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(m);
    fn go(links: &LinkData, sides: &[Side], m: usize, path: &mut Vec<Side>, out: &mut Vec<Vec<Side>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if path.len() == m {
            if links.junction(path[m - 1], path[0]).is_some_and(|d| d >= GEODESIC_LINK_DISTANCE)
                && least_rotation(path) == 0
            {
                out.push(path.clone());
            }
            return;
        }
        for &s in sides {
            // The first side is the least in its rotation class.
            if !path.is_empty() && s < path[0] {
                continue;
            }
            if let Some(&last) = path.last() {
                if !links.junction(last, s).is_some_and(|d| d >= GEODESIC_LINK_DISTANCE) {
                    continue;
                }
            }
            path.push(s);
            go(links, sides, m, path, out, limit);
            path.pop();
        }
    }
    go(links, &all_sides, m, &mut path, &mut out, limit);
    out
}

/// A closed geodesic, stored in its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnnulusNode {
    pub circle: Vec<SignedLabel>,
}

/// A strip from `from` to `to`; its top reads `to` rotated by `offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusArc {
    pub from: usize,
    pub to: usize,
    pub offset: usize,
    pub strip: Strip,
}

/// Geodesic circles reachable from the roots by stacking strips with
/// geodesic tops.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnulusGraph {
    pub nodes: Vec<AnnulusNode>,
    pub arcs: Vec<AnnulusArc>,
    /// False if the node budget stopped the exploration.
    pub complete: bool,
    pub budget: usize,
}

impl AnnulusGraph {
    pub fn node_index(&self, circle: &[SignedLabel]) -> Option<usize> {
        let k = least_rotation(circle);
        let c = rotated(circle, k);
        self.nodes.iter().position(|n| n.circle == c)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.from == v).count()
    }

    /// Number of distinct circles reached from `v` in one step.
    pub fn branching(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.from == v).map(|a| a.to).collect::<BTreeSet<_>>().len()
    }
}

/// Explore from `roots` (closed geodesics, any rotation). Only strips whose
/// top is again a closed geodesic are kept.
pub fn annulus_graph(p: &TrianglePresentation, roots: &[Vec<SignedLabel>], budget: usize) -> AnnulusGraph {
    let links = LinkData::new(p);
    let to_sides = |c: &[SignedLabel]| -> Option<Vec<Side>> { c.iter().map(|s| p.side_id(s)).collect() };
    let mut index: HashMap<Vec<Side>, usize> = HashMap::new();
    let mut nodes: Vec<Vec<Side>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut complete = true;
    let mut add = |c: Vec<Side>, nodes: &mut Vec<Vec<Side>>, queue: &mut VecDeque<usize>| -> Option<(usize, usize)> {
        let k = least_rotation(&c);
        let canon = rotated(&c, k);
        if let Some(&i) = index.get(&canon) {
            return Some((i, k));
        }
        if nodes.len() >= budget {
            return None;
        }
        index.insert(canon.clone(), nodes.len());
        nodes.push(canon);
        queue.push_back(nodes.len() - 1);
        Some((nodes.len() - 1, k))
    };
    for r in roots {
        if let Some(c) = to_sides(r) {
            if links.is_geodesic(&c) {
                add(c, &mut nodes, &mut queue);
            }
        }
    }
    let mut arcs = Vec::new();
    while let Some(v) = queue.pop_front() {
        let bottom = nodes[v].clone();
        for s in strips_on(p, &bottom, usize::MAX) {
            let top = s.top_sides(p);
            if !links.is_geodesic(&top) {
                continue;
            }
            match add(top, &mut nodes, &mut queue) {
                Some((to, offset)) => arcs.push(AnnulusArc { from: v, to, offset, strip: s }),
                None => complete = false,
            }
        }
    }
    let nodes = nodes.into_iter().map(|c| AnnulusNode { circle: c.into_iter().map(|s| p.signed(s)).collect() }).collect();
    AnnulusGraph { nodes, arcs, complete, budget }
}

/// Offsets `o` with `bottom(upper)[(j + o) % m] = top(lower)[j]` on
/// distinct occurrences for every `j`.
pub fn joint_offsets(p: &TrianglePresentation, lower: &Strip, upper: &Strip) -> Vec<usize> {
    let m = lower.len();
    if upper.len() != m {
        return Vec::new();
    }
    let (top, top_occ) = (lower.top_sides(p), lower.top_occurrences());
    let (bot, bot_occ) = (upper.bottom_sides(p), upper.bottom_occurrences());
    (0..m).filter(|&o| (0..m).all(|j| bot[(j + o) % m] == top[j] && bot_occ[(j + o) % m] != top_occ[j])).collect()
}

/// Group strips by the circle class of their bottom.
pub(crate) fn by_bottom(p: &TrianglePresentation, strips: &[Strip]) -> BTreeMap<Vec<Side>, Vec<usize>> {
    let mut m: BTreeMap<Vec<Side>, Vec<usize>> = BTreeMap::new();
    for (i, s) in strips.iter().enumerate() {
        let b = s.bottom_sides(p);
        let k = least_rotation(&b);
        m.entry(rotated(&b, k)).or_default().push(i);
    }
    m
}

/// Class key of the top circle of a strip.
pub(crate) fn top_key(p: &TrianglePresentation, s: &Strip) -> Vec<Side> {
    let t = s.top_sides(p);
    let k = least_rotation(&t);
    rotated(&t, k)
}

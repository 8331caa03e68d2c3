//! The cylinder graph `R(ω)`: vertices are edge labels, edges are height-1
//! cylinders made of two adjacent triangles whose opposite sides carry the
//! same label.

mod cycles;
mod embed;
pub mod strip;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cobordism::{word_cobordism, Word};
use crate::complex::{Occurrence, Reading, TrianglePresentation};
use crate::dot::{parse_dot, DotGraph};
use crate::error::{ComplexError, RGraphError};
use crate::label::{Label, SignedLabel};

pub use cycles::{cycles_up_to, intersecting_cycle_pair, intersecting_cycle_pair_using, is_intersecting_pair, nonloop_cycles, CycleWitness, DEFAULT_MAX_CYCLE};
pub use embed::{subword_embedding, GraphEmbedding};
pub use strip::{
    annulus_graph, geodesic_circles, joint_offsets, strips_on, unit_strips, AnnulusArc, AnnulusGraph, AnnulusNode, LinkData,
    Placement, Strip,
};

/// Two triangle sides glued along a shared label (the diagonal) so that the
/// opposite sides of the resulting rhombus also agree (the waist). Gluing
/// the waist turns the rhombus into an annulus bounded by `boundary`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cylinder {
    pub diagonal: [Occurrence; 2],
    pub diagonal_label: Label,
    pub waist: [Occurrence; 2],
    pub waist_label: Label,
    pub boundary: [SignedLabel; 2],
    pub boundary_occurrences: [Occurrence; 2],
    /// Both bricks are the same triangle, folded along a repeated label.
    pub degenerate: bool,
}

impl Cylinder {
    pub fn triangles(&self) -> [usize; 2] {
        [self.diagonal[0].triangle, self.diagonal[1].triangle]
    }

    /// Unordered pair of unordered seams; two cylinders are the same iff
    /// their keys agree.
    pub fn key(&self) -> [[Occurrence; 2]; 2] {
        seam_key(self.diagonal, self.waist)
    }

    pub fn ends(&self) -> (Label, Label) {
        let (a, b) = (self.boundary[0].label.clone(), self.boundary[1].label.clone());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn is_loop(&self) -> bool {
        self.boundary[0].label == self.boundary[1].label
    }
}

pub(crate) fn seam_key(a: [Occurrence; 2], b: [Occurrence; 2]) -> [[Occurrence; 2]; 2] {
    let sort = |mut s: [Occurrence; 2]| {
        s.sort();
        s
    };
    let mut k = [sort(a), sort(b)];
    k.sort();
    k
}

/// Seam key of a strip of circumference one, matching [`Cylinder::key`].
pub fn seam_key_of_unit(s: &Strip) -> Option<[[Occurrence; 2]; 2]> {
    (s.len() == 1 && s.down.len() == 1).then(|| {
        let (u, d) = (s.up[0], s.down[0]);
        seam_key([u.occurrence(1), d.occurrence(1)], [d.occurrence(2), u.occurrence(2)])
    })
}

/// The reading of triangle `occ.triangle` that starts with the side at
/// `occ` traversed positively.
pub(crate) fn reading_at(p: &TrianglePresentation, occ: Occurrence) -> Reading {
    Reading { start: occ.position, reflected: p.side(occ).negative }
}

pub fn cylinders(p: &TrianglePresentation) -> Vec<Cylinder> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for id in 0..p.labels().len() {
        let occs = p.occurrences(id);
        for &oa in occs {
            for &ob in occs {
                if oa == ob {
                    continue;
                }
                let (ra, rb) = (reading_at(p, oa), reading_at(p, ob));
                let ta = &p.triangles()[oa.triangle];
                let tb = &p.triangles()[ob.triangle];
                let at = |t: usize, r: Reading, k: usize| Occurrence { triangle: t, position: r.position(k) };
                // (s, u, v) and (s, u', v'): either v = u' (boundary u, v')
                // or u = v' (boundary v, u').
                for (wa, wb, ba, bb) in [(2, 1, 1, 2), (1, 2, 2, 1)] {
                    let (wa_occ, wb_occ) = (at(oa.triangle, ra, wa), at(ob.triangle, rb, wb));
                    if wa_occ == wb_occ || ta.read(ra, wa) != tb.read(rb, wb) {
                        continue;
                    }
                    let c = Cylinder {
                        diagonal: [oa, ob],
                        diagonal_label: p.label(id).clone(),
                        waist: [wa_occ, wb_occ],
                        waist_label: ta.read(ra, wa).label,
                        boundary: [ta.read(ra, ba), tb.read(rb, bb)],
                        boundary_occurrences: [at(oa.triangle, ra, ba), at(ob.triangle, rb, bb)],
                        degenerate: oa.triangle == ob.triangle,
                    };
                    if seen.insert(c.key()) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RGraph {
    /// Labels meeting at least one cylinder, in natural order.
    pub vertices: Vec<Label>,
    pub edges: Vec<Cylinder>,
}

impl RGraph {
    pub fn of_presentation(p: &TrianglePresentation) -> Self {
        let edges = cylinders(p);
        let mut vertices: Vec<Label> = edges.iter().flat_map(|c| c.boundary.iter().map(|s| s.label.clone())).collect();
        vertices.sort();
        vertices.dedup();
        RGraph { vertices, edges }
    }

    pub fn vertex_index(&self, l: &Label) -> Option<usize> {
        self.vertices.binary_search(l).ok()
    }

    /// Endpoint indices of edge `e`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e].ends();
        (self.vertex_index(&a).unwrap(), self.vertex_index(&b).unwrap())
    }

    /// Incident `(edge, other end)` pairs per vertex; loops appear once.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in 0..self.edges.len() {
            let (a, b) = self.endpoints(e);
            adj[a].push((e, b));
            if a != b {
                adj[b].push((e, a));
            }
        }
        adj
    }

    /// Sorted list of edges as label pairs.
    pub fn edge_multiset(&self) -> Vec<(Label, Label)> {
        let mut v: Vec<_> = self.edges.iter().map(Cylinder::ends).collect();
        v.sort();
        v
    }

    pub fn same_multigraph(&self, edges: &[(Label, Label)]) -> bool {
        let mut want: Vec<(Label, Label)> =
            edges.iter().map(|(a, b)| if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }).collect();
        want.sort();
        want == self.edge_multiset()
    }

    pub fn to_dot(&self) -> String {
        let mut g = DotGraph::new("R");
        for v in &self.vertices {
            g.node(v.as_str());
        }
        for c in &self.edges {
            let (a, b) = c.ends();
            let [t0, t1] = c.triangles();
            g.edge(a.as_str(), b.as_str(), Some(&format!("t{t0}+t{t1} waist {}", c.waist_label)));
        }
        g.render()
    }

    pub fn to_json(&self) -> RGraphJson {
        RGraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|c| {
                    let (a, b) = c.ends();
                    RGraphEdgeJson { ends: [a, b], triangles: c.triangles(), cylinder: c.clone() }
                })
                .collect(),
        }
    }
}

/// Edge list of a DOT file written by [`RGraph::to_dot`].
pub fn parse_rgraph_dot(text: &str) -> Result<Vec<(Label, Label)>, ComplexError> {
    let (_, edges) = parse_dot(text)?;
    edges.into_iter().map(|(a, b)| Ok((Label::new(&a)?, Label::new(&b)?))).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RGraphJson {
    pub vertices: Vec<Label>,
    pub edges: Vec<RGraphEdgeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RGraphEdgeJson {
    pub ends: [Label; 2],
    pub triangles: [usize; 2],
    pub cylinder: Cylinder,
}

/// `R(ω)` of the open body of `w`.
pub fn r_graph(w: &Word) -> Result<RGraph, RGraphError> {
    Ok(RGraph::of_presentation(word_cobordism(w)?.body()))
}

pub fn r_graph_of(p: &TrianglePresentation) -> RGraph {
    RGraph::of_presentation(p)
}

/// Degree sequence keyed by label, loops counting twice.
pub fn degrees(g: &RGraph) -> BTreeMap<Label, usize> {
    let mut d: BTreeMap<Label, usize> = g.vertices.iter().map(|v| (v.clone(), 0)).collect();
    for c in &g.edges {
        let (a, b) = c.ends();
        *d.get_mut(&a).unwrap() += 1;
        *d.get_mut(&b).unwrap() += 1;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::lbl;

    fn edges(list: &[(&str, &str)]) -> Vec<(Label, Label)> {
        list.iter().map(|(a, b)| (lbl(a), lbl(b))).collect()
    }

    #[test]
    fn folded_triangle_is_a_degenerate_loop() {
        let p = TrianglePresentation::parse("(1,1,2)").unwrap();
        let cs = cylinders(&p);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].degenerate);
        assert_eq!(cs[0].ends(), (lbl("2"), lbl("2")));
    }

    #[test]
    fn distinct_labels_give_no_cylinders() {
        let p = TrianglePresentation::parse("(a,b,c),(d,e,f)").unwrap();
        assert!(cylinders(&p).is_empty());
    }

    #[test]
    fn x00_brick_z_2() {
        let p = TrianglePresentation::parse("(z,c,b),(2,b,c)").unwrap();
        let g = RGraph::of_presentation(&p);
        assert!(g.same_multigraph(&edges(&[("z", "2")])));
    }

    #[test]
    fn dot_round_trip() {
        let g = r_graph(&"Y00".parse().unwrap()).unwrap();
        let back = parse_rgraph_dot(&g.to_dot()).unwrap();
        assert!(g.same_multigraph(&back));
    }
}

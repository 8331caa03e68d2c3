//! The nerve of a collar: horizontal edges as vertices, triangles as edges.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::presentation::TrianglePresentation;
use crate::dot::DotGraph;
use crate::error::ComplexError;
use crate::label::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NerveType {
    /// Two doubled edges a–d, b–c joined by single edges c–d and a–b.
    S,
    /// The 1-skeleton of the tetrahedron.
    T,
    Other,
}

impl fmt::Display for NerveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NerveType::S => "S",
            NerveType::T => "T",
            NerveType::Other => "other",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nerve {
    pub vertices: Vec<Label>,
    /// One edge per triangle, endpoints sorted, list sorted.
    pub edges: Vec<(Label, Label)>,
    pub kind: NerveType,
}

impl Nerve {
    pub fn multiplicity(&self, a: &str, b: &str) -> usize {
        self.edges
            .iter()
            .filter(|(u, v)| (u.as_str() == a && v.as_str() == b) || (u.as_str() == b && v.as_str() == a))
            .count()
    }

    pub fn to_dot(&self) -> String {
        let mut g = DotGraph::new("nerve");
        for v in &self.vertices {
            g.node(v.as_str());
        }
        for (a, b) in &self.edges {
            g.edge(a.as_str(), b.as_str(), None);
        }
        g.render()
    }
}

/// Each triangle must carry exactly one strand (a label occurring once in
/// `c`); the two other sides give the nerve edge.
pub fn nerve(c: &TrianglePresentation) -> Result<Nerve, ComplexError> {
    let mut edges = Vec::new();
    for (t, tri) in c.triangles().iter().enumerate() {
        let strands: Vec<usize> = (0..3).filter(|&k| c.arity(&tri.sides[k].label) == 1).collect();
        let &[k] = strands.as_slice() else {
            return Err(ComplexError::NotCollarShape(t));
        };
        let u = tri.sides[(k + 1) % 3].label.clone();
        let v = tri.sides[(k + 2) % 3].label.clone();
        if u == v || c.arity(&u) == 1 || c.arity(&v) == 1 {
            return Err(ComplexError::NotCollarShape(t));
        }
        edges.push(if u <= v { (u, v) } else { (v, u) });
    }
    edges.sort();
    let mut vertices: Vec<Label> = edges.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    vertices.sort();
    vertices.dedup();
    let kind = classify(&vertices, &edges);
    Ok(Nerve { vertices, edges, kind })
}

fn classify(vertices: &[Label], edges: &[(Label, Label)]) -> NerveType {
    if vertices.len() != 4 || edges.len() != 6 {
        return NerveType::Other;
    }
    let idx = |l: &Label| vertices.iter().position(|v| v == l).unwrap();
    let ours: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (idx(a), idx(b))).collect();
    // Vertices 0..4 stand for a, b, c, d.
    let s_ref = [(0, 3), (0, 3), (1, 2), (1, 2), (2, 3), (0, 1)];
    let t_ref = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    if matches_up_to_relabeling(&ours, &s_ref) {
        NerveType::S
    } else if matches_up_to_relabeling(&ours, &t_ref) {
        NerveType::T
    } else {
        NerveType::Other
    }
}

fn sorted_edges(edges: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = edges.map(|(a, b)| (a.min(b), a.max(b))).collect();
    v.sort_unstable();
    v
}

fn matches_up_to_relabeling(ours: &[(usize, usize)], reference: &[(usize, usize)]) -> bool {
    let target = sorted_edges(reference.iter().copied());
    permutations4().iter().any(|p| sorted_edges(ours.iter().map(|&(a, b)| (p[a], p[b]))) == target)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

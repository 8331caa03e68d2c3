//! Vertices of a triangle complex and their links.

use std::collections::VecDeque;
use std::fmt;

use super::presentation::{Side, TrianglePresentation};
use crate::dot::DotGraph;
use crate::error::ComplexError;
use crate::label::Label;

/// One end of an edge: `(label, head)`; `head = false` is the tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub label: usize,
    pub head: bool,
}

impl EdgeEnd {
    #[inline]
    pub fn index(self) -> usize {
        2 * self.label + self.head as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        EdgeEnd { label: i / 2, head: i % 2 == 1 }
    }

    /// The end at which a traversal of `s` arrives.
    #[inline]
    pub fn out_of(s: Side) -> Self {
        EdgeEnd { label: s.label, head: !s.negative }
    }

    /// The end from which a traversal of `s` departs.
    #[inline]
    pub fn into(s: Side) -> Self {
        EdgeEnd { label: s.label, head: s.negative }
    }
}

/// Partition of edge-ends into the vertices of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    /// Classes ordered by their smallest edge-end index.
    pub classes: Vec<Vec<EdgeEnd>>,
    class_of: Vec<usize>,
}

impl VertexPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, end: EdgeEnd) -> usize {
        self.class_of[end.index()]
    }

    pub fn tail(&self, label: usize) -> usize {
        self.class_of[2 * label]
    }

    pub fn head(&self, label: usize) -> usize {
        self.class_of[2 * label + 1]
    }

    /// Labels whose two ends lie at the same vertex.
    pub fn is_loop(&self, label: usize) -> bool {
        self.tail(label) == self.head(label)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Corners of a triangle: the pair (arriving end of side i, departing end of side i+1).
pub(crate) fn corners(sides: &[Side; 3]) -> [(EdgeEnd, EdgeEnd); 3] {
    [0, 1, 2].map(|i| (EdgeEnd::out_of(sides[i]), EdgeEnd::into(sides[(i + 1) % 3])))
}

pub fn vertex_partition(p: &TrianglePresentation) -> VertexPartition {
    let n = 2 * p.labels().len();
    let mut dsu = Dsu::new(n);
    for t in 0..p.len() {
        for (a, b) in corners(p.sides(t)) {
            dsu.union(a.index(), b.index());
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<EdgeEnd>> = Vec::new();
    let mut root_class = vec![usize::MAX; n];
    for i in 0..n {
        let r = dsu.find(i);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[i] = root_class[r];
        classes[root_class[r]].push(EdgeEnd::from_index(i));
    }
    VertexPartition { classes, class_of }
}

/// Link of one vertex: edge-ends as vertices, triangle corners as edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    pub vertex: usize,
    pub ends: Vec<EdgeEnd>,
    /// `(i, j, triangle, corner)` with `i`, `j` indices into `ends`.
    pub edges: Vec<(usize, usize, usize, usize)>,
    names: Vec<String>,
}

impl LinkGraph {
    pub fn vertex_count(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().map(|&(a, b, _, _)| (a == i) as usize + (b == i) as usize).sum()
    }

    pub fn end_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn to_dot(&self) -> String {
        let mut g = DotGraph::new(format!("link_v{}", self.vertex));
        for n in &self.names {
            g.node(n);
        }
        for &(a, b, t, c) in &self.edges {
            g.edge(&self.names[a], &self.names[b], Some(&format!("t{t}c{c}")));
        }
        g.render()
    }
}

impl fmt::Display for LinkGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "link of vertex {}: {} ends, {} corners", self.vertex, self.ends.len(), self.edges.len())
    }
}

pub(crate) fn end_name(label: &Label, end: EdgeEnd) -> String {
    format!("{}{}", label, if end.head { "+" } else { "-" })
}

pub fn link_graph(p: &TrianglePresentation, vp: &VertexPartition, v: usize) -> Result<LinkGraph, ComplexError> {
    let ends = vp.classes.get(v).ok_or(ComplexError::UnknownVertex(v))?.clone();
    let mut local = vec![usize::MAX; 2 * p.labels().len()];
    for (i, e) in ends.iter().enumerate() {
        local[e.index()] = i;
    }
    let mut edges = Vec::new();
    for t in 0..p.len() {
        for (c, (a, b)) in corners(p.sides(t)).into_iter().enumerate() {
            if vp.class_of(a) == v {
                edges.push((local[a.index()], local[b.index()], t, c));
            }
        }
    }
    let names = ends.iter().map(|&e| end_name(p.label(e.label), e)).collect();
    Ok(LinkGraph { vertex: v, ends, edges, names })
}

/// Distances between edge-ends in the disjoint union of all links.
#[derive(Clone, Debug)]
pub struct LinkDistances {
    dist: Vec<Vec<u32>>,
}

impl LinkDistances {
    pub fn new(p: &TrianglePresentation) -> Self {
        let n = 2 * p.labels().len();
        let mut adj = vec![Vec::new(); n];
        for t in 0..p.len() {
            for (a, b) in corners(p.sides(t)) {
                adj[a.index()].push(b.index());
                adj[b.index()].push(a.index());
            }
        }
        let dist = (0..n)
            .map(|s| {
                let mut d = vec![u32::MAX; n];
                d[s] = 0;
                let mut q = VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    for &w in &adj[u] {
                        if d[w] == u32::MAX {
                            d[w] = d[u] + 1;
                            q.push_back(w);
                        }
                    }
                }
                d
            })
            .collect();
        LinkDistances { dist }
    }

    /// `u32::MAX` when the ends are in different components.
    pub fn get(&self, a: EdgeEnd, b: EdgeEnd) -> u32 {
        self.dist[a.index()][b.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle_has_three_vertices() {
        let p = TrianglePresentation::parse("(e,f,g)").unwrap();
        let vp = vertex_partition(&p);
        assert_eq!(vp.len(), 3);
        for v in 0..3 {
            let l = link_graph(&p, &vp, v).unwrap();
            assert_eq!(l.vertex_count(), 2);
            assert_eq!(l.edge_count(), 1);
        }
        assert_eq!(link_graph(&p, &vp, 3), Err(ComplexError::UnknownVertex(3)));
    }

    #[test]
    fn corners_sum_to_three_per_triangle() {
        let p = TrianglePresentation::parse("(x,a,d),(y,c,d),(z,c,b),(x',d,a),(y',b,a),(z',b,c)").unwrap();
        let vp = vertex_partition(&p);
        let total: usize = (0..vp.len()).map(|v| link_graph(&p, &vp, v).unwrap().edge_count()).sum();
        assert_eq!(total, 18);
    }

    #[test]
    fn folded_triangle_makes_a_loop() {
        let p = TrianglePresentation::parse("(e,e,f)").unwrap();
        let vp = vertex_partition(&p);
        assert!(vp.is_loop(p.label_id(&"e".parse().unwrap()).unwrap()));
    }
}

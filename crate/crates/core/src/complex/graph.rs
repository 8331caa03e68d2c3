//! Small simple graphs: invariants, backtracking isomorphism and the
//! Möbius–Kantor reference graph.

use std::collections::VecDeque;

use super::vertex::LinkGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    /// `None` if the edge list contains a loop or a repeated edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Option<Self> {
        let mut g = SimpleGraph::new(n);
        for &(a, b) in edges {
            if a == b || g.has_edge(a, b) {
                return None;
            }
            g.adj[a].push(b);
            g.adj[b].push(a);
        }
        for row in &mut g.adj {
            row.sort_unstable();
        }
        Some(g)
    }

    /// Generalized Petersen graph GP(n, k): outer cycle u_i, spokes u_i v_i,
    /// inner edges v_i v_{i+k}.
    pub fn generalized_petersen(n: usize, k: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, (i + 1) % n));
            edges.push((i, n + i));
            edges.push((n + i, n + (i + k) % n));
        }
        SimpleGraph::from_edges(2 * n, &edges).expect("GP(n,k) is simple for 2k < n")
    }

    pub fn moebius_kantor() -> Self {
        SimpleGraph::generalized_petersen(8, 3)
    }

    pub fn hypercube(dim: usize) -> Self {
        let n = 1 << dim;
        let edges: Vec<_> =
            (0..n).flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b)))).filter(|&(a, b)| a < b).collect();
        SimpleGraph::from_edges(n, &edges).unwrap()
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.order()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if d[w] == usize::MAX {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.bfs(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.order()];
        for s in 0..self.order() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        q.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        for s in 0..self.order() {
            let mut d = vec![usize::MAX; self.order()];
            let mut parent = vec![usize::MAX; self.order()];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if d[w] == usize::MAX {
                        d[w] = d[u] + 1;
                        parent[w] = u;
                        q.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(d[u] + d[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Sorted multiset of BFS distance profiles, one per vertex.
    pub fn distance_profile(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.order())
            .map(|s| {
                let d = self.bfs(s);
                let max = d.iter().copied().filter(|&x| x != usize::MAX).max().unwrap_or(0);
                let mut hist = vec![0; max + 2];
                for x in d {
                    if x == usize::MAX {
                        hist[max + 1] += 1;
                    } else {
                        hist[x] += 1;
                    }
                }
                hist
            })
            .collect();
        out.sort();
        out
    }

    /// A vertex bijection `f` with `a ~ b ⟺ f(a) ~ f(b)`, found by
    /// backtracking along a BFS order of `self`.
    pub fn isomorphism(&self, other: &SimpleGraph) -> Option<Vec<usize>> {
        let n = self.order();
        if n != other.order() || self.size() != other.size() || self.degree_sequence() != other.degree_sequence() {
            return None;
        }
        let order = self.search_order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend(other, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn search_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = Vec::with_capacity(self.order());
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                order.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        order
    }

    fn extend(&self, other: &SimpleGraph, order: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&v) = order.get(k) else { return true };
        for c in 0..other.order() {
            if used[c] || other.adj[c].len() != self.adj[v].len() {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| self.has_edge(u, v) == other.has_edge(map[u], c));
            if !consistent {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if self.extend(other, order, k + 1, map, used) {
                return true;
            }
            used[c] = false;
            map[v] = usize::MAX;
        }
        false
    }
}

impl LinkGraph {
    /// `None` if the link has loops or parallel corners.
    pub fn to_simple(&self) -> Option<SimpleGraph> {
        let edges: Vec<_> = self.edges.iter().map(|&(a, b, _, _)| (a, b)).collect();
        SimpleGraph::from_edges(self.vertex_count(), &edges)
    }
}

/// Invariant screen (order 16, size 24, cubic, bipartite, girth 6, distance
/// profile) followed by an explicit isomorphism to GP(8,3).
pub fn is_moebius_kantor_graph(g: &SimpleGraph) -> bool {
    let mk = SimpleGraph::moebius_kantor();
    if g.order() != 16 || g.size() != 24 || g.adj.iter().any(|r| r.len() != 3) {
        return false;
    }
    if !g.is_bipartite() || g.girth() != Some(6) || g.distance_profile() != mk.distance_profile() {
        return false;
    }
    g.isomorphism(&mk).is_some()
}

pub fn is_moebius_kantor(link: &LinkGraph) -> bool {
    link.to_simple().is_some_and(|g| is_moebius_kantor_graph(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_kantor_invariants() {
        let g = SimpleGraph::moebius_kantor();
        assert_eq!((g.order(), g.size()), (16, 24));
        assert!(g.is_bipartite());
        assert_eq!(g.girth(), Some(6));
        assert!(is_moebius_kantor_graph(&g));
    }

    #[test]
    fn rejects_other_cubic_graphs() {
        assert!(!is_moebius_kantor_graph(&SimpleGraph::hypercube(3)));
        assert!(!is_moebius_kantor_graph(&SimpleGraph::hypercube(4)));
        // Petersen graph and the Desargues graph GP(10,3).
        assert!(!is_moebius_kantor_graph(&SimpleGraph::generalized_petersen(5, 2)));
        assert!(!is_moebius_kantor_graph(&SimpleGraph::generalized_petersen(10, 3)));
        // GP(8,1) is the 8-prism: cubic, 16 vertices, bipartite, girth 4.
        assert!(!is_moebius_kantor_graph(&SimpleGraph::generalized_petersen(8, 1)));
    }

    #[test]
    fn isomorphism_survives_relabeling() {
        let g = SimpleGraph::moebius_kantor();
        let perm: Vec<usize> = (0..16).map(|i| (i * 5 + 3) % 16).collect();
        let edges: Vec<_> =
            (0..16).flat_map(|a| g.neighbors(a).iter().map(move |&b| (a, b))).filter(|&(a, b)| a < b).map(|(a, b)| (perm[a], perm[b])).collect();
        let h = SimpleGraph::from_edges(16, &edges).unwrap();
        let f = g.isomorphism(&h).unwrap();
        for a in 0..16 {
            for &b in g.neighbors(a) {
                assert!(h.has_edge(f[a], f[b]));
            }
        }
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(SimpleGraph::hypercube(3).girth(), Some(4));
        assert_eq!(SimpleGraph::generalized_petersen(5, 2).girth(), Some(5));
        assert_eq!(SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().girth(), None);
    }
}

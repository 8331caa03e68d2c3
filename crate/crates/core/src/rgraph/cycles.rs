//! Reduced closed walks in `R(ω)`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::RGraph;
use crate::label::Label;

pub const DEFAULT_MAX_CYCLE: usize = 12;

/// A closed walk `v0 -e1- v1 -e2- ... -ek- v0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<Label>,
    /// Indices into `RGraph::edges`; edge `i` joins `vertices[i]` and
    /// `vertices[i + 1]` (cyclically).
    pub edges: Vec<usize>,
    pub loop_supported: bool,
    pub consecutive_distinct: bool,
}

impl CycleWitness {
    /// Walk `edges` from `start`, or `None` if they do not chain into a
    /// closed walk.
    pub fn from_edges(g: &RGraph, start: usize, edges: Vec<usize>) -> Option<Self> {
        let mut v = start;
        let mut vertices = Vec::with_capacity(edges.len());
        for &e in &edges {
            vertices.push(g.vertices[v].clone());
            let (a, b) = g.endpoints(e);
            v = if a == v {
                b
            } else if b == v {
                a
            } else {
                return None;
            };
        }
        if v != start || edges.is_empty() {
            return None;
        }
        let support: BTreeSet<usize> = edges.iter().copied().collect();
        let loop_supported = support.len() == 1 && g.edges[edges[0]].is_loop();
        let k = edges.len();
        let consecutive_distinct = k > 1 && (0..k).all(|i| edges[i] != edges[(i + 1) % k]);
        Some(CycleWitness { vertices, edges, loop_supported, consecutive_distinct })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.edges.iter().copied().collect()
    }

    /// Re-derive the flags and closedness from the sequences.
    pub fn is_consistent(&self, g: &RGraph) -> bool {
        let Some(start) = self.vertices.first().and_then(|v| g.vertex_index(v)) else { return false };
        CycleWitness::from_edges(g, start, self.edges.clone()).as_ref() == Some(self)
    }

    /// The same walk started at its `i`-th vertex.
    pub fn rotated(&self, i: usize) -> CycleWitness {
        let r = |v: &[usize]| v[i..].iter().chain(&v[..i]).copied().collect::<Vec<_>>();
        let vertices = self.vertices[i..].iter().chain(&self.vertices[..i]).cloned().collect();
        CycleWitness { vertices, edges: r(&self.edges), ..self.clone() }
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        parts.push(self.vertices[0].to_string());
        parts.join("-")
    }
}

/// Canonical form of a closed walk up to rotation and reversal.
fn canonical(vs: &[usize], es: &[usize]) -> Vec<(usize, usize)> {
    let k = es.len();
    let fwd: Vec<(usize, usize)> = (0..k).map(|i| (vs[i], es[i])).collect();
    // Reversed walk: v0, v_{k-1}, ..., v1 with edges e_k, ..., e_1.
    let rev: Vec<(usize, usize)> = (0..k).map(|i| (vs[(k - i) % k], es[(2 * k - 1 - i) % k])).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    for seq in [fwd, rev] {
        for r in 0..k {
            let rot: Vec<(usize, usize)> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

fn is_primitive(es: &[usize]) -> bool {
    let k = es.len();
    (1..k).filter(|d| k % d == 0).all(|d| (0..k).any(|i| es[i] != es[(i + d) % k]))
}

struct Walker<'a> {
    g: &'a RGraph,
    adj: Vec<Vec<(usize, usize)>>,
    vs: Vec<usize>,
    es: Vec<usize>,
    seen: BTreeSet<Vec<(usize, usize)>>,
    out: Vec<CycleWitness>,
    limit: usize,
}

impl Walker<'_> {
    fn walk(&mut self, start: usize, v: usize, len: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if self.es.len() == len {
            let k = len;
            if v == start && k >= 2 && self.es[0] != self.es[k - 1] && is_primitive(&self.es) {
                let support: BTreeSet<usize> = self.es.iter().copied().collect();
                let loop_only = support.len() == 1;
                if !loop_only && self.seen.insert(canonical(&self.vs, &self.es)) {
                    let w = CycleWitness::from_edges(self.g, start, self.es.clone()).expect("walk is closed");
                    self.out.push(w);
                }
            }
            return;
        }
        for i in 0..self.adj[v].len() {
            let (e, w) = self.adj[v][i];
            if self.es.last() == Some(&e) {
                continue;
            }
            self.vs.push(v);
            self.es.push(e);
            self.walk(start, w, len);
            self.es.pop();
            self.vs.pop();
        }
    }
}

/// Reduced closed walks of length `2..=max_len` whose support is not a
/// single loop, primitive, one per rotation/reversal class; shortest first.
pub fn nonloop_cycles(g: &RGraph, max_len: usize) -> Vec<CycleWitness> {
    cycles_up_to(g, max_len, usize::MAX)
}

/// At most `limit` cycles, by increasing length.
pub fn cycles_up_to(g: &RGraph, max_len: usize, limit: usize) -> Vec<CycleWitness> {
    let mut w = Walker { g, adj: g.adjacency(), vs: Vec::new(), es: Vec::new(), seen: BTreeSet::new(), out: Vec::new(), limit };
    for len in 2..=max_len {
        for s in 0..g.vertices.len() {
            w.walk(s, s, len);
        }
        if w.out.len() >= limit {
            break;
        }
    }
    w.out.truncate(limit);
    w.out
}

/// Edges of the 2-core of `g` (loops count twice towards degrees).
fn two_core(g: &RGraph, usable: &[bool]) -> Vec<bool> {
    let n = g.vertices.len();
    let mut alive = usable.to_vec();
    let mut deg = vec![0usize; n];
    for e in (0..g.edges.len()).filter(|&e| usable[e]) {
        let (a, b) = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    let adj = g.adjacency();
    let mut q: VecDeque<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = q.pop_front() {
        for &(e, w) in &adj[v] {
            if alive[e] && deg[v] == 1 {
                alive[e] = false;
                deg[v] -= 1;
                deg[w] -= 1;
                if deg[w] == 1 {
                    q.push_back(w);
                }
            }
        }
    }
    alive
}

#[derive(Clone, Debug)]
enum Basic {
    Loop { edge: usize, at: usize },
    Cycle { vertices: Vec<usize>, edges: Vec<usize> },
}

/// Shortest path (vertex list, edge list) from `from` to any vertex in
/// `targets`, using only edges allowed by `ok`.
fn shortest_path(
    adj: &[Vec<(usize, usize)>],
    from: usize,
    targets: &BTreeSet<usize>,
    ok: impl Fn(usize) -> bool,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        if targets.contains(&v) {
            let mut vs = vec![v];
            let mut es = Vec::new();
            let mut cur = v;
            while let Some((p, e)) = prev[cur] {
                vs.push(p);
                es.push(e);
                cur = p;
            }
            vs.reverse();
            es.reverse();
            return Some((vs, es));
        }
        for &(e, w) in &adj[v] {
            if ok(e) && !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                q.push_back(w);
            }
        }
    }
    None
}

/// Two distinct reduced non-loop closed walks sharing a vertex, if the
/// 2-core of some component has first Betti number at least 3, or 2 with a
/// non-loop basic cycle. Below that threshold no such pair exists.
pub fn intersecting_cycle_pair(g: &RGraph) -> Option<(CycleWitness, CycleWitness)> {
    intersecting_cycle_pair_using(g, &vec![true; g.edges.len()])
}

/// As [`intersecting_cycle_pair`], on the edges flagged in `usable`.
pub fn intersecting_cycle_pair_using(g: &RGraph, usable: &[bool]) -> Option<(CycleWitness, CycleWitness)> {
    let alive = two_core(g, usable);
    let adj = g.adjacency();
    let n = g.vertices.len();
    let mut comp = vec![usize::MAX; n];
    let mut in_tree = vec![false; g.edges.len()];
    let mut ncomp = 0;
    for s in 0..n {
        if comp[s] != usize::MAX || !adj[s].iter().any(|&(e, _)| alive[e]) {
            continue;
        }
        comp[s] = ncomp;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &(e, w) in &adj[v] {
                if alive[e] && comp[w] == usize::MAX {
                    comp[w] = ncomp;
                    in_tree[e] = true;
                    q.push_back(w);
                }
            }
        }
        ncomp += 1;
    }
    for c in 0..ncomp {
        let basics: Vec<Basic> = (0..g.edges.len())
            .filter(|&e| alive[e] && !in_tree[e])
            .filter(|&e| comp[g.endpoints(e).0] == c)
            .map(|f| {
                let (a, b) = g.endpoints(f);
                if a == b {
                    return Basic::Loop { edge: f, at: a };
                }
                let (vs, mut es) =
                    shortest_path(&adj, b, &BTreeSet::from([a]), |e| in_tree[e]).expect("tree connects the component");
                // Path b..a, then f back to b.
                es.push(f);
                Basic::Cycle { vertices: vs, edges: es }
            })
            .collect();
        let cycles: Vec<&Basic> = basics.iter().filter(|b| matches!(b, Basic::Cycle { .. })).collect();
        let loops: Vec<&Basic> = basics.iter().filter(|b| matches!(b, Basic::Loop { .. })).collect();
        let ok = |e: usize| alive[e];
        let pair = if let Some(Basic::Cycle { vertices: cv, edges: ce }) = cycles.first().copied() {
            let other = cycles.get(1).copied().or(loops.first().copied());
            let Some(other) = other else { continue };
            let w1 = (cv[0], ce.clone());
            let on_c: BTreeSet<usize> = cv.iter().copied().collect();
            let rotate_at = |v: usize| -> Vec<usize> {
                let i = cv.iter().position(|&x| x == v).unwrap();
                ce[i..].iter().chain(&ce[..i]).copied().collect()
            };
            let w2 = match other {
                Basic::Loop { edge, at } => {
                    if on_c.contains(at) {
                        let mut es = rotate_at(*at);
                        es.push(*edge);
                        (*at, es)
                    } else {
                        let (pv, pe) = shortest_path(&adj, *at, &on_c, ok).expect("same component");
                        let w = *pv.last().unwrap();
                        let mut es = rotate_at(w);
                        es.extend(pe.iter().rev());
                        es.push(*edge);
                        es.extend(pe.iter());
                        (w, es)
                    }
                }
                Basic::Cycle { vertices: zv, edges: ze } => {
                    if zv.iter().any(|v| on_c.contains(v)) {
                        (zv[0], ze.clone())
                    } else {
                        // Shortest bridge from Z to C; it meets each only at its ends.
                        let (pv, pe) = zv
                            .iter()
                            .filter_map(|&z| shortest_path(&adj, z, &on_c, ok))
                            .min_by_key(|(_, pe)| pe.len())
                            .expect("same component");
                        let (z, w) = (pv[0], *pv.last().unwrap());
                        let i = zv.iter().position(|&x| x == z).unwrap();
                        let mut es = rotate_at(w);
                        es.extend(pe.iter().rev());
                        es.extend(ze[i..].iter().chain(&ze[..i]));
                        es.extend(pe.iter());
                        (w, es)
                    }
                }
            };
            (w1, w2)
        } else {
            if loops.len() < 3 {
                continue;
            }
            let barbell = |l1: &Basic, l2: &Basic| -> (usize, Vec<usize>) {
                let (Basic::Loop { edge: e1, at: u1 }, Basic::Loop { edge: e2, at: u2 }) = (l1, l2) else { unreachable!() };
                if u1 == u2 {
                    return (*u1, vec![*e1, *e2]);
                }
                let (_, pe) = shortest_path(&adj, *u1, &BTreeSet::from([*u2]), ok).expect("same component");
                let mut es = vec![*e1];
                es.extend(pe.iter());
                es.push(*e2);
                es.extend(pe.iter().rev());
                (*u1, es)
            };
            (barbell(loops[0], loops[1]), barbell(loops[0], loops[2]))
        };
        let a = CycleWitness::from_edges(g, pair.0 .0, pair.0 .1).expect("constructed walk is closed");
        let b = CycleWitness::from_edges(g, pair.1 .0, pair.1 .1).expect("constructed walk is closed");
        return Some((a, b));
    }
    None
}

/// Independent check of a pair: both reduced, not loop-supported, distinct
/// supports, at least one common vertex.
pub fn is_intersecting_pair(g: &RGraph, a: &CycleWitness, b: &CycleWitness) -> bool {
    let shared = a.vertices.iter().any(|v| b.vertices.contains(v));
    a.is_consistent(g)
        && b.is_consistent(g)
        && a.consecutive_distinct
        && b.consecutive_distinct
        && !a.loop_supported
        && !b.loop_supported
        && a.support() != b.support()
        && shared
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rgraph::r_graph;

    #[test]
    fn x00_has_no_nonloop_cycle() {
        let g = r_graph(&"X00".parse().unwrap()).unwrap();
        assert!(nonloop_cycles(&g, 8).is_empty());
        assert!(intersecting_cycle_pair(&g).is_none());
    }

    #[test]
    fn primitive_walks() {
        assert!(is_primitive(&[1, 2, 3]));
        assert!(!is_primitive(&[1, 2, 1, 2]));
    }

    #[test]
    fn canonical_is_rotation_and_reversal_invariant() {
        let vs = [0, 1, 2];
        let es = [5, 6, 7];
        let c = canonical(&vs, &es);
        assert_eq!(canonical(&[1, 2, 0], &[6, 7, 5]), c);
        assert_eq!(canonical(&[0, 2, 1], &[7, 6, 5]), c);
    }
}

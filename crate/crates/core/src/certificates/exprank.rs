//! Two distinct intersecting non-loop cycles of `R`, which span a tree of
//! flats and force exponential rank.

use serde::{Deserialize, Serialize};

use super::patterns::{forbidden_pattern_scan, PatternMatch};
use crate::cobordism::Word;
use crate::rgraph::{intersecting_cycle_pair, is_intersecting_pair, r_graph, CycleWitness, RGraph};

/// Cycles `γ = s·γ_x·γ_y` and `γ' = s·γ'_x·γ'_y` in `R(w.rotate(rotation))`,
/// as edge-index sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpRankWitness {
    pub word: Word,
    pub rotation: usize,
    pub cycles: [CycleWitness; 2],
    pub shared: Vec<usize>,
    pub gamma_x: Vec<usize>,
    pub gamma_y: Vec<usize>,
    pub gamma_x2: Vec<usize>,
    pub gamma_y2: Vec<usize>,
    /// Pattern occurrences in the cyclic word, for cross-reference.
    pub patterns: Vec<PatternMatch>,
}

impl ExpRankWitness {
    fn new(word: &Word, rotation: usize, a: CycleWitness, b: CycleWitness, patterns: Vec<PatternMatch>) -> Self {
        // Start both at the common vertex with the longest common prefix.
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..a.len() {
            for j in 0..b.len() {
                if a.vertices[i] != b.vertices[j] {
                    continue;
                }
                let l = (0..a.len().min(b.len()))
                    .take_while(|&t| a.edges[(i + t) % a.len()] == b.edges[(j + t) % b.len()])
                    .count();
                if best.is_none_or(|(_, _, bl)| l > bl) {
                    best = Some((i, j, l));
                }
            }
        }
        let best = best.expect("cycles share a vertex");
        let (a, b) = (a.rotated(best.0), b.rotated(best.1));
        let shared_len = a.edges.iter().zip(&b.edges).take_while(|(x, y)| x == y).count();
        let shared = a.edges[..shared_len].to_vec();
        let split = |c: &CycleWitness| {
            let rest = &c.edges[shared_len..];
            let h = rest.len() / 2;
            (rest[..h].to_vec(), rest[h..].to_vec())
        };
        let (gamma_x, gamma_y) = split(&a);
        let (gamma_x2, gamma_y2) = split(&b);
        ExpRankWitness {
            word: word.clone(),
            rotation,
            cycles: [a, b],
            shared,
            gamma_x,
            gamma_y,
            gamma_x2,
            gamma_y2,
            patterns,
        }
    }

    /// Re-check against `R(w.rotate(rotation))`.
    pub fn verify(&self) -> bool {
        let Ok(g) = r_graph(&self.word.rotate(self.rotation)) else { return false };
        self.verify_in(&g)
    }

    pub fn verify_in(&self, g: &RGraph) -> bool {
        let [a, b] = &self.cycles;
        let join = |x: &[usize], y: &[usize]| [self.shared.as_slice(), x, y].concat();
        is_intersecting_pair(g, a, b)
            && a.vertices[0] == b.vertices[0]
            && join(&self.gamma_x, &self.gamma_y) == a.edges
            && join(&self.gamma_x2, &self.gamma_y2) == b.edges
    }
}

/// Both routes to exponential rank, side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpRankReport {
    pub witness: Option<ExpRankWitness>,
    pub patterns: Vec<PatternMatch>,
    pub graph_route: bool,
    pub pattern_route: bool,
}

impl ExpRankReport {
    pub fn agree(&self) -> bool {
        self.graph_route == self.pattern_route
    }
}

pub fn exp_rank_report(w: &Word) -> ExpRankReport {
    let patterns = forbidden_pattern_scan(w, true);
    let mut witness = None;
    for k in 0..w.len() {
        let Ok(g) = r_graph(&w.rotate(k)) else { continue };
        if let Some((a, b)) = intersecting_cycle_pair(&g) {
            witness = Some(ExpRankWitness::new(w, k, a, b, patterns.clone()));
            break;
        }
    }
    ExpRankReport { graph_route: witness.is_some(), pattern_route: !patterns.is_empty(), witness, patterns }
}

/// A pair of intersecting cycles in `R` of some rotation of `w`.
pub fn exp_rank_certificate(w: &Word) -> Option<ExpRankWitness> {
    exp_rank_report(w).witness
}

//! Checks shared by the property suite and the acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rank74::census::{trial_rng, uniform_canonical, unrank};
use rank74::cobordism::{CanonicalWord, Generator, Letter, Word};
use rank74::rgraph::r_graph;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Labels of the first letter: digits below 10 and the unprimed strands.
fn first_letter(s: &str) -> bool {
    s.parse::<u32>().map(|v| v < 10).unwrap_or(!s.ends_with('\''))
}

type Edges = Vec<(String, String)>;

/// Edges inside a block, and edges across oriented first letter -> second.
fn blocks(w: &Word) -> (Edges, Edges) {
    let (mut inside, mut across) = (Vec::new(), Vec::new());
    for (a, b) in r_graph(w).unwrap().edge_multiset() {
        let (a, b) = (a.as_str().to_string(), b.as_str().to_string());
        match (first_letter(&a), first_letter(&b)) {
            (x, y) if x == y => inside.push((a, b)),
            (true, _) => across.push((a, b)),
            _ => across.push((b, a)),
        }
    }
    inside.sort();
    across.sort();
    (inside, across)
}

fn bits3() -> impl Iterator<Item = (bool, bool, bool)> {
    (0..8).map(|m| (m & 1 == 1, m & 2 == 2, m & 4 == 4))
}

/// Pairs `Z_ij·T_kl`, `Z_ij̄·T_kl` whose graphs are not related by keeping
/// both blocks and exchanging where the first block's right strands land.
pub fn flip_lemma_violations() -> Vec<String> {
    let mut bad = Vec::new();
    for z in [Letter::X, Letter::Y] {
        for t in [Letter::X, Letter::Y] {
            for (i, k, l) in bits3() {
                let a = Word::new(vec![Generator::new(z, i, false), Generator::new(t, k, l)]).unwrap();
                let b = Word::new(vec![Generator::new(z, i, true), Generator::new(t, k, l)]).unwrap();
                let ((ia, ca), (ib, cb)) = (blocks(&a), blocks(&b));
                let ends: BTreeSet<&String> = ca.iter().map(|e| &e.1).collect();
                let swapped = |p: &String, q: &String| {
                    let mut m: Edges = ca
                        .iter()
                        .map(|(x, y)| (x.clone(), if y == p { q.clone() } else if y == q { p.clone() } else { y.clone() }))
                        .collect();
                    m.sort();
                    m
                };
                if ia != ib || !ends.iter().any(|p| ends.iter().any(|q| swapped(p, q) == cb)) {
                    bad.push(format!("{a} / {b}"));
                }
            }
        }
    }
    bad
}

/// Words `X_ik·X_kl` where a path joins `x` or `z` to a primed strand.
pub fn strand_violations() -> Vec<String> {
    let mut bad = Vec::new();
    for (i, k, l) in bits3() {
        let w = Word::new(vec![Generator::new(Letter::X, i, k), Generator::new(Letter::X, k, l)]).unwrap();
        let g = r_graph(&w).unwrap();
        let adj = g.adjacency();
        let start: Vec<usize> = ["x", "z"].iter().filter_map(|s| g.vertices.iter().position(|v| v.as_str() == *s)).collect();
        let mut seen: BTreeSet<usize> = start.iter().copied().collect();
        let mut q: VecDeque<usize> = start.into_iter().collect();
        while let Some(v) = q.pop_front() {
            for &(_, u) in &adj[v] {
                if seen.insert(u) {
                    q.push_back(u);
                }
            }
        }
        if seen.iter().any(|&v| g.vertices[v].as_str().ends_with('\'')) {
            bad.push(w.to_string());
        }
    }
    bad
}

/// p-value of Pearson's test, `per` draws per form, against the 162
/// canonical forms of length 4.
pub fn sampler_chi_square_p(seed: u64, per: u64) -> f64 {
    let forms: Vec<CanonicalWord> = (0..162).map(|i| unrank(4, i)).collect();
    let mut counts = vec![0u64; forms.len()];
    for t in 0..per * 162 {
        let c = uniform_canonical(&mut trial_rng(seed, t), 4);
        counts[forms.iter().position(|f| *f == c).unwrap()] += 1;
    }
    let stat: f64 = counts.iter().map(|&c| (c as f64 - per as f64).powi(2) / per as f64).sum();
    1.0 - ChiSquared::new(161.0).unwrap().cdf(stat)
}

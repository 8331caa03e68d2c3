//! `R` of a consecutive subword sits inside `R` of the word.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{seam_key, RGraph};
use crate::cobordism::{word_cobordism, Word};
use crate::complex::{Occurrence, Reading};
use crate::error::RGraphError;
use crate::label::{Label, SignedLabel};

/// Injection of `R(w[start..=end])` into `R(w)` (1-based, inclusive).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphEmbedding {
    pub start: usize,
    pub end: usize,
    pub sub: RGraph,
    pub host: RGraph,
    /// Every label of the sub body to its host label.
    pub label_map: BTreeMap<Label, SignedLabel>,
    pub vertex_map: BTreeMap<Label, Label>,
    /// `edge_map[i]` is the host edge of sub edge `i`.
    pub edge_map: Vec<usize>,
}

impl GraphEmbedding {
    /// Injective on vertices and edges, and compatible with incidence.
    pub fn is_monomorphism(&self) -> bool {
        let mut vs: Vec<&Label> = self.vertex_map.values().collect();
        vs.sort();
        vs.dedup();
        let mut es = self.edge_map.clone();
        es.sort_unstable();
        es.dedup();
        let incident = self.sub.edges.iter().zip(&self.edge_map).all(|(c, &e)| {
            let (a, b) = c.ends();
            let (x, y) = (&self.vertex_map[&a], &self.vertex_map[&b]);
            let (u, v) = self.host.edges[e].ends();
            (x, y) == (&u, &v) || (x, y) == (&v, &u)
        });
        vs.len() == self.vertex_map.len() && es.len() == self.edge_map.len() && incident
    }
}

pub fn subword_embedding(w: &Word, start: usize, end: usize) -> Result<GraphEmbedding, RGraphError> {
    let bad = || RGraphError::BadRange { start, end, len: w.len() };
    let sub_word = w.subword(start, end).ok_or_else(bad)?;
    let host_body = word_cobordism(w)?;
    let sub_body = word_cobordism(&sub_word)?;
    let fail = |m: String| RGraphError::EmbeddingFailed(m);

    // Both bodies name letter j's generator labels through letter_maps.
    let mut phi: HashMap<Label, SignedLabel> = HashMap::new();
    for (j, m) in sub_body.letter_maps().iter().enumerate() {
        let hm = &host_body.letter_maps()[start - 1 + j];
        for (core, s) in m {
            let h = hm.get(core).ok_or_else(|| fail(format!("letter {} lacks {core}", start + j)))?;
            let img = h.clone().signed(s.negative);
            match phi.get(&s.label) {
                Some(prev) if *prev != img => {
                    return Err(fail(format!("{} maps to both {prev} and {img}", s.label)));
                }
                _ => {
                    phi.insert(s.label.clone(), img);
                }
            }
        }
    }

    let hp = host_body.body();
    let sp = sub_body.body();
    let host_index: HashMap<[SignedLabel; 3], usize> =
        hp.triangles().iter().enumerate().map(|(i, t)| (t.canonical(), i)).collect();
    // For each sub triangle: host triangle and the reading of it that
    // matches the sub triangle's stored order.
    let mut tri_map = Vec::with_capacity(sp.len());
    for (i, t) in sp.triangles().iter().enumerate() {
        let img = t.map(|s| phi[&s.label].clone().signed(s.negative));
        let &h = host_index.get(&img.canonical()).ok_or_else(|| fail(format!("image of triangle {i} missing")))?;
        let ht = &hp.triangles()[h];
        let r = Reading::ALL
            .into_iter()
            .find(|&r| (0..3).all(|k| ht.read(r, k) == img.sides[k]))
            .expect("same canonical form");
        tri_map.push((h, r));
    }
    let occ = |o: Occurrence| {
        let (h, r) = tri_map[o.triangle];
        Occurrence { triangle: h, position: r.position(o.position) }
    };

    let sub = RGraph::of_presentation(sp);
    let host = RGraph::of_presentation(hp);
    let host_keys: HashMap<_, usize> = host.edges.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
    let mut edge_map = Vec::with_capacity(sub.edges.len());
    for c in &sub.edges {
        let key = seam_key(c.diagonal.map(occ), c.waist.map(occ));
        let &e = host_keys.get(&key).ok_or_else(|| fail(format!("cylinder {:?} has no image", c.ends())))?;
        edge_map.push(e);
    }
    let vertex_map = sub.vertices.iter().map(|v| (v.clone(), phi[v].label.clone())).collect();
    let label_map = phi.into_iter().collect();
    let emb = GraphEmbedding { start, end, sub, host, label_map, vertex_map, edge_map };
    if !emb.is_monomorphism() {
        return Err(fail("induced map is not injective".into()));
    }
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_word_is_identity() {
        let w: Word = "X01.Y00.X10".parse().unwrap();
        let e = subword_embedding(&w, 1, 3).unwrap();
        assert!(e.vertex_map.iter().all(|(a, b)| a == b));
        assert_eq!(e.edge_map, (0..e.host.edges.len()).collect::<Vec<_>>());
    }

    #[test]
    fn bad_range() {
        let w: Word = "X00.X00".parse().unwrap();
        assert!(matches!(subword_embedding(&w, 2, 3), Err(RGraphError::BadRange { .. })));
        assert!(matches!(subword_embedding(&w, 0, 1), Err(RGraphError::BadRange { .. })));
    }
}

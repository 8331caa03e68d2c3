//! Moving placements between presentations along label maps.

use std::collections::{BTreeMap, HashMap};

use crate::cobordism::{ClosedComplex, Word};
use crate::complex::{Reading, TrianglePresentation};
use crate::label::{Label, SignedLabel};
use crate::rgraph::{Placement, Strip};

/// For each triangle of `from`: its image triangle in `to` and the reading
/// of the image that lists the mapped sides in stored order.
pub(crate) fn triangle_map(
    from: &TrianglePresentation,
    to: &TrianglePresentation,
    f: &BTreeMap<Label, SignedLabel>,
) -> Option<Vec<(usize, Reading)>> {
    let index: HashMap<[SignedLabel; 3], usize> =
        to.triangles().iter().enumerate().map(|(i, t)| (t.canonical(), i)).collect();
    from.triangles()
        .iter()
        .map(|t| {
            let img = t.map(|s| f.get(&s.label).map(|x| x.clone().signed(s.negative)).unwrap_or_else(|| s.clone()));
            let &h = index.get(&img.canonical())?;
            let ht = &to.triangles()[h];
            let r = Reading::ALL.into_iter().find(|&r| (0..3).all(|k| ht.read(r, k) == img.sides[k]))?;
            Some((h, r))
        })
        .collect()
}

pub(crate) fn map_placement(tm: &[(usize, Reading)], pl: Placement) -> Placement {
    let (h, b) = tm[pl.triangle];
    let r = pl.reading;
    Placement { triangle: h, reading: Reading { start: b.position(r.position(0)), reflected: b.reflected ^ r.reflected } }
}

pub(crate) fn map_strip(tm: &[(usize, Reading)], s: &Strip) -> Strip {
    Strip {
        up: s.up.iter().map(|&p| map_placement(tm, p)).collect(),
        down: s.down.iter().map(|&p| map_placement(tm, p)).collect(),
    }
}

/// Isomorphism from the closed complex of `w.rotate(k)` onto that of `w`,
/// matching letter `j` of the rotation with letter `j + k` of `w`.
pub fn rotation_map(w: &Word, k: usize, rotated: &ClosedComplex, base: &ClosedComplex) -> Option<BTreeMap<Label, SignedLabel>> {
    let n = w.len();
    let mut f: BTreeMap<Label, SignedLabel> = BTreeMap::new();
    for (j, m) in rotated.letter_maps.iter().enumerate() {
        let target = &base.letter_maps[(j + k) % n];
        for (core, s) in m {
            let img = target.get(core)?.clone().signed(s.negative);
            if let Some(prev) = f.insert(s.label.clone(), img.clone()) {
                if prev != img {
                    return None;
                }
            }
        }
    }
    let labels = rotated.presentation.labels();
    (labels.iter().all(|l| f.contains_key(l)) && triangle_map(&rotated.presentation, &base.presentation, &f).is_some())
        .then_some(f)
}

//! Presentations of the fundamental group and their abelianizations.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::presentation::TrianglePresentation;
use super::vertex::vertex_partition;
use crate::error::ComplexError;
use crate::label::{Label, SignedLabel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<Label>,
    /// Labels of the spanning tree of the 1-skeleton (set to 1).
    pub tree: Vec<Label>,
    /// One cyclic word per triangle, tree letters deleted.
    pub relators: Vec<Vec<SignedLabel>>,
}

impl GroupPresentation {
    /// Relation matrix over the integers: one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generators.len()];
                for s in r {
                    let j = self.generators.binary_search(&s.label).expect("relator letter is a generator");
                    row[j] += if s.negative { -1 } else { 1 };
                }
                row
            })
            .collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let m: Vec<Vec<BigInt>> =
            self.relation_matrix().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let diag = smith_diagonal(m, self.generators.len());
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).map(|d| d.to_string()).collect();
        Abelianization { free_rank: self.generators.len() - rank, torsion }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(Label::to_string).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| if r.is_empty() { "1".to_string() } else { r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ") })
            .collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// `Z^free_rank ⊕ ⊕ Z/t` for the listed torsion coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

/// Breadth-first spanning tree of the 1-skeleton from vertex 0, scanning
/// labels in natural order; triangles give the relators.
pub fn group_presentation(p: &TrianglePresentation) -> Result<GroupPresentation, ComplexError> {
    if p.is_empty() {
        return Err(ComplexError::EmptyInput);
    }
    let vp = vertex_partition(p);
    let nv = vp.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for l in 0..p.labels().len() {
        incident[vp.tail(l)].push(l);
        if vp.head(l) != vp.tail(l) {
            incident[vp.head(l)].push(l);
        }
    }
    let mut seen = vec![false; nv];
    let mut in_tree = vec![false; p.labels().len()];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(v) = q.pop_front() {
        for &l in &incident[v] {
            let w = if vp.tail(l) == v { vp.head(l) } else { vp.tail(l) };
            if !seen[w] {
                seen[w] = true;
                in_tree[l] = true;
                q.push_back(w);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(ComplexError::Disconnected);
    }
    let generators = (0..p.labels().len()).filter(|&l| !in_tree[l]).map(|l| p.label(l).clone()).collect();
    let tree = (0..p.labels().len()).filter(|&l| in_tree[l]).map(|l| p.label(l).clone()).collect();
    let relators = (0..p.len())
        .map(|t| p.sides(t).iter().filter(|s| !in_tree[s.label]).map(|&s| p.signed(s)).collect())
        .collect();
    Ok(GroupPresentation { generators, tree, relators })
}

/// Diagonal of the Smith normal form (sorted by divisibility, zeros last).
fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if !m[i][j].is_zero() && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        loop {
            let p = m[r0][c0].clone();
            let mut changed = false;
            for i in r0 + 1..rows {
                if !m[i][c0].is_zero() {
                    let q = &m[i][c0] / &p;
                    for j in c0..cols {
                        let v = &q * &m[r0][j];
                        m[i][j] -= v;
                    }
                    changed |= !m[i][c0].is_zero();
                }
            }
            for j in c0 + 1..cols {
                if !m[r0][j].is_zero() {
                    let q = &m[r0][j] / &p;
                    for i in r0..rows {
                        let v = &q * &m[i][c0];
                        m[i][j] -= v;
                    }
                    changed |= !m[r0][j].is_zero();
                }
            }
            if !changed {
                // Ensure the pivot divides the rest of the block.
                let bad = (r0 + 1..rows).flat_map(|i| (c0 + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !(&m[i][j] % &p).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in c0..cols {
                            let v = m[i][j].clone();
                            m[r0][j] += v;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column r0/c0 to the pivot.
            let mut best = (r0, c0);
            for i in r0..rows {
                if !m[i][c0].is_zero() && m[i][c0].abs() < m[best.0][best.1].abs() {
                    best = (i, c0);
                }
            }
            for j in c0..cols {
                if !m[r0][j].is_zero() && m[r0][j].abs() < m[best.0][best.1].abs() {
                    best = (r0, j);
                }
            }
            m.swap(r0, best.0);
            for row in m.iter_mut() {
                row.swap(c0, best.1);
            }
        }
        diag.push(m[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    diag.sort();
    diag.extend(std::iter::repeat_n(BigInt::zero(), cols - diag.len()));
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folded_triangle_gives_one_relator() {
        let p = TrianglePresentation::parse("(e,e,f)").unwrap();
        let g = group_presentation(&p).unwrap();
        assert_eq!(g.relators.len(), 1);
        assert!(g.relators.iter().all(|r| r.len() <= 3));
    }

    #[test]
    fn torus_abelianizes_to_z2() {
        // Two triangles glued into a torus: a b c^-1 and ... with one vertex.
        let p = TrianglePresentation::parse("(a,b,-c),(c,-a,-b)").unwrap();
        let g = group_presentation(&p).unwrap();
        assert_eq!(g.generators.len(), 3);
        assert_eq!(g.abelianization(), Abelianization { free_rank: 2, torsion: vec![] });
    }

    #[test]
    fn smith_form_finds_torsion() {
        let m = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
        assert_eq!(smith_diagonal(m, 2), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn disconnected_complex_is_rejected() {
        let p = TrianglePresentation::parse("(a,b,c),(d,e,f)").unwrap();
        assert_eq!(group_presentation(&p), Err(ComplexError::Disconnected));
    }
}

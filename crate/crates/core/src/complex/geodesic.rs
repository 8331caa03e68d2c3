//! Local geodesics: closed edge paths making angle at least π at every
//! vertex they pass through.

use super::presentation::{Side, TrianglePresentation};
use super::vertex::{vertex_partition, EdgeEnd, LinkDistances, VertexPartition};
use crate::error::ComplexError;
use crate::label::{Label, SignedLabel};

/// Corners subtend π/3, so angle π is link distance 3.
pub const GEODESIC_LINK_DISTANCE: u32 = 3;

/// Precomputed vertex and link data for repeated geodesic queries.
pub struct GeodesicOracle<'a> {
    p: &'a TrianglePresentation,
    vp: VertexPartition,
    dist: LinkDistances,
}

impl<'a> GeodesicOracle<'a> {
    pub fn new(p: &'a TrianglePresentation) -> Self {
        GeodesicOracle { p, vp: vertex_partition(p), dist: LinkDistances::new(p) }
    }

    pub fn partition(&self) -> &VertexPartition {
        &self.vp
    }

    pub fn distances(&self) -> &LinkDistances {
        &self.dist
    }

    fn sides(&self, path: &[SignedLabel]) -> Result<Vec<Side>, ComplexError> {
        path.iter().map(|s| self.p.side_id(s).ok_or_else(|| ComplexError::UnknownLabel(s.label.clone()))).collect()
    }

    /// Link distance at the junction between `a` and the following side `b`,
    /// or `None` if `a` does not end where `b` starts.
    pub fn junction(&self, a: Side, b: Side) -> Option<u32> {
        let (out, inn) = (EdgeEnd::out_of(a), EdgeEnd::into(b));
        (self.vp.class_of(out) == self.vp.class_of(inn)).then(|| self.dist.get(out, inn))
    }

    pub fn check(&self, path: &[SignedLabel]) -> Result<bool, ComplexError> {
        if path.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let sides = self.sides(path)?;
        let n = sides.len();
        let mut geodesic = true;
        for i in 0..n {
            match self.junction(sides[i], sides[(i + 1) % n]) {
                None => return Err(ComplexError::NonComposable(i)),
                Some(d) => geodesic &= d >= GEODESIC_LINK_DISTANCE,
            }
        }
        Ok(geodesic)
    }

    pub fn is_closed_path(&self, path: &[Side]) -> bool {
        let n = path.len();
        n > 0 && (0..n).all(|i| self.junction(path[i], path[(i + 1) % n]).is_some())
    }

    pub fn is_geodesic(&self, path: &[Side]) -> bool {
        let n = path.len();
        n > 0 && (0..n).all(|i| self.junction(path[i], path[(i + 1) % n]).is_some_and(|d| d >= GEODESIC_LINK_DISTANCE))
    }

    /// Smallest (in sign order) assignment of orientations turning the
    /// label sequence into a closed local geodesic.
    pub fn orient(&self, labels: &[Label]) -> Result<Option<Vec<SignedLabel>>, ComplexError> {
        let ids: Vec<usize> = labels
            .iter()
            .map(|l| self.p.label_id(l).ok_or_else(|| ComplexError::UnknownLabel(l.clone())))
            .collect::<Result<_, _>>()?;
        let n = ids.len();
        if n == 0 || n > 24 {
            return Err(ComplexError::EmptyInput);
        }
        for mask in 0u32..(1 << n) {
            let sides: Vec<Side> = ids.iter().enumerate().map(|(i, &l)| Side { label: l, negative: mask >> i & 1 == 1 }).collect();
            if self.is_geodesic(&sides) {
                return Ok(Some(sides.iter().map(|&s| self.p.signed(s)).collect()));
            }
        }
        Ok(None)
    }
}

/// True iff the closed path turns by link distance ≥ 3 at every junction.
pub fn local_geodesic_check(p: &TrianglePresentation, path: &[SignedLabel]) -> Result<bool, ComplexError> {
    GeodesicOracle::new(p).check(path)
}

pub fn orient_geodesic(p: &TrianglePresentation, labels: &[Label]) -> Result<Option<Vec<SignedLabel>>, ComplexError> {
    GeodesicOracle::new(p).orient(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> Vec<SignedLabel> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn backtracking_is_not_geodesic() {
        let p = TrianglePresentation::parse("(e,f,g),(e,g,f)").unwrap();
        assert_eq!(local_geodesic_check(&p, &path("e -e")), Ok(false));
    }

    #[test]
    fn non_composable_path_is_an_error() {
        let p = TrianglePresentation::parse("(e,f,g)").unwrap();
        assert_eq!(local_geodesic_check(&p, &path("e g")), Err(ComplexError::NonComposable(0)));
    }
}

use serde::{Deserialize, Serialize};

use super::CensusTable;
use crate::error::CensusError;

/// Least-squares line through `(n, log(|E'_n|/|E_n|))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub rows: Vec<usize>,
    /// `log((1+√3)/3)`.
    pub target: f64,
}

impl Fit {
    pub fn deviation(&self) -> f64 {
        (self.slope - self.target).abs()
    }
}

pub fn target_slope() -> f64 {
    ((1.0 + 3f64.sqrt()) / 3.0).ln()
}

/// Fit over the rows with `n` in `range`, or every row if `None`.
pub fn convergence_fit(table: &CensusTable, range: Option<(usize, usize)>) -> Result<Fit, CensusError> {
    let rows: Vec<_> = table.rows.iter().filter(|r| range.is_none_or(|(a, b)| (a..=b).contains(&r.n))).collect();
    if rows.len() < 5 {
        return Err(CensusError::InvalidArgument(format!("{} rows; need at least 5", rows.len())));
    }
    if rows.iter().any(|r| r.avoiding == num_bigint::BigUint::ZERO) {
        return Err(CensusError::DegenerateFit("a row has probability 1".into()));
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.avoiding_fraction().ln())).collect();
    if pts.iter().all(|p| p.1 == pts[0].1) {
        return Err(CensusError::DegenerateFit("constant probabilities".into()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(Fit { slope, intercept: my - slope * mx, rows: rows.iter().map(|r| r.n).collect(), target: target_slope() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{enumeration_table, recurrence_table, sphere_size, CensusMode, CensusPattern, CensusRow, Semantics};

    #[test]
    fn recurrence_slope() {
        let t = recurrence_table(25, CensusPattern::Y00Y00).unwrap();
        let f = convergence_fit(&t, Some((5, 25))).unwrap();
        assert!(f.deviation() < 0.005, "{f:?}");
    }

    #[test]
    fn constant_table_is_degenerate() {
        let rows = (1..=6)
            .map(|n| CensusRow { n, total: sphere_size(n), avoiding: sphere_size(n), terminal: 0u32.into() })
            .collect();
        let t = CensusTable { pattern: CensusPattern::Y00Y00, mode: CensusMode::Recurrence, rows, derivation: vec![] };
        assert!(matches!(convergence_fit(&t, None), Err(CensusError::DegenerateFit(_))));
        let short = CensusTable { rows: t.rows[..3].to_vec(), ..t };
        assert!(convergence_fit(&short, None).is_err());
    }

    #[test]
    fn class_enumeration_slope() {
        let t = enumeration_table(10, CensusPattern::Y00Y00, Semantics::Class).unwrap();
        let f = convergence_fit(&t, Some((4, 10))).unwrap();
        assert!(f.deviation() < 0.05, "{f:?}");
    }
}

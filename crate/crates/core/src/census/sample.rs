use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{contains, CensusPattern, Semantics};
use crate::certificates::{exp_rank_certificate, has_forbidden_pattern, mesoscopic_certificate, z2_certificate, Z2Bounds, Z2Outcome};
use crate::cobordism::{CanonicalWord, Letter, Word};
use crate::error::CensusError;

/// Name of the generator behind every random draw.
pub const RNG_NAME: &str = "ChaCha8Rng";

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Generator for trial `trial` of a run seeded with `seed`: one ChaCha
/// stream per trial, so trials can run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniform canonical form of length `n`. Canonical forms are free
/// sequences of letters where each `X` carries one free bit, plus one free
/// closing bit, so drawing each letter uniformly from {X|0, X|1, Y} and the
/// closing bit uniformly is uniform on all `2·3ⁿ` of them.
pub fn uniform_canonical<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CanonicalWord {
    let mut letters = Vec::with_capacity(n);
    let mut chain = vec![false; n + 1];
    for bit in chain.iter_mut().take(n) {
        let d = rng.random_range(0..3u8);
        letters.push(if d == 2 { Letter::Y } else { Letter::X });
        *bit = d == 1;
    }
    chain[n] = rng.random();
    CanonicalWord { letters, chain }
}

pub fn uniform_sample(n: usize, seed: u64) -> Result<Word, CensusError> {
    if n == 0 {
        return Err(CensusError::InvalidArgument("n must be positive".into()));
    }
    Ok(uniform_canonical(&mut trial_rng(seed, 0), n).representative())
}

/// What a Monte Carlo trial tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    /// A verified flat torus.
    Z2,
    /// A verified pair of intersecting cycles.
    ExpRank,
    /// One of the four forbidden patterns, scanned cyclically.
    ExpRankPatterns,
    /// The `ω₀` replay.
    Meso,
    /// Linear containment of a census pattern.
    Contains(CensusPattern, Semantics),
}

impl Property {
    /// Outcome of one trial; `None` means inconclusive.
    pub fn test(&self, c: &CanonicalWord) -> Option<bool> {
        let w = c.representative();
        match *self {
            Property::Z2 => match z2_certificate(&w, &Z2Bounds::default()) {
                Z2Outcome::Witness(_) => Some(true),
                Z2Outcome::Inconclusive { .. } => None,
            },
            Property::ExpRank => Some(exp_rank_certificate(&w).is_some()),
            Property::ExpRankPatterns => Some(has_forbidden_pattern(c, true)),
            Property::Meso => Some(mesoscopic_certificate(&w).is_some()),
            Property::Contains(p, s) => Some(contains(c, p, s)),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Z2 => f.write_str("z2"),
            Property::ExpRank => f.write_str("exprank"),
            Property::ExpRankPatterns => f.write_str("exprank-patterns"),
            Property::Meso => f.write_str("meso"),
            Property::Contains(p, s) => write!(f, "contains:{p}:{s}"),
        }
    }
}

impl FromStr for Property {
    type Err = CensusError;

    /// `z2`, `exprank`, `exprank-patterns`, `meso`, `contains:<pattern>[:<semantics>]`.
    /// `exprank-pattern-a` is `contains:Y00Y00:representative`, the reading
    /// of pattern (a) under which `|E'_2| = 17`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "z2" => Ok(Property::Z2),
            "exprank" => Ok(Property::ExpRank),
            "exprank-patterns" | "exprank-pattern" => Ok(Property::ExpRankPatterns),
            "meso" => Ok(Property::Meso),
            "exprank-pattern-a" => Ok(Property::Contains(CensusPattern::Y00Y00, Semantics::Representative)),
            _ => {
                let mut parts = lower.strip_prefix("contains:").ok_or_else(|| bad(s))?.split(':');
                let p = parts.next().ok_or_else(|| bad(s))?.parse()?;
                let sem = parts.next().map(str::parse).transpose()?.unwrap_or(Semantics::Representative);
                Ok(Property::Contains(p, sem))
            }
        }
    }
}

fn bad(s: &str) -> CensusError {
    CensusError::InvalidArgument(format!("unknown property {s:?}"))
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let z2 = z * z;
    let den = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / den;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / den;
    // At k = 0 or k = n the bound equals p up to rounding.
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub property: String,
    pub n: usize,
    pub trials: u64,
    pub successes: u64,
    /// Trials counted as failures because the search gave up.
    pub inconclusive: u64,
    pub point: f64,
    pub lower: f64,
    pub upper: f64,
    pub confidence: f64,
    pub seed: u64,
    pub rng: String,
}

impl Estimate {
    pub fn covers(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }
}

pub fn monte_carlo(n: usize, trials: u64, property: Property, seed: u64) -> Result<Estimate, CensusError> {
    if trials == 0 {
        return Err(CensusError::InvalidArgument("trials must be positive".into()));
    }
    if n == 0 {
        return Err(CensusError::InvalidArgument("n must be positive".into()));
    }
    let (successes, inconclusive) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let c = uniform_canonical(&mut trial_rng(seed, t), n);
            match property.test(&c) {
                Some(true) => (1, 0),
                Some(false) => (0, 0),
                None => (0, 1),
            }
        })
        .reduce(|| (0u64, 0u64), |a, b| (a.0 + b.0, a.1 + b.1));
    let (lower, upper) = wilson_interval(successes, trials, Z_95);
    Ok(Estimate {
        property: property.to_string(),
        n,
        trials,
        successes,
        inconclusive,
        point: successes as f64 / trials as f64,
        lower,
        upper,
        confidence: 0.95,
        seed,
        rng: RNG_NAME.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(uniform_sample(9, 42).unwrap(), uniform_sample(9, 42).unwrap());
        assert!(uniform_sample(0, 1).is_err());
    }

    #[test]
    fn one_letter_frequencies() {
        let draws = 60_000u64;
        let mut counts = std::collections::BTreeMap::new();
        for t in 0..draws {
            *counts.entry(uniform_canonical(&mut trial_rng(7, t), 1).representative()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 6);
        let sigma = (draws as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
        for (_, c) in counts {
            assert!((c as f64 - draws as f64 / 6.0).abs() < 3.0 * sigma);
        }
    }

    #[test]
    fn wilson_contains_point() {
        for (k, n) in [(0, 10), (3, 10), (10, 10), (555, 10_000)] {
            let (lo, hi) = wilson_interval(k, n, Z_95);
            let p = k as f64 / n as f64;
            assert!(lo <= p && p <= hi);
        }
    }

    #[test]
    fn zero_trials() {
        assert!(monte_carlo(2, 0, Property::ExpRank, 1).is_err());
    }

    #[test]
    fn property_names() {
        for s in ["z2", "exprank", "exprank-patterns", "meso", "contains:Y00Y00:class", "contains:omega0:representative"] {
            let p: Property = s.parse().unwrap();
            assert_eq!(p.to_string().to_ascii_lowercase(), s.to_ascii_lowercase());
        }
        assert!("nope".parse::<Property>().is_err());
    }
}

//! Counting over `E`, the canonical forms of the semigroup: sphere sizes,
//! pattern-avoiding counts and their recurrences, uniform sampling and
//! Monte Carlo estimates.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cobordism::{CanonicalWord, Letter};
use crate::error::CensusError;

mod enumerate;
mod fit;
mod sample;

pub use enumerate::{class_contains_at, enumerate_counts, enumeration_table, occurrence_ends, unrank, Counts, ENUMERATION_BOUND};
pub use fit::{convergence_fit, target_slope, Fit};
pub use sample::{monte_carlo, trial_rng, uniform_canonical, uniform_sample, wilson_interval, Estimate, Property, RNG_NAME, Z_95};

/// One letter of a pattern; `None` twists match either value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub letter: Letter,
    pub left: Option<bool>,
    pub right: Option<bool>,
}

impl Slot {
    const Y00: Slot = Slot { letter: Letter::Y, left: Some(false), right: Some(false) };
    const Y0S: Slot = Slot { letter: Letter::Y, left: Some(false), right: None };

    pub fn matches(&self, g: crate::cobordism::Generator) -> bool {
        g.letter == self.letter && self.left.is_none_or(|b| b == g.left) && self.right.is_none_or(|b| b == g.right)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CensusPattern {
    /// `Y00·Y00`.
    Y00Y00,
    /// `Y0*·Y0*`.
    Y0sY0s,
    /// `ω₀ = Y00·Y00·Y00`.
    Omega0,
}

impl CensusPattern {
    pub fn slots(self) -> &'static [Slot] {
        match self {
            CensusPattern::Y00Y00 => &[Slot::Y00, Slot::Y00],
            CensusPattern::Y0sY0s => &[Slot::Y0S, Slot::Y0S],
            CensusPattern::Omega0 => &[Slot::Y00, Slot::Y00, Slot::Y00],
        }
    }

    /// Number of letters.
    pub fn letter_count(self) -> usize {
        self.slots().len()
    }
}

impl fmt::Display for CensusPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CensusPattern::Y00Y00 => "Y00Y00",
            CensusPattern::Y0sY0s => "Y0*Y0*",
            CensusPattern::Omega0 => "omega0",
        })
    }
}

impl FromStr for CensusPattern {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['.', '·'], "").as_str() {
            "y00y00" => Ok(CensusPattern::Y00Y00),
            "y0*y0*" | "y0sy0s" => Ok(CensusPattern::Y0sY0s),
            "omega0" | "w0" | "ω₀" | "y00y00y00" => Ok(CensusPattern::Omega0),
            _ => Err(CensusError::InvalidArgument(format!("unknown pattern {s:?}"))),
        }
    }
}

/// What it means for a class to contain a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Semantics {
    /// The designated representative contains it letter for letter.
    Representative,
    /// Some word of the class contains it letter for letter.
    Class,
}

impl FromStr for Semantics {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "representative" | "rep" => Ok(Semantics::Representative),
            "class" => Ok(Semantics::Class),
            _ => Err(CensusError::InvalidArgument(format!("unknown semantics {s:?}"))),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Representative => "representative",
            Semantics::Class => "class",
        })
    }
}

/// Does `c` contain `p` at 0-based position `k`?
pub fn contains_at(c: &CanonicalWord, p: CensusPattern, k: usize, sem: Semantics) -> bool {
    match sem {
        Semantics::Representative => {
            let slots = p.slots();
            let rep = c.representative();
            k + slots.len() <= c.len() && slots.iter().zip(&rep.letters()[k..]).all(|(s, &g)| s.matches(g))
        }
        Semantics::Class => class_contains_at(c, p.slots(), k),
    }
}

pub fn contains(c: &CanonicalWord, p: CensusPattern, sem: Semantics) -> bool {
    (0..c.len()).any(|k| contains_at(c, p, k, sem))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CensusMode {
    Recurrence,
    Enumeration(Semantics),
}

impl fmt::Display for CensusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusMode::Recurrence => f.write_str("recurrence"),
            CensusMode::Enumeration(s) => write!(f, "enumeration-{s}"),
        }
    }
}

/// `|E_n|`, `|E'_n|` (avoiding) and `|E''_n|` (first occurrence ends at `n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub total: BigUint,
    pub avoiding: BigUint,
    pub terminal: BigUint,
}

impl CensusRow {
    /// `1 − |E'_n|/|E_n|`, the probability of containing the pattern.
    pub fn probability(&self) -> BigRational {
        BigRational::one() - BigRational::new(BigInt::from(self.avoiding.clone()), BigInt::from(self.total.clone()))
    }

    pub fn avoiding_fraction(&self) -> f64 {
        ratio_f64(&self.avoiding, &self.total)
    }

    /// [`probability`](Self::probability) as a float, rounded once.
    pub fn containing_fraction(&self) -> f64 {
        ratio_f64(&(&self.total - &self.avoiding), &self.total)
    }
}

pub(crate) fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    // Shift both down so that the quotient survives the conversion.
    let shift = b.bits().saturating_sub(1000);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusTable {
    pub pattern: CensusPattern,
    pub mode: CensusMode,
    pub rows: Vec<CensusRow>,
    /// How the relations were obtained, for audit.
    pub derivation: Vec<String>,
}

impl CensusTable {
    pub fn row(&self, n: usize) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// `|E'_n| / |E'_{n-1}|`.
    pub fn growth_ratio(&self, n: usize) -> Option<f64> {
        let (a, b) = (self.row(n)?, self.row(n.checked_sub(1)?)?);
        (!b.avoiding.is_zero()).then(|| ratio_f64(&a.avoiding, &b.avoiding))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,E_n,E'_n,E''_n,prob_num,prob_den,prob_float\n");
        for r in &self.rows {
            let p = r.probability();
            let pf = r.containing_fraction();
            out.push_str(&format!("{},{},{},{},{},{},{}\n", r.n, r.total, r.avoiding, r.terminal, p.numer(), p.denom(), pf));
        }
        out
    }
}

/// `|E_n| = 2·3ⁿ`.
pub fn sphere_size(n: usize) -> BigUint {
    BigUint::from(2u32) * BigUint::from(3u32).pow(n as u32)
}

/// The two relations obtained by appending one letter, and by appending the
/// pattern itself to an avoiding word:
///
/// ```text
/// |E'_{n+1}| + |E''_{n+1}| = 3|E'_n|
/// |E''_{n+m}| + … + |E''_{n+1}| = |E'_n|      (m = pattern length)
/// ```
///
/// The second needs the pattern to be a power of one letter, so that the
/// first occurrence in `w·pattern` can end at any of the last `m` positions.
pub fn recurrence_table(n_max: usize, pattern: CensusPattern) -> Result<CensusTable, CensusError> {
    if n_max == 0 {
        return Err(CensusError::InvalidArgument("n_max must be positive".into()));
    }
    let m = match pattern {
        CensusPattern::Y00Y00 => 2,
        CensusPattern::Omega0 => 3,
        CensusPattern::Y0sY0s => {
            return Err(CensusError::InvalidArgument("no recurrence for Y0*Y0*; use enumeration".into()));
        }
    };
    // Seeds: below length m nothing contains the pattern, and exactly one
    // word of length m is the pattern.
    let rows_wanted = n_max;
    let n_max = n_max.max(m);
    let mut avoiding: Vec<BigUint> = vec![BigUint::zero(); n_max + 1];
    let mut terminal: Vec<BigUint> = vec![BigUint::zero(); n_max + m + 1];
    for (n, a) in avoiding.iter_mut().enumerate().take(m).skip(1) {
        *a = sphere_size(n);
    }
    terminal[m] = BigUint::one();
    avoiding[m] = sphere_size(m) - 1u32;
    for n in 1..=n_max {
        // |E''_{n+m}| = |E'_n| − Σ_{i=1}^{m-1} |E''_{n+i}|
        let below: BigUint = (1..m).map(|i| &terminal[n + i]).sum();
        terminal[n + m] = &avoiding[n] - below;
        if n < n_max && n + 1 > m {
            avoiding[n + 1] = BigUint::from(3u32) * &avoiding[n] - &terminal[n + 1];
        }
    }
    let rows = (1..=rows_wanted)
        .map(|n| CensusRow { n, total: sphere_size(n), avoiding: avoiding[n].clone(), terminal: terminal[n].clone() })
        .collect();
    let tail: Vec<String> = (1..m).map(|i| format!("|E''_{{n+{i}}}|")).collect();
    let derivation = vec![
        format!("pattern {pattern}, length {m}"),
        format!("seeds: |E'_n| = 2·3^n for n < {m}; |E''_{m}| = 1; |E'_{m}| = 2·3^{m} − 1"),
        "append one letter to w in E'_n: the result is in E'_{n+1} or in E''_{n+1}, so |E'_{n+1}| + |E''_{n+1}| = 3|E'_n|".into(),
        format!(
            "append the pattern to w in E'_n: the first occurrence ends at n+{m} or, by overlap with a suffix of w, at one of n+1..n+{}, so |E''_{{n+{m}}}| + {} = |E'_n|",
            m - 1,
            tail.join(" + ")
        ),
        format!("characteristic polynomial: {}", poly_string(&growth_constants(pattern).char_poly)),
    ];
    Ok(CensusTable { pattern, mode: CensusMode::Recurrence, rows, derivation })
}

/// `a + b√3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSurd {
    pub a: i64,
    pub b: i64,
}

impl QuadSurd {
    pub const fn new(a: i64, b: i64) -> Self {
        QuadSurd { a, b }
    }

    pub fn scale(self, k: i64) -> Self {
        QuadSurd::new(self.a * k, self.b * k)
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * 3f64.sqrt()
    }
}

impl std::ops::Add for QuadSurd {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        QuadSurd::new(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Mul for QuadSurd {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        QuadSurd::new(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coef = |b: i64| if b.abs() == 1 { String::new() } else { b.abs().to_string() };
        match self.b {
            0 => write!(f, "{}", self.a),
            b if b < 0 => write!(f, "{}−{}√3", self.a, coef(b)),
            b => write!(f, "{}+{}√3", self.a, coef(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthConstants {
    pub pattern: CensusPattern,
    /// Growth of `|E_n|`.
    pub g: u32,
    /// Monic characteristic polynomial of the recurrence, leading
    /// coefficient first.
    pub char_poly: Vec<i64>,
    /// Exact roots when they lie in `Z[√3]`.
    pub exact_roots: Vec<QuadSurd>,
    /// Real roots, decreasing.
    pub real_roots: Vec<f64>,
    /// Growth of `|E'_n|`: the largest real root.
    pub g_prime: f64,
}

impl GrowthConstants {
    pub fn root_magnitudes(&self) -> Vec<f64> {
        self.real_roots.iter().map(|r| r.abs()).collect()
    }
}

/// Characteristic polynomial of `(E'_n, E''_{n+1}, …, E''_{n+m-1})` under
/// the two relations of [`recurrence_table`].
fn char_poly(m: usize) -> Vec<i64> {
    // Companion form: x^m = 2x^{m-1} + … + 2. Checked against the state
    // matrix determinant in the tests.
    let mut p = vec![1];
    p.extend(std::iter::repeat_n(-2, m));
    p
}

fn poly_string(p: &[i64]) -> String {
    let d = p.len() - 1;
    p.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let e = d - i;
            let mono = match e {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{e}"),
            };
            let coef = if c.abs() == 1 && e > 0 { String::new() } else { c.abs().to_string() };
            format!("{}{coef}{mono}", if c < 0 { "- " } else { "+ " })
        })
        .collect::<Vec<_>>()
        .join(" ")
        .trim_start_matches("+ ")
        .to_string()
}

fn eval(p: &[i64], x: f64) -> f64 {
    p.iter().fold(0.0, |acc, &c| acc * x + c as f64)
}

fn eval_surd(p: &[i64], x: QuadSurd) -> QuadSurd {
    p.iter().fold(QuadSurd::new(0, 0), |acc, &c| acc * x + QuadSurd::new(c, 0))
}

/// Real roots by sign changes on a fine grid, refined by bisection.
fn real_roots(p: &[i64]) -> Vec<f64> {
    let bound = 1.0 + p.iter().skip(1).map(|c| c.abs() as f64).fold(0.0, f64::max);
    let steps = 20_000;
    let h = 2.0 * bound / steps as f64;
    let mut roots = Vec::new();
    for i in 0..steps {
        let (mut a, mut b) = (-bound + i as f64 * h, -bound + (i + 1) as f64 * h);
        let (fa, fb) = (eval(p, a), eval(p, b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb < 0.0 {
            for _ in 0..200 {
                let c = 0.5 * (a + b);
                if eval(p, a) * eval(p, c) <= 0.0 {
                    b = c;
                } else {
                    a = c;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

pub fn growth_constants(pattern: CensusPattern) -> GrowthConstants {
    let m = pattern.letter_count();
    let poly = char_poly(m);
    let candidates = [QuadSurd::new(1, 1), QuadSurd::new(1, -1)];
    let exact_roots: Vec<QuadSurd> = candidates.into_iter().filter(|&r| eval_surd(&poly, r) == QuadSurd::new(0, 0)).collect();
    let real_roots = real_roots(&poly);
    let g_prime = real_roots[0];
    GrowthConstants { pattern, g: 3, char_poly: poly, exact_roots, real_roots, g_prime }
}

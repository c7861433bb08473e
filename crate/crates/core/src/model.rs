//! Input specifications for the two group families and their validation.
//!
//! A surface amalgam is `π1(S_g) *_{a^m = b^n} π1(S_h)` for essential simple
//! closed curves `a ⊂ S_g`, `b ⊂ S_h`. A Θ-graph group is the right-angled
//! Coxeter group whose nerve is the generalized Θ-graph `Θ(n_1, …, n_k)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which side of an amalgam a field belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("a"),
            Side::B => f.write_str("b"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum SpecError {
    #[error("genus of S_{side} is {genus}, need at least 2")]
    GenusTooSmall { side: Side, genus: u32 },
    #[error("curve {side}: split ({g1},{g2}) does not cut a genus {genus} surface into two nontrivial pieces")]
    BadSplit {
        side: Side,
        g1: u32,
        g2: u32,
        genus: u32,
    },
    #[error("winding degree on side {side} is {value}, need at least 1")]
    NonPositiveWinding { side: Side, value: u32 },
    #[error("Θ-graph has {k} arms, need at least 3")]
    ArmCount { k: usize },
    #[error("arm {index} has length {value}, need at least 1")]
    NonPositiveArm { index: usize, value: u32 },
}

/// Topological type of an essential simple closed curve on a closed orientable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveSpec {
    NonSeparating,
    /// The curve cuts the surface into pieces of genus `split[0]` and `split[1]`.
    Separating { split: [u32; 2] },
}

impl CurveSpec {
    pub fn separating(g1: u32, g2: u32) -> Self {
        CurveSpec::Separating { split: [g1, g2] }
    }

    pub fn is_separating(&self) -> bool {
        matches!(self, CurveSpec::Separating { .. })
    }

    /// A separating curve bounds a subsurface, so its class vanishes in
    /// `H_1(S; Z)` and in particular in every abelian quotient.
    pub fn is_null_homologous(&self) -> bool {
        self.is_separating()
    }

    /// Every curve type a genus `g` surface carries: the nonseparating type
    /// and each ordered split `(g1, g - g1)` with both sides of positive genus.
    pub fn all_for_genus(genus: u32) -> Vec<CurveSpec> {
        let mut out = vec![CurveSpec::NonSeparating];
        out.extend((1..genus).map(|g1| CurveSpec::separating(g1, genus - g1)));
        out
    }

    fn check(&self, side: Side, genus: u32, errors: &mut Vec<SpecError>) {
        if let CurveSpec::Separating { split: [g1, g2] } = *self {
            if g1 == 0 || g2 == 0 || g1 + g2 != genus {
                errors.push(SpecError::BadSplit {
                    side,
                    g1,
                    g2,
                    genus,
                });
            }
        }
    }
}

/// `π1(S_g) *_{⟨a^m = b^n⟩} π1(S_h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceAmalgamSpec {
    pub g: u32,
    pub h: u32,
    pub m: u32,
    pub n: u32,
    pub curve_a: CurveSpec,
    pub curve_b: CurveSpec,
}

impl SurfaceAmalgamSpec {
    /// Builds and validates a spec in one step.
    pub fn new(
        g: u32,
        h: u32,
        m: u32,
        n: u32,
        curve_a: CurveSpec,
        curve_b: CurveSpec,
    ) -> Result<Self, Vec<SpecError>> {
        SurfaceAmalgamSpec {
            g,
            h,
            m,
            n,
            curve_a,
            curve_b,
        }
        .validate()
    }

    /// Checks every invariant and normalizes so that `m <= n`, swapping the
    /// two factors when needed. Reports every violation, not just the first.
    pub fn validate(&self) -> Result<Self, Vec<SpecError>> {
        let mut errors = Vec::new();
        for (side, genus) in [(Side::A, self.g), (Side::B, self.h)] {
            if genus < 2 {
                errors.push(SpecError::GenusTooSmall { side, genus });
            }
        }
        for (side, value) in [(Side::A, self.m), (Side::B, self.n)] {
            if value == 0 {
                errors.push(SpecError::NonPositiveWinding { side, value });
            }
        }
        self.curve_a.check(Side::A, self.g, &mut errors);
        self.curve_b.check(Side::B, self.h, &mut errors);
        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(if self.m > self.n { self.swapped() } else { *self })
    }

    fn swapped(&self) -> Self {
        SurfaceAmalgamSpec {
            g: self.h,
            h: self.g,
            m: self.n,
            n: self.m,
            curve_a: self.curve_b,
            curve_b: self.curve_a,
        }
    }

    /// `χ(S_g)`.
    pub fn euler_a(&self) -> i64 {
        2 - 2 * i64::from(self.g)
    }

    /// `χ(S_h)`.
    pub fn euler_b(&self) -> i64 {
        2 - 2 * i64::from(self.h)
    }

    /// `N = mn - m - n + 1 = (m-1)(n-1)`, the rank of `π1(K_{m,n})`.
    pub fn rose_petals(&self) -> u64 {
        u64::from(self.m - 1) * u64::from(self.n - 1)
    }

    /// Recorded for reports only; nothing downstream depends on it.
    pub fn windings_coprime(&self) -> bool {
        num_integer::gcd(self.m, self.n) == 1
    }
}

/// The generalized Θ-graph `Θ(n_1, …, n_k)`: two vertices of valence `k`
/// joined by `k` arms, arm `i` subdivided into `n_i + 1` edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaGraphSpec {
    pub arms: Vec<u32>,
}

impl ThetaGraphSpec {
    pub fn new(arms: impl Into<Vec<u32>>) -> Result<Self, Vec<SpecError>> {
        ThetaGraphSpec { arms: arms.into() }.validate()
    }

    pub fn validate(&self) -> Result<Self, Vec<SpecError>> {
        let mut errors = Vec::new();
        if self.arms.len() < 3 {
            errors.push(SpecError::ArmCount { k: self.arms.len() });
        }
        for (index, &value) in self.arms.iter().enumerate() {
            if value == 0 {
                errors.push(SpecError::NonPositiveArm { index, value });
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        let mut arms = self.arms.clone();
        arms.sort_unstable();
        Ok(ThetaGraphSpec { arms })
    }

    pub fn k(&self) -> usize {
        self.arms.len()
    }

    /// Number of arms of length one.
    pub fn linear_degree(&self) -> usize {
        self.arms.iter().filter(|&&a| a == 1).count()
    }

    pub fn hyperbolic_degree(&self) -> usize {
        self.k() - self.linear_degree()
    }

    /// `n_1`, the shortest arm.
    pub fn shortest_arm(&self) -> u32 {
        self.arms[0]
    }

    pub fn hyperbolic_arms(&self) -> &[u32] {
        &self.arms[self.linear_degree()..]
    }
}

impl fmt::Display for ThetaGraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Θ(")?;
        for (i, a) in self.arms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Either family, as read from a JSON spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Spec {
    #[serde(rename = "C")]
    Amalgam(SurfaceAmalgamSpec),
    #[serde(rename = "W")]
    Theta(ThetaGraphSpec),
}

impl Spec {
    pub fn validate(&self) -> Result<Spec, Vec<SpecError>> {
        match self {
            Spec::Amalgam(s) => s.validate().map(Spec::Amalgam),
            Spec::Theta(t) => t.validate().map(Spec::Theta),
        }
    }
}

/// An ordered vector of orbifold Euler characteristics, each a quarter-integer
/// stored as its numerator over 4. Kept sorted non-increasing with every
/// entry `<= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EulerVector {
    quarters: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerVectorError {
    #[error("entry {index} is positive")]
    PositiveEntry { index: usize },
    #[error("entry {index} ({value}) is not a quarter-integer")]
    NotQuarterInteger { index: usize, value: String },
    #[error("malformed entry {0:?}, expected \"p/4\"")]
    Malformed(String),
}

impl EulerVector {
    /// Sorts the given quarter numerators into canonical order.
    pub fn from_quarters(mut quarters: Vec<i64>) -> Result<Self, EulerVectorError> {
        if let Some(index) = quarters.iter().position(|&q| q > 0) {
            return Err(EulerVectorError::PositiveEntry { index });
        }
        quarters.sort_unstable_by(|a, b| b.cmp(a));
        Ok(EulerVector { quarters })
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Result<Self, EulerVectorError> {
        Self::from_quarters(values.into_iter().map(|v| 4 * v).collect())
    }

    pub fn quarters(&self) -> &[i64] {
        &self.quarters
    }

    pub fn len(&self) -> usize {
        self.quarters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quarters.is_empty()
    }

    pub fn zero_count(&self) -> usize {
        self.quarters.iter().filter(|&&q| q == 0).count()
    }

    /// Sum of the entries, in quarters.
    pub fn sum_quarters(&self) -> i64 {
        self.quarters.iter().sum()
    }

    pub fn scaled(&self, k: i64) -> EulerVector {
        assert!(k > 0, "scale factor must be positive");
        EulerVector {
            quarters: self.quarters.iter().map(|q| q * k).collect(),
        }
    }

    /// Entries as `p/4` strings, the exchange format.
    pub fn to_strings(&self) -> Vec<String> {
        self.quarters.iter().map(|q| format!("{q}/4")).collect()
    }

    /// Parses `p/4` strings (or any `p/q` with `q | 4`, or bare integers).
    pub fn parse_strings<S: AsRef<str>>(items: &[S]) -> Result<Self, EulerVectorError> {
        let mut quarters = Vec::with_capacity(items.len());
        for (index, item) in items.iter().enumerate() {
            let text = item.as_ref().trim();
            let (num, den) = match text.split_once('/') {
                Some((p, q)) => (p.trim().parse::<i64>(), q.trim().parse::<i64>()),
                None => (text.parse::<i64>(), Ok(1)),
            };
            let (num, den) = match (num, den) {
                (Ok(p), Ok(q)) if q > 0 => (p, q),
                _ => return Err(EulerVectorError::Malformed(text.to_string())),
            };
            if (4 * num) % den != 0 {
                return Err(EulerVectorError::NotQuarterInteger {
                    index,
                    value: text.to_string(),
                });
            }
            quarters.push(4 * num / den);
        }
        Self::from_quarters(quarters)
    }
}

impl fmt::Display for EulerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &q) in self.quarters.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let g = num_integer::gcd(q, 4);
            match 4 / g {
                1 => write!(f, "{}", q / 4)?,
                d => write!(f, "{}/{}", q / g, d)?,
            }
        }
        f.write_str(")")
    }
}

impl Serialize for EulerVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EulerVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        EulerVector::parse_strings(&items).map_err(serde::de::Error::custom)
    }
}

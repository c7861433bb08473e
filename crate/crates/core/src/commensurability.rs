//! Euler characteristic vectors of Θ-graph groups and the commensurability
//! maps between amalgams and Θ-graph groups.
//!
//! Two Θ-graph groups with the same linear degree whose vectors satisfy
//! `K v = L w` are abstractly commensurable. The converse is open, so every
//! check here answers "commensurable" or "unknown", never "no".

use serde::Serialize;
use thiserror::Error;

use crate::model::{CurveSpec, EulerVector, SpecError, SurfaceAmalgamSpec, ThetaGraphSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommensurabilityError {
    #[error("entry {index} ({value}/4) does not come from an arm: 1 - 4χ must be a positive integer")]
    NotRealizable { index: usize, value: i64 },
    #[error("realized Θ-graph is invalid: {0:?}")]
    InvalidTheta(Vec<SpecError>),
    #[error("linear degree {ell} is below 2, expansion needs two linear arms")]
    LinearDegreeTooSmall { ell: usize },
}

/// `χ_i = (1 - n_i)/4` per arm. Arms are sorted ascending, so the vector
/// comes out in canonical non-increasing order.
pub fn euler_vector(theta: &ThetaGraphSpec) -> EulerVector {
    EulerVector::from_quarters(theta.arms.iter().map(|&n| 1 - i64::from(n)).collect())
        .expect("arms are at least 1, so every entry is non-positive")
}

/// Finds the reduced pair `(K, L)` with `K v = L w`, comparing sorted vectors
/// entry by entry. `None` when the vectors are not commensurable.
pub fn vectors_commensurable(v: &EulerVector, w: &EulerVector) -> Option<(i64, i64)> {
    if v.len() != w.len() {
        return None;
    }
    let (a, b) = v.quarters().iter().zip(w.quarters()).find(|(&a, &b)| a != 0 || b != 0)
        .map(|(&a, &b)| (a, b))
        .unwrap_or((0, 0));
    let (k, l) = if a == 0 && b == 0 {
        (1, 1)
    } else if a == 0 || b == 0 {
        return None;
    } else {
        let g = num_integer::gcd(a, b);
        (b.abs() / g, a.abs() / g)
    };
    v.quarters()
        .iter()
        .zip(w.quarters())
        .all(|(&x, &y)| k * x == l * y)
        .then_some((k, l))
}

/// The data attached to an amalgam: the curve Euler characteristics `v1..v4`
/// of the double cover pieces and the vector `w` of the commensurable Θ group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedVectorData {
    /// `(m-1)(n-1)`; the vector has `2N` zero entries.
    #[serde(rename = "N")]
    pub rank: u64,
    pub v: [i64; 4],
    /// Canonical (sorted) order.
    pub w: EulerVector,
    /// Entries in block order: zeros, `n` copies of `m v1`, `n` of `m v2`,
    /// `m` of `n v3`, `m` of `n v4`.
    pub blocks: Vec<i64>,
}

/// `(v1, v2)` for one side: both `χ(S_g)` for a nonseparating curve, else
/// twice the Euler characteristics of the two complementary pieces,
/// smaller first.
pub fn side_values(genus: u32, curve: CurveSpec) -> (i64, i64) {
    match curve {
        CurveSpec::NonSeparating => {
            let chi = 2 - 2 * i64::from(genus);
            (chi, chi)
        }
        CurveSpec::Separating { split: [g1, g2] } => {
            let a = 2 * (1 - 2 * i64::from(g1));
            let b = 2 * (1 - 2 * i64::from(g2));
            (a.min(b), a.max(b))
        }
    }
}

pub fn associated_racg_vector(spec: &SurfaceAmalgamSpec) -> AssociatedVectorData {
    let (v1, v2) = side_values(spec.g, spec.curve_a);
    let (v3, v4) = side_values(spec.h, spec.curve_b);
    let (m, n) = (i64::from(spec.m), i64::from(spec.n));
    let rank = spec.rose_petals();
    let mut blocks = vec![0; 2 * rank as usize];
    for (count, value) in [(n, m * v1), (n, m * v2), (m, n * v3), (m, n * v4)] {
        blocks.extend(std::iter::repeat_n(value, count as usize));
    }
    let w = EulerVector::from_integers(blocks.iter().copied())
        .expect("curve values are negative");
    AssociatedVectorData {
        rank,
        v: [v1, v2, v3, v4],
        w,
        blocks,
    }
}

/// Inverts `χ_i = (1 - n_i)/4`.
pub fn realize_vector_as_theta(w: &EulerVector) -> Result<ThetaGraphSpec, CommensurabilityError> {
    let mut arms = Vec::with_capacity(w.len());
    for (index, &q) in w.quarters().iter().enumerate() {
        let arm = 1 - q;
        let arm = u32::try_from(arm)
            .ok()
            .filter(|&a| a >= 1)
            .ok_or(CommensurabilityError::NotRealizable { index, value: q })?;
        arms.push(arm);
    }
    ThetaGraphSpec::new(arms).map_err(CommensurabilityError::InvalidTheta)
}

/// `n_i ↦ 1 + K(n_i - 1)`, which multiplies the vector by `K`.
pub fn scale_class(theta: &ThetaGraphSpec, k: u32) -> ThetaGraphSpec {
    assert!(k >= 1, "scale factor must be positive");
    ThetaGraphSpec {
        arms: theta.arms.iter().map(|&n| 1 + k * (n - 1)).collect(),
    }
}

/// The finite-index subgroup pattern: `m(ℓ-2)+2` linear arms and every
/// hyperbolic arm repeated `m` times.
pub fn hyperbolic_degree_expand(
    theta: &ThetaGraphSpec,
    m: u32,
) -> Result<ThetaGraphSpec, CommensurabilityError> {
    assert!(m >= 1, "multiplier must be positive");
    let ell = theta.linear_degree();
    if ell < 2 {
        return Err(CommensurabilityError::LinearDegreeTooSmall { ell });
    }
    let linear = m as usize * (ell - 2) + 2;
    let mut arms = vec![1; linear];
    for _ in 0..m {
        arms.extend_from_slice(theta.hyperbolic_arms());
    }
    arms.sort_unstable();
    Ok(ThetaGraphSpec { arms })
}

/// The same expansion on a bare vector.
pub fn expand_vector(w: &EulerVector, m: u32) -> Result<EulerVector, CommensurabilityError> {
    if m == 1 {
        return Ok(w.clone());
    }
    let ell = w.zero_count();
    if ell < 2 {
        return Err(CommensurabilityError::LinearDegreeTooSmall { ell });
    }
    let mut quarters = vec![0; m as usize * (ell - 2) + 2];
    for _ in 0..m {
        quarters.extend(w.quarters().iter().copied().filter(|&q| q != 0));
    }
    Ok(EulerVector::from_quarters(quarters).expect("entries stay non-positive"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum CommensurabilityVerdict {
    /// `K · (expanded amalgam vector) = L · (expanded Θ vector)`.
    Commensurable {
        #[serde(rename = "K")]
        k: i64,
        #[serde(rename = "L")]
        l: i64,
        amalgam_multiplier: u32,
        theta_multiplier: u32,
        /// The Θ-graph group the amalgam is commensurable to.
        amalgam_theta: ThetaGraphSpec,
        common_vector_amalgam: EulerVector,
        common_vector_theta: EulerVector,
    },
    Unknown { reason: String },
}

impl CommensurabilityVerdict {
    pub fn is_commensurable(&self) -> bool {
        matches!(self, CommensurabilityVerdict::Commensurable { .. })
    }
}

/// Aligns hyperbolic and linear degrees by expansion, then compares vectors.
pub fn commensurable_cw(spec: &SurfaceAmalgamSpec, theta: &ThetaGraphSpec) -> CommensurabilityVerdict {
    let data = associated_racg_vector(spec);
    let w = &data.w;
    let t = euler_vector(theta);
    let unknown = |reason: String| CommensurabilityVerdict::Unknown { reason };

    let (hw, ht) = (w.len() - w.zero_count(), t.len() - t.zero_count());
    let (lw, lt) = (w.zero_count() as i64, t.zero_count() as i64);
    let (m1, m2) = if hw == ht && lw == lt {
        (1, 1)
    } else {
        let g = num_integer::gcd(hw, ht);
        let (m1, m2) = (ht / g, hw / g);
        if m1 as i64 * (lw - 2) != m2 as i64 * (lt - 2) {
            return unknown(format!(
                "linear degrees {lw} and {lt} cannot be matched by expanding hyperbolic degrees {hw} and {ht}"
            ));
        }
        (m1 as u32, m2 as u32)
    };
    let (ew, et) = match (expand_vector(w, m1), expand_vector(&t, m2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return unknown(e.to_string()),
    };
    match vectors_commensurable(&ew, &et) {
        Some((k, l)) => CommensurabilityVerdict::Commensurable {
            k,
            l,
            amalgam_multiplier: m1,
            theta_multiplier: m2,
            amalgam_theta: realize_vector_as_theta(w)
                .expect("amalgam vectors have even integer entries and length at least 4"),
            common_vector_amalgam: ew,
            common_vector_theta: et,
        },
        None => unknown(format!("vectors {ew} and {et} are not commensurable")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(arms: &[u32]) -> ThetaGraphSpec {
        ThetaGraphSpec::new(arms.to_vec()).unwrap()
    }

    fn ns() -> CurveSpec {
        CurveSpec::NonSeparating
    }

    #[test]
    fn vector_of_mixed_theta() {
        let v = euler_vector(&theta(&[1, 1, 2, 2, 2, 3]));
        assert_eq!(v.quarters(), &[0, 0, -1, -1, -1, -2]);
    }

    #[test]
    fn associated_vector_example() {
        let spec = SurfaceAmalgamSpec::new(2, 2, 2, 3, ns(), ns()).unwrap();
        let d = associated_racg_vector(&spec);
        assert_eq!(d.rank, 2);
        assert_eq!(d.v, [-2; 4]);
        assert_eq!(d.blocks, vec![0, 0, 0, 0, -4, -4, -4, -4, -4, -4, -6, -6, -6, -6]);
        assert_eq!(d.w.len(), 14);
    }

    #[test]
    fn separating_values() {
        assert_eq!(side_values(2, CurveSpec::separating(1, 1)), (-2, -2));
        assert_eq!(side_values(3, CurveSpec::separating(2, 1)), (-6, -2));
    }

    #[test]
    fn realization() {
        let w = EulerVector::parse_strings(&["0", "0", "-1/2"]).unwrap();
        assert_eq!(realize_vector_as_theta(&w).unwrap(), theta(&[1, 1, 3]));
        let w = EulerVector::parse_strings(&["0"]).unwrap();
        assert!(matches!(
            realize_vector_as_theta(&w),
            Err(CommensurabilityError::InvalidTheta(_))
        ));
    }

    #[test]
    fn scaling_and_expansion() {
        assert_eq!(scale_class(&theta(&[1, 1, 2]), 3), theta(&[1, 1, 4]));
        assert_eq!(scale_class(&theta(&[2, 2, 3]), 2), theta(&[3, 3, 5]));
        assert_eq!(hyperbolic_degree_expand(&theta(&[1, 1, 2]), 2).unwrap(), theta(&[1, 1, 2, 2]));
        assert_eq!(
            hyperbolic_degree_expand(&theta(&[1, 1, 1, 3]), 3).unwrap(),
            theta(&[1, 1, 1, 1, 1, 3, 3, 3])
        );
        assert!(hyperbolic_degree_expand(&theta(&[1, 2, 2]), 2).is_err());
    }

    #[test]
    fn commensurable_pairs() {
        let a = EulerVector::from_quarters(vec![0, -2, -4]).unwrap();
        let b = EulerVector::from_quarters(vec![0, -3, -6]).unwrap();
        assert_eq!(vectors_commensurable(&a, &b), Some((3, 2)));
        let c = EulerVector::from_quarters(vec![0, -3, -5]).unwrap();
        assert_eq!(vectors_commensurable(&a, &c), None);
        let z = EulerVector::from_quarters(vec![0, 0, -1]).unwrap();
        assert_eq!(vectors_commensurable(&a, &z), None);
    }

    #[test]
    fn amalgam_against_its_own_theta() {
        let spec = SurfaceAmalgamSpec::new(2, 3, 2, 3, ns(), CurveSpec::separating(1, 2)).unwrap();
        let t = realize_vector_as_theta(&associated_racg_vector(&spec).w).unwrap();
        match commensurable_cw(&spec, &t) {
            CommensurabilityVerdict::Commensurable { k, l, .. } => assert_eq!((k, l), (1, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expansion_aligns_degrees() {
        let spec = SurfaceAmalgamSpec::new(2, 2, 2, 2, ns(), ns()).unwrap();
        // w = (0, 0, -4 x 8) in integers; Θ with two linear arms and four
        // hyperbolic arms of χ = -4 expands by 2 to match
        let t = theta(&[1, 1, 17, 17, 17, 17]);
        let v = commensurable_cw(&spec, &t);
        assert!(v.is_commensurable(), "{v:?}");
        let far = theta(&[1, 1, 1, 2]);
        assert!(!commensurable_cw(&spec, &far).is_commensurable());
    }
}

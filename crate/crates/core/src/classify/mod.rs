//! Decision procedures for hyperbolicity, 3-manifold structure and
//! quasi-isometry type, plus the sphere built by coning a planar nerve.

mod dihedral;
mod sphere;

pub use dihedral::{dihedral_elements, dihedral_realizable, obstruction_oracle, HalfPlaneConfig};
pub use sphere::{cone_planar_nerve, SphereCertificate, SphereTriangulation, SphereVertex};

use serde::Serialize;
use thiserror::Error;

use crate::model::{SurfaceAmalgamSpec, ThetaGraphSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("cycle type {cycle_type:?} is not a partition of {k} into positive parts")]
    BadCycleType { cycle_type: Vec<usize>, k: usize },
}

/// Which I-bundle gluing realizes the amalgam as a 3-manifold group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ManifoldWitness {
    TrivialIBundles,
    TwistedOneSide,
    TwistedBothSides,
}

/// Which argument rules out a 3-manifold structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Obstruction {
    DihedralCase1,
    DihedralCase2,
    CommutatorCase3,
    CommutatorCase4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ThreeManifoldVerdict {
    pub is_3manifold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ManifoldWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    /// Number of half-planes in the configuration the obstruction uses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_planes: Option<usize>,
}

impl ThreeManifoldVerdict {
    pub fn manifold(witness: ManifoldWitness) -> Self {
        ThreeManifoldVerdict {
            is_3manifold: true,
            witness: Some(witness),
            obstruction: None,
            half_planes: None,
        }
    }

    pub fn obstructed(obstruction: Obstruction, half_planes: usize) -> Self {
        ThreeManifoldVerdict {
            is_3manifold: false,
            witness: None,
            obstruction: Some(obstruction),
            half_planes: Some(half_planes),
        }
    }
}

/// Amalgams are δ-hyperbolic exactly when `m = 1`.
pub fn is_hyperbolic_c(spec: &SurfaceAmalgamSpec) -> bool {
    spec.m == 1
}

/// Right-angled Coxeter groups with Θ-graph nerve are hyperbolic exactly
/// when at most one arm is linear.
pub fn is_hyperbolic_w(theta: &ThetaGraphSpec) -> bool {
    theta.linear_degree() <= 1
}

/// The classification in closed form. Expects a validated spec (`m <= n`).
pub fn is_3manifold_group(spec: &SurfaceAmalgamSpec) -> ThreeManifoldVerdict {
    let b_sep = spec.curve_b.is_separating();
    let a_sep = spec.curve_a.is_separating();
    match (spec.m, spec.n) {
        (1, 1) => ThreeManifoldVerdict::manifold(ManifoldWitness::TrivialIBundles),
        (1, 2) if !b_sep => ThreeManifoldVerdict::manifold(ManifoldWitness::TwistedOneSide),
        (1, 2) => ThreeManifoldVerdict::obstructed(Obstruction::CommutatorCase4, 6),
        (2, 2) if !a_sep && !b_sep => {
            ThreeManifoldVerdict::manifold(ManifoldWitness::TwistedBothSides)
        }
        (2, 2) => ThreeManifoldVerdict::obstructed(Obstruction::CommutatorCase3, 4),
        (1, n) => ThreeManifoldVerdict::obstructed(Obstruction::DihedralCase2, 2 * n as usize + 2),
        (_, n) => ThreeManifoldVerdict::obstructed(Obstruction::DihedralCase1, n as usize + 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "tag")]
pub enum QiClassC {
    Hyperbolic { n: u32 },
    Mixed22,
    Generic,
}

pub fn qi_class_c(spec: &SurfaceAmalgamSpec) -> QiClassC {
    match (spec.m, spec.n) {
        (1, n) => QiClassC::Hyperbolic { n },
        (2, 2) => QiClassC::Mixed22,
        _ => QiClassC::Generic,
    }
}

/// Quasi-isometry of two amalgams, read directly off the three conditions
/// of the classification rather than through [`qi_class_c`].
pub fn qi_equivalent_c(s1: &SurfaceAmalgamSpec, s2: &SurfaceAmalgamSpec) -> bool {
    let (m, n, m2, n2) = (s1.m, s1.n, s2.m, s2.n);
    (m == 1 && m2 == 1 && n == n2)
        || (m == 2 && n == 2 && m2 == 2 && n2 == 2)
        || (m >= 2 && n >= 3 && m2 >= 2 && n2 >= 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "tag")]
pub enum QiClassW {
    /// Hyperbolic, no arm of length one.
    HypZeroLinear { k: usize },
    /// Hyperbolic, exactly one arm of length one.
    HypOneLinear { k: usize },
    /// Two linear arms and at least one hyperbolic arm.
    Mixed2 { ell: usize, h: usize },
    /// At least three linear arms and at least one hyperbolic arm.
    Mixed3 { ell: usize, h: usize },
    /// Every arm linear.
    Flat { ell: usize },
}

/// A complete invariant for quasi-isometry among both families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "tag")]
pub enum QiKey {
    /// Hyperbolic; the number of arms of the all-hyperbolic representative.
    Hyperbolic { arms: usize },
    Mixed2,
    Mixed3,
    Flat,
}

impl QiClassW {
    /// `Θ` with one linear arm and `k` arms is quasi-isometric to the
    /// all-hyperbolic `Θ` with `2(k-1)` arms, so both map to the same key.
    pub fn key(&self) -> QiKey {
        match *self {
            QiClassW::HypZeroLinear { k } => QiKey::Hyperbolic { arms: k },
            QiClassW::HypOneLinear { k } => QiKey::Hyperbolic { arms: 2 * (k - 1) },
            QiClassW::Mixed2 { .. } => QiKey::Mixed2,
            QiClassW::Mixed3 { .. } => QiKey::Mixed3,
            QiClassW::Flat { .. } => QiKey::Flat,
        }
    }
}

impl QiClassC {
    /// The key of the Θ-graph group this amalgam is quasi-isometric to.
    pub fn key(&self) -> QiKey {
        match *self {
            QiClassC::Hyperbolic { n } => QiKey::Hyperbolic {
                arms: 2 * n as usize + 2,
            },
            QiClassC::Mixed22 => QiKey::Mixed2,
            QiClassC::Generic => QiKey::Mixed3,
        }
    }
}

pub fn qi_class_w(theta: &ThetaGraphSpec) -> QiClassW {
    let (k, ell, h) = (theta.k(), theta.linear_degree(), theta.hyperbolic_degree());
    match ell {
        0 => QiClassW::HypZeroLinear { k },
        1 => QiClassW::HypOneLinear { k },
        2 => QiClassW::Mixed2 { ell, h },
        _ if h == 0 => QiClassW::Flat { ell },
        _ => QiClassW::Mixed3 { ell, h },
    }
}

/// Quasi-isometry of two Θ-graph groups, from the hyperbolic and
/// non-hyperbolic classification conditions as stated.
pub fn qi_equivalent_w(t1: &ThetaGraphSpec, t2: &ThetaGraphSpec) -> bool {
    let (l1, l2) = (t1.linear_degree(), t2.linear_degree());
    let (h1, h2) = (t1.hyperbolic_degree(), t2.hyperbolic_degree());
    match (l1 <= 1, l2 <= 1) {
        (true, true) => {
            // order so that n_1 <= n_1'
            let (a, b) = if t1.shortest_arm() <= t2.shortest_arm() {
                (t1, t2)
            } else {
                (t2, t1)
            };
            let (n1, n1b, k, kb) = (a.shortest_arm(), b.shortest_arm(), a.k(), b.k());
            (n1 == 1 && n1b == 1 && k == kb)
                || (n1 == 1 && n1b >= 2 && kb == 2 * (k - 1))
                || (n1 >= 2 && n1b >= 2 && k == kb)
        }
        (false, false) => {
            (l1 == 2 && l2 == 2 && h1 >= 1 && h2 >= 1)
                || (l1 >= 3 && l2 >= 3 && h1 >= 1 && h2 >= 1)
                || (l1 >= 3 && l2 >= 3 && h1 == 0 && h2 == 0)
        }
        _ => false,
    }
}

/// Is the amalgam quasi-isometric to the Θ-graph group?
pub fn qi_cross(spec: &SurfaceAmalgamSpec, theta: &ThetaGraphSpec) -> bool {
    qi_class_c(spec).key() == qi_class_w(theta).key()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CurveSpec;

    fn c(m: u32, n: u32) -> SurfaceAmalgamSpec {
        SurfaceAmalgamSpec::new(2, 2, m, n, CurveSpec::NonSeparating, CurveSpec::NonSeparating)
            .unwrap()
    }

    fn c_curves(m: u32, n: u32, a: CurveSpec, b: CurveSpec) -> SurfaceAmalgamSpec {
        SurfaceAmalgamSpec::new(2, 2, m, n, a, b).unwrap()
    }

    fn w(arms: &[u32]) -> ThetaGraphSpec {
        ThetaGraphSpec::new(arms.to_vec()).unwrap()
    }

    #[test]
    fn hyperbolicity() {
        assert!(is_hyperbolic_c(&c(1, 5)));
        assert!(!is_hyperbolic_c(&c(2, 2)));
        assert!(is_hyperbolic_c(&c(1, 1)));
        assert!(is_hyperbolic_w(&w(&[1, 2, 2])));
        assert!(!is_hyperbolic_w(&w(&[1, 1, 2])));
    }

    #[test]
    fn manifold_examples() {
        let sep = CurveSpec::separating(1, 1);
        let ns = CurveSpec::NonSeparating;
        assert_eq!(
            is_3manifold_group(&c_curves(1, 1, sep, sep)),
            ThreeManifoldVerdict::manifold(ManifoldWitness::TrivialIBundles)
        );
        let v = is_3manifold_group(&c(2, 3));
        assert_eq!(v.obstruction, Some(Obstruction::DihedralCase1));
        let v = is_3manifold_group(&c_curves(2, 2, ns, sep));
        assert_eq!(v.obstruction, Some(Obstruction::CommutatorCase3));
        let v = is_3manifold_group(&c_curves(1, 2, sep, ns));
        assert_eq!(v.witness, Some(ManifoldWitness::TwistedOneSide));
        let v = is_3manifold_group(&c_curves(1, 2, ns, sep));
        assert_eq!(v.obstruction, Some(Obstruction::CommutatorCase4));
    }

    #[test]
    fn oracle_examples() {
        let v = obstruction_oracle(&c(2, 3));
        assert_eq!(v, ThreeManifoldVerdict::obstructed(Obstruction::DihedralCase1, 5));
        let v = obstruction_oracle(&c(2, 2));
        assert_eq!(v, ThreeManifoldVerdict::manifold(ManifoldWitness::TwistedBothSides));
        let v = obstruction_oracle(&c(1, 4));
        assert_eq!(v, ThreeManifoldVerdict::obstructed(Obstruction::DihedralCase2, 10));
    }

    #[test]
    fn qi_c_examples() {
        assert!(qi_equivalent_c(&c(1, 3), &c(1, 3)));
        assert!(!qi_equivalent_c(&c(2, 2), &c(2, 3)));
        assert!(qi_equivalent_c(&c(2, 3), &c(5, 7)));
        assert!(!qi_equivalent_c(&c(1, 3), &c(1, 4)));
    }

    #[test]
    fn qi_w_examples() {
        assert!(qi_equivalent_w(&w(&[1, 1, 2]), &w(&[1, 1, 3, 5])));
        assert!(!qi_equivalent_w(&w(&[1, 1, 2]), &w(&[1, 1, 1, 2])));
        assert!(qi_equivalent_w(&w(&[1, 2, 2]), &w(&[2, 2, 2, 2])));
        assert!(qi_equivalent_w(&w(&[2, 2, 2, 2]), &w(&[1, 2, 2])));
        assert!(!qi_equivalent_w(&w(&[1, 2, 2]), &w(&[1, 1, 2])));
        assert_eq!(qi_class_w(&w(&[1, 1, 1])), QiClassW::Flat { ell: 3 });
    }

    #[test]
    fn cross_examples() {
        assert!(qi_cross(&c(2, 2), &w(&[1, 1, 3])));
        assert!(qi_cross(&c(2, 5), &w(&[1, 1, 1, 2])));
        assert!(!qi_cross(&c(2, 2), &w(&[1, 1, 1])));
        // m = 1: linear degree 0 with 2n + 2 arms, or one linear arm with n + 2
        assert!(qi_cross(&c(1, 2), &w(&[2, 2, 2, 2, 2, 2])));
        assert!(qi_cross(&c(1, 2), &w(&[1, 3, 3, 3])));
        assert!(!qi_cross(&c(1, 2), &w(&[2, 2, 2, 2])));
    }

    #[test]
    fn curve_kinds_do_not_move_the_qi_class() {
        let sep = CurveSpec::separating(1, 1);
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 4)] {
            let base = qi_class_c(&c(m, n));
            assert_eq!(qi_class_c(&c_curves(m, n, sep, sep)), base);
            assert_eq!(qi_class_c(&c_curves(m, n, sep, CurveSpec::NonSeparating)), base);
        }
    }
}

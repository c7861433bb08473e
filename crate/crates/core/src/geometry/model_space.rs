//! Model-space types `(m, n, X, s)` and the standard representatives of
//! their quasi-isometry classes.

use serde::Serialize;

use super::GeometryError;
use crate::model::Spec;

/// Tree valences `m <= n`, branching `s` (how many fattened trees share each
/// essential line) and the number of fattened trees in the set, which is
/// carried along but plays no role in the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModelSpaceType {
    pub m: u32,
    pub n: u32,
    pub s: u32,
    pub tree_set_size: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StandardRepresentative {
    #[serde(rename = "type")]
    pub model: ModelSpaceType,
    /// Hyperbolic types are returned unchanged.
    pub hyperbolic: bool,
}

/// An amalgam is modelled on type `(m, n, 2)` with two fattened trees; a
/// Θ-graph group on `(ℓ, ℓ, k - ℓ)` with one per hyperbolic arm.
pub fn model_space_type_of(spec: &Spec) -> ModelSpaceType {
    match spec {
        Spec::Amalgam(a) => ModelSpaceType {
            m: a.m,
            n: a.n,
            s: 2,
            tree_set_size: 2,
        },
        Spec::Theta(t) => {
            let ell = t.linear_degree() as u32;
            ModelSpaceType {
                m: ell,
                n: ell,
                s: t.hyperbolic_degree() as u32,
                tree_set_size: t.hyperbolic_degree() as u32,
            }
        }
    }
}

/// `(m >= 2, n >= 3, s >= 1) ↦ (3,3,1)`, `(2,2,s >= 1) ↦ (2,2,1)` and
/// `(m >= 2, n >= 3, 0) ↦ (2,3,0)`; types with `m <= 1` are hyperbolic.
pub fn standard_representative(t: ModelSpaceType) -> Result<StandardRepresentative, GeometryError> {
    let keep = |m, n, s| ModelSpaceType {
        m,
        n,
        s,
        tree_set_size: t.tree_set_size,
    };
    let (model, hyperbolic) = match (t.m, t.n, t.s) {
        (m, _, _) if m <= 1 => (t, true),
        (m, n, s) if m >= 2 && n >= 3 && s >= 1 => (keep(3, 3, 1), false),
        (2, 2, s) if s >= 1 => (keep(2, 2, 1), false),
        (m, n, 0) if m >= 2 && n >= 3 => (keep(2, 3, 0), false),
        _ => return Err(GeometryError::UnsupportedType(t)),
    };
    Ok(StandardRepresentative { model, hyperbolic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CurveSpec, SurfaceAmalgamSpec, ThetaGraphSpec};

    fn ty(m: u32, n: u32, s: u32) -> ModelSpaceType {
        ModelSpaceType {
            m,
            n,
            s,
            tree_set_size: 2,
        }
    }

    #[test]
    fn types_of_specs() {
        let a = SurfaceAmalgamSpec::new(2, 2, 2, 3, CurveSpec::NonSeparating, CurveSpec::NonSeparating).unwrap();
        let t = model_space_type_of(&Spec::Amalgam(a));
        assert_eq!((t.m, t.n, t.s), (2, 3, 2));
        let w = ThetaGraphSpec::new(vec![1, 1, 2, 2, 2, 3]).unwrap();
        let t = model_space_type_of(&Spec::Theta(w));
        assert_eq!((t.m, t.n, t.s), (2, 2, 4));
        let w = ThetaGraphSpec::new(vec![1, 1, 1]).unwrap();
        let t = model_space_type_of(&Spec::Theta(w));
        assert_eq!((t.m, t.n, t.s), (3, 3, 0));
    }

    #[test]
    fn representatives() {
        let rep = |m, n, s| standard_representative(ty(m, n, s)).unwrap().model;
        assert_eq!(rep(5, 7, 2), ty(3, 3, 1));
        assert_eq!(rep(2, 2, 4), ty(2, 2, 1));
        assert_eq!(rep(2, 3, 0), ty(2, 3, 0));
        assert_eq!(rep(3, 3, 0), ty(2, 3, 0));
        assert!(standard_representative(ty(1, 4, 2)).unwrap().hyperbolic);
        assert!(standard_representative(ty(2, 2, 0)).is_err());
    }
}

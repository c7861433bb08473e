//! Classification, commensurability towers and collapse quasi-isometries
//! for surface amalgams `π1(S_g) *_{a^m = b^n} π1(S_h)` and right-angled
//! Coxeter groups with generalized Θ-graph nerves.

pub mod classify;
pub mod commensurability;
pub mod complex;
pub mod covers;
pub mod geometry;
pub mod model;
pub mod perm;

pub use model::{CurveSpec, EulerVector, Spec, SpecError, SurfaceAmalgamSpec, ThetaGraphSpec};

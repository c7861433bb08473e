//! Finite balls in the tree factors of model spaces, the collapse maps
//! between them, and measured quasi-isometry constants.

mod collapse;
mod distortion;
mod model_space;
mod tree;

pub use collapse::{
    collapse_map_line, collapse_map_tree, collapse_map_tree_ordered, ChildOrder, QuotientCertificate,
    QuotientTree, VertexMap,
};
pub use distortion::{additive_error, interior_pairs, measure_distortion, sampled_pairs, Distortion, PairSample};
pub use model_space::{model_space_type_of, standard_representative, ModelSpaceType, StandardRepresentative};
pub use tree::{
    ball_size, biregular_ball, biregular_ball_capped, level_sizes, max_radius, vertex_cap, TreeBall,
    DEFAULT_MAX_VERTICES,
};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum GeometryError {
    #[error("ball would have {requested} vertices, over the cap of {cap} (set AMALGAM_MAX_VERTICES to raise it)")]
    SizeLimit { requested: u128, cap: usize },
    #[error("valences must be positive, got ({m}, {n})")]
    BadValence { m: u32, n: u32 },
    #[error("radius {radius} is smaller than the collapse size {s}")]
    RadiusTooSmall { radius: u32, s: u32 },
    #[error("collapse size must be at least 1")]
    ZeroCollapse,
    #[error("no pairs to measure")]
    EmptySample,
    #[error("model space type {0:?} is in none of the classified families")]
    UnsupportedType(ModelSpaceType),
}

//! Covering maps between complexes, the cover-existence criterion for
//! surfaces, and the two towers of covers built from an amalgam.

mod cover;
pub mod faults;
mod fragments;
mod neumann;
mod tower;

pub use cover::{verify_cover, Condition, CoverMap, CoverReport, PieceImage, Violation};
pub use fragments::{bounding_pair_double_cover, kmn_cover_fragment, BoundingPairCover};
pub use neumann::{neumann_cover_exists, partitions_of, realized_partitions, NeumannError};
pub use tower::{
    build_tower_x, build_tower_z, check_x5_iso_z2, Link, LinkCheck, Stage, Tower, TowerError, ZTower,
    ORBIFOLD_COVER_DEGREE,
};

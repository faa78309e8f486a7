//! Intersection and distance distributions of single-orbit cyclic subspace
//! codes in `F_{q^n}`, with executable checks of their divisibility
//! properties.
//!
//! Start with [`gf::FieldTower`], build a [`subspace::Subspace`] (directly or
//! from text with [`subspace::parse_subspace`]) and call
//! [`orbit::intersection_distribution`].

pub mod cli;
pub mod error;
pub mod fqlinalg;
pub mod gf;
pub mod orbit;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{ConwayTable, FFElem, FieldTower};
pub use orbit::{
    count_subfield_line_shifts, distance_distribution, intersection_distribution, intersection_distribution_with,
    is_sidon, pair_counts, s_class, s_partition, trace_dual, DistanceDistribution, IntersectionDistribution, SClass,
    SubfieldShifts, SweepOptions,
};
pub use subspace::{parse_subspace, StabilizerResult, Subspace};

//! Numerical convex geometry of operator-system state spaces.
//!
//! Given hermitian matrices `F₁…F_k`, the set of expectation tuples
//! `(⟨ρ,F₁⟩,…,⟨ρ,F_k⟩)` over density matrices `ρ` is a convex body: the
//! convex support of the family, equals the convex hull of its joint
//! numerical range. This crate computes that body numerically — support
//! functions, boundary samples, exposed faces and their ground-state
//! projections, the projection lattice with its coatoms and clusters,
//! polar and dual bodies, smoothness/strict-convexity/class tests, and
//! the census of convex supports of 3×3 families.
//!
//! The crate is `no_std` + `alloc`: all operations are pure functions of
//! their inputs and safe to call concurrently. IO, file formats and the
//! command line live in the companion `jnrlab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod body;
pub mod cmat;
pub mod error;
pub mod fixtures;
pub mod grid;
pub mod herm;
pub mod hull;
pub mod jnr3;
pub mod lattice;
pub mod opsys;
pub mod optimize;
pub mod realmat;
pub mod rng;
pub mod subspace;
pub mod util;

pub use body::{BodyClassReport, BodySample, Flag, SupportSampledBody};
pub use cmat::{CMatrix, C64};
pub use error::Error;
pub use grid::DirectionGrid;
pub use herm::{HermitianMatrix, ProjectionNode, SpectralDecomposition};
pub use jnr3::{CornerKind, Jnr3x3Report};
pub use lattice::{ClusterPartition, CoatomisticReport, IntersectionCertificate, ProjectionLattice};
pub use opsys::{ExposedFaceRecord, OperatorSystemSpec, StatePoint};
pub use subspace::Subspace;

/// Default relative scale for eigenvalue degeneracy clustering.
pub const EPS_CLUSTER_REL: f64 = 1e-9;
/// Default angular tolerance for subspace identity, in radians.
pub const EPS_ANGLE: f64 = 1e-8;

pub type Result<T> = core::result::Result<T, Error>;

//! Certified numerical machinery for opaque sets (barriers) of convex
//! regions in the plane.
//!
//! A *barrier* for a region `U` is a set that meets every line meeting
//! `U`; equivalently, the projection of the barrier onto every direction
//! must cover the projection of `U`. This crate provides:
//!
//! - planar primitives and interval-set coverage bookkeeping ([`geom`],
//!   [`polygon`], [`interval`]),
//! - a certified line-barrier verifier and certified angular integrals
//!   ([`coverage`], [`quadrature`]),
//! - executable lower-bound certificates: waste, far-outside, and
//!   segment-group deficits, plus the band-crossing reduction
//!   ([`certificates`], [`bands`]),
//! - the full constant chain proving the 2.00002 lower bound for the
//!   unit square ([`square`]),
//! - the classical square barrier constructions and curve straightening
//!   ([`constructions`]),
//! - half-line (ray) barrier verification ([`halfline`]).
//!
//! All geometry is binary64 with absolute tolerance [`GEOM_TOL`]; every
//! integral and verdict carries an explicit certified error bound.

pub mod bands;
pub mod certificates;
pub mod constructions;
pub mod coverage;
pub mod geom;
pub mod halfline;
pub mod interval;
pub mod polygon;
pub mod quadrature;
pub mod scene;
pub mod square;

pub use coverage::Verdict;
pub use geom::{Point2, Segment};
pub use interval::{Interval, IntervalSet};
pub use polygon::ConvexPolygon;
pub use quadrature::CertifiedIntegral;
pub use scene::{MultiScene, Scene};

/// Absolute tolerance for geometric predicates.
///
/// The paper constants this crate reproduces all have slack of at least
/// 1e-6, so classifying coincidences at 1e-9 is safe.
pub const GEOM_TOL: f64 = 1e-9;

/// Errors reported by constructors and operations in this crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("point coordinates must be finite")]
    NonFinitePoint,
    #[error("segment endpoints coincide (length below geometric tolerance)")]
    DegenerateSegment,
    #[error("polygon needs at least 3 non-collinear vertices")]
    InsufficientVertices,
    #[error("vertex list is not convex")]
    NotConvex,
    #[error("all points are collinear; the hull is degenerate")]
    DegenerateHull,
    #[error("scene must contain at least one object")]
    EmptyScene,
    #[error("tolerance must be positive (got {0})")]
    InvalidTolerance(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("band functions are incompatible: {0}")]
    BandMismatch(String),
    #[error("crossing hypothesis violated for pair f[{i}], g[{j}]: {detail}")]
    CrossingHypothesis { i: usize, j: usize, detail: String },
    #[error("invalid segment group configuration: {0}")]
    InvalidGroup(String),
}

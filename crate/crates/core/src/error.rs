use alloc::boxed::Box;
use alloc::string::String;

use crate::solver::SolverReport;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not future time-like")]
    NotTimelike,

    #[error("vector is not on the unit hyperboloid (⟨x,x⟩ = {norm})")]
    NotUnit { norm: f64 },

    #[error("support number {index} must be positive, got {value}")]
    NonPositiveSupport { index: usize, value: f64 },

    #[error("normals are collinear (zero hyperbolic distance)")]
    CollinearNormals,

    #[error("degenerate angle {angle}")]
    DegenerateAngle { angle: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not a future-preserving isometry (defect {defect:.3e})")]
    NotIsometry { defect: f64 },

    #[error("representatives {first} and {second} lie in the same orbit")]
    SameOrbit { first: usize, second: usize },

    #[error("facet {index} is empty: support vector lies outside the polyhedron domain")]
    EmptyFacet { index: usize },

    #[error("orbit cutoff exceeded for facet {index} (cutoff {cutoff:.3}, circumradius {circumradius:.3e})")]
    CutoffOverflow { index: usize, cutoff: f64, circumradius: f64 },

    #[error("group ball exceeded {limit} elements at radius {radius:.3}")]
    BallOverflow { radius: f64, limit: usize },

    #[error("Dirichlet cell not certified with orbit radius {radius:.3}")]
    InsufficientRadius { radius: f64 },

    #[error("operation needs dimension {expected}, got {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("polyhedra do not share a normal family")]
    FamilyMismatch,

    #[error("polyhedra do not share a group")]
    GroupMismatch,

    #[error("support vectors are not strongly isomorphic simple (argument {index})")]
    FanMismatch { index: usize },

    #[error("no simple perturbation found after {attempts} attempts")]
    PerturbationFailed { attempts: usize },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("Newton iteration did not converge in {} iterations", .0.iterations)]
    NonConvergence(Box<SolverReport>),

    #[error("no step length keeps the iterate in the polyhedron domain (iteration {})", .0.iterations)]
    DomainEscape(Box<SolverReport>),
}

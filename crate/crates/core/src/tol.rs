//! Tolerance constants shared by every module.
//!
//! All arithmetic is IEEE-754 double precision. Coordinates are O(1) at the
//! scales this crate is meant for, so absolute tolerances are used unless a
//! constant says otherwise.

/// Relative width of the lightlike band in causal classification:
/// `|⟨x,x⟩| ≤ LIGHTLIKE · |x|²` (Euclidean norm) counts as lightlike.
pub const LIGHTLIKE: f64 = 1e-10;

/// Geometric predicates: unit-ness of normals, plane membership.
pub const GEOMETRIC: f64 = 1e-9;

/// `arccosh` arguments in `[1 - ACOSH_CLAMP, 1]` are clamped to 1.
pub const ACOSH_CLAMP: f64 = 1e-12;

/// Isometry invariants `MᵀJM = J` and `det M = 1`.
pub const ISOMETRY: f64 = 1e-9;

/// Two group elements are equal when their matrices agree to this
/// max-norm distance, relative to the matrix scale.
pub const DEDUP: f64 = 1e-8;

/// Word length after which products are re-projected onto the isometry group.
pub const RENORMALIZE_AFTER: usize = 16;

/// A constraint is active at a facet vertex when the vertex lies within this
/// frame distance of the constraint line.
pub const VERTEX: f64 = 1e-8;

/// Half-plane clipping threshold, relative to the facet scale. Vertices closer
/// than this to a clipping line are kept, and edges shorter than this are
/// dropped.
pub const CLIP: f64 = 1e-12;

/// Edges shorter than this make the area Jacobian sensitive to combinatorial
/// changes; a warning is attached to the Jacobian.
pub const SHORT_EDGE: f64 = 1e-7;

/// Relative slack allowed when checking the reversed inequalities.
pub const INEQUALITY: f64 = 1e-9;

/// Largest orbit cutoff (hyperbolic distance) tried before giving up.
pub const MAX_CUTOFF: f64 = 24.0;

/// Largest number of group elements enumerated in one ball.
pub const MAX_BALL_ELEMENTS: usize = 400_000;

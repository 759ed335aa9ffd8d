//! Numerical kernel for Fuchsian convex polyhedra in Minkowski space.
//!
//! A Fuchsian group `Γ` acts on the future cone of `R^{d+1}` (signature
//! `(d,1)`). A `Γ`-convex polyhedron is the intersection of the half-spaces
//! `⟨x, γη_i⟩ ≤ -h(i)` over all group elements `γ` and finitely many unit
//! normals `η_i`. Only the `n` representative facets are ever computed; every
//! other facet is a group image of one of them.
//!
//! The crate is `no_std` with `alloc`. IO, file formats and the command line
//! live in the `fuchsian` companion crate.
//!
//! Modules:
//! - [`lorentz`]: the bilinear form, causal classes, hyperboloid, support planes.
//! - [`fuchsian`]: isometries, groups, word balls, orbits, Dirichlet cells.
//! - [`polyhedra`]: facet construction from support vectors.
//! - [`covolume`]: covolume, area Jacobian, mixed covolumes, inequality checks.
//! - [`solver`]: Newton solver for prescribed facet areas.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod clip;
pub mod covolume;
mod error;
pub mod fuchsian;
pub mod linalg;
pub mod lorentz;
mod math;
pub mod polyhedra;
pub mod solver;
pub mod tol;

pub use error::{Error, Result};
pub use fuchsian::{FuchsianGroup, Isometry, OrbitBall};
pub use lorentz::{CausalClass, LorentzVector, SupportPlane};
pub use polyhedra::{FacetGeometry, FuchsianPolyhedron, NormalFamily, SupportVector};

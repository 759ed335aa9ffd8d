//! Newton's method for the Minkowski problem: given positive facet areas
//! `f`, find the support vector `h` with `A(h) = f`.
//!
//! The area map is the gradient of `(d+1)·covol` and its Jacobian is
//! symmetric positive definite on the domain of valid support vectors, so
//! each Newton step is a Cholesky solve. Steps are shortened until the
//! iterate stays in the domain and the residual decreases.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::covolume::area_jacobian;
use crate::math::{pow, sqrt, tanh};
use crate::polyhedra::{build, NormalFamily, SupportVector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Convergence threshold on `‖A(h) − f‖_∞ / ‖f‖_∞`.
    pub tol: f64,
    pub max_iter: usize,
    /// Backtracking factor.
    pub shrink: f64,
    /// Smallest step fraction tried before giving up.
    pub min_step: f64,
    /// Recorded in reports; the iteration itself is deterministic.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 50, shrink: 0.5, min_step: 1e-6, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    /// Last accepted iterate.
    pub solution: SupportVector,
    /// `‖A(h) − f‖_∞` of every accepted iterate, starting with `h₀`.
    pub residual_history: Vec<f64>,
    pub step_lengths: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Accepted steps across which the combinatorics of the polyhedron
    /// changed.
    pub combinatorics_changes: usize,
    pub properness_bound: f64,
}

fn residual(areas: &[f64], f: &[f64]) -> Vec<f64> {
    areas.iter().zip(f).map(|(a, b)| a - b).collect()
}

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Perimeter of the Euclidean `d`-ball of volume `v`; for `d = 1` the
/// boundary of a segment counts its two endpoints.
fn ball_perimeter(d: usize, v: f64) -> f64 {
    match d {
        1 => 2.0,
        _ => 2.0 * sqrt(core::f64::consts::PI * v),
    }
}

/// `d · max_i f(i) / (λ_i · Per)`, with `λ_i = tanh(φ_i/2)` for the
/// minimal translation `φ_i` of `η_i` and `Per` the perimeter of the
/// Euclidean ball of volume `min f`. An a priori size estimate for the
/// solution; the solver reports it but does not clamp iterates to it.
pub fn properness_bound(family: &NormalFamily, f: &[f64]) -> Result<f64> {
    check_areas(family, f)?;
    let d = family.dim();
    let fmin = f.iter().copied().fold(f64::INFINITY, f64::min);
    let per = ball_perimeter(d, fmin);
    let mut bound: f64 = 0.0;
    for (i, fi) in f.iter().enumerate() {
        let lambda = tanh(0.5 * family.min_separation(i)?);
        bound = bound.max(d as f64 * fi / (lambda * per));
    }
    Ok(bound)
}

fn check_areas(family: &NormalFamily, f: &[f64]) -> Result<()> {
    if f.len() != family.len() {
        return Err(Error::DimensionMismatch { expected: family.len(), found: f.len() });
    }
    for (index, &value) in f.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveSupport { index, value });
        }
    }
    Ok(())
}

/// Solves `A(h) = f` starting from the scaled unit vector whose total area
/// matches `Σ f`.
pub fn solve_minkowski(family: &NormalFamily, f: &[f64], cfg: &SolverConfig) -> Result<SolverReport> {
    check_areas(family, f)?;
    if !(cfg.shrink > 0.0 && cfg.shrink < 1.0) || !(cfg.min_step > 0.0) || !(cfg.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("solver configuration {cfg:?}")));
    }
    let d = family.dim() as f64;
    let n = family.len();
    let unit = build(family, &SupportVector::ones(n))?;
    let s = pow(f.iter().sum::<f64>() / unit.areas().iter().sum::<f64>(), 1.0 / d);
    let mut h = SupportVector::new(alloc::vec![s; n])?;
    let mut p = build(family, &h)?;
    let mut r = residual(&p.areas(), f);
    let target = cfg.tol * sup_norm(f);

    let mut report = SolverReport {
        solution: h.clone(),
        residual_history: alloc::vec![sup_norm(&r)],
        step_lengths: Vec::new(),
        iterations: 0,
        converged: false,
        combinatorics_changes: 0,
        properness_bound: properness_bound(family, f)?,
    };

    while report.iterations < cfg.max_iter {
        let rnorm = sup_norm(&r);
        if rnorm <= target {
            report.converged = true;
            return Ok(report);
        }
        let jac = area_jacobian(&p).matrix;
        let chol = jac.cholesky().ok_or(Error::NotPositiveDefinite)?;
        let delta = chol.solve(&r);
        let mut alpha = 1.0;
        let accepted = loop {
            if alpha < cfg.min_step {
                break None;
            }
            let trial: Vec<f64> = h.values().iter().zip(&delta).map(|(x, dx)| x - alpha * dx).collect();
            if let Ok(th) = SupportVector::new(trial) {
                if let Ok(tp) = build(family, &th) {
                    let tr = residual(&tp.areas(), f);
                    if sup_norm(&tr) < rnorm {
                        break Some((th, tp, tr));
                    }
                }
            }
            alpha *= cfg.shrink;
        };
        report.iterations += 1;
        let Some((th, tp, tr)) = accepted else {
            return Err(Error::DomainEscape(Box::new(report)));
        };
        if tp.fan != p.fan {
            report.combinatorics_changes += 1;
        }
        h = th;
        p = tp;
        r = tr;
        report.solution = h.clone();
        report.residual_history.push(sup_norm(&r));
        report.step_lengths.push(alpha);
    }
    if sup_norm(&r) <= target {
        report.converged = true;
        return Ok(report);
    }
    Err(Error::NonConvergence(Box::new(report)))
}

//! Minkowski space `R^{d+1}` with the form `x₁y₁ + … + x_d y_d − x_{d+1}y_{d+1}`.
//!
//! The last coordinate is time. Points of the hyperboloid `ℍ^d` are the unit
//! future time-like vectors, `⟨x,x⟩ = −1` with positive time coordinate.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{acosh, asinh, sqrt};
use crate::tol;
use crate::{Error, Result};

/// A vector of `R^{d+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzVector {
    coords: Vec<f64>,
}

/// Causal character of a vector with respect to the Minkowski form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalClass {
    FutureTimelike,
    PastTimelike,
    FutureLightlike,
    PastLightlike,
    Spacelike,
    Zero,
}

/// Raw form on slices of equal length. Callers check dimensions.
#[inline]
pub(crate) fn form(x: &[f64], y: &[f64]) -> f64 {
    let d = x.len() - 1;
    let mut s = 0.0;
    for k in 0..d {
        s += x[k] * y[k];
    }
    s - x[d] * y[d]
}

impl LorentzVector {
    /// Builds a vector from `d+1` coordinates, `d ≥ 1`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: coords.len() });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 2);
        Self { coords }
    }

    /// The apex of the hyperboloid, `(0, …, 0, 1)`.
    pub fn origin(dim: usize) -> Self {
        let mut coords = alloc::vec![0.0; dim + 1];
        coords[dim] = 1.0;
        Self { coords }
    }

    /// Unit point of `ℍ^d` at hyperbolic distance `dist` from the origin in
    /// the direction with spatial unit vector `dir` (length `d`).
    pub fn hyperboloid_point(dir: &[f64], dist: f64) -> Result<Self> {
        let n = sqrt(dir.iter().map(|v| v * v).sum());
        if n == 0.0 {
            return Err(Error::InvalidParameter("zero direction".into()));
        }
        let s = crate::math::sinh(dist) / n;
        let mut coords: Vec<f64> = dir.iter().map(|v| v * s).collect();
        coords.push(crate::math::cosh(dist));
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn time(&self) -> f64 {
        self.coords[self.dim()]
    }

    pub fn bilinear(&self, other: &Self) -> Result<f64> {
        bilinear(self, other)
    }

    /// `⟨x,x⟩`.
    pub fn norm_sq(&self) -> f64 {
        form(&self.coords, &self.coords)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// Euclidean length of the coordinate vector.
    pub fn euclidean_norm(&self) -> f64 {
        sqrt(self.coords.iter().map(|c| c * c).sum())
    }

    pub fn classify(&self) -> CausalClass {
        classify(self)
    }

    /// True for a unit future time-like vector, within [`tol::GEOMETRIC`].
    pub fn is_on_hyperboloid(&self) -> bool {
        self.time() > 0.0 && (self.norm_sq() + 1.0).abs() <= tol::GEOMETRIC
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch { expected: self.coords.len(), found: other.coords.len() });
        }
        Ok(())
    }
}

impl Add for &LorentzVector {
    type Output = LorentzVector;
    fn add(self, rhs: &LorentzVector) -> LorentzVector {
        assert_eq!(self.coords.len(), rhs.coords.len());
        LorentzVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &LorentzVector {
    type Output = LorentzVector;
    fn sub(self, rhs: &LorentzVector) -> LorentzVector {
        assert_eq!(self.coords.len(), rhs.coords.len());
        LorentzVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<f64> for &LorentzVector {
    type Output = LorentzVector;
    fn mul(self, rhs: f64) -> LorentzVector {
        self.scale(rhs)
    }
}

impl Neg for &LorentzVector {
    type Output = LorentzVector;
    fn neg(self) -> LorentzVector {
        self.scale(-1.0)
    }
}

/// `⟨x,y⟩_-`.
pub fn bilinear(x: &LorentzVector, y: &LorentzVector) -> Result<f64> {
    x.check_dim(y)?;
    Ok(form(&x.coords, &y.coords))
}

pub fn classify(x: &LorentzVector) -> CausalClass {
    let e2: f64 = x.coords.iter().map(|c| c * c).sum();
    if e2 == 0.0 {
        return CausalClass::Zero;
    }
    let q = x.norm_sq();
    let future = x.time() > 0.0;
    if q.abs() <= tol::LIGHTLIKE * e2 {
        if future {
            CausalClass::FutureLightlike
        } else {
            CausalClass::PastLightlike
        }
    } else if q > 0.0 {
        CausalClass::Spacelike
    } else if future {
        CausalClass::FutureTimelike
    } else {
        CausalClass::PastTimelike
    }
}

/// `arccosh` with the rounding guard: arguments in `[1 − 1e−12, 1]` map to 0.
pub(crate) fn clamped_acosh(c: f64) -> Result<f64> {
    if c >= 1.0 {
        Ok(acosh(c))
    } else if c >= 1.0 - tol::ACOSH_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::InvalidParameter(alloc::format!("arccosh argument {c} below 1")))
    }
}

fn check_unit(u: &LorentzVector) -> Result<()> {
    if classify(u) != CausalClass::FutureTimelike {
        return Err(Error::NotTimelike);
    }
    let q = u.norm_sq();
    if (q + 1.0).abs() > tol::GEOMETRIC {
        return Err(Error::NotUnit { norm: q });
    }
    Ok(())
}

/// Hyperbolic distance between two points of `ℍ^d`: `cosh φ = −⟨u,v⟩`.
pub fn hyp_distance(u: &LorentzVector, v: &LorentzVector) -> Result<f64> {
    u.check_dim(v)?;
    check_unit(u)?;
    check_unit(v)?;
    clamped_acosh(-form(&u.coords, &v.coords))?;
    Ok(hyp_distance_raw(&u.coords, &v.coords))
}

/// Distance on raw unit vectors, skipping validation.
///
/// Short distances use the chord `⟨u−v,u−v⟩ = 4sinh²(φ/2)`, which keeps full
/// relative precision where `arccosh` near 1 would lose half the digits.
#[inline]
pub(crate) fn hyp_distance_raw(u: &[f64], v: &[f64]) -> f64 {
    let c = -form(u, v);
    if c >= 2.0 {
        return acosh(c);
    }
    let d = u.len() - 1;
    let mut q = 0.0;
    for k in 0..d {
        q += (u[k] - v[k]) * (u[k] - v[k]);
    }
    q -= (u[d] - v[d]) * (u[d] - v[d]);
    2.0 * asinh(0.5 * sqrt(q.max(0.0)))
}

/// Radial projection `x / √(−⟨x,x⟩)` of a future time-like vector onto `ℍ^d`.
pub fn to_hyperboloid(x: &LorentzVector) -> Result<LorentzVector> {
    if classify(x) != CausalClass::FutureTimelike {
        return Err(Error::NotTimelike);
    }
    Ok(x.scale(1.0 / sqrt(-x.norm_sq())))
}

/// The space-like affine hyperplane `{x : ⟨x,η⟩ = −h}`.
///
/// `frame` is an orthonormal basis of `η^⊥`; frame coordinates are measured
/// from `foot = h·η`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportPlane {
    pub normal: LorentzVector,
    pub offset: f64,
    pub foot: LorentzVector,
    pub frame: Vec<LorentzVector>,
}

/// Orthonormal space-like basis of `η^⊥` from Gram–Schmidt on the projected
/// standard basis. Candidates whose projection has squared norm below 1e−6
/// (after removing earlier directions) are skipped.
pub(crate) fn orthonormal_frame(eta: &[f64]) -> Vec<Vec<f64>> {
    let n = eta.len();
    let d = n - 1;
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(d);
    for k in 0..n {
        if frame.len() == d {
            break;
        }
        let mut v = alloc::vec![0.0; n];
        v[k] = 1.0;
        // project onto η^⊥ (⟨η,η⟩ = −1); the second pass restores
        // orthogonality lost to cancellation when η is far from the origin
        for _ in 0..2 {
            let a = form(&v, eta);
            for (vi, ei) in v.iter_mut().zip(eta) {
                *vi += a * ei;
            }
            for e in &frame {
                let b = form(&v, e);
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= b * ei;
                }
            }
        }
        let q = form(&v, &v);
        if q < 1e-6 {
            continue;
        }
        let s = 1.0 / sqrt(q);
        v.iter_mut().for_each(|c| *c *= s);
        frame.push(v);
    }
    frame
}

impl SupportPlane {
    /// Ambient point with frame coordinates `uv`.
    pub fn point(&self, uv: &[f64]) -> LorentzVector {
        let mut x = self.foot.coords.clone();
        for (e, t) in self.frame.iter().zip(uv) {
            for (xi, ei) in x.iter_mut().zip(&e.coords) {
                *xi += t * ei;
            }
        }
        LorentzVector { coords: x }
    }

    /// Frame coordinates of the orthogonal projection of `x` onto the plane.
    pub fn frame_coords(&self, x: &LorentzVector) -> Vec<f64> {
        let r = x - &self.foot;
        self.frame.iter().map(|e| form(&r.coords, &e.coords)).collect()
    }

    /// `⟨x,η⟩ + h`, zero exactly on the plane.
    pub fn residual(&self, x: &LorentzVector) -> f64 {
        form(&x.coords, &self.normal.coords) + self.offset
    }
}

pub fn support_plane(eta: &LorentzVector, h: f64) -> Result<SupportPlane> {
    if !(h > 0.0) {
        return Err(Error::NonPositiveSupport { index: 0, value: h });
    }
    check_unit(eta)?;
    let frame = orthonormal_frame(&eta.coords).into_iter().map(|coords| LorentzVector { coords }).collect();
    Ok(SupportPlane { normal: eta.clone(), offset: h, foot: eta.scale(h), frame })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn v(c: &[f64]) -> LorentzVector {
        LorentzVector::from_slice(c).unwrap()
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(bilinear(&v(&[0., 0., 1.]), &v(&[0., 0., 1.])).unwrap(), -1.0);
        assert_eq!(bilinear(&v(&[1., 0., 1.]), &v(&[1., 0., 1.])).unwrap(), 0.0);
        assert_eq!(bilinear(&v(&[1., 2., 3.]), &v(&[4., 5., 6.])).unwrap(), -4.0);
        assert!(matches!(bilinear(&v(&[1., 2., 3.]), &v(&[1., 2.])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&v(&[0., 0., 1.])), CausalClass::FutureTimelike);
        assert_eq!(classify(&v(&[1., 0., 0.])), CausalClass::Spacelike);
        assert_eq!(classify(&v(&[1., 0., -1.])), CausalClass::PastLightlike);
        assert_eq!(classify(&v(&[0., 1., 1.])), CausalClass::FutureLightlike);
        assert_eq!(classify(&v(&[0., 0., -2.])), CausalClass::PastTimelike);
        assert_eq!(classify(&v(&[0., 0., 0.])), CausalClass::Zero);
    }

    #[test]
    fn distance_examples() {
        let o = v(&[0., 0., 1.]);
        assert_eq!(hyp_distance(&o, &o).unwrap(), 0.0);
        let b = v(&[libm::sinh(1.0), 0., libm::cosh(1.0)]);
        assert!((hyp_distance(&o, &b).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(hyp_distance(&o, &v(&[0., 0., 2.])), Err(Error::NotUnit { .. })));
        assert!(matches!(hyp_distance(&o, &v(&[1., 0., 0.])), Err(Error::NotTimelike)));
    }

    #[test]
    fn acosh_clamp() {
        assert_eq!(clamped_acosh(1.0 - 5e-13).unwrap(), 0.0);
        assert!(clamped_acosh(1.0 - 1e-9).is_err());
    }

    #[test]
    fn hyperboloid_projection() {
        assert_eq!(to_hyperboloid(&v(&[0., 0., 5.])).unwrap(), v(&[0., 0., 1.]));
        let p = to_hyperboloid(&v(&[3., 0., 5.])).unwrap();
        for (a, b) in p.coords().iter().zip([0.75, 0.0, 1.25]) {
            assert!((a - b).abs() < 1e-15);
        }
        let u = v(&[0., 0., 1.]);
        assert_eq!(to_hyperboloid(&u).unwrap(), u);
        assert!(to_hyperboloid(&v(&[2., 0., 1.])).is_err());
    }

    #[test]
    fn horizontal_plane() {
        let pl = support_plane(&v(&[0., 0., 1.]), 1.0).unwrap();
        assert_eq!(pl.foot, v(&[0., 0., 1.]));
        assert_eq!(pl.frame, vec![v(&[1., 0., 0.]), v(&[0., 1., 0.])]);
        let pl = support_plane(&v(&[0., 0., 1.]), 2.5).unwrap();
        assert_eq!(pl.foot, v(&[0., 0., 2.5]));
        assert!(support_plane(&v(&[0., 0., 1.]), 0.0).is_err());
        assert!(support_plane(&v(&[0., 0., 2.]), 1.0).is_err());
    }

    #[test]
    fn frame_gram_matrix_for_random_normals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let th: f64 = rng.random_range(0.0..core::f64::consts::TAU);
            let r: f64 = rng.random_range(0.0..4.0);
            let eta = LorentzVector::hyperboloid_point(&[libm::cos(th), libm::sin(th)], r).unwrap();
            let pl = support_plane(&eta, 1.3).unwrap();
            assert_eq!(pl.frame.len(), 2);
            for a in 0..2 {
                assert!(bilinear(&pl.frame[a], &eta).unwrap().abs() < 1e-12);
                for b in 0..2 {
                    let g = bilinear(&pl.frame[a], &pl.frame[b]).unwrap();
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((g - want).abs() < 1e-12, "{g}");
                }
            }
        }
    }

    fn unit_point() -> impl Strategy<Value = LorentzVector> {
        (0.0..core::f64::consts::TAU, 0.0..3.0f64)
            .prop_map(|(t, r)| LorentzVector::hyperboloid_point(&[libm::cos(t), libm::sin(t)], r).unwrap())
    }

    proptest! {
        #[test]
        fn bilinear_is_symmetric(a in prop::array::uniform3(-10.0..10.0f64), b in prop::array::uniform3(-10.0..10.0f64)) {
            let (x, y) = (v(&a), v(&b));
            prop_assert_eq!(bilinear(&x, &y).unwrap(), bilinear(&y, &x).unwrap());
        }

        #[test]
        fn classify_is_scale_invariant(a in prop::array::uniform3(-10.0..10.0f64), lambda in 1e-3..1e3f64) {
            let x = v(&a);
            prop_assert_eq!(classify(&x), classify(&x.scale(lambda)));
        }

        #[test]
        fn triangle_inequality(p in unit_point(), q in unit_point(), r in unit_point()) {
            let pq = hyp_distance(&p, &q).unwrap();
            let qr = hyp_distance(&q, &r).unwrap();
            let pr = hyp_distance(&p, &r).unwrap();
            prop_assert!(pr <= pq + qr + 1e-9);
        }

        #[test]
        fn plane_points_satisfy_plane_equation(eta in unit_point(), h in 0.1..5.0f64, u in -3.0..3.0f64, w in -3.0..3.0f64) {
            let pl = support_plane(&eta, h).unwrap();
            let x = pl.point(&[u, w]);
            prop_assert!(pl.residual(&x).abs() < 1e-10 * libm::cosh(3.0));
        }

        #[test]
        fn projection_is_idempotent(a in prop::array::uniform2(-5.0..5.0f64), t in 0.0..5.0f64) {
            let x = v(&[a[0], a[1], 5.0 * (a[0].abs() + a[1].abs()) + t + 0.1]);
            let p = to_hyperboloid(&x).unwrap();
            let pp = to_hyperboloid(&p).unwrap();
            for (s, r) in p.coords().iter().zip(pp.coords()) {
                prop_assert!((s - r).abs() < 1e-12 * s.abs().max(1.0));
            }
        }
    }
}

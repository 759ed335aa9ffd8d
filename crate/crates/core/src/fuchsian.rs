//! Fuchsian groups as sets of `(d+1)×(d+1)` isometry generators.
//!
//! Group elements are enumerated by a breadth-first search over words with
//! left multiplication, pruned by how far an element moves the origin. Two
//! elements are identified when they move the origin to the same point and
//! their matrices agree; the groups here are torsion-free, so the first check
//! already decides and the second guards against user input.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::clip::{Clip, Interval, Line, Polygon};
use crate::linalg::determinant;
use crate::lorentz::{form, hyp_distance_raw, orthonormal_frame, to_hyperboloid};
use crate::math::{acos, acosh, cos, cosh, sin, sinh, sqrt, tanh};
use crate::{tol, Error, LorentzVector, Result};

/// A linear isometry of Minkowski space preserving the future cone.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    dim: usize,
    /// Row-major `(d+1)×(d+1)`.
    matrix: Vec<f64>,
    word: Vec<usize>,
}

impl Isometry {
    pub fn identity(dim: usize) -> Self {
        let n = dim + 1;
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1.0;
        }
        Self { dim, matrix, word: Vec::new() }
    }

    /// Validates `MᵀJM = J`, `det M = 1` and `M₍d+1,d+1₎ > 0`.
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: n });
        }
        let mut matrix = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            matrix.extend_from_slice(r);
        }
        Self::from_row_major(n - 1, matrix)
    }

    pub fn from_row_major(dim: usize, matrix: Vec<f64>) -> Result<Self> {
        let n = dim + 1;
        if matrix.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: matrix.len() });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        let g = Self { dim, matrix, word: Vec::new() };
        let defect = g.form_defect().max(g.det_defect());
        if defect > tol::ISOMETRY || g.matrix[n * n - 1] <= 0.0 {
            return Err(Error::NotIsometry { defect });
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix.chunks(self.dim + 1).map(|r| r.to_vec()).collect()
    }

    /// Generator indices whose product gives this element (leftmost first).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub(crate) fn with_word(mut self, word: Vec<usize>) -> Self {
        self.word = word;
        self
    }

    pub(crate) fn apply_raw(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim + 1;
        (0..n).map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum()).collect()
    }

    pub fn apply(&self, x: &LorentzVector) -> Result<LorentzVector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(LorentzVector::from_vec_unchecked(self.apply_raw(x.coords())))
    }

    /// `self ∘ other`; the word is the concatenation.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let n = self.dim + 1;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.matrix[k * n + j];
                }
            }
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Isometry { dim: self.dim, matrix: m, word }
    }

    /// `J Mᵀ J`. The word is cleared; [`FuchsianGroup::inverse`] keeps it.
    pub fn inverse(&self) -> Isometry {
        let n = self.dim + 1;
        let d = self.dim;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let s = if (i == d) != (j == d) { -1.0 } else { 1.0 };
                m[i * n + j] = s * self.matrix[j * n + i];
            }
        }
        Isometry { dim: self.dim, matrix: m, word: Vec::new() }
    }

    /// `J Mᵀ J M − I`, zero for an exact isometry.
    fn form_error(&self) -> Vec<f64> {
        let n = self.dim + 1;
        let d = self.dim;
        let mut e = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    let jk = if k == d { -1.0 } else { 1.0 };
                    s += jk * self.matrix[k * n + i] * self.matrix[k * n + j];
                }
                let ji = if i == d { -1.0 } else { 1.0 };
                e[i * n + j] = ji * s - if i == j { 1.0 } else { 0.0 };
            }
        }
        e
    }

    /// `max |MᵀJM − J|` divided by `max(1, max|M|²)`.
    pub fn form_defect(&self) -> f64 {
        let m = self.max_abs();
        let scale = (m * m).max(1.0);
        self.form_error().iter().fold(0.0f64, |m, v| m.max(v.abs())) / scale
    }

    /// `|det M − 1|` divided by `max(1, max|M|^{d+1})`.
    pub fn det_defect(&self) -> f64 {
        let n = self.dim + 1;
        let scale = crate::math::pow(self.max_abs(), n as f64).max(1.0);
        (self.determinant() - 1.0).abs() / scale
    }

    pub fn determinant(&self) -> f64 {
        determinant(&self.matrix, self.dim + 1)
    }

    fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Re-projects onto the isometry group: `M ← M(I − E/2)` with
    /// `E = JMᵀJM − I`.
    ///
    /// The rounding noise in `E` grows like `|M|²`, so matrices with large
    /// entries are left alone: there the correction would add more error than
    /// it removes.
    pub(crate) fn renormalize(&mut self) {
        if self.max_abs() > 1e3 {
            return;
        }
        let n = self.dim + 1;
        let e = self.form_error();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = self.matrix[i * n + j];
                for k in 0..n {
                    s -= 0.5 * self.matrix[i * n + k] * e[k * n + j];
                }
                m[i * n + j] = s;
            }
        }
        self.matrix = m;
    }

    /// `cosh` of the displacement of the origin, i.e. the bottom-right entry.
    #[inline]
    pub(crate) fn origin_cosh(&self) -> f64 {
        let n = self.dim + 1;
        self.matrix[n * n - 1]
    }

    /// Image of the origin: the last column.
    pub(crate) fn origin_image(&self) -> Vec<f64> {
        let n = self.dim + 1;
        (0..n).map(|i| self.matrix[i * n + n - 1]).collect()
    }

    /// Hyperbolic distance the element moves `p ∈ ℍ^d`.
    pub fn displacement(&self, p: &LorentzVector) -> f64 {
        hyp_distance_raw(p.coords(), &self.apply_raw(p.coords()))
    }

    /// Translation length from the trace: `tr = 2cosh ℓ` for `d = 1` and
    /// `tr = 1 + 2cosh ℓ` for `d = 2`. Elliptic and parabolic elements give 0;
    /// other dimensions give `None`.
    pub fn translation_length(&self) -> Option<f64> {
        let n = self.dim + 1;
        let tr: f64 = (0..n).map(|i| self.matrix[i * n + i]).sum();
        let c = match self.dim {
            1 => tr / 2.0,
            2 => (tr - 1.0) / 2.0,
            _ => return None,
        };
        Some(if c > 1.0 { acosh(c) } else { 0.0 })
    }

    /// Max-norm distance between matrices.
    pub fn distance_to(&self, other: &Isometry) -> f64 {
        self.matrix.iter().zip(&other.matrix).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Same element up to [`tol::DEDUP`], relative to the matrix scale.
    pub fn approx_eq(&self, other: &Isometry) -> bool {
        self.dim == other.dim && self.distance_to(other) <= tol::DEDUP * self.max_abs().max(1.0)
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&Isometry::identity(self.dim))
    }
}

/// Rotation by `theta` in the `x₁x₂`-plane (d = 2).
fn rotation(theta: f64) -> Isometry {
    let (c, s) = (cos(theta), sin(theta));
    Isometry { dim: 2, matrix: vec![c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0], word: Vec::new() }
}

/// Boost by `t` along `x₁` in dimension `dim`.
fn boost(dim: usize, t: f64) -> Isometry {
    let mut g = Isometry::identity(dim);
    let n = dim + 1;
    let (c, s) = (cosh(t), sinh(t));
    g.matrix[0] = c;
    g.matrix[n - 1] = s;
    g.matrix[(n - 1) * n] = s;
    g.matrix[n * n - 1] = c;
    g
}

/// Spatial-direction hashing of points of `ℍ^d` for deduplication: points are
/// bucketed by their Poincaré-ball coordinates `x/(1+t)` on a fine grid.
struct PointGrid {
    cell: f64,
    buckets: BTreeMap<Vec<i64>, Vec<usize>>,
}

impl PointGrid {
    fn new() -> Self {
        Self { cell: 1e-9, buckets: BTreeMap::new() }
    }

    fn key(&self, x: &[f64]) -> Vec<i64> {
        let d = x.len() - 1;
        let t = 1.0 + x[d];
        x[..d].iter().map(|v| crate::math::round(v / t / self.cell) as i64).collect()
    }

    /// Indices stored in the cell of `x` and its neighbours.
    fn near(&self, x: &[f64]) -> Vec<usize> {
        let key = self.key(x);
        let d = key.len();
        let mut out = Vec::new();
        let total = 3usize.pow(d as u32);
        for code in 0..total {
            let mut k = key.clone();
            let mut c = code;
            for ki in k.iter_mut() {
                *ki += (c % 3) as i64 - 1;
                c /= 3;
            }
            if let Some(v) = self.buckets.get(&k) {
                out.extend_from_slice(v);
            }
        }
        out
    }

    fn insert(&mut self, x: &[f64], idx: usize) {
        let key = self.key(x);
        self.buckets.entry(key).or_default().push(idx);
    }
}

/// A group element together with how far it moves the origin.
#[derive(Debug, Clone)]
pub(crate) struct BallElement {
    pub g: Isometry,
    /// `cosh` of the displacement of the origin.
    pub cosh_disp: f64,
    pub disp: f64,
}

/// All elements moving the origin at most `radius`, sorted by displacement.
#[derive(Debug, Clone)]
pub(crate) struct GroupBall {
    pub radius: f64,
    pub elements: Vec<BallElement>,
}

/// Orbit points of a base point within a hyperbolic radius.
#[derive(Debug, Clone)]
pub struct OrbitBall {
    pub base: LorentzVector,
    /// `(γ, γ·base)`, sorted by distance to the base, then by word.
    pub elements: Vec<(Isometry, LorentzVector)>,
    pub radius: f64,
}

impl OrbitBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Hyperbolic distances of the orbit points to the base.
    pub fn distances(&self) -> Vec<f64> {
        let b = to_hyperboloid(&self.base).map(LorentzVector::into_coords).unwrap_or_default();
        self.elements
            .iter()
            .map(|(_, p)| {
                let q = to_hyperboloid(p).map(LorentzVector::into_coords).unwrap_or_default();
                hyp_distance_raw(&b, &q)
            })
            .collect()
    }
}

/// Dirichlet region of a point: a geodesic polygon (d = 2) or segment (d = 1).
#[derive(Debug, Clone)]
pub struct DirichletCell {
    pub center: LorentzVector,
    /// Cyclically ordered vertices on `ℍ^d` (the two endpoints when d = 1).
    pub vertices: Vec<LorentzVector>,
    /// Element `γ` whose bisector with the center carries each side; side `k`
    /// ends at vertex `k`.
    pub sides: Vec<Isometry>,
    /// Orbit radius that certified the cell.
    pub radius: f64,
}

impl DirichletCell {
    /// Interior angles at the vertices (d = 2), empty for d = 1.
    pub fn angles(&self) -> Vec<f64> {
        if self.center.dim() != 2 {
            return Vec::new();
        }
        let m = self.vertices.len();
        (0..m)
            .map(|k| {
                let p = self.vertices[k].coords();
                let a = self.vertices[(k + m - 1) % m].coords();
                let b = self.vertices[(k + 1) % m].coords();
                let ta = tangent_towards(p, a);
                let tb = tangent_towards(p, b);
                let c = form(&ta, &tb) / sqrt(form(&ta, &ta) * form(&tb, &tb));
                acos(c.clamp(-1.0, 1.0))
            })
            .collect()
    }

    /// Hyperbolic area (Gauss–Bonnet) for d = 2, length for d = 1.
    pub fn volume(&self) -> f64 {
        match self.center.dim() {
            1 => hyp_distance_raw(self.vertices[0].coords(), self.vertices[1].coords()),
            _ => {
                let m = self.vertices.len() as f64;
                (m - 2.0) * PI - self.angles().iter().sum::<f64>()
            }
        }
    }
}

/// Unit-free tangent vector at `p` pointing along the geodesic to `q`.
fn tangent_towards(p: &[f64], q: &[f64]) -> Vec<f64> {
    let c = form(q, p);
    q.iter().zip(p).map(|(qi, pi)| qi + c * pi).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Volume {
    Known(f64),
    FromCell,
}

/// A Fuchsian group given by generators closed under inverses.
#[derive(Debug, Clone)]
pub struct FuchsianGroup {
    dim: usize,
    generators: Vec<Isometry>,
    inverses: Vec<usize>,
    label: String,
    volume: Volume,
    /// Extra pruning radius for ball enumeration. Zero when the generators
    /// are the side pairings of the Dirichlet region at the origin, where
    /// every element is reached through elements moving the origin less.
    margin: f64,
}

impl FuchsianGroup {
    /// `d = 1` group generated by the boost of length `ell`.
    pub fn boost(ell: f64) -> Result<Self> {
        if !(ell > 0.0) || !ell.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!("boost length must be positive, got {ell}")));
        }
        let g = boost(1, ell).with_word(vec![0]);
        let h = boost(1, -ell).with_word(vec![1]);
        Ok(Self {
            dim: 1,
            generators: vec![g, h],
            inverses: vec![1, 0],
            label: alloc::format!("boost:{ell}"),
            volume: Volume::Known(ell),
            margin: 0.0,
        })
    }

    /// Genus-2 surface group of the regular octagon with angles `π/4` centered
    /// at the origin. Generator `k` (`k = 0..3`) translates along the axis at
    /// angle `kπ/4`; generators `4..7` are their inverses.
    ///
    /// Opposite sides of the octagon sit at distance twice its inradius `r`,
    /// with `cosh r = 1 + √2`, so the translation length satisfies
    /// `cosh φ₀ = 2cosh²r − 1 = 5 + 4√2`.
    pub fn octagon() -> Self {
        let phi0 = Self::octagon_translation_length();
        let mut generators = Vec::with_capacity(8);
        for sign in [1.0, -1.0] {
            for k in 0..4 {
                let theta = k as f64 * PI / 4.0;
                let g = rotation(theta).compose(&boost(2, sign * phi0)).compose(&rotation(-theta));
                let idx = generators.len();
                generators.push(g.with_word(vec![idx]));
            }
        }
        Self {
            dim: 2,
            generators,
            inverses: vec![4, 5, 6, 7, 0, 1, 2, 3],
            label: "octagon".into(),
            volume: Volume::Known(4.0 * PI),
            margin: 0.0,
        }
    }

    /// `arccosh(5 + 4√2)`.
    pub fn octagon_translation_length() -> f64 {
        acosh(5.0 + 4.0 * sqrt(2.0))
    }

    /// Group from user matrices; missing inverses are appended.
    pub fn from_matrices(dim: usize, matrices: &[Vec<f64>], label: &str) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::InvalidParameter("generator list is empty".into()));
        }
        if dim == 0 {
            return Err(Error::UnsupportedDimension { expected: 1, found: 0 });
        }
        let mut generators: Vec<Isometry> = Vec::new();
        for m in matrices {
            let g = Isometry::from_row_major(dim, m.clone())?;
            if g.is_identity() {
                return Err(Error::InvalidParameter("identity generator".into()));
            }
            if !generators.iter().any(|h| h.approx_eq(&g)) {
                generators.push(g);
            }
        }
        let mut k = 0;
        while k < generators.len() {
            let inv = generators[k].inverse();
            if !generators.iter().any(|h| h.approx_eq(&inv)) {
                generators.push(inv);
            }
            k += 1;
        }
        let inverses = (0..generators.len())
            .map(|k| {
                let inv = generators[k].inverse();
                generators.iter().position(|h| h.approx_eq(&inv)).unwrap()
            })
            .collect();
        for (k, g) in generators.iter_mut().enumerate() {
            g.word = vec![k];
        }
        let origin = LorentzVector::origin(dim);
        let margin = generators.iter().map(|g| g.displacement(&origin)).fold(0.0, f64::max);
        Ok(Self { dim, generators, inverses, label: label.into(), volume: Volume::FromCell, margin })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    /// Index of the inverse of generator `k`.
    pub fn inverse_index(&self, k: usize) -> usize {
        self.inverses[k]
    }

    /// Product of the generators in `word`.
    pub fn element(&self, word: &[usize]) -> Result<Isometry> {
        let mut g = Isometry::identity(self.dim);
        for (len, &k) in word.iter().enumerate() {
            let s =
                self.generators.get(k).ok_or_else(|| Error::InvalidParameter(alloc::format!("no generator {k}")))?;
            g = g.compose(s);
            if len >= tol::RENORMALIZE_AFTER {
                g.renormalize();
            }
        }
        Ok(g)
    }

    /// Inverse element with the inverted word.
    pub fn inverse(&self, g: &Isometry) -> Isometry {
        let word = g.word.iter().rev().map(|&k| self.inverses[k]).collect();
        g.inverse().with_word(word)
    }

    /// Hyperbolic volume of `ℍ^d/Γ`: known for the built-in groups, from the
    /// Dirichlet region at the origin otherwise.
    pub fn hyperbolic_volume(&self) -> Result<f64> {
        match self.volume {
            Volume::Known(v) => Ok(v),
            Volume::FromCell => Ok(self.dirichlet_cell(&LorentzVector::origin(self.dim))?.volume()),
        }
    }

    /// Word obtained by repeatedly applying the generator that brings the image
    /// of the origin closest to the origin (lowest index on ties). It does not
    /// depend on how the element was found. `None` if the descent stalls.
    pub fn canonical_word(&self, g: &Isometry) -> Option<Vec<usize>> {
        let n = self.dim + 1;
        let d = self.dim;
        let mut cur = g.matrix.clone();
        let mut word = Vec::new();
        for _ in 0..10_000 {
            let c = cur[n * n - 1];
            if c <= 1.0 + 1e-9 {
                let id = Isometry { dim: d, matrix: cur, word: Vec::new() };
                return id.is_identity().then_some(word);
            }
            let mut best: Option<(usize, f64)> = None;
            for (k, s) in self.generators.iter().enumerate() {
                let v: f64 = (0..n).map(|m| s.matrix[d * n + m] * cur[m * n + d]).sum();
                match best {
                    Some((_, b)) if v >= b - 1e-9 * b => {}
                    _ => best = Some((k, v)),
                }
            }
            let (k, v) = best?;
            if v >= c - 1e-9 * c {
                return None;
            }
            let s = &self.generators[k].matrix;
            let mut next = vec![0.0; n * n];
            for i in 0..n {
                for m in 0..n {
                    let a = s[i * n + m];
                    for j in 0..n {
                        next[i * n + j] += a * cur[m * n + j];
                    }
                }
            }
            cur = next;
            word.push(self.inverses[k]);
        }
        None
    }

    /// Moves `x ∈ ℍ^d` towards the origin by generators while that strictly
    /// helps. Returns the image and the element that produced it.
    pub(crate) fn reduce_point(&self, x: &[f64]) -> (Vec<f64>, Isometry) {
        let d = self.dim;
        let mut cur = x.to_vec();
        let mut g = Isometry::identity(d);
        for _ in 0..10_000 {
            let mut best: Option<(usize, Vec<f64>)> = None;
            for (k, s) in self.generators.iter().enumerate() {
                let y = s.apply_raw(&cur);
                let bt = best.as_ref().map_or(cur[d] * (1.0 - 1e-12), |b| b.1[d]);
                if y[d] < bt {
                    best = Some((k, y));
                }
            }
            let Some((k, y)) = best else { break };
            g = self.generators[k].compose(&g);
            cur = y;
        }
        (cur, g)
    }

    /// Every distinct element expressible as a word of length at most `max_len`,
    /// in shortlex order of the first word found.
    pub fn word_ball(&self, max_len: usize) -> Vec<Isometry> {
        let mut all = vec![Isometry::identity(self.dim)];
        let mut grid = PointGrid::new();
        grid.insert(&all[0].origin_image(), 0);
        let mut shell = vec![0usize];
        for len in 1..=max_len {
            let mut next = Vec::new();
            for s in &self.generators {
                for &mi in &shell {
                    let mut g = s.compose(&all[mi]);
                    if len > tol::RENORMALIZE_AFTER {
                        g.renormalize();
                    }
                    let x = g.origin_image();
                    if grid.near(&x).iter().any(|&j| all[j].approx_eq(&g)) {
                        continue;
                    }
                    grid.insert(&x, all.len());
                    next.push(all.len());
                    all.push(g);
                }
            }
            if next.is_empty() {
                break;
            }
            shell = next;
        }
        all
    }

    /// All elements moving the origin by at most `radius`, sorted by
    /// displacement and then canonical word.
    pub(crate) fn ball(&self, radius: f64) -> Result<GroupBall> {
        let limit = cosh(radius + self.margin) * (1.0 + 1e-12);
        let keep = cosh(radius) * (1.0 + 1e-12);
        let mut all = vec![Isometry::identity(self.dim)];
        let mut grid = PointGrid::new();
        grid.insert(&all[0].origin_image(), 0);
        let mut shell = vec![0usize];
        let mut len = 0;
        while !shell.is_empty() {
            len += 1;
            let mut next = Vec::new();
            for s in &self.generators {
                for &mi in &shell {
                    let mut g = s.compose(&all[mi]);
                    if len > tol::RENORMALIZE_AFTER {
                        g.renormalize();
                    }
                    if g.origin_cosh() > limit {
                        continue;
                    }
                    let x = g.origin_image();
                    if grid.near(&x).iter().any(|&j| all[j].approx_eq(&g)) {
                        continue;
                    }
                    grid.insert(&x, all.len());
                    next.push(all.len());
                    all.push(g);
                }
            }
            if all.len() > tol::MAX_BALL_ELEMENTS {
                return Err(Error::BallOverflow { radius, limit: tol::MAX_BALL_ELEMENTS });
            }
            shell = next;
        }
        let mut elements: Vec<BallElement> = all
            .into_iter()
            .filter(|g| g.origin_cosh() <= keep)
            .map(|g| {
                let word = self.canonical_word(&g).unwrap_or_else(|| g.word.clone());
                let cosh_disp = g.origin_cosh();
                let disp = if cosh_disp > 1.0 { acosh(cosh_disp) } else { 0.0 };
                BallElement { g: g.with_word(word), cosh_disp, disp }
            })
            .collect();
        elements.sort_by(|a, b| {
            a.cosh_disp
                .total_cmp(&b.cosh_disp)
                .then_with(|| a.g.word.len().cmp(&b.g.word.len()))
                .then_with(|| a.g.word.cmp(&b.g.word))
        });
        Ok(GroupBall { radius, elements })
    }

    /// Orbit points of `x` within hyperbolic distance `radius` of `x`.
    pub fn orbit(&self, x: &LorentzVector, radius: f64) -> Result<OrbitBall> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(alloc::format!("orbit radius must be positive, got {radius}")));
        }
        let p = to_hyperboloid(x)?;
        let r = hyp_distance_raw(p.coords(), LorentzVector::origin(self.dim).coords());
        let ball = self.ball(radius + 2.0 * r)?;
        let mut found: Vec<(f64, Isometry, Vec<f64>)> = Vec::new();
        let mut grid = PointGrid::new();
        for e in ball.elements {
            let q = e.g.apply_raw(p.coords());
            let dist = hyp_distance_raw(p.coords(), &q);
            if dist > radius {
                continue;
            }
            if grid.near(&q).iter().any(|&j| hyp_distance_raw(&found[j].2, &q) <= tol::DEDUP) {
                continue;
            }
            grid.insert(&q, found.len());
            found.push((dist, e.g, q));
        }
        found.sort_by(|a, b| {
            a.0.total_cmp(&b.0).then_with(|| a.1.word.len().cmp(&b.1.word.len())).then_with(|| a.1.word.cmp(&b.1.word))
        });
        let elements = found
            .into_iter()
            .map(|(_, g, _)| {
                let y = LorentzVector::from_vec_unchecked(g.apply_raw(x.coords()));
                (g, y)
            })
            .collect();
        Ok(OrbitBall { base: x.clone(), elements, radius })
    }

    /// Dirichlet region `{p : d(p,a) ≤ d(p,γa) ∀γ}` of a point `a ∈ ℍ^d`.
    ///
    /// The orbit radius grows until it is at least twice the cell's
    /// circumradius, beyond which no bisector can reach the cell.
    pub fn dirichlet_cell(&self, a: &LorentzVector) -> Result<DirichletCell> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.dim() });
        }
        if self.dim > 2 {
            return Err(Error::UnsupportedDimension { expected: 2, found: self.dim });
        }
        if !a.is_on_hyperboloid() {
            return Err(Error::NotUnit { norm: a.norm_sq() });
        }
        let mut radius = self.generators.iter().map(|g| g.displacement(a)).fold(0.0, f64::max) + 0.5;
        loop {
            if let Some(cell) = self.try_cell(a, radius)? {
                return Ok(cell);
            }
            if radius >= tol::MAX_CUTOFF {
                return Err(Error::InsufficientRadius { radius });
            }
            radius = (2.0 * radius).min(tol::MAX_CUTOFF);
        }
    }

    fn try_cell(&self, a: &LorentzVector, radius: f64) -> Result<Option<DirichletCell>> {
        let orbit = self.orbit(a, radius)?;
        let ac = a.coords();
        let frame = orthonormal_frame(ac);
        // chart w = (⟨p,e_k⟩)/(−⟨p,a⟩) has |w| = tanh d(a,p); the bisector with
        // b = γa at distance φ is ⟨b̂, w⟩ ≤ tanh(φ/2) with b̂ the unit direction
        let constraints: Vec<(Vec<f64>, f64, usize)> = orbit
            .elements
            .iter()
            .enumerate()
            .filter_map(|(idx, (_, b))| {
                let phi = hyp_distance_raw(ac, b.coords());
                if phi <= tol::DEDUP {
                    return None;
                }
                let sh = sinh(phi);
                let n: Vec<f64> = frame.iter().map(|e| form(b.coords(), e) / sh).collect();
                Some((n, tanh(phi / 2.0), idx))
            })
            .collect();
        let lift = |w: &[f64]| -> LorentzVector {
            let q: f64 = w.iter().map(|v| v * v).sum();
            let s = 1.0 / sqrt(1.0 - q);
            let mut x: Vec<f64> = ac.iter().map(|v| v * s).collect();
            for (e, wk) in frame.iter().zip(w) {
                for (xi, ei) in x.iter_mut().zip(e) {
                    *xi += s * wk * ei;
                }
            }
            LorentzVector::from_vec_unchecked(x)
        };
        let (vertices, sides, rho) = if self.dim == 1 {
            let mut cell = Interval::boxed(2.0, tol::CLIP);
            for (n, c, idx) in &constraints {
                if cell.clip(n[0].signum(), *c, *idx) == Clip::Empty {
                    return Err(Error::InsufficientRadius { radius });
                }
            }
            if !cell.is_labeled() || cell.circumradius() >= 1.0 {
                return Ok(None);
            }
            let verts = vec![lift(&[cell.lo]), lift(&[cell.hi])];
            let sides = vec![
                orbit.elements[cell.lo_label.unwrap()].0.clone(),
                orbit.elements[cell.hi_label.unwrap()].0.clone(),
            ];
            (verts, sides, cell.circumradius())
        } else {
            let mut cell = Polygon::boxed(2.0, tol::CLIP);
            for (n, c, idx) in &constraints {
                let line = Line { n: [n[0], n[1]], c: *c, label: Some(*idx) };
                if cell.clip(line) == Clip::Empty {
                    return Err(Error::InsufficientRadius { radius });
                }
            }
            if !cell.is_labeled() || cell.circumradius() >= 1.0 {
                return Ok(None);
            }
            let verts = cell.vertices().iter().map(|v| lift(v)).collect();
            let sides = cell.lines().iter().map(|l| orbit.elements[l.label.unwrap()].0.clone()).collect();
            (verts, sides, cell.circumradius())
        };
        let rho_hyp = crate::math::atanh(rho);
        if 2.0 * rho_hyp > radius {
            return Ok(None);
        }
        Ok(Some(DirichletCell { center: a.clone(), vertices, sides, radius }))
    }
}

/// `d = 1` group generated by the boost of length `ell`.
pub fn boost_group(ell: f64) -> Result<FuchsianGroup> {
    FuchsianGroup::boost(ell)
}

/// The genus-2 octagon group.
pub fn octagon_group() -> FuchsianGroup {
    FuchsianGroup::octagon()
}

pub fn word_ball(group: &FuchsianGroup, max_len: usize) -> Vec<Isometry> {
    group.word_ball(max_len)
}

pub fn orbit(group: &FuchsianGroup, x: &LorentzVector, radius: f64) -> Result<OrbitBall> {
    group.orbit(x, radius)
}

pub fn dirichlet_cell(group: &FuchsianGroup, a: &LorentzVector) -> Result<DirichletCell> {
    group.dirichlet_cell(a)
}

//! Covolume, facet areas and their derivatives, mixed covolumes, and the
//! reversed Brunn–Minkowski type inequalities.
//!
//! With `A(F_i)` the area of facet `i` and `h` the support vector,
//! `covol = (1/(d+1)) Σ h(i)A(F_i)`. The area map is `C¹` with symmetric
//! Jacobian; inside a class of strongly isomorphic simple polyhedra each
//! facet area is a quadratic form (d = 2) or linear form (d = 1) in `h`, and
//! polarization gives the mixed covolumes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::lorentz::{form, hyp_distance_raw};
use crate::math::{cos, pow, sin, sinh, sqrt};
use crate::polyhedra::{
    build, is_simple, support_value, FanSignature, FuchsianPolyhedron, NormalFamily, SupportVector,
};
use crate::{tol, Error, FuchsianGroup, LorentzVector, Result};

/// Covolume together with the data it was computed from.
#[derive(Debug, Clone)]
pub struct CovolumeReport {
    pub covol: f64,
    pub areas: Vec<f64>,
    pub support: SupportVector,
}

pub fn covol(p: &FuchsianPolyhedron) -> CovolumeReport {
    let areas = p.areas();
    let m = (p.dim() + 1) as f64;
    let covol = p.support.values().iter().zip(&areas).map(|(h, a)| h * a).sum::<f64>() / m;
    CovolumeReport { covol, areas, support: p.support.clone() }
}

/// Total facet area `S(P) = Σ A(F_i)`.
pub fn minkowski_area(p: &FuchsianPolyhedron) -> f64 {
    p.areas().iter().sum()
}

/// `S(B)`, the hyperbolic volume of `ℍ^d/Γ`.
pub fn ball_minkowski_area(group: &FuchsianGroup) -> Result<f64> {
    group.hyperbolic_volume()
}

/// `covol(B) = S(B)/(d+1)`.
pub fn ball_covolume(group: &FuchsianGroup) -> Result<f64> {
    Ok(group.hyperbolic_volume()? / (group.dim() + 1) as f64)
}

/// `∂A(F_i)/∂h(j)`.
#[derive(Debug, Clone)]
pub struct AreaJacobian {
    pub matrix: Matrix,
    /// `(facet, edge)` pairs with length below [`tol::SHORT_EDGE`], where the
    /// combinatorics may switch under a small change of `h`.
    pub short_edges: Vec<(usize, usize)>,
}

/// Symmetry, diagonal dominance and positive definiteness of a Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdCertificate {
    pub asymmetry: f64,
    pub min_diagonal: f64,
    pub max_off_diagonal: f64,
    pub dominance_margin: f64,
    pub cholesky: bool,
    pub min_eigenvalue: f64,
}

impl SpdCertificate {
    /// Symmetric within 1e−8, off-diagonal entries non-positive, strictly
    /// diagonally dominant with positive diagonal, and factorizable.
    pub fn holds(&self) -> bool {
        self.asymmetry <= 1e-8
            && self.max_off_diagonal <= 0.0
            && self.min_diagonal > 0.0
            && self.dominance_margin > 0.0
            && self.cholesky
    }
}

impl AreaJacobian {
    pub fn certificate(&self) -> SpdCertificate {
        let m = &self.matrix;
        let n = m.size();
        let mut min_diagonal = f64::INFINITY;
        let mut max_off: f64 = f64::NEG_INFINITY;
        for i in 0..n {
            min_diagonal = min_diagonal.min(m[(i, i)]);
            for j in 0..n {
                if i != j {
                    max_off = max_off.max(m[(i, j)]);
                }
            }
        }
        if n == 1 {
            max_off = 0.0;
        }
        let ev = m.symmetric_eigenvalues();
        SpdCertificate {
            asymmetry: m.asymmetry(),
            min_diagonal,
            max_off_diagonal: max_off,
            dominance_margin: m.dominance_margin(),
            cholesky: m.cholesky().is_some(),
            min_eigenvalue: ev.first().copied().unwrap_or(0.0),
        }
    }
}

/// Assembles the Jacobian from the facet data: for each side of facet `i`
/// against orbit `j`, `−L/sinh φ` off the diagonal, `L cosh φ/sinh φ` on it,
/// and `L(cosh φ − 1)/sinh φ` when `j = i`. Sides of a 1-dimensional facet
/// have `L = 1`.
pub fn area_jacobian(p: &FuchsianPolyhedron) -> AreaJacobian {
    let n = p.facets.len();
    let mut m = Matrix::zeros(n);
    let mut short_edges = Vec::new();
    for (i, f) in p.facets.iter().enumerate() {
        for (k, e) in f.edges.iter().enumerate() {
            if p.dim() == 2 && e.length < tol::SHORT_EDGE {
                short_edges.push((i, k));
            }
            let w = e.length / e.sinh_phi;
            if e.neighbor == i {
                m[(i, i)] += w * (e.cosh_phi - 1.0);
            } else {
                m[(i, e.neighbor)] -= w;
                m[(i, i)] += w * e.cosh_phi;
            }
        }
    }
    AreaJacobian { matrix: m, short_edges }
}

/// Hessian of the covolume in support coordinates; it equals the area
/// Jacobian.
pub fn covol_hessian(p: &FuchsianPolyhedron) -> Matrix {
    area_jacobian(p).matrix
}

/// A side of a facet in a fixed fan: its neighbour orbit and frame normal.
#[derive(Debug, Clone)]
struct ClassEdge {
    neighbor: usize,
    normal: Vec<f64>,
    cosh_phi: f64,
    sinh_phi: f64,
}

/// A class of strongly isomorphic simple polyhedra over one normal family.
///
/// Facet polygons in the class have fixed side normals, so their areas are
/// computed from support numbers alone and extend to all support vectors as
/// polynomials.
#[derive(Debug, Clone)]
pub struct SimpleClass {
    family: NormalFamily,
    fan: FanSignature,
    facets: Vec<Vec<ClassEdge>>,
}

impl SimpleClass {
    /// Class of a simple polyhedron.
    pub fn new(p: &FuchsianPolyhedron) -> Result<Self> {
        if !is_simple(p) {
            return Err(Error::FanMismatch { index: 0 });
        }
        if p.facets.iter().any(|f| f.is_false_face()) {
            return Err(Error::FanMismatch { index: 0 });
        }
        let facets = p
            .facets
            .iter()
            .map(|f| {
                f.edges
                    .iter()
                    .map(|e| ClassEdge {
                        neighbor: e.neighbor,
                        normal: e.normal.clone(),
                        cosh_phi: e.cosh_phi,
                        sinh_phi: e.sinh_phi,
                    })
                    .collect()
            })
            .collect();
        Ok(Self { family: p.family.clone(), fan: p.fan.clone(), facets })
    }

    pub fn family(&self) -> &NormalFamily {
        &self.family
    }

    pub fn fan(&self) -> &FanSignature {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    /// Builds `h` and checks that it lies in the class.
    pub fn member(&self, h: &SupportVector) -> Result<FuchsianPolyhedron> {
        self.member_at(h, 0)
    }

    fn member_at(&self, h: &SupportVector, index: usize) -> Result<FuchsianPolyhedron> {
        let p = build(&self.family, h).map_err(|_| Error::FanMismatch { index })?;
        if !is_simple(&p) || p.fan != self.fan {
            return Err(Error::FanMismatch { index });
        }
        Ok(p)
    }

    pub fn contains(&self, h: &SupportVector) -> bool {
        self.member(h).is_ok()
    }

    /// Random member `λ(base + δ)` with `|δ_i| ≤ spread` and `λ ∈ [0.5, 2]`,
    /// redrawn until it lies in the class.
    pub fn sample_member<R: Rng>(&self, base: &SupportVector, spread: f64, rng: &mut R) -> Result<SupportVector> {
        const ATTEMPTS: usize = 1000;
        for _ in 0..ATTEMPTS {
            let lambda: f64 = rng.random_range(0.5..2.0);
            let v = base.values().iter().map(|h| lambda * (h + rng.random_range(-spread..=spread))).collect();
            if let Ok(h) = SupportVector::new(v) {
                if self.contains(&h) {
                    return Ok(h);
                }
            }
        }
        Err(Error::PerturbationFailed { attempts: ATTEMPTS })
    }

    /// Side support numbers `s_i(h)` of facet `i`; linear in `h`.
    fn side_supports(&self, i: usize, h: &[f64]) -> Vec<f64> {
        self.facets[i].iter().map(|e| (h[i] * e.cosh_phi - h[e.neighbor]) / e.sinh_phi).collect()
    }

    /// Area of facet `i` from its side support numbers: shoelace over the
    /// intersections of consecutive sides (d = 2), sum of the two endpoint
    /// distances (d = 1).
    fn formal_area(&self, i: usize, s: &[f64]) -> f64 {
        let edges = &self.facets[i];
        if self.dim() == 1 {
            return s.iter().sum();
        }
        let m = edges.len();
        let vert = |k: usize| {
            let (a, b) = (&edges[k].normal, &edges[(k + 1) % m].normal);
            let (ca, cb) = (s[k], s[(k + 1) % m]);
            let det = a[0] * b[1] - a[1] * b[0];
            [(ca * b[1] - cb * a[1]) / det, (a[0] * cb - b[0] * ca) / det]
        };
        let pts: Vec<[f64; 2]> = (0..m).map(vert).collect();
        let mut area = 0.0;
        for k in 0..m {
            let (p, q) = (pts[k], pts[(k + 1) % m]);
            area += p[0] * q[1] - p[1] * q[0];
        }
        0.5 * area
    }

    /// Facet areas of the class polynomial at `h`.
    pub fn areas(&self, h: &[f64]) -> Vec<f64> {
        (0..self.facets.len()).map(|i| self.formal_area(i, &self.side_supports(i, h))).collect()
    }

    /// Mixed area of facet `i` for `d` support vectors: the polarization
    /// `½[A_i(h₂+h₃) − A_i(h₂) − A_i(h₃)]` for d = 2, the facet length of `h₂`
    /// for d = 1.
    fn mixed_area_raw(&self, i: usize, hs: &[&[f64]]) -> f64 {
        if self.dim() == 1 {
            return self.formal_area(i, &self.side_supports(i, hs[0]));
        }
        let a = self.side_supports(i, hs[0]);
        let b = self.side_supports(i, hs[1]);
        let ab: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        // grouped so that swapping the arguments gives the same bits
        0.5 * (self.formal_area(i, &ab) - (self.formal_area(i, &a) + self.formal_area(i, &b)))
    }

    /// Mixed face area `A_i(h₂, h₃)` (d = 2).
    pub fn mixed_face_area(&self, h2: &SupportVector, h3: &SupportVector, i: usize) -> Result<f64> {
        if self.dim() != 2 {
            return Err(Error::UnsupportedDimension { expected: 2, found: self.dim() });
        }
        if i >= self.facets.len() {
            return Err(Error::InvalidParameter(format!("facet index {i} out of range")));
        }
        self.member_at(h2, 0)?;
        self.member_at(h3, 1)?;
        Ok(self.mixed_area_raw(i, &[h2.values(), h3.values()]))
    }

    fn check_args(&self, hs: &[&SupportVector]) -> Result<()> {
        if hs.len() != self.dim() + 1 {
            return Err(Error::InvalidParameter(format!(
                "mixed covolume takes {} support vectors, got {}",
                self.dim() + 1,
                hs.len()
            )));
        }
        for (k, h) in hs.iter().enumerate() {
            self.member_at(h, k)?;
        }
        Ok(())
    }

    /// `(1/(d+1)) ⟨x, A(h₂, …, h_{d+1})⟩`, linear in `x`; `x` need not lie in
    /// the class.
    pub fn pairing(&self, x: &[f64], rest: &[&[f64]]) -> f64 {
        let m = (self.dim() + 1) as f64;
        (0..self.facets.len()).map(|i| x[i] * self.mixed_area_raw(i, rest)).sum::<f64>() / m
    }

    /// Mixed covolume through the facet mixed areas.
    pub fn mixed_covol(&self, hs: &[&SupportVector]) -> Result<MixedCovolume> {
        self.check_args(hs)?;
        let rest: Vec<&[f64]> = hs[1..].iter().map(|h| h.values()).collect();
        let value = self.pairing(hs[0].values(), &rest);
        let polarized = self.mixed_covol_polarized(hs)?;
        Ok(MixedCovolume { value, polarized })
    }

    /// Mixed covolume by polarization:
    /// `(1/m!) Σ_{S≠∅} (−1)^{m−|S|} covol(Σ_{k∈S} h_k)` with `m = d+1`, each
    /// covolume taken from a fresh build.
    pub fn mixed_covol_polarized(&self, hs: &[&SupportVector]) -> Result<f64> {
        let m = hs.len();
        let mut total = 0.0;
        for mask in 1u32..(1 << m) {
            let terms: Vec<(f64, &SupportVector)> =
                (0..m).filter(|k| mask & (1 << k) != 0).map(|k| (1.0, hs[k])).collect();
            let h = SupportVector::combination(&terms)?;
            let p = self.member_at(&h, 0)?;
            let sign = if (m - terms.len()).is_multiple_of(2) { 1.0 } else { -1.0 };
            total += sign * covol(&p).covol;
        }
        let fact: f64 = (1..=m).map(|k| k as f64).product();
        Ok(total / fact)
    }

    fn covol_raw(&self, h: &[f64]) -> f64 {
        let m = (self.dim() + 1) as f64;
        h.iter().zip(self.areas(h)).map(|(a, b)| a * b).sum::<f64>() / m
    }

    /// `covol(X₁, …, X_{d+1})` without class checks.
    fn mixed_raw(&self, hs: &[&[f64]]) -> f64 {
        self.pairing(hs[0], &hs[1..])
    }
}

/// Mixed covolume by the facet route, with the polarization route alongside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedCovolume {
    pub value: f64,
    pub polarized: f64,
}

/// Which inequality a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityName {
    ReversedAf,
    Minkowski1,
    Minkowski2,
    ReversedBm,
    Linearized1,
    Isoperimetric,
    Convexity,
}

impl InequalityName {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::ReversedAf => "reversed-AF",
            Self::Minkowski1 => "minkowski-1",
            Self::Minkowski2 => "minkowski-2",
            Self::ReversedBm => "reversed-BM",
            Self::Linearized1 => "linearized-1",
            Self::Isoperimetric => "isoperimetric",
            Self::Convexity => "convexity",
        }
    }
}

impl fmt::Display for InequalityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub name: InequalityName,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

impl InequalityReport {
    pub fn new(name: InequalityName, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        Self { name, lhs, rhs, slack, pass: slack >= -tol::INEQUALITY * scale }
    }

    /// `|slack|` relative to the larger side.
    pub fn relative_gap(&self) -> f64 {
        self.slack.abs() / self.lhs.abs().max(self.rhs.abs()).max(1e-300)
    }
}

/// Third body for the reversed Alexandrov–Fenchel inequality: a random
/// positive combination of the two given bodies, perturbed generically and
/// kept only if it stays in the class.
pub fn draw_third_body(
    class: &SimpleClass,
    k1: &SupportVector,
    k2: &SupportVector,
    seed: u64,
) -> Result<SupportVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: f64 = rng.random_range(0.2..1.0);
    let b: f64 = rng.random_range(0.2..1.0);
    let base = SupportVector::combination(&[(a, k1), (b, k2)])?;
    let jitter: Vec<f64> = (0..base.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut eps = 0.02 * base.min();
    for _ in 0..8 {
        let v: Vec<f64> = base.values().iter().zip(&jitter).map(|(h, j)| h + eps * j).collect();
        if let Ok(h) = SupportVector::new(v) {
            if class.contains(&h) {
                return Ok(h);
            }
        }
        eps *= 0.5;
    }
    Ok(base)
}

/// Evaluates the reversed inequalities for `K₁`, `K₂` in one simple class:
/// reversed Alexandrov–Fenchel (with a third body drawn from `seed`), the two
/// reversed Minkowski inequalities, reversed Brunn–Minkowski at `t`, the
/// linearized first Minkowski inequality, convexity of the covolume at `t`,
/// and the isoperimetric inequality for `K₁`.
pub fn verify_inequalities(
    class: &SimpleClass,
    k1: &SupportVector,
    k2: &SupportVector,
    t: f64,
    seed: u64,
) -> Result<Vec<InequalityReport>> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("t must lie in (0, 1), got {t}")));
    }
    class.member_at(k1, 0)?;
    class.member_at(k2, 1)?;
    let d = class.dim();
    let m = d + 1;
    let mf = m as f64;
    let k3 = draw_third_body(class, k1, k2, seed)?;
    let (a, b, c) = (k1.values(), k2.values(), k3.values());
    let v1 = class.covol_raw(a);
    let v2 = class.covol_raw(b);
    // covol(X, Y, …, Y)
    let mixed_first = |x: &[f64], y: &[f64]| {
        let mut args = vec![x];
        args.extend(core::iter::repeat_n(y, d));
        class.mixed_raw(&args)
    };
    // covol(X, X, Y, …, Y)
    let mixed_two = |x: &[f64], y: &[f64]| {
        let mut args = vec![x, x];
        args.extend(core::iter::repeat_n(y, d - 1));
        class.mixed_raw(&args)
    };
    let mut out = Vec::new();

    let af = if d == 1 {
        let v12 = class.mixed_raw(&[a, b]);
        InequalityReport::new(InequalityName::ReversedAf, v12 * v12, v1 * v2)
    } else {
        let fill = |x: &[f64], y: &[f64]| {
            let mut args = vec![x, y];
            args.extend(core::iter::repeat_n(c, d - 1));
            class.mixed_raw(&args)
        };
        let v12 = fill(a, b);
        InequalityReport::new(InequalityName::ReversedAf, v12 * v12, fill(a, a) * fill(b, b))
    };
    out.push(af);

    let v122 = mixed_first(a, b);
    out.push(InequalityReport::new(InequalityName::Minkowski1, pow(v122, mf), pow(v2, d as f64) * v1));
    let v112 = if d == 1 { v1 } else { mixed_two(a, b) };
    out.push(InequalityReport::new(InequalityName::Minkowski2, v122 * v122, v2 * v112));

    let mix: Vec<f64> = a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect();
    class.member_at(&SupportVector::new(mix.clone())?, 0)?;
    let vt = class.covol_raw(&mix);
    out.push(InequalityReport::new(
        InequalityName::ReversedBm,
        pow(vt, 1.0 / mf),
        (1.0 - t) * pow(v1, 1.0 / mf) + t * pow(v2, 1.0 / mf),
    ));
    out.push(InequalityReport::new(InequalityName::Linearized1, mf * v122, d as f64 * v2 + v1));
    out.push(InequalityReport::new(InequalityName::Convexity, vt, (1.0 - t) * v1 + t * v2));

    let s_b = class.family().group().hyperbolic_volume()?;
    let covol_b = s_b / mf;
    let s_k: f64 = class.areas(a).iter().sum();
    out.push(InequalityReport::new(InequalityName::Isoperimetric, pow(s_k / s_b, mf), pow(v1 / covol_b, d as f64)));
    Ok(out)
}

/// Sup-distance between support functions on a direction sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HausdorffReport {
    pub distance: f64,
    pub samples: usize,
}

/// Directions at which support functions are compared: the facet normals and
/// vertex directions of the given polyhedra, plus a polar grid of the
/// Dirichlet region of the origin. `density` rings of the grid.
pub fn sample_directions(
    group: &FuchsianGroup,
    polys: &[&FuchsianPolyhedron],
    density: usize,
) -> Result<Vec<LorentzVector>> {
    let d = group.dim();
    let o = LorentzVector::origin(d);
    let mut out = vec![o.clone()];
    for p in polys {
        out.extend(p.family.reps().iter().cloned());
        for v in p.vertices() {
            let s = sqrt(-v.norm_sq());
            out.push(v.scale(1.0 / s));
        }
    }
    let cell = group.dirichlet_cell(&o)?;
    let rho = cell.vertices.iter().map(|v| hyp_distance_raw(v.coords(), o.coords())).fold(0.0, f64::max);
    let sides: Vec<Vec<f64>> = cell.sides.iter().map(|g| g.origin_image()).collect();
    let inside = |p: &[f64]| {
        let c0 = -form(p, o.coords());
        sides.iter().all(|q| -form(p, q) >= c0)
    };
    let rings = density.max(1);
    for m in 1..=rings {
        let r = rho * m as f64 / rings as f64;
        if d == 1 {
            for sign in [1.0, -1.0] {
                let p = vec![sign * sinh(r), crate::math::cosh(r)];
                if inside(&p) {
                    out.push(LorentzVector::from_vec_unchecked(p));
                }
            }
            continue;
        }
        let count = 8 * m;
        for q in 0..count {
            let th = core::f64::consts::TAU * q as f64 / count as f64;
            let p = vec![sinh(r) * cos(th), sinh(r) * sin(th), crate::math::cosh(r)];
            if inside(&p) {
                out.push(LorentzVector::from_vec_unchecked(p));
            }
        }
    }
    Ok(out)
}

fn same_group(a: &FuchsianGroup, b: &FuchsianGroup) -> bool {
    a.dim() == b.dim()
        && a.generators().len() == b.generators().len()
        && a.generators().iter().zip(b.generators()).all(|(x, y)| x.approx_eq(y))
}

/// `max |H_P(η) − H_Q(η)|` over [`sample_directions`] of both polyhedra.
pub fn hausdorff_distance(p: &FuchsianPolyhedron, q: &FuchsianPolyhedron, density: usize) -> Result<HausdorffReport> {
    if !same_group(p.group(), q.group()) {
        return Err(Error::GroupMismatch);
    }
    let dirs = sample_directions(p.group(), &[p, q], density)?;
    let mut distance: f64 = 0.0;
    for eta in &dirs {
        distance = distance.max((support_value(p, eta)? - support_value(q, eta)?).abs());
    }
    Ok(HausdorffReport { distance, samples: dirs.len() })
}

/// `max |H_P(η) + 1|`: distance from `P` to the unit ball `B`, whose support
/// function is `−1` on `ℍ^d`.
pub fn hausdorff_to_ball(p: &FuchsianPolyhedron, density: usize) -> Result<HausdorffReport> {
    let dirs = sample_directions(p.group(), &[p], density)?;
    let mut distance: f64 = 0.0;
    for eta in &dirs {
        distance = distance.max((support_value(p, eta)? + 1.0).abs());
    }
    Ok(HausdorffReport { distance, samples: dirs.len() })
}

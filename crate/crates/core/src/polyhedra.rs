//! `Γ`-convex polyhedra from support vectors.
//!
//! For a normal family `η₁, …, η_n` and support numbers `h`, the polyhedron is
//! `{x : ⟨x, γη_j⟩ ≤ −h(j) for all γ, j}`. Facet `i` lives in the plane
//! `⟨x,η_i⟩ = −h(i)`; in its frame each orbit normal `ν = γη_j` at hyperbolic
//! distance `φ` from `η_i` cuts the half-plane `n·w ≤ h_ij` where `n` is the
//! unit direction of `ν` in the frame and
//! `h_ij = (h(i)cosh φ − h(j))/sinh φ`.

use alloc::borrow::Cow;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clip::{Clip, Interval, Line, Polygon};
use crate::fuchsian::{FuchsianGroup, GroupBall, Isometry};
use crate::lorentz::{form, hyp_distance_raw, orthonormal_frame, support_plane, to_hyperboloid};
use crate::math::{atanh, ceil, cos, cosh, sin, sinh, sqrt};
use crate::{tol, CausalClass, Error, LorentzVector, Result, SupportPlane};

/// Positive support numbers `h(1), …, h(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportVector {
    values: Vec<f64>,
}

impl SupportVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveSupport { index, value });
            }
        }
        Ok(Self { values })
    }

    pub fn ones(n: usize) -> Self {
        Self { values: vec![1.0; n] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * lambda).collect())
    }

    /// Support vector of the Minkowski sum.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    /// `Σ c_k h_k`, which must stay positive.
    pub fn combination(terms: &[(f64, &SupportVector)]) -> Result<Self> {
        let n = terms.first().map_or(0, |t| t.1.len());
        let mut v = vec![0.0; n];
        for (c, h) in terms {
            if h.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: h.len() });
            }
            for (a, b) in v.iter_mut().zip(&h.values) {
                *a += c * b;
            }
        }
        Self::new(v)
    }
}

/// Representative facet normals `η_i` together with their group.
#[derive(Debug, Clone)]
pub struct NormalFamily {
    group: Arc<FuchsianGroup>,
    reps: Vec<LorentzVector>,
    /// `η'_i = a_i⁻¹η_i`, moved into the Dirichlet region of the origin.
    reduced: Vec<LorentzVector>,
    /// `a_i`.
    shifts: Vec<Isometry>,
    /// `d(o, η'_i)`.
    offsets: Vec<f64>,
    ball: Arc<GroupBall>,
}

impl NormalFamily {
    /// Normals are radially projected onto `ℍ^d`. Fails if two of them lie in
    /// the same orbit.
    pub fn new(group: Arc<FuchsianGroup>, reps: Vec<LorentzVector>) -> Result<Self> {
        if reps.is_empty() {
            return Err(Error::InvalidParameter("normal family is empty".into()));
        }
        let d = group.dim();
        let mut unit = Vec::with_capacity(reps.len());
        for r in &reps {
            if r.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: r.dim() });
            }
            unit.push(to_hyperboloid(r)?);
        }
        let o = LorentzVector::origin(d);
        let mut reduced = Vec::with_capacity(unit.len());
        let mut shifts = Vec::with_capacity(unit.len());
        for r in &unit {
            let (x, g) = group.reduce_point(r.coords());
            reduced.push(to_hyperboloid(&LorentzVector::from_vec_unchecked(x))?);
            shifts.push(group.inverse(&g));
        }
        let offsets: Vec<f64> = reduced.iter().map(|r| hyp_distance_raw(r.coords(), o.coords())).collect();
        let r_max = offsets.iter().copied().fold(0.0, f64::max);
        let g_max = group.generators().iter().map(|g| g.displacement(&o)).fold(0.0, f64::max);
        let ball = group.ball(2.0 * r_max + 2.0 * g_max + 0.5)?;
        let fam = Self { group, reps: unit, reduced, shifts, offsets, ball: Arc::new(ball) };
        fam.check_orbits()?;
        Ok(fam)
    }

    fn check_orbits(&self) -> Result<()> {
        let n = self.reduced.len();
        for i in 0..n {
            for j in i..n {
                let reach = self.offsets[i] + self.offsets[j] + 1e-6;
                for e in &self.ball.elements {
                    if e.disp > reach {
                        break;
                    }
                    if i == j && e.disp < 1e-9 {
                        continue;
                    }
                    let nu = e.g.apply_raw(self.reduced[j].coords());
                    if hyp_distance_raw(self.reduced[i].coords(), &nu) < 1e-8 {
                        return Err(if i == j {
                            Error::InvalidParameter(format!("normal {i} is fixed by a non-trivial element"))
                        } else {
                            Error::SameOrbit { first: i, second: j }
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FuchsianGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FuchsianGroup> {
        &self.group
    }

    pub fn reps(&self) -> &[LorentzVector] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Family with extra representatives appended.
    pub fn extended(&self, extra: &[LorentzVector]) -> Result<Self> {
        let mut reps = self.reps.clone();
        reps.extend_from_slice(extra);
        Self::new(self.group.clone(), reps)
    }

    /// Same group and the same representatives in the same order.
    pub fn same_as(&self, other: &Self) -> bool {
        let same_group = Arc::ptr_eq(&self.group, &other.group)
            || (self.group.label() == other.group.label()
                && self.group.generators().len() == other.group.generators().len()
                && self.group.generators().iter().zip(other.group.generators()).all(|(a, b)| a.approx_eq(b)));
        same_group
            && self.reps.len() == other.reps.len()
            && self.reps.iter().zip(&other.reps).all(|(a, b)| hyp_distance_raw(a.coords(), b.coords()) < 1e-12)
    }

    /// Moves a facet computed for `η'_i` to the facet of `η_i = a_iη'_i`. A
    /// side against `γ'η'_j` becomes a side against `a_iγ'a_j⁻¹ η_j`.
    fn shift_facet(&self, mut f: FacetGeometry) -> FacetGeometry {
        let i = f.rep_index;
        let a = &self.shifts[i];
        if a.is_identity() && f.edges.iter().all(|e| self.shifts[e.neighbor].is_identity()) {
            return f;
        }
        let map = |x: &LorentzVector| LorentzVector::from_vec_unchecked(a.apply_raw(x.coords()));
        f.plane = SupportPlane {
            normal: self.reps[i].clone(),
            offset: f.plane.offset,
            foot: map(&f.plane.foot),
            frame: f.plane.frame.iter().map(map).collect(),
        };
        for e in &mut f.edges {
            let b_inv = self.group.inverse(&self.shifts[e.neighbor]);
            let g = a.compose(&e.element).compose(&b_inv);
            let word = self.group.canonical_word(&g).unwrap_or_else(|| g.word().to_vec());
            e.element = g.with_word(word);
        }
        f
    }

    /// Group ball of at least the given radius, cached when small enough.
    pub(crate) fn ball(&self, radius: f64) -> Result<Cow<'_, GroupBall>> {
        if radius <= self.ball.radius {
            Ok(Cow::Borrowed(&self.ball))
        } else {
            Ok(Cow::Owned(self.group.ball(radius)?))
        }
    }

    pub(crate) fn max_offset(&self) -> f64 {
        self.offsets.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest hyperbolic distance from `η_i` to another orbit normal.
    pub fn min_separation(&self, i: usize) -> Result<f64> {
        let mut best = f64::INFINITY;
        let mut radius = self.ball.radius;
        loop {
            let ball = self.ball(radius)?;
            for e in &ball.elements {
                if e.disp - self.offsets[i] - self.max_offset() > best {
                    break;
                }
                for (j, r) in self.reduced.iter().enumerate() {
                    if j == i && e.disp < 1e-9 {
                        continue;
                    }
                    let nu = e.g.apply_raw(r.coords());
                    best = best.min(hyp_distance_raw(self.reduced[i].coords(), &nu));
                }
            }
            if best.is_finite() {
                return Ok(best);
            }
            radius *= 2.0;
        }
    }
}

/// One side of a facet, shared with the facet of `γη_j`.
#[derive(Debug, Clone)]
pub struct FacetEdge {
    /// Orbit index `j` of the neighbouring facet.
    pub neighbor: usize,
    /// `γ` with the neighbouring facet normal `γη_j`.
    pub element: Isometry,
    /// Unit outward normal of the side in the facet frame.
    pub normal: Vec<f64>,
    /// Support number `h_ij`: frame distance from the foot to the side.
    pub support: f64,
    /// Side length `L_ij`; 1 when `d = 1` (the side is a point).
    pub length: f64,
    /// Hyperbolic distance `φ` between the two facet normals.
    pub phi: f64,
    pub cosh_phi: f64,
    pub sinh_phi: f64,
}

/// Geometry of the representative facet `F_i`.
#[derive(Debug, Clone)]
pub struct FacetGeometry {
    pub rep_index: usize,
    pub plane: SupportPlane,
    /// Frame coordinates: counter-clockwise polygon (d = 2) or the two
    /// endpoints (d = 1). Empty for a false face.
    pub polygon: Vec<Vec<f64>>,
    /// `edges[k]` runs from `polygon[k]` to `polygon[k+1]` (d = 2); for d = 1
    /// `edges[k]` sits at `polygon[k]`.
    pub edges: Vec<FacetEdge>,
    pub area: f64,
    /// Number of constraints active at each polygon vertex.
    pub vertex_degrees: Vec<usize>,
    /// Orbit cutoff that certified the facet.
    pub cutoff: f64,
}

impl FacetGeometry {
    pub fn is_false_face(&self) -> bool {
        self.polygon.is_empty()
    }

    /// Vertices as points of `R^{d+1}`.
    pub fn ambient_vertices(&self) -> Vec<LorentzVector> {
        self.polygon.iter().map(|p| self.plane.point(p)).collect()
    }

    /// Largest frame distance from the foot to a vertex.
    pub fn circumradius(&self) -> f64 {
        self.polygon.iter().map(|p| sqrt(p.iter().map(|v| v * v).sum())).fold(0.0, f64::max)
    }
}

/// Per facet, the cyclic list of `(neighbour orbit, canonical word)` pairs,
/// rotated to start at its smallest entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FanSignature(pub Vec<Vec<(usize, Vec<usize>)>>);

impl FanSignature {
    fn from_facets(dim: usize, facets: &[FacetGeometry]) -> Self {
        let lists = facets
            .iter()
            .map(|f| {
                let mut l: Vec<(usize, Vec<usize>)> =
                    f.edges.iter().map(|e| (e.neighbor, e.element.word().to_vec())).collect();
                if dim == 2 && !l.is_empty() {
                    let k = (0..l.len()).min_by(|&a, &b| l[a].cmp(&l[b])).unwrap();
                    l.rotate_left(k);
                }
                l
            })
            .collect();
        Self(lists)
    }
}

impl fmt::Display for FanSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (k, (j, w)) in l.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{j}:")?;
                for (m, g) in w.iter().enumerate() {
                    if m > 0 {
                        f.write_str(".")?;
                    }
                    write!(f, "{g}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Keep facets whose constraint is tight nowhere as zero-area false faces
    /// instead of failing with [`Error::EmptyFacet`].
    pub allow_false_faces: bool,
}

/// A `Γ`-convex polyhedron given by its representative facets.
#[derive(Debug, Clone)]
pub struct FuchsianPolyhedron {
    pub family: NormalFamily,
    pub support: SupportVector,
    pub facets: Vec<FacetGeometry>,
    pub fan: FanSignature,
}

/// `h_ij = (h_i cosh φ − h_j)/sinh φ`, the frame distance in facet `i` from
/// the foot to the side shared with a facet of orbit `j` at distance `φ`.
pub fn support_number(h_i: f64, h_j: f64, phi: f64) -> Result<f64> {
    if !(phi > 0.0) {
        return Err(Error::CollinearNormals);
    }
    Ok(-(h_j - h_i * cosh(phi)) / sinh(phi))
}

/// Support number of the vertex between sides with support numbers `h_ij`
/// and `h_ik` meeting at exterior angle `ω`: `(h_ij − h_ik cos ω)/sin ω`.
pub fn subface_support(h_ij: f64, h_ik: f64, omega: f64) -> Result<f64> {
    if !(omega > 1e-12 && omega < core::f64::consts::PI - 1e-12) {
        return Err(Error::DegenerateAngle { angle: omega });
    }
    Ok((h_ij - h_ik * cos(omega)) / sin(omega))
}

/// Smallest `Φ` with `(a cosh Φ − b)/sinh Φ ≥ ρ` for `b ≥ a > ρ ≥ 0`.
///
/// With `t = tanh(Φ/2)` the condition is `(a+b)t² − 2ρt + a − b ≤ 0`.
pub(crate) fn certificate_cutoff(a: f64, b: f64, rho: f64) -> f64 {
    let disc = (rho * rho + b * b - a * a).max(0.0);
    let t = (rho + sqrt(disc)) / (a + b);
    if t >= 1.0 {
        f64::INFINITY
    } else {
        2.0 * atanh(t)
    }
}

struct Candidate {
    j: usize,
    g: Isometry,
    phi: f64,
    cosh_phi: f64,
    sinh_phi: f64,
    n: Vec<f64>,
    c: f64,
}

/// Orbit normals `γη_j` with `lo < d(η_i, γη_j) ≤ hi`, sorted by distance,
/// orbit index and word.
fn candidates(
    family: &NormalFamily,
    h: &[f64],
    i: usize,
    frame: &[Vec<f64>],
    lo: f64,
    hi: f64,
) -> Result<Vec<Candidate>> {
    let eta = family.reduced[i].coords();
    let r_i = family.offsets[i];
    let r_max = family.max_offset();
    let ball = family.ball(hi + r_i + r_max)?;
    let mut out = Vec::new();
    for e in &ball.elements {
        if e.disp > hi + r_i + r_max {
            break;
        }
        for (j, rep) in family.reduced.iter().enumerate() {
            if e.disp - r_i - family.offsets[j] > hi {
                continue;
            }
            let nu = e.g.apply_raw(rep.coords());
            let phi = hyp_distance_raw(eta, &nu);
            if phi <= lo || phi > hi {
                continue;
            }
            if phi < 1e-9 {
                if j == i {
                    continue;
                }
                return Err(Error::SameOrbit { first: i.min(j), second: i.max(j) });
            }
            let proj: Vec<f64> = frame.iter().map(|f| form(f, &nu)).collect();
            let sinh_phi = sqrt(proj.iter().map(|v| v * v).sum());
            let cosh_phi = -form(eta, &nu);
            let n = proj.iter().map(|v| v / sinh_phi).collect();
            let c = (h[i] * cosh_phi - h[j]) / sinh_phi;
            out.push(Candidate { j, g: e.g.clone(), phi, cosh_phi, sinh_phi, n, c });
        }
    }
    out.sort_by(|a, b| {
        a.phi
            .total_cmp(&b.phi)
            .then_with(|| a.j.cmp(&b.j))
            .then_with(|| a.g.word().len().cmp(&b.g.word().len()))
            .then_with(|| a.g.word().cmp(b.g.word()))
    });
    Ok(out)
}

enum Cell {
    Poly(Polygon),
    Seg(Interval),
}

impl Cell {
    fn clip(&mut self, cand: &Candidate, label: usize) -> Clip {
        match self {
            Cell::Poly(p) => p.clip(Line { n: [cand.n[0], cand.n[1]], c: cand.c, label: Some(label) }),
            Cell::Seg(s) => s.clip(cand.n[0].signum(), cand.c, label),
        }
    }

    fn is_labeled(&self) -> bool {
        match self {
            Cell::Poly(p) => p.is_labeled(),
            Cell::Seg(s) => s.is_labeled(),
        }
    }

    fn circumradius(&self) -> f64 {
        match self {
            Cell::Poly(p) => p.circumradius(),
            Cell::Seg(s) => s.circumradius(),
        }
    }
}

fn build_facet(family: &NormalFamily, h: &SupportVector, i: usize, opts: BuildOptions) -> Result<FacetGeometry> {
    let d = family.dim();
    let hv = h.values();
    let h_i = hv[i];
    let h_max = h.max();
    let eta = &family.reduced[i];
    let plane = support_plane(eta, h_i)?;
    let frame = orthonormal_frame(eta.coords());
    let eps = tol::CLIP * h_i;
    let mut cell =
        if d == 1 { Cell::Seg(Interval::boxed(2.0 * h_i, eps)) } else { Cell::Poly(Polygon::boxed(2.0 * h_i, eps)) };
    let o = LorentzVector::origin(d);
    let g_max = family.group.generators().iter().map(|g| g.displacement(&o)).fold(0.0, f64::max);
    let mut pool: Vec<Candidate> = Vec::new();
    let mut lo = -1.0;
    let mut cutoff = g_max + 0.5;
    let false_face = |cutoff: f64| FacetGeometry {
        rep_index: i,
        plane: plane.clone(),
        polygon: Vec::new(),
        edges: Vec::new(),
        area: 0.0,
        vertex_degrees: Vec::new(),
        cutoff,
    };
    loop {
        for cand in candidates(family, hv, i, &frame, lo, cutoff)? {
            let label = pool.len();
            let res = cell.clip(&cand, label);
            pool.push(cand);
            if res == Clip::Empty {
                if opts.allow_false_faces {
                    return Ok(family.shift_facet(false_face(cutoff)));
                }
                return Err(Error::EmptyFacet { index: i });
            }
        }
        // a vertex outside the light cone (frame radius ≥ h_i) is cut by some
        // farther normal, but no cutoff certifies that yet
        let rho = cell.circumradius();
        let need = if cell.is_labeled() && rho < h_i {
            certificate_cutoff(h_i, h_max, rho) * (1.0 + 1e-9) + 1e-9
        } else {
            f64::INFINITY
        };
        if need <= cutoff {
            break;
        }
        let next = if need.is_finite() { need } else { 2.0 * cutoff };
        if next > tol::MAX_CUTOFF {
            let circumradius = if cell.is_labeled() { rho } else { f64::INFINITY };
            return Err(Error::CutoffOverflow { index: i, cutoff: next, circumradius });
        }
        lo = cutoff;
        cutoff = next;
    }
    let edge = |label: usize, length: f64| {
        let c = &pool[label];
        FacetEdge {
            neighbor: c.j,
            element: c.g.clone(),
            normal: c.n.clone(),
            support: c.c,
            length,
            phi: c.phi,
            cosh_phi: c.cosh_phi,
            sinh_phi: c.sinh_phi,
        }
    };
    let active = |v: &[f64]| {
        pool.iter().filter(|c| (c.n.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() - c.c).abs() <= tol::VERTEX).count()
    };
    let (polygon, edges, area) = match &cell {
        Cell::Seg(s) => {
            let polygon = vec![vec![s.lo], vec![s.hi]];
            let edges = vec![edge(s.lo_label.unwrap(), 1.0), edge(s.hi_label.unwrap(), 1.0)];
            (polygon, edges, s.length())
        }
        Cell::Poly(p) => {
            let m = p.vertices().len();
            let polygon: Vec<Vec<f64>> = (0..m).map(|k| p.vertices()[(k + m - 1) % m].to_vec()).collect();
            let edges = p.lines().iter().enumerate().map(|(k, l)| edge(l.label.unwrap(), p.side_length(k))).collect();
            (polygon, edges, p.area())
        }
    };
    if area <= 0.0 && !opts.allow_false_faces {
        return Err(Error::EmptyFacet { index: i });
    }
    let vertex_degrees = polygon.iter().map(|v| active(v)).collect();
    let facet = FacetGeometry { rep_index: i, plane, polygon, edges, area, vertex_degrees, cutoff };
    Ok(family.shift_facet(facet))
}

/// Builds the polyhedron with support numbers `h` over `family`.
pub fn build(family: &NormalFamily, h: &SupportVector) -> Result<FuchsianPolyhedron> {
    build_with(family, h, BuildOptions::default())
}

pub fn build_with(family: &NormalFamily, h: &SupportVector, opts: BuildOptions) -> Result<FuchsianPolyhedron> {
    if h.len() != family.len() {
        return Err(Error::DimensionMismatch { expected: family.len(), found: h.len() });
    }
    let d = family.dim();
    if d > 2 {
        return Err(Error::UnsupportedDimension { expected: 2, found: d });
    }
    let facets = (0..family.len()).map(|i| build_facet(family, h, i, opts)).collect::<Result<Vec<_>>>()?;
    let fan = FanSignature::from_facets(d, &facets);
    Ok(FuchsianPolyhedron { family: family.clone(), support: h.clone(), facets, fan })
}

impl FuchsianPolyhedron {
    pub fn build(family: &NormalFamily, h: &SupportVector) -> Result<Self> {
        build(family, h)
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    pub fn group(&self) -> &FuchsianGroup {
        self.family.group()
    }

    /// `A(F_i)` for every representative.
    pub fn areas(&self) -> Vec<f64> {
        self.facets.iter().map(|f| f.area).collect()
    }

    /// True when every vertex lies in exactly `d+1` facets.
    pub fn is_simple(&self) -> bool {
        is_simple(self)
    }

    /// Representative facet vertices in `R^{d+1}`.
    pub fn vertices(&self) -> Vec<LorentzVector> {
        self.facets.iter().flat_map(|f| f.ambient_vertices()).collect()
    }

    /// Ambient facet polygons `γF_i` for `γ` in the word ball of length
    /// `word_length`, as `(i, γ, vertices)`.
    pub fn mesh(&self, word_length: usize) -> Vec<(usize, Isometry, Vec<LorentzVector>)> {
        let elements = self.group().word_ball(word_length);
        let mut out = Vec::new();
        for g in &elements {
            for f in &self.facets {
                if f.is_false_face() {
                    continue;
                }
                let verts = f
                    .ambient_vertices()
                    .iter()
                    .map(|v| LorentzVector::from_vec_unchecked(g.apply_raw(v.coords())))
                    .collect();
                out.push((f.rep_index, g.clone(), verts));
            }
        }
        out
    }

    /// Extended support function `H(η) = max ⟨x,η⟩` over the polyhedron.
    pub fn support_value(&self, eta: &LorentzVector) -> Result<f64> {
        support_value(self, eta)
    }
}

/// True iff every polygon vertex has exactly two active constraints, i.e.
/// every vertex of the polyhedron lies in exactly `d+1` facets.
pub fn is_simple(p: &FuchsianPolyhedron) -> bool {
    if p.dim() == 1 {
        return true;
    }
    p.facets.iter().all(|f| f.vertex_degrees.iter().all(|&k| k == 2))
}

/// Equal normal fans.
pub fn strongly_isomorphic(p: &FuchsianPolyhedron, q: &FuchsianPolyhedron) -> Result<bool> {
    if !p.family.same_as(&q.family) {
        return Err(Error::FamilyMismatch);
    }
    Ok(p.fan == q.fan)
}

const PERTURB_ATTEMPTS: usize = 64;

/// Moves the support vector by at most `eps` (max-norm) in random directions
/// until the result is simple. Simple input is returned unchanged.
pub fn perturb_to_simple(p: &FuchsianPolyhedron, eps: f64, seed: u64) -> Result<FuchsianPolyhedron> {
    if is_simple(p) {
        return Ok(p.clone());
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("perturbation size must be positive, got {eps}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PERTURB_ATTEMPTS {
        let v: Vec<f64> = p.support.values().iter().map(|h| h + eps * rng.random_range(-1.0..1.0)).collect();
        let Ok(h) = SupportVector::new(v) else { continue };
        match build(&p.family, &h) {
            Ok(q) if is_simple(&q) => return Ok(q),
            _ => continue,
        }
    }
    Err(Error::PerturbationFailed { attempts: PERTURB_ATTEMPTS })
}

/// Coarsest spacing level, as a fraction of the origin cell's circumradius.
const BALL_TOP_LEVEL: f64 = 0.8;
/// Ratio between consecutive spacing levels.
const BALL_LEVEL_RATIO: f64 = 0.75;
/// Candidate grid step, as a fraction of the origin cell's circumradius.
const BALL_GRID: f64 = 1.0 / 40.0;

/// Points of `ℍ^d` whose orbits form a packing at spacing about
/// `sample_radius`, starting from the origin.
///
/// Points are chosen greedily from a fixed grid in the Dirichlet region of the
/// origin over the spacing levels `s_k = s₀·0.75^k` with `s_k ≥ sample_radius`.
/// A smaller radius only adds levels, so the point sets are nested.
pub fn ball_sample_points(group: &FuchsianGroup, sample_radius: f64) -> Result<Vec<LorentzVector>> {
    if !(sample_radius > 0.0) {
        return Err(Error::InvalidParameter(format!("sample radius must be positive, got {sample_radius}")));
    }
    let d = group.dim();
    if d > 2 {
        return Err(Error::UnsupportedDimension { expected: 2, found: d });
    }
    let o = LorentzVector::origin(d);
    let cell = group.dirichlet_cell(&o)?;
    let rho = cell.vertices.iter().map(|v| hyp_distance_raw(v.coords(), o.coords())).fold(0.0, f64::max);
    let step = BALL_GRID * rho;
    let mut levels = Vec::new();
    let mut s = BALL_TOP_LEVEL * rho;
    while s >= sample_radius && s >= 2.0 * step {
        levels.push(s);
        s *= BALL_LEVEL_RATIO;
    }
    let mut selected = vec![o.clone()];
    if levels.is_empty() {
        return Ok(selected);
    }
    let sides: Vec<Vec<f64>> = cell.sides.iter().map(|g| g.origin_image()).collect();
    let inside = |p: &[f64]| {
        let c0 = -form(p, o.coords());
        sides.iter().all(|q| -form(p, q) >= c0)
    };
    let mut grid: Vec<Vec<f64>> = Vec::new();
    let rings = ceil(rho / step) as usize;
    for m in 1..=rings {
        let r = m as f64 * step;
        if d == 1 {
            for sign in [1.0, -1.0] {
                let p = vec![sign * sinh(r), cosh(r)];
                if inside(&p) {
                    grid.push(p);
                }
            }
            continue;
        }
        let count = (ceil(core::f64::consts::TAU * sinh(r) / step) as usize).max(6);
        let shift = if m % 2 == 0 { 0.5 } else { 0.0 };
        for q in 0..count {
            let t = core::f64::consts::TAU * (q as f64 + shift) / count as f64;
            let p = vec![sinh(r) * cos(t), sinh(r) * sin(t), cosh(r)];
            if inside(&p) {
                grid.push(p);
            }
        }
    }
    let reach = rho + levels[0];
    let ball = group.ball(2.0 * rho + levels[0] + 1e-6)?;
    // images of selected points that can come within the largest spacing of
    // the cell
    let mut images: Vec<Vec<f64>> = Vec::new();
    let add_images = |p: &[f64], images: &mut Vec<Vec<f64>>| {
        for e in &ball.elements {
            let q = e.g.apply_raw(p);
            if hyp_distance_raw(&q, o.coords()) <= reach {
                images.push(q);
            }
        }
    };
    add_images(o.coords(), &mut images);
    for &s in &levels {
        for p in &grid {
            if images.iter().all(|q| hyp_distance_raw(p, q) >= s) {
                add_images(p, &mut images);
                selected.push(LorentzVector::from_vec_unchecked(p.clone()));
            }
        }
    }
    Ok(selected)
}

/// Polyhedron circumscribed about the unit hyperboloid with tangent planes at
/// the orbits of [`ball_sample_points`]; all support numbers are 1.
pub fn approximate_ball(group: &Arc<FuchsianGroup>, sample_radius: f64) -> Result<FuchsianPolyhedron> {
    let pts = ball_sample_points(group, sample_radius)?;
    let family = NormalFamily::new(group.clone(), pts)?;
    let n = family.len();
    build(&family, &SupportVector::ones(n))
}

/// `H(η) = max ⟨v, η⟩` over the vertices of the polyhedron.
///
/// By `Γ`-invariance `η` is first moved towards the origin. Vertex images are
/// then scanned in order of how far their group element moves the origin,
/// stopping once no farther image can beat the current maximum.
pub fn support_value(p: &FuchsianPolyhedron, eta: &LorentzVector) -> Result<f64> {
    let d = p.dim();
    if eta.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: eta.dim() });
    }
    if eta.classify() != CausalClass::FutureTimelike {
        return Err(Error::NotTimelike);
    }
    let scale = sqrt(-eta.norm_sq());
    let unit: Vec<f64> = eta.coords().iter().map(|v| v / scale).collect();
    let (e, _) = p.group().reduce_point(&unit);
    let o = LorentzVector::origin(d);
    let r_e = hyp_distance_raw(&e, o.coords());
    let verts: Vec<(Vec<f64>, f64)> = p
        .vertices()
        .into_iter()
        .map(|v| {
            let n = sqrt(-v.norm_sq());
            (v.into_coords(), n)
        })
        .collect();
    if verts.is_empty() {
        return Err(Error::InvalidParameter("polyhedron has no vertices".into()));
    }
    let v_min = verts.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let r_v = verts
        .iter()
        .map(|(v, n)| {
            let u: Vec<f64> = v.iter().map(|c| c / n).collect();
            hyp_distance_raw(&u, o.coords())
        })
        .fold(0.0, f64::max);
    let mut best = verts.iter().map(|(v, _)| form(v, &e)).fold(f64::NEG_INFINITY, f64::max);
    // an image at hyperbolic distance D from e contributes at most −v_min·cosh D
    let reach = |best: f64| crate::math::acosh((-best / v_min).max(1.0)) + r_e + r_v;
    let ball = p.family.ball(reach(best))?;
    for el in &ball.elements {
        if el.disp > reach(best) {
            break;
        }
        for (v, _) in &verts {
            let val = form(&el.g.apply_raw(v), &e);
            if val > best {
                best = val;
            }
        }
    }
    Ok(scale * best)
}

/// Radial coordinate `−1/H(η)` of the boundary of the polar dual.
pub fn polar_dual_radial(p: &FuchsianPolyhedron, eta: &LorentzVector) -> Result<f64> {
    if !eta.is_on_hyperboloid() {
        return Err(Error::NotUnit { norm: eta.norm_sq() });
    }
    Ok(-1.0 / support_value(p, eta)?)
}

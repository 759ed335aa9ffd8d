//! Convex cells cut out by labeled half-planes (2D) or half-lines (1D).
//!
//! A cell starts as a box whose sides carry no label and is clipped by
//! constraints `n·p ≤ c` with `|n| = 1`. Once every side carries a label the
//! cell is bounded by genuine constraints.

use alloc::vec::Vec;

use crate::math::sqrt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Line {
    pub n: [f64; 2],
    pub c: f64,
    pub label: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Clip {
    /// No vertex lies strictly outside; the cell is unchanged.
    Redundant,
    Cut,
    Empty,
}

#[inline]
fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn intersect(a: &Line, b: &Line) -> [f64; 2] {
    let det = a.n[0] * b.n[1] - a.n[1] * b.n[0];
    debug_assert!(det.abs() > 1e-15, "adjacent lines are parallel");
    [(a.c * b.n[1] - b.c * a.n[1]) / det, (a.n[0] * b.c - b.n[0] * a.c) / det]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    let (x, y) = (a[0] - b[0], a[1] - b[1]);
    sqrt(x * x + y * y)
}

/// Convex polygon, counter-clockwise. `verts[k]` joins `lines[k]` and
/// `lines[k+1]`, so side `k` runs from `verts[k-1]` to `verts[k]`.
#[derive(Debug, Clone)]
pub(crate) struct Polygon {
    lines: Vec<Line>,
    verts: Vec<[f64; 2]>,
    eps: f64,
}

impl Polygon {
    pub fn boxed(half: f64, eps: f64) -> Self {
        let lines = alloc::vec![
            Line { n: [1.0, 0.0], c: half, label: None },
            Line { n: [0.0, 1.0], c: half, label: None },
            Line { n: [-1.0, 0.0], c: half, label: None },
            Line { n: [0.0, -1.0], c: half, label: None },
        ];
        let verts = alloc::vec![[half, half], [-half, half], [-half, -half], [half, -half]];
        Self { lines, verts, eps }
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.verts
    }

    pub fn is_labeled(&self) -> bool {
        !self.is_empty() && self.lines.iter().all(|l| l.label.is_some())
    }

    pub fn circumradius(&self) -> f64 {
        self.verts.iter().map(|v| sqrt(dot(*v, *v))).fold(0.0, f64::max)
    }

    /// Length of side `k`.
    pub fn side_length(&self, k: usize) -> f64 {
        let m = self.verts.len();
        dist(self.verts[(k + m - 1) % m], self.verts[k])
    }

    pub fn area(&self) -> f64 {
        let m = self.verts.len();
        let mut s = 0.0;
        for k in 0..m {
            let a = self.verts[k];
            let b = self.verts[(k + 1) % m];
            s += a[0] * b[1] - a[1] * b[0];
        }
        0.5 * s
    }

    pub fn clip(&mut self, line: Line) -> Clip {
        if self.is_empty() {
            return Clip::Empty;
        }
        let m = self.lines.len();
        let out: Vec<bool> = self.verts.iter().map(|v| dot(line.n, *v) - line.c > self.eps).collect();
        if !out.iter().any(|&o| o) {
            return Clip::Redundant;
        }
        if out.iter().all(|&o| o) {
            self.lines.clear();
            self.verts.clear();
            return Clip::Empty;
        }
        let a = (0..m).find(|&k| out[k] && !out[(k + m - 1) % m]).unwrap();
        let mut b = a;
        while out[(b + 1) % m] {
            b = (b + 1) % m;
        }
        let first = (b + 1) % m;
        let mut lines = Vec::with_capacity(m + 1);
        let mut verts = Vec::with_capacity(m + 1);
        let mut k = first;
        loop {
            lines.push(self.lines[k]);
            if k == a {
                break;
            }
            verts.push(self.verts[k]);
            k = (k + 1) % m;
        }
        verts.push(intersect(&self.lines[a], &line));
        lines.push(line);
        verts.push(intersect(&line, &self.lines[first]));
        self.lines = lines;
        self.verts = verts;
        self.drop_degenerate_sides();
        Clip::Cut
    }

    fn drop_degenerate_sides(&mut self) {
        while self.lines.len() > 3 {
            let m = self.lines.len();
            let Some(k) = (0..m).find(|&k| self.side_length(k) <= self.eps) else {
                break;
            };
            let prev = (k + m - 1) % m;
            let next = (k + 1) % m;
            let v = intersect(&self.lines[prev], &self.lines[next]);
            self.lines.remove(k);
            self.verts.remove(k);
            let prev = if k == 0 { self.lines.len() - 1 } else { k - 1 };
            self.verts[prev] = v;
        }
    }
}

/// Interval `[lo, hi]` on a line with labeled endpoints.
#[derive(Debug, Clone)]
pub(crate) struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_label: Option<usize>,
    pub hi_label: Option<usize>,
    empty: bool,
    eps: f64,
}

impl Interval {
    pub fn boxed(half: f64, eps: f64) -> Self {
        Self { lo: -half, hi: half, lo_label: None, hi_label: None, empty: false, eps }
    }

    pub fn is_labeled(&self) -> bool {
        !self.empty && self.lo_label.is_some() && self.hi_label.is_some()
    }

    pub fn circumradius(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// Clips by `n·u ≤ c` with `n = ±1`.
    pub fn clip(&mut self, n: f64, c: f64, label: usize) -> Clip {
        if self.empty {
            return Clip::Empty;
        }
        if n > 0.0 {
            if c < self.lo - self.eps {
                self.empty = true;
                return Clip::Empty;
            }
            if c < self.hi - self.eps {
                self.hi = c;
                self.hi_label = Some(label);
                return Clip::Cut;
            }
        } else {
            let b = -c;
            if b > self.hi + self.eps {
                self.empty = true;
                return Clip::Empty;
            }
            if b > self.lo + self.eps {
                self.lo = b;
                self.lo_label = Some(label);
                return Clip::Cut;
            }
        }
        Clip::Redundant
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(k: usize, r: f64) -> Polygon {
        let mut p = Polygon::boxed(10.0, 1e-12);
        for j in 0..k {
            let t = core::f64::consts::TAU * j as f64 / k as f64;
            p.clip(Line { n: [libm::cos(t), libm::sin(t)], c: r, label: Some(j) });
        }
        p
    }

    #[test]
    fn octagon_from_eight_lines() {
        let p = regular(8, 1.0);
        assert!(p.is_labeled());
        assert_eq!(p.vertices().len(), 8);
        // area of a regular octagon with inradius 1: 8·tan(π/8)
        let want = 8.0 * libm::tan(core::f64::consts::PI / 8.0);
        assert!((p.area() - want).abs() < 1e-13);
        for k in 0..8 {
            assert!((p.side_length(k) - 2.0 * libm::tan(core::f64::consts::PI / 8.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn line_through_vertex_leaves_no_sliver() {
        let mut p = regular(4, 1.0);
        // the square's corner (1,1) lies on x + y = 2; a line through the corner
        // and cutting the neighbouring corner
        let s = 1.0 / libm::sqrt(2.0);
        assert_eq!(p.clip(Line { n: [s, s], c: 2.0 * s, label: Some(9) }), Clip::Redundant);
        let before = p.vertices().len();
        let n = [0.6, 0.8];
        // passes through (1,1): 0.6 + 0.8 = 1.4
        assert_eq!(p.clip(Line { n, c: 1.4, label: Some(10) }), Clip::Redundant);
        assert_eq!(p.vertices().len(), before);
        let n = [0.8, 0.6];
        assert_eq!(p.clip(Line { n, c: 1.4 - 0.6 * 2.0 * 0.3, label: Some(11) }), Clip::Cut);
        assert!(p.lines().iter().all(|l| l.label.is_some()));
        for k in 0..p.vertices().len() {
            assert!(p.side_length(k) > 1e-6);
        }
    }

    #[test]
    fn clipping_to_empty() {
        let mut p = regular(6, 1.0);
        assert_eq!(p.clip(Line { n: [1.0, 0.0], c: -5.0, label: Some(1) }), Clip::Empty);
        assert!(p.is_empty());
    }

    #[test]
    fn interval_clipping() {
        let mut i = Interval::boxed(4.0, 1e-12);
        assert!(!i.is_labeled());
        assert_eq!(i.clip(1.0, 0.5, 0), Clip::Cut);
        assert_eq!(i.clip(-1.0, 0.25, 1), Clip::Cut);
        assert_eq!(i.clip(1.0, 0.9, 2), Clip::Redundant);
        assert!(i.is_labeled());
        assert_eq!((i.lo, i.hi), (-0.25, 0.5));
        assert_eq!(i.clip(1.0, -1.0, 3), Clip::Empty);
    }
}

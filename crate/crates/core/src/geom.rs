//! Plane vectors and lines.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2::new(c, s)
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Signed area `det(self, other)`.
    #[inline]
    pub fn det(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Counter-clockwise rotation by a right angle.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn normalized(self) -> Vec2 {
        self / self.norm()
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, k: f64) -> Vec2 {
        Vec2::new(self.x / k, self.y / k)
    }
}

/// An infinite line through `point` with direction `dir` (not necessarily unit).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub point: Vec2,
    pub dir: Vec2,
}

impl Line {
    pub fn new(point: Vec2, dir: Vec2) -> Self {
        Line { point, dir }
    }

    pub fn through(a: Vec2, b: Vec2) -> Self {
        Line { point: a, dir: b - a }
    }

    /// Intersection point, or `None` when the lines are parallel to within
    /// `rel_tol` (measured as `|sin|` of the angle between directions).
    pub fn intersect(&self, other: &Line, rel_tol: f64) -> Option<Vec2> {
        let d = self.dir.det(other.dir);
        if d.abs() <= rel_tol * self.dir.norm() * other.dir.norm() {
            return None;
        }
        let u = (other.point - self.point).det(other.dir) / d;
        Some(self.point + self.dir * u)
    }

    /// Signed distance of `p` from the line (positive on the left of `dir`).
    pub fn signed_distance(&self, p: Vec2) -> f64 {
        self.dir.det(p - self.point) / self.dir.norm()
    }

    /// Position of the orthogonal projection of `p` along the unit direction.
    pub fn coordinate(&self, p: Vec2) -> f64 {
        self.dir.dot(p - self.point) / self.dir.norm()
    }
}

/// Closest distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Proper intersection of segments `[a, b]` and `[c, d]`, returned as the
/// pair of segment fractions.
pub fn segment_intersection(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> Option<(f64, f64)> {
    let r = b - a;
    let s = d - c;
    let den = r.det(s);
    if den == 0.0 {
        return None;
    }
    let u = (c - a).det(s) / den;
    let v = (c - a).det(r) / den;
    if (0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v) {
        Some((u, v))
    } else {
        None
    }
}

/// Wrap an angle into `(-π, π]`.
#[inline]
pub fn wrap_pi(a: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut r = a.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Uniform grid over the segments of a polyline, for nearest-distance and
/// crossing queries.
#[derive(Debug, Clone)]
pub struct SegmentIndex {
    segments: Vec<(Vec2, Vec2)>,
    origin: Vec2,
    cell: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
}

impl SegmentIndex {
    pub fn new(segments: Vec<(Vec2, Vec2)>) -> Self {
        let (mut lo, mut hi) = (Vec2::new(f64::MAX, f64::MAX), Vec2::new(f64::MIN, f64::MIN));
        let mut total = 0.0;
        for &(a, b) in &segments {
            for p in [a, b] {
                lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
            }
            total += a.distance(b);
        }
        if segments.is_empty() {
            return SegmentIndex { segments, origin: Vec2::ZERO, cell: 1.0, nx: 1, ny: 1, cells: vec![Vec::new()] };
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-300);
        let mean = total / segments.len() as f64;
        let cell = (2.0 * mean).max(extent / 1024.0).max(1e-300);
        let nx = (((hi.x - lo.x) / cell).floor() as usize + 1).min(1025);
        let ny = (((hi.y - lo.y) / cell).floor() as usize + 1).min(1025);
        let mut index = SegmentIndex { segments, origin: lo, cell, nx, ny, cells: vec![Vec::new(); nx * ny] };
        for (k, &(a, b)) in index.segments.iter().enumerate() {
            let (i0, j0) = index.cell_of(Vec2::new(a.x.min(b.x), a.y.min(b.y)));
            let (i1, j1) = index.cell_of(Vec2::new(a.x.max(b.x), a.y.max(b.y)));
            for j in j0..=j1 {
                for i in i0..=i1 {
                    index.cells[j * nx + i].push(k as u32);
                }
            }
        }
        index
    }

    /// Index over consecutive points of a polyline.
    pub fn from_polyline(points: &[Vec2]) -> Self {
        Self::new(points.windows(2).map(|w| (w[0], w[1])).collect())
    }

    pub fn segments(&self) -> &[(Vec2, Vec2)] {
        &self.segments
    }

    fn cell_of(&self, p: Vec2) -> (usize, usize) {
        let i = ((p.x - self.origin.x) / self.cell).floor().clamp(0.0, (self.nx - 1) as f64) as usize;
        let j = ((p.y - self.origin.y) / self.cell).floor().clamp(0.0, (self.ny - 1) as f64) as usize;
        (i, j)
    }

    /// Distance from `p` to the nearest segment.
    pub fn distance(&self, p: Vec2) -> f64 {
        if self.segments.is_empty() {
            return f64::INFINITY;
        }
        let (ci, cj) = (self.cell_of(p).0 as i64, self.cell_of(p).1 as i64);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny) as i64;
        for r in 0..=max_ring {
            for j in (cj - r).max(0)..=(cj + r).min(self.ny as i64 - 1) {
                for i in (ci - r).max(0)..=(ci + r).min(self.nx as i64 - 1) {
                    if (i - ci).abs().max((j - cj).abs()) != r {
                        continue;
                    }
                    for &k in &self.cells[j as usize * self.nx + i as usize] {
                        let (a, b) = self.segments[k as usize];
                        best = best.min(point_segment_distance(p, a, b));
                    }
                }
            }
            // cells beyond ring r are at least r cells away, also for p
            // outside the grid since projection onto it is non-expansive
            if best <= r as f64 * self.cell {
                break;
            }
        }
        best
    }

    /// Candidate segment indices whose cells overlap the bounding box of `[a, b]`.
    pub fn candidates(&self, a: Vec2, b: Vec2) -> Vec<usize> {
        let (i0, j0) = self.cell_of(Vec2::new(a.x.min(b.x), a.y.min(b.y)));
        let (i1, j1) = self.cell_of(Vec2::new(a.x.max(b.x), a.y.max(b.y)));
        let mut out = Vec::new();
        for j in j0..=j1 {
            for i in i0..=i1 {
                out.extend(self.cells[j * self.nx + i].iter().map(|&k| k as usize));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Directed Hausdorff distance from the points `from` to the polyline `to`.
pub fn directed_hausdorff(from: &[Vec2], to: &SegmentIndex) -> f64 {
    from.iter().map(|&p| to.distance(p)).fold(0.0, f64::max)
}

//! Point maps of parallel pairs and their singularities.
//!
//! All formulas use the single global parameterisation of the curve. With
//! `σ = sign⟨f'(s₁), f'(s₂)⟩` the curvature of the partner seen from a local
//! chart traversed against `f'(s₁)` is `−σκ(s₂)`, its arc-length derivative is
//! `κ_s(s₂)` and its second derivative `−σκ_ss(s₂)`. Hence
//!
//! * CSS point `(κ₁a − σκ₂b)/(κ₁ − σκ₂)`, asymptotes where `A = κ₁ − σκ₂` vanishes,
//! * CSS cusps where `C = κ_s(s₁)κ₂² − κ₁²κ_s(s₂)` vanishes (σ-free),
//! * CSS inflexions on double tangents, `D = det(a − b, T₁) = 0`,
//! * `E_λ` velocity along the pair family `∝ T₁(λκ₂ + (1−λ)σκ₁)`.

use crate::curve::{CurveGeometry, Jet};
use crate::error::{Error, Result};
use crate::geom::{Line, SegmentIndex, Vec2};
use crate::parallel::{AngleFunction, Correspondence};
use crate::roots::{self, Bracket};
use serde::{Deserialize, Serialize};

/// A parallel pair with its jets.
#[derive(Debug, Clone, Copy)]
pub struct PairSample {
    pub s1: f64,
    pub s2: f64,
    pub a: Jet,
    pub b: Jet,
    pub sigma: i8,
}

impl PairSample {
    /// Pair with σ read off the tangents.
    pub fn new(curve: &CurveGeometry, s1: f64, s2: f64) -> Self {
        let a = curve.eval_jet(s1);
        let b = curve.eval_jet(s2);
        let sigma = if a.tangent_unit.dot(b.tangent_unit) >= 0.0 { 1 } else { -1 };
        PairSample { s1, s2, a, b, sigma }
    }

    pub fn with_sigma(curve: &CurveGeometry, s1: f64, s2: f64, sigma: i8) -> Self {
        PairSample { s1, s2, a: curve.eval_jet(s1), b: curve.eval_jet(s2), sigma }
    }

    pub fn from_jets(a: Jet, b: Jet, sigma: i8) -> Self {
        PairSample { s1: a.t, s2: b.t, a, b, sigma }
    }

    pub fn swapped(&self) -> Self {
        PairSample { s1: self.s2, s2: self.s1, a: self.b, b: self.a, sigma: self.sigma }
    }

    fn sig(&self) -> f64 {
        self.sigma as f64
    }

    pub fn chord(&self) -> Line {
        Line::through(self.a.position, self.b.position)
    }

    /// Angle between the two tangent lines.
    pub fn tangent_residual(&self) -> f64 {
        self.a.tangent_unit.det(self.b.tangent_unit).abs().asin()
    }

    pub fn is_standard(&self) -> bool {
        self.sigma == -1 && self.b.kappa != 0.0
    }

    /// `A = κ₁ − σκ₂`.
    pub fn asymptote_defect(&self) -> f64 {
        self.a.kappa - self.sig() * self.b.kappa
    }

    /// `C = κ_s(s₁)κ₂² − κ₁²κ_s(s₂)`.
    pub fn cusp_defect(&self) -> f64 {
        self.a.kappa_s * self.b.kappa * self.b.kappa - self.a.kappa * self.a.kappa * self.b.kappa_s
    }

    /// `κ_ss(s₁)κ₂³ − κ₁³κ_ss(s₂)`, nonzero at a nondegenerate cusp.
    pub fn cusp_defect2(&self) -> f64 {
        self.a.kappa_ss * self.b.kappa.powi(3) - self.a.kappa.powi(3) * self.b.kappa_ss
    }

    /// `D = det(a − b, T₁)`.
    pub fn double_tangent_defect(&self) -> f64 {
        (self.a.position - self.b.position).det(self.a.tangent_unit)
    }

    /// Zero exactly where `E_λ` is singular along the pair family.
    pub fn equidistant_cusp_defect(&self, lambda: f64) -> f64 {
        lambda * self.b.kappa + (1.0 - lambda) * self.sig() * self.a.kappa
    }

    /// `κ₁ + σκ₂`, the Wigner caustic cusp function.
    pub fn wigner_cusp_defect(&self) -> f64 {
        self.a.kappa + self.sig() * self.b.kappa
    }

    /// `κ₂ − σκ₁`, zero where the secant caustic is singular.
    pub fn secant_cusp_defect(&self) -> f64 {
        self.b.kappa - self.sig() * self.a.kappa
    }

    /// Neither curvature is appreciably nonzero: the pair sits on an
    /// inflexion where an inflexion-connected branch starts.
    pub fn at_shell_end(&self, kappa_floor: f64) -> bool {
        self.a.kappa.abs() < kappa_floor && self.b.kappa.abs() < kappa_floor
    }
}

/// Centre symmetry set point of a pair.
pub fn css_point(pair: &PairSample) -> Result<Vec2> {
    let (k1, k2) = (pair.a.kappa, pair.sig() * pair.b.kappa);
    let den = k1 - k2;
    if den.abs() <= 1e-12 * k1.abs().max(k2.abs()) {
        if pair.a.position.distance(pair.b.position) <= 1e-12 * (1.0 + pair.a.position.norm()) {
            return Ok(pair.a.position);
        }
        return Err(Error::AsymptoticPair { s1: pair.s1, s2: pair.s2 });
    }
    Ok((pair.a.position * k1 - pair.b.position * k2) / den)
}

/// `λa + (1 − λ)b`.
pub fn equidistant_point(pair: &PairSample, lambda: f64) -> Vec2 {
    pair.a.position * lambda + pair.b.position * (1.0 - lambda)
}

/// Wigner caustic point `(a + b)/2`.
pub fn wigner_point(pair: &PairSample) -> Vec2 {
    equidistant_point(pair, 0.5)
}

/// Secant caustic point `a − b`.
pub fn secant_point(pair: &PairSample) -> Vec2 {
    pair.a.position - pair.b.position
}

/// Signed curvature of the centre symmetry set at the point of `pair`,
/// oriented by increasing `s₁`.
pub fn css_curvature(pair: &PairSample, scale: f64) -> Result<f64> {
    let ka = pair.a.kappa;
    let kb = -pair.sig() * pair.b.kappa;
    let c = pair.cusp_defect();
    let chord = pair.a.position - pair.b.position;
    let len = chord.norm();
    if len <= 1e-12 * scale {
        return Err(Error::DegenerateChord { s1: pair.s1, s2: pair.s2 });
    }
    let c_scale = (ka.abs() + kb.abs()).powi(2) * (pair.a.kappa_s.abs() + pair.b.kappa_s.abs());
    if c.abs() <= 1e-14 * c_scale.max(f64::MIN_POSITIVE) || c == 0.0 {
        return Err(Error::SingularPoint { s1: pair.s1, s2: pair.s2 });
    }
    let sum = ka + kb;
    // the local-chart expression carries sgn(κ_b); orienting by increasing s₁ flips it
    Ok(kb.signum() * sum.powi(3) / c.abs() * chord.det(pair.a.tangent_unit) / len.powi(3))
}

/// Pairs `(s, t(s))` of one correspondence, indexed by progress `u ∈ [0, 1]`
/// along the source arc.
pub struct PairFamily<'a> {
    pub curve: &'a CurveGeometry,
    pub angle: &'a AngleFunction,
    pub corr: &'a Correspondence,
    reverse: Correspondence,
}

impl<'a> PairFamily<'a> {
    pub fn new(curve: &'a CurveGeometry, angle: &'a AngleFunction, corr: &'a Correspondence) -> Self {
        let reverse = corr.reversed(curve, angle);
        PairFamily { curve, angle, corr, reverse }
    }

    pub fn source_param(&self, u: f64) -> f64 {
        self.corr.source.at(u)
    }

    pub fn progress_of(&self, s: f64) -> f64 {
        let src = &self.corr.source;
        ((s - src.start) / src.len()).clamp(0.0, 1.0)
    }

    pub fn pair(&self, u: f64) -> PairSample {
        let s = self.source_param(u);
        let t = self.corr.partner(self.curve, self.angle, s);
        PairSample::with_sigma(self.curve, s, t, self.corr.sigma)
    }

    /// Source progress values: `n` uniform in the source parameter merged
    /// with `n` uniform in the target parameter, so that both sides are
    /// resolved near inflexions where the correspondence is stiff.
    pub fn sample_params(&self, n: usize) -> Vec<f64> {
        let mut us: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let tgt = &self.corr.target;
        for j in 1..n {
            let t = tgt.at(j as f64 / n as f64);
            let s = self.reverse.solve_target(self.curve, self.angle, self.angle.theta(self.curve, t) - self.corr.offset);
            us.push(self.progress_of(s));
        }
        us.sort_by(f64::total_cmp);
        us.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        us
    }

    /// Curvature magnitude below which a pair counts as sitting on an inflexion.
    pub fn kappa_floor(&self) -> f64 {
        1e-6 * self.curve.kappa_max()
    }
}

/// Which function a detector tracks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "map", content = "lambda")]
pub enum PointMap {
    Css,
    Wigner,
    Secant,
    Equidistant(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Cusp,
    Asymptote,
    DoubleTangent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventLocation {
    Point(Vec2),
    Line(Line),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularEvent {
    pub kind: EventKind,
    pub map: PointMap,
    pub s1: f64,
    pub s2: f64,
    /// Progress along the source arc of the correspondence.
    pub u: f64,
    pub location: EventLocation,
    /// Second-order value that must be nonzero for a nondegenerate event.
    pub witness: f64,
    pub degenerate: bool,
    /// For asymptotes: parameter distance to the nearest zero of the
    /// finite-difference secant speed.
    pub secant_check: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub events: Vec<SingularEvent>,
    /// The tracked function vanishes identically along the family.
    pub degenerate_family: bool,
    /// Largest value of the tracked function seen while scanning.
    pub max_abs: f64,
}

/// Scan-resolution used for detectors along one correspondence.
pub const DEFAULT_DETECT_SAMPLES: usize = 2048;

/// Pairs of a family at the detector sampling, shared between detectors.
pub struct FamilyScan {
    pub us: Vec<f64>,
    pub pairs: Vec<PairSample>,
}

impl FamilyScan {
    pub fn new(family: &PairFamily, n: usize) -> Self {
        let us = family.sample_params(n);
        let pairs = us.iter().map(|&u| family.pair(u)).collect();
        FamilyScan { us, pairs }
    }
}

/// Simple roots of `f` along the family, each as `(u, pair)`.
fn family_roots<F: Fn(&PairSample) -> f64>(
    family: &PairFamily,
    scan: &FamilyScan,
    f: F,
) -> (Vec<(f64, PairSample)>, f64) {
    let floor = family.kappa_floor();
    let ys: Vec<f64> = scan.pairs.iter().map(&f).collect();
    let max_abs = ys.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let tol = family.curve.scan_settings().root_tol / family.corr.source.len();
    let g = |u: f64| f(&family.pair(u));
    let mut out = Vec::new();
    for br in roots::brackets_from_samples(&scan.us, &ys) {
        let u = if br.lo == br.hi { br.lo } else { roots::bisect(g, br, tol) };
        let pair = family.pair(u);
        if pair.at_shell_end(floor) {
            continue;
        }
        out.push((u, pair));
    }
    (out, max_abs)
}

fn bracket_slope<F: Fn(f64) -> f64>(f: F, u: f64, h: f64) -> f64 {
    (f((u + h).min(1.0)) - f((u - h).max(0.0))) / (2.0 * h)
}

type DefectFn = Box<dyn Fn(&PairSample) -> f64>;

/// Cusps of the image of the family under `map`.
pub fn detect_cusps_of(family: &PairFamily, map: PointMap, n: usize) -> Detection {
    detect_cusps_on(family, &FamilyScan::new(family, n), map)
}

/// [`detect_cusps_of`] on a precomputed scan.
pub fn detect_cusps_on(family: &PairFamily, scan: &FamilyScan, map: PointMap) -> Detection {
    let curve = family.curve;
    let kmax = curve.kappa_max();
    let (f, scale): (DefectFn, f64) = match map {
        PointMap::Css => {
            let ks = curve.kappa_s_scale().max(kmax / curve.length());
            (Box::new(|p: &PairSample| p.cusp_defect()), ks * kmax * kmax)
        }
        PointMap::Wigner => (Box::new(|p: &PairSample| p.wigner_cusp_defect()), kmax),
        PointMap::Secant => (Box::new(|p: &PairSample| p.secant_cusp_defect()), kmax),
        PointMap::Equidistant(l) => (Box::new(move |p: &PairSample| p.equidistant_cusp_defect(l)), kmax),
    };
    let (found, max_abs) = family_roots(family, scan, &f);
    let degenerate_family = max_abs < 1e-7 * scale;
    let mut events = Vec::new();
    if degenerate_family {
        return Detection { events, degenerate_family, max_abs };
    }
    for (u, pair) in found {
        let (witness, degenerate, location) = match map {
            PointMap::Css => {
                let kss = curve.kappa_ss_scale().max(kmax / curve.length().powi(2));
                let w = pair.cusp_defect2();
                let d = pair.double_tangent_defect();
                let slope = bracket_slope(|v| f(&family.pair(v)), u, 1e-6);
                let degenerate = w.abs() <= 1e-7 * kss * kmax.powi(3)
                    || d.abs() <= 1e-7 * curve.diameter()
                    || slope == 0.0;
                let loc = css_point(&pair).map(EventLocation::Point).unwrap_or(EventLocation::Line(pair.chord()));
                (w, degenerate, loc)
            }
            PointMap::Wigner | PointMap::Secant | PointMap::Equidistant(_) => {
                let slope = bracket_slope(|v| f(&family.pair(v)), u, 1e-6);
                let loc = match map {
                    PointMap::Secant => secant_point(&pair),
                    PointMap::Equidistant(l) => equidistant_point(&pair, l),
                    _ => wigner_point(&pair),
                };
                (slope, slope.abs() <= 1e-10 * scale, EventLocation::Point(loc))
            }
        };
        events.push(SingularEvent {
            kind: EventKind::Cusp,
            map,
            s1: pair.s1,
            s2: pair.s2,
            u,
            location,
            witness,
            degenerate,
            secant_check: None,
        });
    }
    Detection { events, degenerate_family, max_abs }
}

/// Cusps of the centre symmetry set along the family.
pub fn detect_cusps(family: &PairFamily, n: usize) -> Detection {
    detect_cusps_of(family, PointMap::Css, n)
}

/// Asymptotes of the centre symmetry set along the family.
pub fn detect_asymptotes(family: &PairFamily, n: usize) -> Detection {
    detect_asymptotes_on(family, &FamilyScan::new(family, n))
}

pub fn detect_asymptotes_on(family: &PairFamily, scan: &FamilyScan) -> Detection {
    let kmax = family.curve.kappa_max();
    let (found, max_abs) = family_roots(family, scan, |p| p.asymptote_defect());
    let degenerate_family = max_abs < 1e-7 * kmax;
    let mut events = Vec::new();
    if !degenerate_family {
        for (u, pair) in found {
            let c = pair.cusp_defect();
            let ks = family.curve.kappa_s_scale().max(kmax / family.curve.length());
            let secant = secant_speed_root_near(family, u).map(|v| (family.source_param(v) - pair.s1).abs());
            events.push(SingularEvent {
                kind: EventKind::Asymptote,
                map: PointMap::Css,
                s1: pair.s1,
                s2: pair.s2,
                u,
                location: EventLocation::Line(pair.chord()),
                witness: c,
                degenerate: c.abs() <= 1e-7 * ks * kmax * kmax,
                secant_check: Some(secant.unwrap_or(f64::INFINITY)),
            });
        }
    }
    Detection { events, degenerate_family, max_abs }
}

/// Double tangents (inflexions of the centre symmetry set) along the family.
pub fn detect_double_tangents(family: &PairFamily, n: usize) -> Detection {
    detect_double_tangents_on(family, &FamilyScan::new(family, n))
}

pub fn detect_double_tangents_on(family: &PairFamily, scan: &FamilyScan) -> Detection {
    let diam = family.curve.diameter();
    let (found, max_abs) = family_roots(family, scan, |p| p.double_tangent_defect());
    let degenerate_family = max_abs < 1e-7 * diam;
    let mut events = Vec::new();
    if !degenerate_family {
        for (u, pair) in found {
            let w = pair.a.kappa * pair.b.kappa;
            let floor = 1e-7 * family.curve.kappa_max().powi(2);
            events.push(SingularEvent {
                kind: EventKind::DoubleTangent,
                map: PointMap::Css,
                s1: pair.s1,
                s2: pair.s2,
                u,
                location: css_point(&pair).map(EventLocation::Point).unwrap_or(EventLocation::Line(pair.chord())),
                witness: w,
                degenerate: w.abs() <= floor,
                secant_check: None,
            });
        }
    }
    Detection { events, degenerate_family, max_abs }
}

/// Zero of the finite-difference secant-caustic speed nearest to `u0`,
/// measured independently of the curvature formulas.
pub fn secant_speed_root_near(family: &PairFamily, u0: f64) -> Option<f64> {
    let h = 1e-6;
    let speed = |u: f64| {
        let p = family.pair(u);
        let d = secant_point(&family.pair(u + h)) - secant_point(&family.pair(u - h));
        d.dot(p.a.tangent_unit) / (2.0 * h)
    };
    let mut w = 1e-4;
    while w <= 0.05 {
        let (lo, hi) = ((u0 - w).max(h), (u0 + w).min(1.0 - h));
        let (flo, fhi) = (speed(lo), speed(hi));
        if flo * fhi <= 0.0 {
            let br = Bracket { lo, hi, f_lo: flo, f_hi: fhi };
            return Some(roots::bisect(speed, br, 1e-13));
        }
        w *= 4.0;
    }
    None
}

/// Consecutive-chord intersections of the family sampled at `n` uniform
/// source parameters over `[u0, u1]`. Each entry carries the midpoint
/// progress; a parallel consecutive pair leaves a gap (`None`).
pub fn envelope_oracle_range(
    family: &PairFamily,
    n: usize,
    u0: f64,
    u1: f64,
) -> Result<Vec<Option<(f64, Vec2)>>> {
    if n < 3 {
        return Err(Error::TooFewSamples(n));
    }
    let us: Vec<f64> = (0..n).map(|i| u0 + (u1 - u0) * i as f64 / (n - 1) as f64).collect();
    let chords: Vec<Line> = us.iter().map(|&u| family.pair(u).chord()).collect();
    Ok(chords
        .windows(2)
        .zip(us.windows(2))
        .map(|(c, u)| c[0].intersect(&c[1], 1e-14).map(|p| (0.5 * (u[0] + u[1]), p)))
        .collect())
}

/// [`envelope_oracle_range`] over the whole family.
pub fn envelope_oracle(family: &PairFamily, n: usize) -> Result<Vec<Option<(f64, Vec2)>>> {
    envelope_oracle_range(family, n, 0.0, 1.0)
}

/// Symmetric Hausdorff distance between two polylines.
pub fn hausdorff(a: &[Vec2], b: &[Vec2]) -> f64 {
    let ia = SegmentIndex::from_polyline(a);
    let ib = SegmentIndex::from_polyline(b);
    crate::geom::directed_hausdorff(a, &ib).max(crate::geom::directed_hausdorff(b, &ia))
}

/// Maximal parameter stretches on which the CSS stays inside the disc of
/// radius `radius_factor · diameter` about the curve centroid, as progress
/// intervals sampled at resolution `n`.
pub fn bounded_stretches(family: &PairFamily, n: usize, radius_factor: f64) -> Vec<(f64, f64)> {
    let r = radius_factor * family.curve.diameter();
    let c = family.curve.centroid();
    let inside = |u: f64| match css_point(&family.pair(u)) {
        Ok(p) => p.distance(c) <= r,
        Err(_) => false,
    };
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    for i in 0..=n {
        let u = i as f64 / n as f64;
        match (inside(u), start) {
            (true, None) => start = Some(u),
            (false, Some(s)) => {
                out.push((s, (i - 1) as f64 / n as f64));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, 1.0));
    }
    out.retain(|(a, b)| b > a);
    out
}

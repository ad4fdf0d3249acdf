//! Decomposition of a closed curve into parallel arcs.
//!
//! The tangent angle θ(t) is lifted continuously over the real line with
//! `θ(t + period) = θ(t) + 2π · rotation_number`. Two parameters form a
//! parallel pair iff their lifted angles differ by a multiple of π; wrapped
//! angles are never compared. Between consecutive inflexions θ is strictly
//! monotone, so every preimage of an angle level is found by bisection on a
//! monotone interval.

use crate::curve::{tangent_turn, CurveGeometry, InflexionKind, InflexionRecord};
use crate::error::{Error, Result};
use crate::roots::{self, Bracket};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Continuous lift of the tangent angle, referenced to a base parameter.
#[derive(Debug, Clone)]
pub struct AngleFunction {
    base_t: f64,
    theta_base: f64,
    period: f64,
    rotation: i64,
    step: f64,
    lift: Vec<f64>,
}

impl AngleFunction {
    pub fn base_t(&self) -> f64 {
        self.base_t
    }

    pub fn rotation_number(&self) -> i64 {
        self.rotation
    }

    /// Lifted tangent angle at any real parameter.
    pub fn theta(&self, curve: &CurveGeometry, t: f64) -> f64 {
        let k = (t / self.period).floor();
        let u = t - k * self.period;
        let idx = ((u / self.step).round() as usize).min(self.lift.len() - 1);
        let reference = self.lift[idx];
        let a = curve.raw(u)[1].angle();
        let lifted = a + TAU * ((reference - a) / TAU).round();
        lifted + TAU * self.rotation as f64 * k
    }

    /// Angle function value `(θ(t) − θ(base)) mod π` in `[0, π)`.
    pub fn phi(&self, curve: &CurveGeometry, t: f64) -> f64 {
        (self.theta(curve, t) - self.theta_base).rem_euclid(PI)
    }

    /// Total increase of θ over one period.
    pub fn span(&self) -> f64 {
        TAU * self.rotation as f64
    }

    /// Tolerance for deciding `θ(s₁) − θ(s₂) ∈ πℤ`.
    pub fn level_tol(&self) -> f64 {
        1e-10 * (1.0 + self.span().abs())
    }
}

/// Build the angle function based at `base_t`.
pub fn angle_function(curve: &CurveGeometry, base_t: f64) -> Result<AngleFunction> {
    let kappa = curve.kappa(base_t);
    if kappa.abs() <= 1e-10 * curve.kappa_max().max(1.0 / curve.scale()) {
        return Err(Error::BasePointIsInflexion { t: base_t });
    }
    let period = curve.period();
    let n = curve.scan_settings().samples.max(64);
    let step = period / n as f64;
    let mut lift = Vec::with_capacity(n + 1);
    lift.push(curve.raw(0.0)[1].angle());
    for i in 0..n {
        let a = step * i as f64;
        let turn = tangent_turn(curve, a, a + step);
        lift.push(lift[i] + turn);
    }
    let rotation = ((lift[n] - lift[0]) / TAU).round() as i64;
    let mut af = AngleFunction { base_t, theta_base: 0.0, period, rotation, step, lift };
    af.theta_base = af.theta(curve, base_t);
    Ok(af)
}

/// Deterministic base point: the farthest point from the origin (smallest
/// parameter on ties). Curvature cannot vanish there.
pub fn default_base(curve: &CurveGeometry) -> f64 {
    let n = curve.scan_settings().samples.max(64);
    let period = curve.period();
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..n {
        let t = period * i as f64 / n as f64;
        let r = curve.position(t).norm();
        if r > best.1 + 1e-15 * r.abs() {
            best = (t, r);
        }
    }
    best.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub t: f64,
    pub phi: f64,
    pub kind: ExtremumKind,
}

/// Local extrema of the angle function: exactly the inflexions, a maximum
/// where the curvature goes from positive to negative.
pub fn local_extrema(
    curve: &CurveGeometry,
    angle: &AngleFunction,
    inflexions: &[InflexionRecord],
) -> Vec<Extremum> {
    inflexions
        .iter()
        .filter(|r| r.kind == InflexionKind::NondegenerateInflexion)
        .map(|r| Extremum {
            t: r.t,
            phi: angle.phi(curve, r.t),
            kind: if r.witness < 0.0 { ExtremumKind::Max } else { ExtremumKind::Min },
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisionTag {
    Inflexion,
    ParallelToInflexion,
    BaseFixed,
    ParallelToBase,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivisionPoint {
    /// Parameter in `[0, period)`.
    pub t: f64,
    pub tag: DivisionTag,
}

/// Closed arc between consecutive division points. `end > start`, and `end`
/// may exceed the period for the wrapping arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    pub theta_start: f64,
    pub theta_end: f64,
}

impl Arc {
    /// +1 where θ increases along the curve orientation, −1 otherwise.
    pub fn turning_sign(&self) -> f64 {
        if self.theta_end >= self.theta_start {
            1.0
        } else {
            -1.0
        }
    }

    pub fn theta_lo(&self) -> f64 {
        self.theta_start.min(self.theta_end)
    }

    pub fn theta_hi(&self) -> f64 {
        self.theta_start.max(self.theta_end)
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }

    /// Parameter at progress `u ∈ [0, 1]`.
    pub fn at(&self, u: f64) -> f64 {
        self.start + u * (self.end - self.start)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisionPoints {
    pub sequence: Vec<DivisionPoint>,
    pub arcs: Vec<Arc>,
}

impl DivisionPoints {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn is_inflexion(&self, k: usize) -> bool {
        self.sequence[k].tag == DivisionTag::Inflexion
    }

    /// Division index at the end of arc `a` in curve direction `dir` (±1).
    pub fn arc_endpoint(&self, a: usize, dir: i8) -> usize {
        if dir > 0 {
            (a + 1) % self.arcs.len()
        } else {
            a
        }
    }

    /// The arc leaving division point `k` in direction `dir`.
    pub fn arc_leaving(&self, k: usize, dir: i8) -> usize {
        let m = self.arcs.len();
        if dir > 0 {
            k
        } else {
            (k + m - 1) % m
        }
    }
}

/// Solve `θ(t) = level` on a parameter interval where θ is monotone.
fn solve_level(
    curve: &CurveGeometry,
    angle: &AngleFunction,
    lo: f64,
    hi: f64,
    level: f64,
    tol: f64,
) -> f64 {
    let f = |t: f64| angle.theta(curve, t) - level;
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 || flo * fhi > 0.0 {
        return if flo.abs() < fhi.abs() { lo } else { hi };
    }
    let t = roots::bisect(f, Bracket { lo, hi, f_lo: flo, f_hi: fhi }, tol);
    roots::newton_polish(f, |t| curve.turning_rate(t), t, lo, hi)
}

/// The sequence of division points and the arcs between them.
pub fn division_points(
    curve: &CurveGeometry,
    angle: &AngleFunction,
    extrema: &[Extremum],
) -> Result<DivisionPoints> {
    let period = curve.period();
    let tol = curve.scan_settings().root_tol;
    let level_tol = angle.level_tol();
    let mut points: Vec<DivisionPoint> = Vec::new();

    if extrema.is_empty() {
        let base = angle.base_t();
        let theta0 = angle.theta(curve, base);
        let span = angle.span();
        let count = (span.abs() / PI).round() as i64;
        points.push(DivisionPoint { t: curve.wrap(base), tag: DivisionTag::BaseFixed });
        for j in 1..count {
            let level = theta0 + span.signum() * PI * j as f64;
            let t = solve_level(curve, angle, base, base + period, level, tol);
            points.push(DivisionPoint { t: curve.wrap(t), tag: DivisionTag::ParallelToBase });
        }
    } else {
        let mut ts: Vec<f64> = extrema.iter().map(|e| e.t).collect();
        ts.sort_by(f64::total_cmp);
        let thetas: Vec<f64> = ts.iter().map(|&t| angle.theta(curve, t)).collect();
        for (j, &t) in ts.iter().enumerate() {
            points.push(DivisionPoint { t, tag: DivisionTag::Inflexion });
            let _ = j;
        }
        let r = ts.len();
        for a in 0..r {
            let lo_t = ts[a];
            let hi_t = if a + 1 < r { ts[a + 1] } else { ts[0] + period };
            let th_lo = thetas[a];
            let th_hi = angle.theta(curve, hi_t);
            let (lo_th, hi_th) = (th_lo.min(th_hi), th_lo.max(th_hi));
            for (j, &level0) in thetas.iter().enumerate() {
                let m_lo = ((lo_th - level0) / PI).floor() as i64;
                let m_hi = ((hi_th - level0) / PI).ceil() as i64;
                for m in m_lo..=m_hi {
                    let level = level0 + PI * m as f64;
                    let at_lo = (level - th_lo).abs() <= level_tol;
                    let at_hi = (level - th_hi).abs() <= level_tol;
                    if at_lo || at_hi {
                        let own = (at_lo && j == a) || (at_hi && j == (a + 1) % r);
                        if !own {
                            let t = if at_lo { lo_t } else { hi_t };
                            return Err(Error::TangentialPreimage { t: curve.wrap(t), level });
                        }
                        continue;
                    }
                    if level > lo_th && level < hi_th {
                        let t = solve_level(curve, angle, lo_t, hi_t, level, tol);
                        points.push(DivisionPoint {
                            t: curve.wrap(t),
                            tag: DivisionTag::ParallelToInflexion,
                        });
                    }
                }
            }
        }
    }

    // order along the curve starting from the base point
    let base = curve.wrap(angle.base_t());
    let key = |t: f64| (t - base).rem_euclid(period);
    points.sort_by(|a, b| key(a.t).total_cmp(&key(b.t)));
    points.dedup_by(|a, b| (key(a.t) - key(b.t)).abs() < 1e-11);

    let m = points.len();
    let mut arcs = Vec::with_capacity(m);
    for k in 0..m {
        let start = points[k].t;
        let mut end = points[(k + 1) % m].t;
        while end <= start {
            end += period;
        }
        arcs.push(Arc {
            index: k,
            start,
            end,
            theta_start: angle.theta(curve, start),
            theta_end: angle.theta(curve, end),
        });
    }
    Ok(DivisionPoints { sequence: points, arcs })
}

/// Arc of a parallel-arc set, directed from its endpoint at the lower
/// extremal level to the one at the upper level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectedArc {
    pub arc: usize,
    pub from: usize,
    pub to: usize,
    /// True when `from → to` follows the curve orientation.
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelArcSet {
    pub index: usize,
    /// `(φᵢ, φᵢ₊₁)` with `φᵢ ∈ [0, π)`; the upper end may exceed π.
    pub extremal_interval: (f64, f64),
    pub arcs: Vec<DirectedArc>,
}

/// Group the arcs by the angle interval they sweep.
pub fn parallel_arc_sets(
    curve: &CurveGeometry,
    angle: &AngleFunction,
    division: &DivisionPoints,
    extrema: &[Extremum],
) -> Vec<ParallelArcSet> {
    let _ = curve;
    let m = division.arcs.len();
    let directed = |a: &Arc| {
        let forward = a.theta_end >= a.theta_start;
        let (from, to) = if forward { (a.index, (a.index + 1) % m) } else { ((a.index + 1) % m, a.index) };
        DirectedArc { arc: a.index, from, to, forward }
    };
    let reduce = |x: f64| (x - angle.theta_base).rem_euclid(PI);

    if extrema.is_empty() {
        let phi0 = reduce(angle.theta_base);
        return vec![ParallelArcSet {
            index: 0,
            extremal_interval: (phi0, phi0 + PI),
            arcs: division.arcs.iter().map(directed).collect(),
        }];
    }

    let mut levels: Vec<f64> = extrema.iter().map(|e| e.phi).collect();
    levels.sort_by(f64::total_cmp);
    let q = levels.len();
    let mut sets: Vec<ParallelArcSet> = (0..q)
        .map(|i| {
            let hi = if i + 1 < q { levels[i + 1] } else { levels[0] + PI };
            ParallelArcSet { index: i, extremal_interval: (levels[i], hi), arcs: Vec::new() }
        })
        .collect();
    for a in &division.arcs {
        let lo = reduce(a.theta_lo());
        let i = (0..q)
            .min_by(|&i, &j| circ_dist(lo, levels[i]).total_cmp(&circ_dist(lo, levels[j])))
            .unwrap_or(0);
        sets[i].arcs.push(directed(a));
    }
    sets
}

fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Smooth monotone map between two arcs of the same parallel-arc set.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub source: Arc,
    pub target: Arc,
    pub set_index: usize,
    /// `sign⟨f'(s), f'(t(s))⟩`.
    pub sigma: i8,
    /// Multiple of π added to θ(s) to reach the target level.
    pub offset: f64,
    cache_t: Vec<f64>,
    cache_theta: Vec<f64>,
    root_tol: f64,
}

const CACHE_SAMPLES: usize = 64;

impl Correspondence {
    /// Partner parameter on the target arc.
    pub fn partner(&self, curve: &CurveGeometry, angle: &AngleFunction, s: f64) -> f64 {
        let level = angle.theta(curve, s) + self.offset;
        self.solve_target(curve, angle, level)
    }

    /// Target parameter at the given lifted angle level.
    pub fn solve_target(&self, curve: &CurveGeometry, angle: &AngleFunction, level: f64) -> f64 {
        let n = self.cache_t.len();
        let increasing = self.cache_theta[n - 1] >= self.cache_theta[0];
        let before = |x: f64| if increasing { x < level } else { x > level };
        if !before(self.cache_theta[0]) {
            return self.cache_t[0];
        }
        if before(self.cache_theta[n - 1]) {
            return self.cache_t[n - 1];
        }
        let i = self.cache_theta.partition_point(|&x| before(x));
        let (lo, hi) = (self.cache_t[i - 1], self.cache_t[i]);
        solve_level(curve, angle, lo, hi, level, self.root_tol)
    }

    /// Source parameter at progress `u ∈ [0,1]` together with its partner.
    pub fn pair_at(&self, curve: &CurveGeometry, angle: &AngleFunction, u: f64) -> (f64, f64) {
        let s = self.source.at(u);
        (s, self.partner(curve, angle, s))
    }

    /// Monotone samples `(s, t(s))` at `n + 1` uniform source parameters.
    pub fn samples(&self, curve: &CurveGeometry, angle: &AngleFunction, n: usize) -> Vec<(f64, f64)> {
        (0..=n).map(|i| self.pair_at(curve, angle, i as f64 / n as f64)).collect()
    }

    /// The inverse correspondence.
    pub fn reversed(&self, curve: &CurveGeometry, angle: &AngleFunction) -> Correspondence {
        build_correspondence(curve, angle, self.target, self.source, self.set_index, self.root_tol)
    }

    /// Whether the partner increases with the source parameter.
    pub fn is_increasing(&self) -> bool {
        (self.source.turning_sign() > 0.0) == (self.target.turning_sign() > 0.0)
    }
}

fn build_correspondence(
    curve: &CurveGeometry,
    angle: &AngleFunction,
    source: Arc,
    target: Arc,
    set_index: usize,
    root_tol: f64,
) -> Correspondence {
    let k = ((target.theta_lo() - source.theta_lo()) / PI).round();
    let sigma = if (k as i64).rem_euclid(2) == 0 { 1 } else { -1 };
    let cache_t: Vec<f64> = (0..=CACHE_SAMPLES).map(|i| target.at(i as f64 / CACHE_SAMPLES as f64)).collect();
    let mut cache_theta: Vec<f64> = cache_t.iter().map(|&t| angle.theta(curve, t)).collect();
    // pin the endpoint levels exactly so that endpoints map to endpoints
    cache_theta[0] = target.theta_start;
    cache_theta[CACHE_SAMPLES] = target.theta_end;
    Correspondence { source, target, set_index, sigma, offset: k * PI, cache_t, cache_theta, root_tol }
}

/// Correspondence between two distinct arcs of one parallel-arc set.
pub fn solve_correspondence(
    curve: &CurveGeometry,
    angle: &AngleFunction,
    sets: &[ParallelArcSet],
    division: &DivisionPoints,
    arc_a: usize,
    arc_b: usize,
) -> Result<Correspondence> {
    let set = sets
        .iter()
        .find(|s| s.arcs.iter().any(|d| d.arc == arc_a) && s.arcs.iter().any(|d| d.arc == arc_b));
    match set {
        Some(set) if arc_a != arc_b => Ok(build_correspondence(
            curve,
            angle,
            division.arcs[arc_a],
            division.arcs[arc_b],
            set.index,
            curve.scan_settings().root_tol,
        )),
        _ => Err(Error::NotSameFamily(arc_a, arc_b)),
    }
}

/// Complete decomposition of a curve into parallel arcs.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub angle: AngleFunction,
    pub inflexions: Vec<InflexionRecord>,
    pub extrema: Vec<Extremum>,
    pub division: DivisionPoints,
    pub arc_sets: Vec<ParallelArcSet>,
    set_of_arc: Vec<usize>,
}

impl Decomposition {
    pub fn new(curve: &CurveGeometry) -> Result<Self> {
        let inflexions = curve.find_inflexions()?;
        if let Some(bad) = inflexions.iter().find(|r| r.kind != InflexionKind::NondegenerateInflexion) {
            return Err(Error::DegenerateRoot { t: bad.t, witness: bad.witness });
        }
        let angle = angle_function(curve, default_base(curve))?;
        let extrema = local_extrema(curve, &angle, &inflexions);
        let division = division_points(curve, &angle, &extrema)?;
        let arc_sets = parallel_arc_sets(curve, &angle, &division, &extrema);
        let mut set_of_arc = vec![usize::MAX; division.arcs.len()];
        for s in &arc_sets {
            for d in &s.arcs {
                set_of_arc[d.arc] = s.index;
            }
        }
        Ok(Decomposition { angle, inflexions, extrema, division, arc_sets, set_of_arc })
    }

    pub fn set_of_arc(&self, arc: usize) -> usize {
        self.set_of_arc[arc]
    }

    pub fn correspondence(&self, curve: &CurveGeometry, a: usize, b: usize) -> Result<Correspondence> {
        solve_correspondence(curve, &self.angle, &self.arc_sets, &self.division, a, b)
    }

    /// Sizes `#Φᵢ`.
    pub fn set_sizes(&self) -> Vec<usize> {
        self.arc_sets.iter().map(|s| s.arcs.len()).collect()
    }

    /// `Σᵢ C(#Φᵢ, 2)`.
    pub fn arc_pair_count(&self) -> usize {
        self.set_sizes().iter().map(|&n| n * n.saturating_sub(1) / 2).sum()
    }

    /// Arc containing parameter `t` (the first one on ties).
    pub fn arc_containing(&self, curve: &CurveGeometry, t: f64) -> usize {
        let period = curve.period();
        for a in &self.division.arcs {
            let u = (t - a.start).rem_euclid(period);
            if u <= a.len() {
                return a.index;
            }
        }
        0
    }

    /// Every parameter `t ≠ s` with a tangent parallel to the one at `s`.
    pub fn partners(&self, curve: &CurveGeometry, s: f64) -> Vec<f64> {
        let a = self.arc_containing(curve, s);
        let arc = self.division.arcs[a];
        let mut s_in = s;
        while s_in < arc.start {
            s_in += curve.period();
        }
        let set = &self.arc_sets[self.set_of_arc[a]];
        let mut out: Vec<f64> = set
            .arcs
            .iter()
            .filter(|d| d.arc != a)
            .filter_map(|d| self.correspondence(curve, a, d.arc).ok())
            .map(|c| curve.wrap(c.partner(curve, &self.angle, s_in)))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::f64::consts::PI;

    #[test]
    fn circle_partners_are_antipodal() {
        let c = CurveGeometry::new(fixtures::unit_circle()).unwrap();
        let d = Decomposition::new(&c).unwrap();
        assert_eq!(d.arc_pair_count(), 1);
        for s in [0.1, 1.0, 2.5, 4.0, 6.0] {
            let p = d.partners(&c, s);
            assert_eq!(p.len(), 1);
            assert!((p[0] - c.wrap(s + PI)).abs() < 1e-10, "{s}: {p:?}");
        }
        let corr = d.correspondence(&c, 0, 1).unwrap();
        assert_eq!(corr.sigma, -1);
    }

    #[test]
    fn rosette_division_has_two_points_per_half_turn() {
        let c = CurveGeometry::new(fixtures::two_rosette()).unwrap();
        let d = Decomposition::new(&c).unwrap();
        assert_eq!(d.angle.rotation_number(), 2);
        assert_eq!(d.division.len(), 4);
        assert_eq!(d.set_sizes(), vec![4]);
        assert!(d.division.sequence.iter().all(|p| p.tag != DivisionTag::Inflexion));
    }

    #[test]
    fn arcs_tile_the_period() {
        let c = CurveGeometry::new(fixtures::bean(0.3)).unwrap();
        let d = Decomposition::new(&c).unwrap();
        let total: f64 = d.division.arcs.iter().map(|a| a.len()).sum();
        assert!((total - c.period()).abs() < 1e-12);
        let n = d.division.arcs.len();
        for (i, a) in d.division.arcs.iter().enumerate() {
            let next = d.division.arcs[(i + 1) % n];
            let gap = (a.end - next.start).rem_euclid(c.period());
            assert!(gap.min(c.period() - gap) < 1e-12);
        }
    }
}

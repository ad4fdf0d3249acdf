//! Genericity report, the curved-same-side predicate and two sufficient
//! conditions for the existence of an asymptote.
//!
//! Certificates work with "local" curvatures: the arc `P` keeps its own
//! orientation and `Q` is oriented so that its tangents are opposite to the
//! parallel ones of `P`. With this convention `κ_P + κ_Q` is the asymptote
//! defect of the pair.

use crate::caustic::{
    css_point, detect_asymptotes_on, detect_cusps_on, detect_double_tangents_on, FamilyScan, PairFamily,
    PairSample, PointMap,
};
use crate::curve::{tangent_turn, CurveGeometry, InflexionKind};
use crate::error::{Error, Result};
use crate::geom::{segment_intersection, Line, SegmentIndex, Vec2};
use crate::parallel::Decomposition;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotCheckable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub params: Vec<f64>,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub id: String,
    pub status: Status,
    /// Smallest normalised nondegeneracy margin seen; `None` if nothing was tested.
    pub min_margin: Option<f64>,
    pub witness: Option<Witness>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub entries: Vec<ConditionEntry>,
    pub overall: bool,
    pub resolution: usize,
}

impl GenericityReport {
    pub fn entry(&self, id: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| e.status == Status::Fail).map(|e| e.id.as_str()).collect()
    }
}

/// Violation threshold on normalised defects.
pub const GENERICITY_TOL: f64 = 1e-7;

struct Entry {
    id: &'static str,
    margin: f64,
    witness: Option<Witness>,
    failed: bool,
    note: String,
}

impl Entry {
    fn new(id: &'static str) -> Self {
        Entry { id, margin: f64::INFINITY, witness: None, failed: false, note: String::new() }
    }

    /// Record a normalised margin; below the tolerance the condition fails.
    fn observe(&mut self, margin: f64, params: &[f64], residuals: &[f64]) {
        if margin < self.margin {
            self.margin = margin;
            if !self.failed {
                self.witness = Some(Witness { params: params.to_vec(), residuals: residuals.to_vec() });
            }
        }
        if margin <= GENERICITY_TOL && !self.failed {
            self.failed = true;
            self.witness = Some(Witness { params: params.to_vec(), residuals: residuals.to_vec() });
        }
    }

    fn fail(&mut self, params: &[f64], residuals: &[f64], note: &str) {
        self.failed = true;
        self.margin = 0.0;
        self.witness = Some(Witness { params: params.to_vec(), residuals: residuals.to_vec() });
        if !note.is_empty() {
            self.note = note.to_string();
        }
    }

    fn finish(self, checkable: bool) -> ConditionEntry {
        let status = if !checkable {
            Status::NotCheckable
        } else if self.failed {
            Status::Fail
        } else {
            Status::Pass
        };
        let min_margin = self.margin.is_finite().then_some(self.margin);
        ConditionEntry { id: self.id.to_string(), status, min_margin, witness: self.witness, note: self.note }
    }
}

/// Check conditions (i)–(viii) at sampling resolution `resolution` per arc pair.
pub fn check_genericity(curve: &CurveGeometry, resolution: usize) -> GenericityReport {
    let decomp = Decomposition::new(curve);
    check_genericity_with(curve, decomp.as_ref().ok(), resolution)
}

/// [`check_genericity`] reusing a decomposition. When the decomposition
/// could not be built, only condition (i) is evaluated.
pub fn check_genericity_with(
    curve: &CurveGeometry,
    decomp: Option<&Decomposition>,
    resolution: usize,
) -> GenericityReport {
    let kmax = curve.kappa_max();
    let ks = curve.kappa_s_scale().max(kmax / curve.length());
    let kss = curve.kappa_ss_scale().max(kmax / curve.length().powi(2));
    let c_scale = ks * kmax * kmax;
    let c2_scale = kss * kmax.powi(3);
    let diam = curve.diameter();
    let res_note = format!("no violation found at resolution {resolution}");

    let mut e1 = Entry::new("i");
    check_regularity(curve, &mut e1);
    let mut e = [
        Entry::new("ii"),
        Entry::new("iii"),
        Entry::new("iv"),
        Entry::new("v"),
        Entry::new("vi"),
        Entry::new("vii"),
        Entry::new("viii"),
    ];
    let Some(decomp) = decomp else {
        if !e1.failed {
            e1.note = "decomposition failed".into();
        }
        let mut entries = vec![e1.finish(true)];
        entries.extend(e.into_iter().map(|x| {
            let mut c = x.finish(false);
            c.note = "requires the parallel-arc decomposition".into();
            c
        }));
        return GenericityReport { entries, overall: false, resolution };
    };

    // (ii) no parallel pair made of two inflexions
    let thetas: Vec<(f64, f64)> = decomp.extrema.iter().map(|x| (x.t, decomp.angle.theta(curve, x.t))).collect();
    for (i, &(ti, ai)) in thetas.iter().enumerate() {
        for &(tj, aj) in &thetas[i + 1..] {
            let d = (ai - aj).rem_euclid(PI);
            let m = d.min(PI - d);
            e[0].observe(m / PI, &[ti, tj], &[m]);
        }
    }

    let mut asymptote_lines: Vec<(Line, f64, f64)> = Vec::new();
    let mut css_polylines: Vec<Vec<(Vec2, f64, f64)>> = Vec::new();
    for set in &decomp.arc_sets {
        for (i, x) in set.arcs.iter().enumerate() {
            for y in &set.arcs[i + 1..] {
                let Ok(corr) = decomp.correspondence(curve, x.arc, y.arc) else { continue };
                let fam = PairFamily::new(curve, &decomp.angle, &corr);
                let scan = FamilyScan::new(&fam, resolution);
                let cusps = detect_cusps_on(&fam, &scan, PointMap::Css);
                let asym = detect_asymptotes_on(&fam, &scan);
                let dts = detect_double_tangents_on(&fam, &scan);

                if cusps.degenerate_family {
                    let p = scan.pairs[scan.pairs.len() / 2];
                    e[2].fail(&[p.s1, p.s2], &[cusps.max_abs, p.cusp_defect2()], "cusp defect vanishes identically");
                }
                if dts.degenerate_family {
                    let p = scan.pairs[scan.pairs.len() / 2];
                    e[1].fail(&[p.s1, p.s2], &[dts.max_abs], "double-tangent defect vanishes identically");
                }
                for ev in &dts.events {
                    let p = fam.pair(ev.u);
                    e[1].observe((p.a.kappa * p.b.kappa).abs() / (kmax * kmax), &[p.s1, p.s2], &[p.a.kappa, p.b.kappa]);
                    e[4].observe(p.cusp_defect().abs() / c_scale, &[p.s1, p.s2], &[p.cusp_defect()]);
                }
                for ev in &cusps.events {
                    let p = fam.pair(ev.u);
                    e[2].observe(p.cusp_defect2().abs() / c2_scale, &[p.s1, p.s2], &[p.cusp_defect2()]);
                    e[4].observe(p.double_tangent_defect().abs() / diam, &[p.s1, p.s2], &[p.double_tangent_defect()]);
                }
                for ev in &asym.events {
                    let p = fam.pair(ev.u);
                    e[3].observe(p.cusp_defect().abs() / c_scale, &[p.s1, p.s2], &[p.cusp_defect()]);
                    asymptote_lines.push((p.chord(), p.s1, p.s2));
                }
                let poly: Vec<(Vec2, f64, f64)> = scan
                    .pairs
                    .iter()
                    .filter_map(|p| css_point(p).ok().map(|q| (q, p.s1, p.s2)))
                    .collect();
                css_polylines.push(poly);
            }
        }
    }

    // (vii) distinct asymptotic pairs never share a chord
    for (i, (li, s1, s2)) in asymptote_lines.iter().enumerate() {
        for (lj, s3, s4) in &asymptote_lines[i + 1..] {
            let ang = li.dir.normalized().det(lj.dir.normalized()).abs();
            let off = lj.signed_distance(li.point).abs() / diam;
            e[5].observe(ang.max(off), &[*s1, *s2, *s3, *s4], &[ang, off]);
        }
    }

    check_css_crossings(curve, &css_polylines, c_scale, &mut e[6]);

    for x in e.iter_mut() {
        if !x.failed && x.note.is_empty() {
            x.note = res_note.clone();
        }
    }
    let mut entries = vec![e1.finish(true)];
    entries.extend(e.into_iter().map(|x| x.finish(true)));
    let overall = entries.iter().all(|x| x.status == Status::Pass);
    GenericityReport { entries, overall, resolution }
}

fn check_regularity(curve: &CurveGeometry, entry: &mut Entry) {
    match curve.find_inflexions() {
        Ok(infl) => {
            for r in &infl {
                match r.kind {
                    InflexionKind::NondegenerateInflexion => {}
                    _ => entry.fail(&[r.t], &[r.witness], "undulation or degenerate inflexion"),
                }
            }
        }
        Err(Error::DegenerateRoot { t, witness }) => entry.fail(&[t], &[witness], "degenerate curvature root"),
        Err(_) => entry.fail(&[], &[], "inflexion scan failed"),
    }
    // self-crossings of the sampled curve must be transversal
    let n = curve.scan_settings().samples;
    let period = curve.period();
    let ts: Vec<f64> = (0..=n).map(|i| period * i as f64 / n as f64).collect();
    let pts: Vec<Vec2> = ts.iter().map(|&t| curve.position(t)).collect();
    let index = SegmentIndex::from_polyline(&pts);
    for i in 0..n {
        for j in index.candidates(pts[i], pts[i + 1]) {
            if j <= i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if let Some((u, v)) = segment_intersection(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                let (t1, t2) = (ts[i] + u * (ts[i + 1] - ts[i]), ts[j] + v * (ts[j + 1] - ts[j]));
                let s = curve.tangent(t1).det(curve.tangent(t2)).abs();
                entry.observe(s, &[t1, t2], &[s]);
            }
        }
    }
    if !entry.failed {
        entry.note = format!("transversality checked at resolution {n}");
    }
}

fn check_css_crossings(curve: &CurveGeometry, polys: &[Vec<(Vec2, f64, f64)>], c_scale: f64, entry: &mut Entry) {
    let radius = 3.0 * curve.diameter();
    let centre = curve.centroid();
    let mut segs: Vec<(Vec2, Vec2)> = Vec::new();
    let mut meta: Vec<(usize, usize)> = Vec::new();
    for (pi, poly) in polys.iter().enumerate() {
        for k in 0..poly.len().saturating_sub(1) {
            let (a, b) = (poly[k].0, poly[k + 1].0);
            if a.distance(centre) > radius || b.distance(centre) > radius {
                continue;
            }
            segs.push((a, b));
            meta.push((pi, k));
        }
    }
    let index = SegmentIndex::new(segs.clone());
    for (i, &(a, b)) in segs.iter().enumerate() {
        for j in index.candidates(a, b) {
            if j <= i {
                continue;
            }
            let ((pi, ki), (pj, kj)) = (meta[i], meta[j]);
            if pi == pj && ki.abs_diff(kj) <= 1 {
                continue;
            }
            let (c, d) = segs[j];
            let Some((u, v)) = segment_intersection(a, b, c, d) else { continue };
            // polylines of neighbouring arc pairs share their end points
            let end_i = (ki == 0 && u == 0.0) || (ki + 2 == polys[pi].len() && u == 1.0);
            let end_j = (kj == 0 && v == 0.0) || (kj + 2 == polys[pj].len() && v == 1.0);
            if end_i || end_j {
                continue;
            }
            let s = (b - a).normalized().det((d - c).normalized()).abs();
            let pa = PairSample::new(curve, polys[pi][ki].1, polys[pi][ki].2);
            let pb = PairSample::new(curve, polys[pj][kj].1, polys[pj][kj].2);
            let cusp = (pa.cusp_defect().abs().min(pb.cusp_defect().abs())) / c_scale;
            entry.observe(s.min(cusp.max(GENERICITY_TOL * 1.0001)), &[pa.s1, pa.s2, pb.s1, pb.s2], &[s, cusp]);
        }
    }
    if entry.failed {
        entry.note = "CSS crossing is tangential or sits at a cusp".into();
    }
}

/// Whether the curve is curved to the same side at the two points of a
/// parallel pair: the translated germ at `b` and the germ at `a` lie on the
/// same side of the common tangent.
pub fn curved_same_side(pair: &PairSample) -> Result<bool> {
    for (t, k) in [(pair.s1, pair.a.kappa), (pair.s2, pair.b.kappa)] {
        if k.abs() < 1e-10 {
            return Err(Error::InflexionAtPair(t));
        }
    }
    Ok(pair.sigma as f64 * pair.a.kappa * pair.b.kappa > 0.0)
}

/// Endpoint data of two arcs `P` (own orientation) and `Q` (oriented
/// against `P`) whose endpoints form parallel pairs `p₀q₀` and `p₁q₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcEndpointData {
    pub p0: Vec2,
    pub p1: Vec2,
    pub q0: Vec2,
    pub q1: Vec2,
    pub tangent_p0: Vec2,
    pub tangent_p1: Vec2,
    pub tangent_q0: Vec2,
    pub tangent_q1: Vec2,
    pub kappa_p0: f64,
    pub kappa_p1: f64,
    pub kappa_q0: f64,
    pub kappa_q1: f64,
    /// Sign of `κ_P` on the open arc (0 when it changes).
    pub p_interior_sign: f64,
    pub q_interior_sign: f64,
    /// Total turning of each arc divided by 2π.
    pub p_turning: f64,
    pub q_turning: f64,
    /// Every point of `Q` (resp. `P`) has a parallel partner on the other arc.
    pub q_covered: bool,
    pub p_covered: bool,
    pub same_side_near_start: bool,
    pub same_side_near_end: bool,
    pub same_side_everywhere: bool,
}

impl ArcEndpointData {
    /// Arcs of one correspondence between progress `u0` and `u1`; `P` is
    /// the source arc, traversed from `u0` to `u1`.
    pub fn from_family(family: &PairFamily, u0: f64, u1: f64, samples: usize) -> Self {
        let curve = family.curve;
        let dir = if u1 >= u0 { 1.0 } else { -1.0 };
        let pair_at = |u: f64| family.pair(u);
        let (a, b) = (pair_at(u0), pair_at(u1));
        let sig = family.corr.sigma as f64;
        let kp = |p: &PairSample| dir * p.a.kappa;
        let kq = |p: &PairSample| -dir * sig * p.b.kappa;
        let tp = |p: &PairSample| p.a.tangent_unit * dir;
        let mut p_sign = 0.0;
        let mut q_sign = 0.0;
        let mut all_same = true;
        let mut first = true;
        for i in 1..samples {
            let p = pair_at(u0 + (u1 - u0) * i as f64 / samples as f64);
            let (sp, sq) = (kp(&p).signum(), kq(&p).signum());
            if first {
                p_sign = sp;
                q_sign = sq;
                first = false;
            } else {
                if sp != p_sign {
                    p_sign = 0.0;
                }
                if sq != q_sign {
                    q_sign = 0.0;
                }
            }
            all_same &= curved_same_side(&p).unwrap_or(false);
        }
        let near = |u: f64| curved_same_side(&pair_at(u)).unwrap_or(false);
        let h = 1e-3 * (u1 - u0);
        let turn = |x: f64, y: f64| tangent_turn(curve, x.min(y), x.max(y)).abs() / TAU;
        ArcEndpointData {
            p0: a.a.position,
            p1: b.a.position,
            q0: a.b.position,
            q1: b.b.position,
            tangent_p0: tp(&a),
            tangent_p1: tp(&b),
            tangent_q0: -tp(&a),
            tangent_q1: -tp(&b),
            kappa_p0: kp(&a),
            kappa_p1: kp(&b),
            kappa_q0: kq(&a),
            kappa_q1: kq(&b),
            p_interior_sign: p_sign,
            q_interior_sign: q_sign,
            p_turning: turn(a.s1, b.s1),
            q_turning: turn(a.s2, b.s2),
            q_covered: true,
            p_covered: true,
            same_side_near_start: near(u0 + h),
            same_side_near_end: near(u1 - h),
            same_side_everywhere: all_same,
        }
    }

    /// Exchange the roles of the two endpoint pairs and reverse both arcs.
    pub fn reversed(&self) -> Self {
        ArcEndpointData {
            p0: self.p1,
            p1: self.p0,
            q0: self.q1,
            q1: self.q0,
            tangent_p0: -self.tangent_p1,
            tangent_p1: -self.tangent_p0,
            tangent_q0: -self.tangent_q1,
            tangent_q1: -self.tangent_q0,
            kappa_p0: -self.kappa_p1,
            kappa_p1: -self.kappa_p0,
            kappa_q0: -self.kappa_q1,
            kappa_q1: -self.kappa_q0,
            p_interior_sign: -self.p_interior_sign,
            q_interior_sign: -self.q_interior_sign,
            same_side_near_start: self.same_side_near_end,
            same_side_near_end: self.same_side_near_start,
            ..*self
        }
    }

    /// Exchange the roles of `P` and `Q`.
    pub fn swapped(&self) -> Self {
        ArcEndpointData {
            p0: self.q0,
            p1: self.q1,
            q0: self.p0,
            q1: self.p1,
            tangent_p0: self.tangent_q0,
            tangent_p1: self.tangent_q1,
            tangent_q0: self.tangent_p0,
            tangent_q1: self.tangent_p1,
            kappa_p0: self.kappa_q0,
            kappa_p1: self.kappa_q1,
            kappa_q0: self.kappa_p0,
            kappa_q1: self.kappa_p1,
            p_interior_sign: self.q_interior_sign,
            q_interior_sign: self.p_interior_sign,
            p_turning: self.q_turning,
            q_turning: self.p_turning,
            q_covered: self.p_covered,
            p_covered: self.q_covered,
            ..*self
        }
    }

    fn endpoints_parallel(&self) -> bool {
        self.tangent_p0.normalized().det(self.tangent_q0.normalized()).abs() < 1e-8
            && self.tangent_p1.normalized().det(self.tangent_q1.normalized()).abs() < 1e-8
    }

    fn zero_tol(&self) -> f64 {
        let m = [self.kappa_p0, self.kappa_p1, self.kappa_q0, self.kappa_q1]
            .iter()
            .fold(0.0f64, |m, k| m.max(k.abs()));
        1e-9 * m.max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    AsymptoteCertified,
    Inconclusive,
}

/// Sufficient curvature-sign condition
/// `(κ_Q(q₀) + κ_P(p₀)) · (κ_Q(q₁) + κ_P(p₁)) < 0`.
pub fn certificate_curvature_sign(data: &ArcEndpointData) -> Result<Certificate> {
    let tol = data.zero_tol();
    let mut unmet = Vec::new();
    if !data.endpoints_parallel() {
        unmet.push("(i) endpoint tangents not parallel".to_string());
    }
    if !data.q_covered {
        unmet.push("(ii) Q not covered by parallel partners".to_string());
    }
    if !(data.p_interior_sign < 0.0 && data.kappa_p1 < 0.0 && data.kappa_q0 > 0.0 && data.kappa_q1 <= tol) {
        unmet.push("(iii) curvature signs".to_string());
    }
    if !(data.same_side_near_start && data.same_side_near_end) {
        unmet.push("(iv) not curved in the same side near both endpoint pairs".to_string());
    }
    if !unmet.is_empty() {
        return Err(Error::HypothesesUnmet(unmet));
    }
    let corollary = data.kappa_p0.abs() <= tol && data.kappa_q1.abs() <= tol;
    let product = (data.kappa_q0 + data.kappa_p0) * (data.kappa_q1 + data.kappa_p1);
    Ok(if product < 0.0 || corollary { Certificate::AsymptoteCertified } else { Certificate::Inconclusive })
}

/// The points of the parallelogram construction and the two ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parallelogram {
    pub translated_p1: Vec2,
    pub c: Vec2,
    pub b0: Vec2,
    pub b1: Vec2,
    pub rho: (f64, f64),
}

/// Signed ratio of collinear vectors `u / v`.
fn collinear_ratio(u: Vec2, v: Vec2) -> f64 {
    u.dot(v) / v.dot(v)
}

/// Build the construction without checking hypotheses.
pub fn parallelogram_construction(data: &ArcEndpointData) -> Result<Parallelogram> {
    let tq0 = Line::new(data.q0, data.tangent_q0);
    let tq1 = Line::new(data.q1, data.tangent_q1);
    let l0 = Line::new(data.q0, data.tangent_q1);
    let tp1 = data.p1 + data.q0 - data.p0;
    let lp = Line::new(tp1, data.tangent_q0);
    let tol = 1e-12;
    let c = lp.intersect(&tq1, tol).ok_or_else(|| Error::DegenerateConstruction("ℓ_p' ∥ T_q1".into()))?;
    let b0 = l0.intersect(&lp, tol).ok_or_else(|| Error::DegenerateConstruction("ℓ_0 ∥ ℓ_p'".into()))?;
    let b1 = tq0.intersect(&tq1, tol).ok_or_else(|| Error::DegenerateConstruction("T_q0 ∥ T_q1".into()))?;
    let (v1, v0) = (data.q1 - b1, tp1 - b0);
    if v1.norm() <= tol * (1.0 + data.q1.norm()) || v0.norm() <= tol * (1.0 + tp1.norm()) {
        return Err(Error::DegenerateConstruction("zero reference segment".into()));
    }
    Ok(Parallelogram { translated_p1: tp1, c, b0, b1, rho: (collinear_ratio(c - b1, v1), collinear_ratio(c - b0, v0)) })
}

/// Sufficient parallelogram condition `ρ_max < 1` or `ρ_min > 1`.
pub fn certificate_parallelogram(data: &ArcEndpointData) -> Result<Certificate> {
    let mut unmet = Vec::new();
    if !data.endpoints_parallel() {
        unmet.push("(i) endpoint tangents not parallel".to_string());
    }
    if !(data.p_interior_sign > 0.0 && data.q_interior_sign < 0.0) {
        unmet.push("(ii) curvature of P positive and of Q negative".to_string());
    }
    if !((data.p_turning - data.q_turning).abs() < 1e-9 && data.p_turning < 0.5) {
        unmet.push("(iii) equal rotation numbers below 1/2".to_string());
    }
    if !(data.p_covered && data.q_covered) {
        unmet.push("(iv) arcs not mutually covered by parallel pairs".to_string());
    }
    if !data.same_side_everywhere {
        unmet.push("(v) not curved in the same side at every pair".to_string());
    }
    if !unmet.is_empty() {
        return Err(Error::HypothesesUnmet(unmet));
    }
    let pg = parallelogram_construction(data)?;
    let (lo, hi) = (pg.rho.0.min(pg.rho.1), pg.rho.0.max(pg.rho.1));
    Ok(if hi < 1.0 || lo > 1.0 { Certificate::AsymptoteCertified } else { Certificate::Inconclusive })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curvature_data(kq0: f64, kp0: f64, kq1: f64, kp1: f64) -> ArcEndpointData {
        let e1 = Vec2::new(1.0, 0.0);
        let e2 = Vec2::new(0.0, 1.0);
        ArcEndpointData {
            p0: Vec2::new(0.0, 1.0),
            p1: Vec2::new(1.0, 1.0),
            q0: Vec2::ZERO,
            q1: Vec2::new(1.0, 0.0),
            tangent_p0: e1,
            tangent_p1: e2,
            tangent_q0: -e1,
            tangent_q1: -e2,
            kappa_p0: kp0,
            kappa_p1: kp1,
            kappa_q0: kq0,
            kappa_q1: kq1,
            p_interior_sign: -1.0,
            q_interior_sign: 0.0,
            p_turning: 0.25,
            q_turning: 0.25,
            q_covered: true,
            p_covered: true,
            same_side_near_start: true,
            same_side_near_end: true,
            same_side_everywhere: true,
        }
    }

    #[test]
    fn curvature_sign_arithmetic() {
        let d = curvature_data(2.0, -1.0, -0.5, -1.0);
        assert_eq!(certificate_curvature_sign(&d).unwrap(), Certificate::AsymptoteCertified);
        let d = curvature_data(0.5, -1.0, -0.5, -1.0);
        assert_eq!(certificate_curvature_sign(&d).unwrap(), Certificate::Inconclusive);
        let d = curvature_data(0.5, 0.0, 0.0, -1.0);
        assert_eq!(certificate_curvature_sign(&d).unwrap(), Certificate::AsymptoteCertified);
    }

    #[test]
    fn curvature_sign_reports_unmet() {
        let mut d = curvature_data(2.0, -1.0, -0.5, -1.0);
        d.same_side_near_end = false;
        d.tangent_q1 = Vec2::new(1.0, 1.0);
        match certificate_curvature_sign(&d) {
            Err(Error::HypothesesUnmet(v)) => {
                assert_eq!(v.len(), 2);
                assert!(v[0].starts_with("(i)"));
                assert!(v[1].starts_with("(iv)"));
            }
            other => panic!("{other:?}"),
        }
    }

    fn square(p1: Vec2) -> ArcEndpointData {
        let e1 = Vec2::new(1.0, 0.0);
        let e2 = Vec2::new(0.0, 1.0);
        ArcEndpointData {
            p0: Vec2::new(-3.0, 0.0),
            p1,
            q0: Vec2::ZERO,
            q1: Vec2::new(1.0, 1.0),
            tangent_p0: e1,
            tangent_p1: e2,
            tangent_q0: e1,
            tangent_q1: e2,
            kappa_p0: 1.0,
            kappa_p1: 1.0,
            kappa_q0: -1.0,
            kappa_q1: -1.0,
            p_interior_sign: 1.0,
            q_interior_sign: -1.0,
            p_turning: 0.25,
            q_turning: 0.25,
            q_covered: true,
            p_covered: true,
            same_side_near_start: true,
            same_side_near_end: true,
            same_side_everywhere: true,
        }
    }

    #[test]
    fn parallelogram_ratios() {
        // τ(p1) = (1.25, 0.5): ρ = 0.5 along T_q1 and 0.8 along ℓ_p'
        let d = square(Vec2::new(-1.75, 0.5));
        let pg = parallelogram_construction(&d).unwrap();
        assert!((pg.rho.0 - 0.5).abs() < 1e-15 && (pg.rho.1 - 0.8).abs() < 1e-15);
        assert_eq!(certificate_parallelogram(&d).unwrap(), Certificate::AsymptoteCertified);
        // τ(p1) = (0.8, 1.2): ρ = 1.2 and 1.25
        let d = square(Vec2::new(-2.2, 1.2));
        let pg = parallelogram_construction(&d).unwrap();
        assert!((pg.rho.0 - 1.2).abs() < 1e-12 && (pg.rho.1 - 1.25).abs() < 1e-12);
        assert_eq!(certificate_parallelogram(&d).unwrap(), Certificate::AsymptoteCertified);
        // τ(p1) = (2/3, 1.5): ρ = 1.5 and 1.5 → certified; (2, 0.5): 0.5 and 0.5
        let d = square(Vec2::new(-1.0, 0.5));
        let pg = parallelogram_construction(&d).unwrap();
        assert!((pg.rho.0 - 0.5).abs() < 1e-12 && (pg.rho.1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn parallelogram_degenerate() {
        let mut d = square(Vec2::new(-1.75, 0.5));
        d.tangent_q1 = d.tangent_q0;
        d.tangent_p1 = d.tangent_p0;
        assert!(matches!(parallelogram_construction(&d), Err(Error::DegenerateConstruction(_))));
    }
}

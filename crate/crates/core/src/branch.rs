//! Glueing schemes and the caustic branches they produce.

use crate::caustic::{
    self, css_point, detect_asymptotes_on, detect_cusps_on, detect_double_tangents_on, equidistant_point,
    secant_point, EventKind, EventLocation, FamilyScan, PairFamily, PairSample, PointMap, SingularEvent,
};
use crate::curve::CurveGeometry;
use crate::error::{Error, Result};
use crate::geom::{Line, Vec2};
use crate::parallel::{Correspondence, Decomposition};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;

/// One arc pair of a scheme with the directions in which both arcs are traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchemeSegment {
    pub top: usize,
    pub top_dir: i8,
    pub bottom: usize,
    pub bottom_dir: i8,
}

impl SchemeSegment {
    pub fn swapped(self) -> Self {
        SchemeSegment { top: self.bottom, top_dir: self.bottom_dir, bottom: self.top, bottom_dir: self.top_dir }
    }

    pub fn reversed(self) -> Self {
        SchemeSegment { top_dir: -self.top_dir, bottom_dir: -self.bottom_dir, ..self }
    }

    fn unordered(self) -> (usize, usize) {
        (self.top.min(self.bottom), self.top.max(self.bottom))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum SchemeEnds {
    /// Division indices of the two inflexions.
    InflexionToInflexion { p: usize, q: usize },
    ClosedSamePair,
    ClosedSwappedPair,
}

impl SchemeEnds {
    pub fn is_closed(self) -> bool {
        !matches!(self, SchemeEnds::InflexionToInflexion { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlueingScheme {
    pub index: usize,
    pub set_index: usize,
    pub segments: Vec<SchemeSegment>,
    pub ends: SchemeEnds,
    pub maximal: bool,
}

enum Step {
    Next(SchemeSegment),
    End(usize),
}

fn step(decomp: &Decomposition, seg: SchemeSegment) -> Result<Step> {
    let div = &decomp.division;
    let kt = div.arc_endpoint(seg.top, seg.top_dir);
    let kb = div.arc_endpoint(seg.bottom, seg.bottom_dir);
    let (it, ib) = (div.is_inflexion(kt), div.is_inflexion(kb));
    Ok(Step::Next(match (it, ib) {
        (false, false) => SchemeSegment {
            top: div.arc_leaving(kt, seg.top_dir),
            top_dir: seg.top_dir,
            bottom: div.arc_leaving(kb, seg.bottom_dir),
            bottom_dir: seg.bottom_dir,
        },
        (true, false) => SchemeSegment {
            top: div.arc_leaving(kt, seg.top_dir),
            top_dir: seg.top_dir,
            bottom: seg.bottom,
            bottom_dir: -seg.bottom_dir,
        },
        (false, true) => SchemeSegment {
            top: seg.top,
            top_dir: -seg.top_dir,
            bottom: div.arc_leaving(kb, seg.bottom_dir),
            bottom_dir: seg.bottom_dir,
        },
        (true, true) if kt == kb => return Ok(Step::End(kt)),
        (true, true) => return Err(Error::ProlongationAmbiguous(kt, kb)),
    }))
}

/// Walk forward from `start` until the scheme closes or ends at an inflexion.
fn walk(decomp: &Decomposition, start: SchemeSegment) -> Result<(Vec<SchemeSegment>, SchemeEnds, Option<usize>)> {
    let mut segs = vec![start];
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    seen.insert(start.unordered(), 0);
    let limit = 4 * decomp.division.arcs.len() * decomp.division.arcs.len() + 8;
    let mut cur = start;
    for _ in 0..limit {
        match step(decomp, cur)? {
            Step::End(k) => return Ok((segs, SchemeEnds::ClosedSamePair, Some(k))),
            Step::Next(next) => {
                if next == start {
                    return Ok((segs, SchemeEnds::ClosedSamePair, None));
                }
                if next == start.swapped() {
                    return Ok((segs, SchemeEnds::ClosedSwappedPair, None));
                }
                if seen.contains_key(&next.unordered()) {
                    let kt = decomp.division.arc_endpoint(cur.top, cur.top_dir);
                    let kb = decomp.division.arc_endpoint(cur.bottom, cur.bottom_dir);
                    return Err(Error::ProlongationAmbiguous(kt, kb));
                }
                seen.insert(next.unordered(), segs.len());
                segs.push(next);
                cur = next;
            }
        }
    }
    Err(Error::ProlongationAmbiguous(0, 0))
}

fn start_segment(decomp: &Decomposition, a: usize, b: usize) -> SchemeSegment {
    let arcs = &decomp.division.arcs;
    let same = (arcs[a].turning_sign() > 0.0) == (arcs[b].turning_sign() > 0.0);
    SchemeSegment { top: a, top_dir: 1, bottom: b, bottom_dir: if same { 1 } else { -1 } }
}

/// Every maximal glueing scheme. Each unordered pair of distinct arcs of a
/// parallel-arc set lies in exactly one of them.
pub fn enumerate_maximal_schemes(decomp: &Decomposition) -> Result<Vec<GlueingScheme>> {
    let mut covered: HashMap<(usize, usize), usize> = HashMap::new();
    let mut schemes = Vec::new();
    for set in &decomp.arc_sets {
        let mut arcs: Vec<usize> = set.arcs.iter().map(|d| d.arc).collect();
        arcs.sort_unstable();
        for (i, &a) in arcs.iter().enumerate() {
            for &b in &arcs[i + 1..] {
                if covered.contains_key(&(a, b)) {
                    continue;
                }
                let start = start_segment(decomp, a, b);
                let (fwd, ends, end_fwd) = walk(decomp, start)?;
                let (segments, ends) = match end_fwd {
                    None => (fwd, ends),
                    Some(q) => {
                        let (bwd, _, end_bwd) = walk(decomp, start.reversed())?;
                        let p = end_bwd.ok_or(Error::ProlongationAmbiguous(q, q))?;
                        let mut segs: Vec<SchemeSegment> = bwd.iter().rev().map(|s| s.reversed()).collect();
                        segs.extend_from_slice(&fwd[1..]);
                        (segs, SchemeEnds::InflexionToInflexion { p, q })
                    }
                };
                let index = schemes.len();
                for s in &segments {
                    if let Some(&other) = covered.get(&s.unordered()) {
                        if other != index {
                            return Err(Error::ProlongationAmbiguous(s.top, s.bottom));
                        }
                    }
                    covered.insert(s.unordered(), index);
                }
                schemes.push(GlueingScheme { index, set_index: set.index, segments, ends, maximal: true });
            }
        }
    }
    Ok(schemes)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "lambda")]
pub enum BranchKind {
    Css,
    Wigner,
    Secant,
    Equidistant(f64),
}

impl BranchKind {
    pub fn name(&self) -> String {
        match self {
            BranchKind::Css => "css".into(),
            BranchKind::Wigner => "wigner".into(),
            BranchKind::Secant => "secant".into(),
            BranchKind::Equidistant(l) => format!("equidistant_{l}"),
        }
    }

    fn point_map(&self) -> PointMap {
        match *self {
            BranchKind::Css => PointMap::Css,
            BranchKind::Wigner => PointMap::Wigner,
            BranchKind::Secant => PointMap::Secant,
            BranchKind::Equidistant(l) => PointMap::Equidistant(l),
        }
    }

    /// Whether the image of a swapped pair differs from the original, so a
    /// swapped scheme must be traversed twice to close.
    pub fn needs_doubling(&self) -> bool {
        match *self {
            BranchKind::Css | BranchKind::Wigner => false,
            BranchKind::Secant => true,
            BranchKind::Equidistant(l) => (l - 0.5).abs() > 1e-15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub per_segment: usize,
    pub refine_factor: usize,
    pub refine_radius: f64,
    pub asymptote_band: f64,
    pub detect_samples: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            per_segment: 512,
            refine_factor: 8,
            refine_radius: 1e-2,
            asymptote_band: 1e-7,
            detect_samples: caustic::DEFAULT_DETECT_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchSample {
    pub s1: f64,
    pub s2: f64,
    /// `None` inside the asymptote exclusion band.
    pub point: Option<Vec2>,
    pub segment: usize,
    pub event: Option<EventKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausticBranch {
    pub kind: BranchKind,
    pub scheme: usize,
    pub ends: SchemeEnds,
    pub doubled: bool,
    pub samples: Vec<BranchSample>,
    pub events: Vec<SingularEvent>,
    /// Rotation number in half turns; `None` for open branches.
    pub rotation_half_turns: Option<i64>,
    pub is_closed: bool,
    /// Parameters of the inflexions joined by an open branch.
    pub connects_inflexions: Option<(f64, f64)>,
    /// The tracked point map vanished identically on some segment.
    pub degenerate: bool,
}

impl CausticBranch {
    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    pub fn cusps(&self) -> usize {
        self.count(EventKind::Cusp)
    }

    pub fn asymptotes(&self) -> usize {
        self.count(EventKind::Asymptote)
    }

    pub fn double_tangents(&self) -> usize {
        self.count(EventKind::DoubleTangent)
    }

    /// Rotation number as a real (`half_turns / 2`).
    pub fn rotation_number(&self) -> Option<f64> {
        self.rotation_half_turns.map(|h| h as f64 / 2.0)
    }

    pub fn points(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.samples.iter().filter_map(|s| s.point)
    }
}

/// The segments a branch traverses: the scheme itself, followed by its
/// swapped copy when the point map needs the doubled traversal.
pub fn traversal(scheme: &GlueingScheme, kind: BranchKind) -> (Vec<SchemeSegment>, bool) {
    let mut segs = scheme.segments.clone();
    let doubled = scheme.ends == SchemeEnds::ClosedSwappedPair && kind.needs_doubling();
    if doubled {
        segs.extend(scheme.segments.iter().map(|s| s.swapped()));
    }
    (segs, doubled)
}

fn map_point(kind: BranchKind, pair: &PairSample, band: f64, kappa_max: f64) -> Option<Vec2> {
    match kind {
        BranchKind::Css => {
            if pair.asymptote_defect().abs() < band * kappa_max && !pair.at_shell_end(1e-6 * kappa_max) {
                return None;
            }
            css_point(pair).ok()
        }
        BranchKind::Wigner => Some(equidistant_point(pair, 0.5)),
        BranchKind::Secant => Some(secant_point(pair)),
        BranchKind::Equidistant(l) => Some(equidistant_point(pair, l)),
    }
}

/// Line field carried by the branch normal: the chord for the CSS, the
/// common tangent for the equidistants and the secant caustic.
fn normal_line(kind: BranchKind, pair: &PairSample) -> Vec2 {
    match kind {
        BranchKind::Css => {
            let d = pair.a.position - pair.b.position;
            if d.norm() > 0.0 {
                d
            } else {
                pair.a.tangent_unit
            }
        }
        _ => pair.a.tangent_unit,
    }
}

/// Winding of a closed sequence of undirected lines, in half turns.
pub fn line_field_half_turns(dirs: &[Vec2]) -> i64 {
    let mut total = 0.0;
    for w in dirs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut d = a.det(b).atan2(a.dot(b));
        if d > PI / 2.0 {
            d -= PI;
        } else if d < -PI / 2.0 {
            d += PI;
        }
        total += d;
    }
    (total / PI).round() as i64
}

fn detect_for(kind: BranchKind, fam: &PairFamily, n: usize) -> (Vec<SingularEvent>, bool) {
    let scan = FamilyScan::new(fam, n);
    let mut events = Vec::new();
    let cusps = detect_cusps_on(fam, &scan, kind.point_map());
    let degenerate = cusps.degenerate_family;
    events.extend(cusps.events);
    if kind == BranchKind::Css {
        events.extend(detect_asymptotes_on(fam, &scan).events);
        events.extend(detect_double_tangents_on(fam, &scan).events);
    }
    (events, degenerate)
}

const MAX_LINE_TURN: f64 = 0.1;

/// Pairs at `us`, with midpoints inserted wherever the normal line turns by
/// more than [`MAX_LINE_TURN`] between neighbours.
fn refine_by_turning(fam: &PairFamily, kind: BranchKind, us: &[f64]) -> Vec<(f64, PairSample)> {
    let turn = |a: &PairSample, b: &PairSample| {
        let (x, y) = (normal_line(kind, a), normal_line(kind, b));
        x.det(y).abs().atan2(x.dot(y).abs())
    };
    let mut out: Vec<(f64, PairSample)> = Vec::with_capacity(us.len());
    for &u in us {
        let pair = fam.pair(u);
        if let Some(&(u0, p0)) = out.last() {
            let mut stack = vec![(u0, p0, u, pair)];
            let mut inserted = Vec::new();
            while let Some((a, pa, b, pb)) = stack.pop() {
                if turn(&pa, &pb) <= MAX_LINE_TURN || (b - a).abs() < 1e-11 {
                    continue;
                }
                let m = 0.5 * (a + b);
                let pm = fam.pair(m);
                inserted.push((m, pm));
                stack.push((a, pa, m, pm));
                stack.push((m, pm, b, pb));
            }
            inserted.sort_by(|x, y| ((x.0 - u0) * (u - u0)).total_cmp(&((y.0 - u0) * (u - u0))));
            out.extend(inserted);
        }
        out.push((u, pair));
    }
    out
}

/// Sample the image of a scheme under the point map of `kind`.
pub fn assemble_branch(
    curve: &CurveGeometry,
    decomp: &Decomposition,
    scheme: &GlueingScheme,
    kind: BranchKind,
    cfg: &SamplingConfig,
) -> Result<CausticBranch> {
    let (segs, doubled) = traversal(scheme, kind);
    let kmax = curve.kappa_max();
    let mut samples: Vec<BranchSample> = Vec::new();
    let mut events: Vec<SingularEvent> = Vec::new();
    let mut dirs: Vec<Vec2> = Vec::new();
    let mut degenerate = false;
    for (si, seg) in segs.iter().enumerate() {
        let corr: Correspondence = decomp.correspondence(curve, seg.top, seg.bottom)?;
        let fam = PairFamily::new(curve, &decomp.angle, &corr);
        let (mut seg_events, deg) = detect_for(kind, &fam, cfg.detect_samples);
        degenerate |= deg;
        let len = corr.source.len();
        let radius = cfg.refine_radius / len;
        let mut us = fam.sample_params(cfg.per_segment);
        let fine = cfg.per_segment * cfg.refine_factor;
        for e in &seg_events {
            us.push(e.u);
            let lo = ((e.u - radius) * fine as f64).ceil() as i64;
            let hi = ((e.u + radius) * fine as f64).floor() as i64;
            us.extend((lo..=hi).map(|k| k as f64 / fine as f64).filter(|u| (0.0..=1.0).contains(u)));
        }
        us.sort_by(f64::total_cmp);
        us.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        if seg.top_dir < 0 {
            us.reverse();
            seg_events.reverse();
        }
        seg_events.sort_by(|a, b| {
            let k = |e: &SingularEvent| e.u * seg.top_dir as f64;
            k(a).total_cmp(&k(b))
        });
        let skip_first = si > 0;
        let pairs = refine_by_turning(&fam, kind, &us);
        for (j, (u, pair)) in pairs.into_iter().enumerate() {
            if skip_first && j == 0 {
                continue;
            }
            let event = seg_events.iter().find(|e| e.u == u).map(|e| e.kind);
            dirs.push(normal_line(kind, &pair));
            samples.push(BranchSample {
                s1: pair.s1,
                s2: pair.s2,
                point: map_point(kind, &pair, cfg.asymptote_band, kmax),
                segment: si,
                event,
            });
        }
        events.extend(seg_events);
    }
    let is_closed = scheme.ends.is_closed();
    let rotation_half_turns = if is_closed { Some(line_field_half_turns(&dirs)) } else { None };
    let connects_inflexions = match scheme.ends {
        SchemeEnds::InflexionToInflexion { p, q } => {
            let seq = &decomp.division.sequence;
            Some((seq[p].t, seq[q].t))
        }
        _ => None,
    };
    Ok(CausticBranch {
        kind,
        scheme: scheme.index,
        ends: scheme.ends,
        doubled,
        samples,
        events,
        rotation_half_turns,
        is_closed,
        connects_inflexions,
        degenerate,
    })
}

/// Rotation number of a closed branch in half turns.
pub fn branch_rotation_number(branch: &CausticBranch) -> Result<i64> {
    branch.rotation_half_turns.ok_or(Error::OpenBranch)
}

/// A maximal run of finite samples of a CSS branch between asymptote gaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiBranch {
    pub branch: usize,
    /// Sample index range `[start, end]` (wrapping for closed branches).
    pub start: usize,
    pub end: usize,
    /// Asymptote line indices at the two ends.
    pub asymptote_in: Option<usize>,
    pub asymptote_out: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteApproach {
    pub line: Line,
    pub s1: f64,
    pub s2: f64,
    pub opposite_sides: bool,
    pub opposite_ends: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedBranch {
    pub scheme: usize,
    pub semibranches: Vec<usize>,
    pub asymptotes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeResult {
    pub semibranches: Vec<SemiBranch>,
    pub asymptotes: Vec<AsymptoteApproach>,
    pub branches: Vec<MergedBranch>,
    /// Unions performed, as `(semibranch, semibranch, asymptote)`.
    pub merge_tree: Vec<(usize, usize, usize)>,
}

fn same_line(a: &Line, b: &Line, scale: f64) -> bool {
    let (da, db) = (a.dir.normalized(), b.dir.normalized());
    da.det(db).abs() <= 1e-8 && b.signed_distance(a.point).abs() <= 1e-8 * scale
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Split CSS branches at their asymptote gaps and glue semi-branches that
/// share an asymptote.
pub fn merge_semibranches(branches: &[CausticBranch], scale: f64) -> Result<MergeResult> {
    let mut asymptotes: Vec<AsymptoteApproach> = Vec::new();
    let mut semis: Vec<SemiBranch> = Vec::new();
    for (bi, br) in branches.iter().enumerate() {
        let n = br.samples.len();
        let gaps: Vec<usize> = (0..n).filter(|&i| br.samples[i].point.is_none()).collect();
        if gaps.is_empty() {
            semis.push(SemiBranch { branch: bi, start: 0, end: n.saturating_sub(1), asymptote_in: None, asymptote_out: None });
            continue;
        }
        // group consecutive gap samples; each group is one asymptote
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &g in &gaps {
            match groups.last_mut() {
                Some(last) if last.1 + 1 == g => last.1 = g,
                _ => groups.push((g, g)),
            }
        }
        if br.is_closed && groups.len() > 1 && groups[0].0 == 0 && groups.last().unwrap().1 == n - 1 {
            let last = groups.pop().unwrap();
            groups[0].0 = last.0;
        }
        let mut group_line = Vec::new();
        for &(g0, g1) in &groups {
            let mid = if g0 <= g1 { (g0 + g1) / 2 } else { g0 };
            let s = br.samples[mid];
            let ev = br
                .events
                .iter()
                .filter(|e| e.kind == EventKind::Asymptote)
                .min_by(|a, b| {
                    let d = |e: &SingularEvent| (e.s1 - s.s1).abs() + (e.s2 - s.s2).abs();
                    d(a).total_cmp(&d(b))
                });
            let Some(ev) = ev else {
                group_line.push(None);
                continue;
            };
            let EventLocation::Line(line) = ev.location else {
                group_line.push(None);
                continue;
            };
            let before = br.samples[(g0 + n - 1) % n].point;
            let after = br.samples[(g1 + 1) % n].point;
            let (opposite_sides, opposite_ends) = match (before, after) {
                (Some(p), Some(q)) => (
                    line.signed_distance(p) * line.signed_distance(q) < 0.0,
                    line.coordinate(p) * line.coordinate(q) < 0.0,
                ),
                _ => (false, false),
            };
            let approach = AsymptoteApproach { line, s1: ev.s1, s2: ev.s2, opposite_sides, opposite_ends };
            let existing = asymptotes.iter().position(|a| same_line(&a.line, &line, scale));
            let idx = match existing {
                Some(k) => {
                    let a = asymptotes[k];
                    let same_pair = ((a.s1 - ev.s1).abs() < 1e-8 && (a.s2 - ev.s2).abs() < 1e-8)
                        || ((a.s1 - ev.s2).abs() < 1e-8 && (a.s2 - ev.s1).abs() < 1e-8);
                    if !same_pair {
                        return Err(Error::DoubleAsymptote(line.point));
                    }
                    k
                }
                None => {
                    asymptotes.push(approach);
                    asymptotes.len() - 1
                }
            };
            group_line.push(Some(idx));
        }
        let m = groups.len();
        for k in 0..m {
            let (_, g1) = groups[k];
            let (next0, _) = groups[(k + 1) % m];
            if !br.is_closed && k + 1 == m {
                break;
            }
            semis.push(SemiBranch {
                branch: bi,
                start: (g1 + 1) % n,
                end: (next0 + n - 1) % n,
                asymptote_in: group_line[k],
                asymptote_out: group_line[(k + 1) % m],
            });
        }
        if !br.is_closed {
            let (first, _) = groups[0];
            let (_, last) = groups[m - 1];
            semis.push(SemiBranch { branch: bi, start: 0, end: first.saturating_sub(1), asymptote_in: None, asymptote_out: group_line[0] });
            semis.push(SemiBranch { branch: bi, start: last + 1, end: n - 1, asymptote_in: group_line[m - 1], asymptote_out: None });
        }
    }

    let mut parent: Vec<usize> = (0..semis.len()).collect();
    let mut merge_tree = Vec::new();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, s) in semis.iter().enumerate() {
        for a in [s.asymptote_in, s.asymptote_out].into_iter().flatten() {
            match owner.get(&a) {
                Some(&j) => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                        merge_tree.push((j, i, a));
                    }
                }
                None => {
                    owner.insert(a, i);
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..semis.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut merged: Vec<MergedBranch> = groups
        .into_values()
        .map(|members| {
            let mut asy: Vec<usize> = members
                .iter()
                .flat_map(|&i| [semis[i].asymptote_in, semis[i].asymptote_out])
                .flatten()
                .collect();
            asy.sort_unstable();
            asy.dedup();
            MergedBranch { scheme: branches[semis[members[0]].branch].scheme, semibranches: members, asymptotes: asy }
        })
        .collect();
    merged.sort_by_key(|m| (m.scheme, m.semibranches[0]));
    Ok(MergeResult { semibranches: semis, asymptotes, branches: merged, merge_tree })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityRecord {
    pub kind: BranchKind,
    pub scheme: usize,
    pub cusps: usize,
    pub half_turns: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityRecord {
    pub scheme: usize,
    pub swapped: bool,
    pub css_asymptotes: usize,
    pub secant_cusps: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellRecord {
    pub scheme: usize,
    pub from_t: f64,
    pub to_t: f64,
    pub interior_inflexions: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspComparison {
    pub scheme: usize,
    pub css_cusps: usize,
    pub wigner_cusps: usize,
    pub holds: bool,
}

/// Counts and per-scheme verdicts over all assembled branches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchVerdicts {
    pub css_branches: usize,
    pub closed_css_branches: usize,
    pub asymptote_bearing: usize,
    pub odd_cusp_branches: usize,
    pub total_css_cusps: usize,
    pub total_wigner_cusps: usize,
    pub inflexion_count: usize,
    pub inflexion_branches: usize,
    pub inflexions_bound_once: bool,
    pub shell: Vec<ShellRecord>,
    pub duality: Vec<DualityRecord>,
    pub parity: Vec<ParityRecord>,
    pub cusp_comparison: Vec<CuspComparison>,
}

impl BranchVerdicts {
    pub fn shell_holds(&self) -> bool {
        self.inflexion_branches * 2 == self.inflexion_count
            && self.inflexions_bound_once
            && self.shell.iter().all(|r| r.holds)
    }

    pub fn duality_holds(&self) -> bool {
        self.duality.iter().all(|r| r.holds)
    }

    pub fn parity_holds(&self) -> bool {
        self.parity.iter().all(|r| r.holds)
    }

    pub fn cusp_comparison_holds(&self) -> bool {
        self.cusp_comparison.iter().all(|r| r.holds)
    }
}

/// Classify branches and evaluate the counting laws.
pub fn classify_and_count(
    curve: &CurveGeometry,
    decomp: &Decomposition,
    schemes: &[GlueingScheme],
    branches: &[CausticBranch],
) -> BranchVerdicts {
    let of_kind = |k: BranchKind| branches.iter().filter(move |b| b.kind == k);
    let css: Vec<&CausticBranch> = of_kind(BranchKind::Css).collect();
    let period = curve.period();
    let inflexion_ts: Vec<f64> = decomp.extrema.iter().map(|e| e.t).collect();

    let mut endpoint_hits = vec![0usize; decomp.division.len()];
    let mut shell = Vec::new();
    for s in schemes {
        if let SchemeEnds::InflexionToInflexion { p, q } = s.ends {
            endpoint_hits[p] += 1;
            endpoint_hits[q] += 1;
            let (tp, tq) = (decomp.division.sequence[p].t, decomp.division.sequence[q].t);
            let span = (tq - tp).rem_euclid(period);
            let inside = inflexion_ts
                .iter()
                .filter(|&&t| {
                    let d = (t - tp).rem_euclid(period);
                    d > 1e-9 && d < span - 1e-9
                })
                .count();
            shell.push(ShellRecord { scheme: s.index, from_t: tp, to_t: tq, interior_inflexions: inside, holds: inside % 2 == 0 });
        }
    }
    let inflexions_bound_once = decomp
        .division
        .sequence
        .iter()
        .enumerate()
        .all(|(k, d)| (d.tag == crate::parallel::DivisionTag::Inflexion) == (endpoint_hits[k] == 1));

    let mut parity = Vec::new();
    for b in branches {
        if let Some(h) = b.rotation_half_turns {
            if b.degenerate {
                continue;
            }
            let cusps = b.cusps();
            parity.push(ParityRecord {
                kind: b.kind,
                scheme: b.scheme,
                cusps,
                half_turns: h,
                holds: (cusps % 2 == 0) == (h % 2 == 0),
            });
        }
    }

    let mut duality = Vec::new();
    let mut cusp_comparison = Vec::new();
    for s in schemes.iter().filter(|s| s.ends.is_closed()) {
        let find = |k: BranchKind| branches.iter().find(|b| b.kind == k && b.scheme == s.index);
        if let (Some(c), Some(sc)) = (find(BranchKind::Css), find(BranchKind::Secant)) {
            let swapped = s.ends == SchemeEnds::ClosedSwappedPair;
            let (a, k) = (c.asymptotes(), sc.cusps());
            let holds = if swapped { 2 * a == k } else { a == k };
            duality.push(DualityRecord { scheme: s.index, swapped, css_asymptotes: a, secant_cusps: k, holds });
        }
        if let (Some(c), Some(w)) = (find(BranchKind::Css), find(BranchKind::Wigner)) {
            if c.asymptotes() == 0 {
                cusp_comparison.push(CuspComparison {
                    scheme: s.index,
                    css_cusps: c.cusps(),
                    wigner_cusps: w.cusps(),
                    holds: c.cusps() >= w.cusps(),
                });
            }
        }
    }

    BranchVerdicts {
        css_branches: css.len(),
        closed_css_branches: css.iter().filter(|b| b.is_closed).count(),
        asymptote_bearing: css.iter().filter(|b| b.asymptotes() > 0).count(),
        odd_cusp_branches: css.iter().filter(|b| b.is_closed && b.cusps() % 2 == 1).count(),
        total_css_cusps: css.iter().map(|b| b.cusps()).sum(),
        total_wigner_cusps: of_kind(BranchKind::Wigner).map(|b| b.cusps()).sum(),
        inflexion_count: inflexion_ts.len(),
        inflexion_branches: schemes.iter().filter(|s| !s.ends.is_closed()).count(),
        inflexions_bound_once,
        shell,
        duality,
        parity,
        cusp_comparison,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn line_field_winding() {
        let dirs: Vec<Vec2> = (0..=100).map(|i| Vec2::from_angle(PI * i as f64 / 100.0)).collect();
        assert_eq!(line_field_half_turns(&dirs), 1);
        let back: Vec<Vec2> = dirs.iter().rev().copied().collect();
        assert_eq!(line_field_half_turns(&back), -1);
    }

    #[test]
    fn oval_has_one_swapped_scheme() {
        let c = CurveGeometry::new(fixtures::trefoil_oval(0.1)).unwrap();
        let d = Decomposition::new(&c).unwrap();
        let s = enumerate_maximal_schemes(&d).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].ends, SchemeEnds::ClosedSwappedPair);
        assert_eq!(s[0].segments.len(), 1);
    }
}

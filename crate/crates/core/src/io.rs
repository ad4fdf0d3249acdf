//! Curve-spec files, the analysis pipeline and report/figure emission.

use crate::branch::{
    assemble_branch, classify_and_count, enumerate_maximal_schemes, merge_semibranches, BranchKind, BranchVerdicts,
    CausticBranch, GlueingScheme, SamplingConfig, SchemeEnds,
};
use crate::caustic::{
    bounded_stretches, css_point, envelope_oracle_range, hausdorff, EventKind, EventLocation, PairFamily,
};
use crate::certificates::{check_genericity_with, GenericityReport};
use crate::curve::{CurveGeometry, CurveKind, CurveSpec, Frequency, ScanSettings, TrigSeries, TrigTerm};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::parallel::Decomposition;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

// ---------------------------------------------------------------- parsing

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: RawKind,
    #[serde(default, deserialize_with = "de_period")]
    period: Option<f64>,
    #[serde(default)]
    constant: f64,
    #[serde(default)]
    terms: Vec<RawTerm>,
    x: Option<RawSeries>,
    y: Option<RawSeries>,
}

#[derive(Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
enum RawKind {
    Support,
    Fourier,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    #[serde(default)]
    constant: f64,
    #[serde(default)]
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(deserialize_with = "de_freq")]
    freq: Frequency,
    #[serde(default)]
    cos: f64,
    #[serde(default)]
    sin: f64,
}

impl RawSeries {
    fn build(self) -> TrigSeries {
        TrigSeries::new(self.constant, self.terms.into_iter().map(RawTerm::build).collect())
    }
}

impl RawTerm {
    fn build(self) -> TrigTerm {
        TrigTerm::new(self.freq, self.cos, self.sin)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrText {
    Int(i64),
    Num(f64),
    Text(String),
}

/// Parse `"3/2"`, `"2"`, `"-1/3"` or an integer literal.
pub fn parse_frequency(s: &str) -> std::result::Result<Frequency, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| format!("bad frequency numerator in {s:?}"))?;
    let d: i64 = d.parse().map_err(|_| format!("bad frequency denominator in {s:?}"))?;
    if d == 0 {
        return Err(format!("zero denominator in frequency {s:?}"));
    }
    Ok(Frequency::new(n, d))
}

/// Parse `"2pi"`, `"4pi"`, `"pi"`, `"3*pi"` or a plain number.
pub fn parse_period(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(['*', ' '], "");
    if let Some(k) = t.strip_suffix("pi") {
        let k = if k.is_empty() { 1.0 } else { k.parse::<f64>().map_err(|_| format!("bad period {s:?}"))? };
        return Ok(k * PI);
    }
    t.parse::<f64>().map_err(|_| format!("bad period {s:?}"))
}

fn de_freq<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Frequency, D::Error> {
    match NumOrText::deserialize(d)? {
        NumOrText::Int(n) => Ok(Frequency::from_integer(n)),
        NumOrText::Num(x) => Err(de::Error::custom(format!("frequency {x} must be an integer or a \"p/q\" string"))),
        NumOrText::Text(s) => parse_frequency(&s).map_err(de::Error::custom),
    }
}

fn de_period<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    match NumOrText::deserialize(d)? {
        NumOrText::Int(n) => Ok(Some(n as f64)),
        NumOrText::Num(x) => Ok(Some(x)),
        NumOrText::Text(s) => parse_period(&s).map(Some).map_err(de::Error::custom),
    }
}

/// Parse a curve-spec document and validate it by building the curve.
pub fn parse_curve_spec(text: &str) -> Result<CurveSpec> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let invalid = |m: &str| Error::Validation(Box::new(Error::InvalidSpec(m.into())));
    let spec = match raw.kind {
        RawKind::Support => {
            if raw.x.is_some() || raw.y.is_some() {
                return Err(invalid("support specs take constant/terms, not x/y"));
            }
            CurveSpec::support(TrigSeries::new(raw.constant, raw.terms.into_iter().map(RawTerm::build).collect()))
        }
        RawKind::Fourier => {
            let (Some(x), Some(y)) = (raw.x, raw.y) else {
                return Err(invalid("fourier specs need both x and y blocks"));
            };
            if !raw.terms.is_empty() || raw.constant != 0.0 {
                return Err(invalid("fourier specs take x/y blocks, not constant/terms"));
            }
            CurveSpec::fourier(x.build(), y.build())
        }
    };
    let spec = match raw.period {
        Some(p) => spec.with_period(p),
        None => spec,
    };
    CurveGeometry::new(spec.clone()).map_err(|e| Error::Validation(Box::new(e)))?;
    Ok(spec)
}

pub fn parse_curve_file(path: impl AsRef<Path>) -> Result<CurveSpec> {
    parse_curve_spec(&std::fs::read_to_string(path)?)
}

/// Serialise a spec in the curve-spec file format.
pub fn curve_spec_to_json(spec: &CurveSpec) -> String {
    let terms = |s: &TrigSeries| -> Vec<serde_json::Value> {
        s.terms
            .iter()
            .map(|t| serde_json::json!({"freq": t.freq.to_string(), "cos": t.cos, "sin": t.sin}))
            .collect()
    };
    let v = match &spec.kind {
        CurveKind::SupportRosette { support } => serde_json::json!({
            "kind": "support", "period": spec.period, "constant": support.constant, "terms": terms(support),
        }),
        CurveKind::FourierParametric { x, y } => serde_json::json!({
            "kind": "fourier", "period": spec.period,
            "x": {"constant": x.constant, "terms": terms(x)},
            "y": {"constant": y.constant, "terms": terms(y)},
        }),
    };
    to_json_string(&v, 17)
}

// ---------------------------------------------------------------- numbers

/// `%.{digits}g`-style formatting: `digits` significant digits, trailing
/// zeros removed, exponent form outside `[1e-5, 10^digits)`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let digits = digits.max(1);
    let e = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim(mant), exp)
    } else {
        trim(&format!("{:.*}", (digits as i32 - 1 - exp).max(0) as usize, x))
    }
}

struct SigFormatter {
    inner: serde_json::ser::PrettyFormatter<'static>,
    digits: usize,
}

macro_rules! delegate {
    ($($name:ident $(, $arg:ident : $ty:ty)*);* $(;)?) => {
        $(fn $name<W: ?Sized + std::io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> std::io::Result<()> {
            self.inner.$name(w $(, $arg)*)
        })*
    };
}

impl serde_json::ser::Formatter for SigFormatter {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, w: &mut W, v: f64) -> std::io::Result<()> {
        w.write_all(format_significant(v, self.digits).as_bytes())
    }

    fn write_f32<W: ?Sized + std::io::Write>(&mut self, w: &mut W, v: f32) -> std::io::Result<()> {
        self.write_f64(w, v as f64)
    }

    delegate! {
        begin_array;
        end_array;
        begin_array_value, first: bool;
        end_array_value;
        begin_object;
        end_object;
        begin_object_key, first: bool;
        begin_object_value;
        end_object_value;
    }
}

/// Pretty JSON with every float printed at `digits` significant digits.
pub fn to_json_string<T: Serialize>(value: &T, digits: usize) -> String {
    let mut buf = Vec::new();
    let fmt = SigFormatter { inner: serde_json::ser::PrettyFormatter::new(), digits };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("serialising to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

// ---------------------------------------------------------------- config

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub samples_per_period: usize,
    pub root_tol: f64,
    pub event_refine_factor: usize,
    pub asymptote_band: f64,
    pub kinds: Vec<BranchKind>,
    pub seed: u64,
    /// Samples per arc pair for the genericity report.
    pub genericity_resolution: usize,
    /// Record wall-clock timings in the report.
    pub timing: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            samples_per_period: 4096,
            root_tol: 1e-12,
            event_refine_factor: 8,
            asymptote_band: 1e-7,
            kinds: vec![BranchKind::Css, BranchKind::Wigner, BranchKind::Secant],
            seed: 0,
            genericity_resolution: 2048,
            timing: true,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(Box::new(Error::InvalidSpec(m))));
        if self.samples_per_period < 64 {
            return bad(format!("samples_per_period must be at least 64, got {}", self.samples_per_period));
        }
        if !(self.root_tol > 0.0 && self.asymptote_band > 0.0) {
            return bad("tolerances must be positive".into());
        }
        if self.event_refine_factor == 0 || self.genericity_resolution < 64 {
            return bad("refine factor must be positive and genericity resolution at least 64".into());
        }
        for k in &self.kinds {
            if let BranchKind::Equidistant(l) = k {
                if !l.is_finite() {
                    return bad(format!("equidistant parameter {l} is not finite"));
                }
            }
        }
        Ok(())
    }

    fn sampling(&self) -> SamplingConfig {
        SamplingConfig {
            refine_factor: self.event_refine_factor,
            asymptote_band: self.asymptote_band,
            detect_samples: (self.samples_per_period / 2).max(64),
            ..SamplingConfig::default()
        }
    }
}

/// Parse `css,wigner,secant,equidistant:0.25`.
pub fn parse_kinds(s: &str) -> std::result::Result<Vec<BranchKind>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let kind = match item {
            "css" => BranchKind::Css,
            "wigner" => BranchKind::Wigner,
            "secant" => BranchKind::Secant,
            _ => match item.strip_prefix("equidistant:") {
                Some(l) => BranchKind::Equidistant(l.parse().map_err(|_| format!("bad equidistant parameter {l:?}"))?),
                None => return Err(format!("unknown branch kind {item:?}")),
            },
        };
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    if out.is_empty() {
        return Err("no branch kinds given".into());
    }
    Ok(out)
}

// ---------------------------------------------------------------- report

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub kind: String,
    pub period: f64,
    pub rotation_number: i64,
    pub diameter: f64,
    pub inflexion_count: usize,
    pub inflexions: Vec<f64>,
    pub division_points: usize,
    pub arc_set_sizes: Vec<usize>,
    pub arc_pair_total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeRecord {
    pub index: usize,
    pub set_index: usize,
    pub ends: SchemeEnds,
    pub arc_pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub kind: EventKind,
    pub s1: f64,
    pub s2: f64,
    pub location: EventLocation,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    pub kind: BranchKind,
    pub scheme: usize,
    pub ends: SchemeEnds,
    pub doubled: bool,
    pub closed: bool,
    pub degenerate: bool,
    pub connects_inflexions: Option<(f64, f64)>,
    pub samples: usize,
    pub cusps: usize,
    pub asymptotes: usize,
    pub double_tangents: usize,
    pub rotation_number: Option<f64>,
    pub csv: String,
    pub events: Vec<EventRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeSummary {
    pub semibranches: usize,
    pub asymptotes: usize,
    pub branches: usize,
    /// Every asymptote is approached from opposite sides and opposite ends.
    pub approach_geometry_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageFailure {
    pub stage: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub config: AnalysisConfig,
    pub curve: Option<CurveSummary>,
    pub schemes: Vec<SchemeRecord>,
    pub branches: Vec<BranchRecord>,
    pub css_merge: Option<MergeSummary>,
    /// Largest distance of a CSS sample from the mean CSS point.
    pub css_extent: Option<f64>,
    pub counts: Option<BranchVerdicts>,
    pub theorems: Vec<TheoremVerdict>,
    pub genericity: Option<GenericityReport>,
    pub failure: Option<StageFailure>,
    /// Seconds per stage; absent when timing is disabled.
    pub timing: Option<BTreeMap<String, f64>>,
}

impl AnalysisReport {
    pub fn theorem(&self, name: &str) -> Option<&TheoremVerdict> {
        self.theorems.iter().find(|t| t.theorem == name)
    }

    pub fn to_json(&self) -> String {
        to_json_string(self, 17)
    }
}

/// Report plus the geometry it summarises.
pub struct Analysis {
    pub report: AnalysisReport,
    pub curve: Option<CurveGeometry>,
    pub branches: Vec<CausticBranch>,
}

pub fn branch_csv_name(b: &CausticBranch) -> String {
    format!("{}_{}.csv", b.kind.name(), b.scheme)
}

fn branch_record(b: &CausticBranch) -> BranchRecord {
    BranchRecord {
        kind: b.kind,
        scheme: b.scheme,
        ends: b.ends,
        doubled: b.doubled,
        closed: b.is_closed,
        degenerate: b.degenerate,
        connects_inflexions: b.connects_inflexions,
        samples: b.samples.len(),
        cusps: b.cusps(),
        asymptotes: b.asymptotes(),
        double_tangents: b.double_tangents(),
        rotation_number: b.rotation_number(),
        csv: branch_csv_name(b),
        events: b
            .events
            .iter()
            .map(|e| EventRecord { kind: e.kind, s1: e.s1, s2: e.s2, location: e.location, degenerate: e.degenerate })
            .collect(),
    }
}

struct Stages {
    enabled: bool,
    last: Instant,
    times: BTreeMap<String, f64>,
}

impl Stages {
    fn mark(&mut self, name: &str) {
        let now = Instant::now();
        if self.enabled {
            self.times.insert(name.to_string(), (now - self.last).as_secs_f64());
        }
        self.last = now;
    }
}

/// Run the whole pipeline. A failing stage is recorded in
/// [`AnalysisReport::failure`] and everything computed before it is kept.
pub fn run_analysis(spec: &CurveSpec, config: &AnalysisConfig) -> Analysis {
    let mut report = AnalysisReport {
        schema: SCHEMA_VERSION,
        config: config.clone(),
        curve: None,
        schemes: Vec::new(),
        branches: Vec::new(),
        css_merge: None,
        css_extent: None,
        counts: None,
        theorems: Vec::new(),
        genericity: None,
        failure: None,
        timing: None,
    };
    let mut stages = Stages { enabled: config.timing, last: Instant::now(), times: BTreeMap::new() };
    let mut analysis = Analysis { report: report.clone(), curve: None, branches: Vec::new() };
    let fail = |report: &mut AnalysisReport, stage: &str, e: Error| {
        report.failure = Some(StageFailure { stage: stage.into(), error: e.to_string() });
    };

    if let Err(e) = config.validate() {
        fail(&mut report, "config", e);
        analysis.report = report;
        return analysis;
    }
    let scan = ScanSettings { samples: config.samples_per_period, root_tol: config.root_tol };
    let curve = match CurveGeometry::with_settings(spec.clone(), scan) {
        Ok(c) => c,
        Err(e) => {
            fail(&mut report, "curve", e);
            analysis.report = report;
            return analysis;
        }
    };
    stages.mark("curve");

    let decomp = Decomposition::new(&curve);
    let inflexions: Vec<f64> = curve.find_inflexions().map(|v| v.iter().map(|r| r.t).collect()).unwrap_or_default();
    report.curve = Some(CurveSummary {
        kind: if spec.is_support() { "support".into() } else { "fourier".into() },
        period: curve.period(),
        rotation_number: curve.rotation_number(),
        diameter: curve.diameter(),
        inflexion_count: inflexions.len(),
        inflexions,
        division_points: decomp.as_ref().map(|d| d.division.len()).unwrap_or(0),
        arc_set_sizes: decomp.as_ref().map(|d| d.set_sizes()).unwrap_or_default(),
        arc_pair_total: decomp.as_ref().map(|d| d.arc_pair_count()).unwrap_or(0),
    });
    stages.mark("decomposition");

    let result = (|| -> std::result::Result<(), (&'static str, Error)> {
        let decomp = decomp.map_err(|e| ("decomposition", e))?;
        let schemes = enumerate_maximal_schemes(&decomp).map_err(|e| ("schemes", e))?;
        report.schemes = schemes.iter().map(scheme_record).collect();
        stages.mark("schemes");

        let cfg = config.sampling();
        let mut branches = Vec::new();
        for kind in &config.kinds {
            for s in &schemes {
                branches.push(assemble_branch(&curve, &decomp, s, *kind, &cfg).map_err(|e| ("branches", e))?);
            }
        }
        report.branches = branches.iter().map(branch_record).collect();
        report.css_extent = css_extent(&branches);
        stages.mark("branches");

        if config.kinds.contains(&BranchKind::Css) {
            let css: Vec<CausticBranch> = branches.iter().filter(|b| b.kind == BranchKind::Css).cloned().collect();
            let merged = merge_semibranches(&css, curve.scale()).map_err(|e| ("merge", e))?;
            report.css_merge = Some(MergeSummary {
                semibranches: merged.semibranches.len(),
                asymptotes: merged.asymptotes.len(),
                branches: merged.branches.len(),
                approach_geometry_holds: merged.asymptotes.iter().all(|a| a.opposite_sides && a.opposite_ends),
            });
            stages.mark("merge");
        }

        let genericity = check_genericity_with(&curve, Some(&decomp), config.genericity_resolution);
        stages.mark("genericity");

        let counts = classify_and_count(&curve, &decomp, &schemes, &branches);
        report.theorems = theorem_verdicts(&curve, &decomp, &schemes, &branches, &counts, genericity.overall, config);
        report.counts = Some(counts);
        report.genericity = Some(genericity);
        analysis.branches = branches;
        stages.mark("verdicts");
        Ok(())
    })();
    if let Err((stage, e)) = result {
        if stage == "decomposition" {
            report.genericity = Some(check_genericity_with(&curve, None, config.genericity_resolution));
        }
        fail(&mut report, stage, e);
    }
    if config.timing {
        report.timing = Some(stages.times);
    }
    analysis.report = report;
    analysis.curve = Some(curve);
    analysis
}

fn scheme_record(s: &GlueingScheme) -> SchemeRecord {
    SchemeRecord {
        index: s.index,
        set_index: s.set_index,
        ends: s.ends,
        arc_pairs: s.segments.iter().map(|g| (g.top, g.bottom)).collect(),
    }
}

fn css_extent(branches: &[CausticBranch]) -> Option<f64> {
    let pts: Vec<Vec2> = branches.iter().filter(|b| b.kind == BranchKind::Css).flat_map(|b| b.points()).collect();
    if pts.is_empty() {
        return None;
    }
    let mean = pts.iter().fold(Vec2::ZERO, |a, &p| a + p) * (1.0 / pts.len() as f64);
    Some(pts.iter().map(|p| p.distance(mean)).fold(0.0, f64::max))
}

pub const THEOREMS: [&str; 5] = ["rosette", "parity", "arcs", "shell", "duality"];

fn theorem_verdicts(
    curve: &CurveGeometry,
    decomp: &Decomposition,
    schemes: &[GlueingScheme],
    branches: &[CausticBranch],
    v: &BranchVerdicts,
    generic: bool,
    config: &AnalysisConfig,
) -> Vec<TheoremVerdict> {
    let has = |k: BranchKind| config.kinds.contains(&k);
    let mut out = Vec::new();

    let n = curve.rotation_number().unsigned_abs() as usize;
    let odd_wigner = branches.iter().filter(|b| b.kind == BranchKind::Wigner && b.cusps() % 2 == 1).count();
    let rosette = generic && v.inflexion_count == 0 && has(BranchKind::Css) && has(BranchKind::Wigner);
    let rosette_ok = v.css_branches == n
        && v.asymptote_bearing == n / 2
        && v.odd_cusp_branches == 1
        && odd_wigner == n % 2
        && v.total_css_cusps % 2 == 1
        && v.cusp_comparison_holds();
    out.push(TheoremVerdict {
        theorem: "rosette".into(),
        applicable: rosette,
        holds: rosette && rosette_ok,
        detail: format!(
            "n = {n}: {} CSS branches, {} asymptote-bearing, {} with odd cusp count, {} CSS cusps, {} Wigner cusps ({} odd branches), cusp comparison {}",
            v.css_branches,
            v.asymptote_bearing,
            v.odd_cusp_branches,
            v.total_css_cusps,
            v.total_wigner_cusps,
            odd_wigner,
            v.cusp_comparison_holds()
        ),
    });

    out.push(TheoremVerdict {
        theorem: "parity".into(),
        applicable: !v.parity.is_empty(),
        holds: !v.parity.is_empty() && v.parity_holds(),
        detail: format!(
            "{} closed branches, {} violate cusp parity",
            v.parity.len(),
            v.parity.iter().filter(|r| !r.holds).count()
        ),
    });

    let expected = decomp.arc_pair_count();
    let mut seen: Vec<(usize, usize)> = schemes
        .iter()
        .flat_map(|s| s.segments.iter().map(|g| (g.top.min(g.bottom), g.top.max(g.bottom))))
        .collect();
    let total = seen.len();
    seen.sort_unstable();
    seen.dedup();
    out.push(TheoremVerdict {
        theorem: "arcs".into(),
        applicable: true,
        holds: total == expected && seen.len() == expected,
        detail: format!("{total} scheme arc pairs ({} distinct), expected {expected}", seen.len()),
    });

    let shell = generic && v.inflexion_count > 0;
    out.push(TheoremVerdict {
        theorem: "shell".into(),
        applicable: shell,
        holds: shell && 2 * v.inflexion_branches == v.inflexion_count && v.inflexions_bound_once && v.shell_holds(),
        detail: format!(
            "{} inflexions, {} connecting branches, each inflexion bounds one: {}, even interior counts: {}",
            v.inflexion_count,
            v.inflexion_branches,
            v.inflexions_bound_once,
            v.shell_holds()
        ),
    });

    let duality = generic && !v.duality.is_empty();
    out.push(TheoremVerdict {
        theorem: "duality".into(),
        applicable: duality,
        holds: duality && v.duality_holds(),
        detail: v
            .duality
            .iter()
            .map(|d| format!("scheme {}: {} asymptotes, {} secant cusps", d.scheme, d.css_asymptotes, d.secant_cusps))
            .collect::<Vec<_>>()
            .join("; "),
    });
    out
}

// ---------------------------------------------------------------- output

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmitOptions {
    pub svg: bool,
}

fn event_name(k: EventKind) -> &'static str {
    match k {
        EventKind::Cusp => "cusp",
        EventKind::Asymptote => "asymptote",
        EventKind::DoubleTangent => "double_tangent",
    }
}

/// Write one branch as CSV with columns `s1,s2,x,y,event`.
pub fn write_branch_csv(branch: &CausticBranch, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["s1", "s2", "x", "y", "event"])?;
    for s in &branch.samples {
        let f = |x: f64| format_significant(x, 12);
        let (x, y) = s.point.map(|p| (f(p.x), f(p.y))).unwrap_or_default();
        w.write_record([f(s.s1), f(s.s2), x, y, s.event.map(event_name).unwrap_or("").to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Write `report.json`, one CSV per branch and optionally `figure.svg`.
pub fn emit_outputs(analysis: &Analysis, dir: &Path, opts: EmitOptions) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let report = dir.join("report.json");
    std::fs::write(&report, analysis.report.to_json())?;
    written.push(report);
    for b in &analysis.branches {
        let p = dir.join(branch_csv_name(b));
        write_branch_csv(b, &p)?;
        written.push(p);
    }
    if opts.svg {
        if let Some(curve) = &analysis.curve {
            let p = dir.join("figure.svg");
            std::fs::write(&p, render_svg(curve, &analysis.branches))?;
            written.push(p);
        }
    }
    Ok(written)
}

/// Curve (solid), CSS (solid red), Wigner caustic (dashed), other maps
/// (dotted grey), asymptotes (dotted lines) and cusp markers.
pub fn render_svg(curve: &CurveGeometry, branches: &[CausticBranch]) -> String {
    let centre = curve.centroid();
    let radius = 3.0 * curve.diameter();
    let n = 2000;
    let curve_pts: Vec<Vec2> = (0..=n).map(|i| curve.position(curve.period() * i as f64 / n as f64)).collect();
    let keep = |p: Vec2| p.distance(centre) <= radius;

    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(-f64::INFINITY, -f64::INFINITY));
    let mut grow = |p: Vec2| {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    };
    curve_pts.iter().for_each(|&p| grow(p));
    branches.iter().flat_map(|b| b.points()).filter(|&p| keep(p)).for_each(&mut grow);
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let scale = 900.0 / span;
    let off = Vec2::new(500.0 - 0.5 * (lo.x + hi.x) * scale, 500.0 + 0.5 * (lo.y + hi.y) * scale);
    let map = |p: Vec2| (off.x + p.x * scale, off.y - p.y * scale);

    let mut svg = String::new();
    svg.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n");
    svg.push_str("<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n");
    let mut polyline = |pts: &[Vec2], style: &str| {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = map(p);
            let _ = write!(d, "{}{:.3},{:.3}", if i == 0 { "M" } else { " L" }, x, y);
        }
        let _ = writeln!(svg, "<path d=\"{d}\" fill=\"none\" {style}/>");
    };
    polyline(&curve_pts, "stroke=\"black\" stroke-width=\"1.5\"");
    for b in branches {
        let style = match b.kind {
            BranchKind::Css => "stroke=\"#c0392b\" stroke-width=\"1.2\"",
            BranchKind::Wigner => "stroke=\"#2060c0\" stroke-width=\"1\" stroke-dasharray=\"6 4\"",
            _ => "stroke=\"#888888\" stroke-width=\"0.8\" stroke-dasharray=\"2 3\"",
        };
        let mut run: Vec<Vec2> = Vec::new();
        for s in &b.samples {
            match s.point.filter(|&p| keep(p)) {
                Some(p) => run.push(p),
                None => {
                    polyline(&run, style);
                    run.clear();
                }
            }
        }
        polyline(&run, style);
    }
    for b in branches.iter().filter(|b| b.kind == BranchKind::Css) {
        for e in &b.events {
            if let (EventKind::Asymptote, EventLocation::Line(l)) = (e.kind, e.location) {
                let d = l.dir.normalized() * (2.0 * radius);
                let base = l.point + l.dir.normalized() * (-l.dir.normalized().dot(l.point - centre));
                polyline(&[base - d, base + d], "stroke=\"#555555\" stroke-width=\"0.8\" stroke-dasharray=\"1 3\"");
            }
        }
    }
    for b in branches.iter().filter(|b| matches!(b.kind, BranchKind::Css | BranchKind::Wigner)) {
        for e in b.events.iter().filter(|e| e.kind == EventKind::Cusp) {
            if let EventLocation::Point(p) = e.location {
                if keep(p) {
                    let (x, y) = map(p);
                    let _ = writeln!(svg, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"none\" stroke=\"#222222\"/>");
                }
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

// ---------------------------------------------------------------- oracle

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchComparison {
    pub arcs: (usize, usize),
    pub u0: f64,
    pub u1: f64,
    pub hausdorff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub samples: usize,
    pub diameter: f64,
    pub stretches: Vec<StretchComparison>,
    pub max_hausdorff: f64,
}

impl OracleReport {
    pub fn relative_error(&self) -> f64 {
        self.max_hausdorff / self.diameter
    }
}

/// Compare the chord-intersection envelope (`samples` chords per stretch)
/// with formula CSS points (four times denser) on every stretch where the
/// CSS stays within `radius_factor` diameters of the centroid.
pub fn oracle_comparison(curve: &CurveGeometry, samples: usize, radius_factor: f64) -> Result<OracleReport> {
    let decomp = Decomposition::new(curve)?;
    let mut stretches = Vec::new();
    for set in &decomp.arc_sets {
        for (i, x) in set.arcs.iter().enumerate() {
            for y in &set.arcs[i + 1..] {
                let corr = decomp.correspondence(curve, x.arc, y.arc)?;
                let fam = PairFamily::new(curve, &decomp.angle, &corr);
                for (u0, u1) in bounded_stretches(&fam, 2000, radius_factor) {
                    let oracle: Vec<Vec2> =
                        envelope_oracle_range(&fam, samples, u0, u1)?.into_iter().flatten().map(|(_, p)| p).collect();
                    // oracle points sit at chord midpoints, so compare over the same span
                    let h = 0.5 * (u1 - u0) / (samples - 1) as f64;
                    let (a, b) = (u0 + h, u1 - h);
                    let m = 4 * samples;
                    let formula: Vec<Vec2> = (0..m)
                        .filter_map(|k| css_point(&fam.pair(a + (b - a) * k as f64 / (m - 1) as f64)).ok())
                        .collect();
                    if oracle.len() < 2 || formula.len() < 2 {
                        continue;
                    }
                    stretches.push(StretchComparison {
                        arcs: (x.arc, y.arc),
                        u0,
                        u1,
                        hausdorff: hausdorff(&oracle, &formula),
                    });
                }
            }
        }
    }
    let max_hausdorff = stretches.iter().map(|s| s.hausdorff).fold(0.0, f64::max);
    Ok(OracleReport { samples, diameter: curve.diameter(), stretches, max_hausdorff })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(14.0, 17), "14");
        assert_eq!(format_significant(0.1, 17), "0.10000000000000001");
        assert_eq!(format_significant(-1.5e-7, 12), "-1.5e-7");
        assert_eq!(format_significant(123456.0, 3), "1.23e5");
        assert_eq!(format_significant(PI, 12), "3.14159265359");
        assert_eq!(format_significant(0.0, 12), "0");
        let x = 5.382069912345678_f64;
        assert_eq!(format_significant(x, 17).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn frequency_and_period_strings() {
        assert_eq!(parse_frequency("3/2").unwrap(), Frequency::new(3, 2));
        assert_eq!(parse_frequency(" -5 / 2 ").unwrap(), Frequency::new(-5, 2));
        assert!(parse_frequency("1/0").is_err());
        assert!((parse_period("4pi").unwrap() - 4.0 * PI).abs() < 1e-15);
        assert!((parse_period("pi").unwrap() - PI).abs() < 1e-15);
        assert_eq!(parse_period("6.5").unwrap(), 6.5);
    }

    #[test]
    fn kinds_list() {
        let k = parse_kinds("css, wigner,equidistant:0.25").unwrap();
        assert_eq!(k, vec![BranchKind::Css, BranchKind::Wigner, BranchKind::Equidistant(0.25)]);
        assert!(parse_kinds("evolute").is_err());
    }

    #[test]
    fn parse_error_position() {
        let text = "{\n  \"kind\": \"support\",\n  \"terms\": [{\"freq\": \"3/x\"}]\n}";
        match parse_curve_spec(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}

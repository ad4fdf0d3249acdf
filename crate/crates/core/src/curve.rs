//! Closed planar curves given by exact trigonometric series.
//!
//! Two families are supported: a Fourier parameterisation `t ↦ (x(t), y(t))`
//! and the curve of a support function `p`,
//! `g(t) = (p cos t − p' sin t, p sin t + p' cos t)`. Jets are exact
//! derivatives of the series. Arc-length derivatives of curvature are
//! obtained from the global parameter by the chain rule, `d/ds = (1/|f'|) d/dt`;
//! no arc-length reparameterisation is ever built.

use crate::error::{Error, Result};
use crate::geom::{wrap_pi, Vec2};
use crate::roots::{self, Bracket};
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Exact rational frequency (cycles per 2π of parameter).
pub type Frequency = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub freq: Frequency,
    pub cos: f64,
    pub sin: f64,
}

impl TrigTerm {
    pub fn new(freq: Frequency, cos: f64, sin: f64) -> Self {
        TrigTerm { freq, cos, sin }
    }
}

/// `constant + Σ cos_j cos(ω_j t) + sin_j sin(ω_j t)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrigSeries {
    pub constant: f64,
    pub terms: Vec<TrigTerm>,
}

impl TrigSeries {
    pub fn new(constant: f64, terms: Vec<TrigTerm>) -> Self {
        TrigSeries { constant, terms }
    }

    /// Value and the first `N - 1` derivatives at `t`.
    pub fn derivatives<const N: usize>(&self, t: f64) -> [f64; N] {
        let mut out = [0.0; N];
        if N > 0 {
            out[0] = self.constant;
        }
        for term in &self.terms {
            let w = *term.freq.numer() as f64 / *term.freq.denom() as f64;
            let (s, c) = (w * t).sin_cos();
            // f0 = a c + b s, f1 = w (b c − a s), f_{k+2} = −w² f_k
            let mut even = term.cos * c + term.sin * s;
            let mut odd = w * (term.sin * c - term.cos * s);
            let w2 = w * w;
            let mut k = 0;
            while k < N {
                out[k] += even;
                if k + 1 < N {
                    out[k + 1] += odd;
                }
                even *= -w2;
                odd *= -w2;
                k += 2;
            }
        }
        out
    }

    pub fn value(&self, t: f64) -> f64 {
        self.derivatives::<1>(t)[0]
    }

    fn frequencies(&self) -> impl Iterator<Item = Frequency> + '_ {
        self.terms.iter().map(|t| t.freq)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    FourierParametric { x: TrigSeries, y: TrigSeries },
    SupportRosette { support: TrigSeries },
}

/// Analytic description of a closed curve together with its period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub period: f64,
}

impl CurveSpec {
    /// Fourier curve with its least common period.
    pub fn fourier(x: TrigSeries, y: TrigSeries) -> Self {
        let kind = CurveKind::FourierParametric { x, y };
        let period = least_period(&kind);
        CurveSpec { kind, period }
    }

    /// Support-function curve with its least common period.
    pub fn support(support: TrigSeries) -> Self {
        let kind = CurveKind::SupportRosette { support };
        let period = least_period(&kind);
        CurveSpec { kind, period }
    }

    pub fn with_period(mut self, period: f64) -> Self {
        self.period = period;
        self
    }

    pub fn least_period(&self) -> f64 {
        least_period(&self.kind)
    }

    pub fn is_support(&self) -> bool {
        matches!(self.kind, CurveKind::SupportRosette { .. })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(Error::InvalidSpec(format!("period must be positive, got {}", self.period)));
        }
        let cycles = self.period / TAU;
        let check = |w: Frequency| -> Result<()> {
            let n = w.to_f64() * cycles;
            if (n - n.round()).abs() > 1e-9 * (1.0 + n.abs()) {
                return Err(Error::InvalidSpec(format!(
                    "frequency {w} completes {n} cycles over the period, not an integer"
                )));
            }
            Ok(())
        };
        match &self.kind {
            CurveKind::FourierParametric { x, y } => {
                for w in x.frequencies().chain(y.frequencies()) {
                    check(w)?;
                }
            }
            CurveKind::SupportRosette { support } => {
                check(Ratio::from_integer(1))?;
                for w in support.frequencies() {
                    check(w)?;
                }
            }
        }
        Ok(())
    }
}

trait ToF64 {
    fn to_f64(&self) -> f64;
}

impl ToF64 for Frequency {
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Least `T > 0` such that every frequency completes an integer number of
/// cycles over `T`. The support curve always carries frequency 1.
fn least_period(kind: &CurveKind) -> f64 {
    let mut freqs: Vec<Frequency> = match kind {
        CurveKind::FourierParametric { x, y } => x.frequencies().chain(y.frequencies()).collect(),
        CurveKind::SupportRosette { support } => {
            let mut v: Vec<Frequency> = support.frequencies().collect();
            v.push(Ratio::from_integer(1));
            v
        }
    };
    freqs.retain(|f| *f.numer() != 0);
    if freqs.is_empty() {
        return TAU;
    }
    // L = lcm(denominators) / gcd(numerators scaled to that denominator)
    let den = freqs.iter().fold(1i64, |acc, f| acc.lcm(f.denom()));
    let num = freqs
        .iter()
        .fold(0i64, |acc, f| acc.gcd(&(f.numer().abs() * (den / f.denom()))));
    TAU * den as f64 / num as f64
}

/// Position and derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub t: f64,
    pub position: Vec2,
    pub d1: Vec2,
    pub d2: Vec2,
    pub d3: Vec2,
    pub d4: Vec2,
    pub speed: f64,
    pub tangent_unit: Vec2,
    /// `det(d1, d2) / speed³`.
    pub kappa: f64,
    /// dκ/ds.
    pub kappa_s: f64,
    /// d²κ/ds².
    pub kappa_ss: f64,
}

impl Jet {
    fn from_derivatives(t: f64, p: Vec2, d1: Vec2, d2: Vec2, d3: Vec2, d4: Vec2) -> Jet {
        // κ = D w^{-3/2} with D = det(d1,d2), w = |d1|².
        let w = d1.norm_sq();
        let v = w.sqrt();
        let dd = d1.det(d2);
        let dd1 = d1.det(d3);
        let dd2 = d2.det(d3) + d1.det(d4);
        let w1 = 2.0 * d1.dot(d2);
        let w2 = 2.0 * (d2.norm_sq() + d1.dot(d3));
        let w32 = w * v;
        let w52 = w32 * w;
        let w72 = w52 * w;
        let kappa = dd / w32;
        let kappa_t = dd1 / w32 - 1.5 * dd * w1 / w52;
        let kappa_tt =
            dd2 / w32 - 3.0 * dd1 * w1 / w52 + 3.75 * dd * w1 * w1 / w72 - 1.5 * dd * w2 / w52;
        // chain rule: κ_s = κ_t / v,  κ_ss = (κ_tt / v − κ_t v' / v²) / v, v' = w' / 2v
        let v1 = w1 / (2.0 * v);
        let kappa_s = kappa_t / v;
        let kappa_ss = (kappa_tt / v - kappa_t * v1 / w) / v;
        Jet {
            t,
            position: p,
            d1,
            d2,
            d3,
            d4,
            speed: v,
            tangent_unit: d1 / v,
            kappa,
            kappa_s,
            kappa_ss,
        }
    }
}

/// Classification of a zero of the curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InflexionKind {
    NondegenerateInflexion,
    Undulation,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InflexionRecord {
    pub t: f64,
    pub kind: InflexionKind,
    /// `det(d1, d3)` at the root.
    pub witness: f64,
}

/// Tuning for scans over one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub samples: usize,
    pub root_tol: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings { samples: roots::DEFAULT_SCAN_SAMPLES, root_tol: roots::DEFAULT_ROOT_TOL }
    }
}

/// Immutable evaluator for a validated [`CurveSpec`].
#[derive(Debug, Clone)]
pub struct CurveGeometry {
    spec: CurveSpec,
    scan: ScanSettings,
    scale: f64,
    diameter: f64,
    length: f64,
    centroid: Vec2,
    kappa_max: f64,
    kappa_s_max: f64,
    kappa_ss_max: f64,
}

impl CurveGeometry {
    pub fn new(spec: CurveSpec) -> Result<Self> {
        Self::with_settings(spec, ScanSettings::default())
    }

    pub fn with_settings(spec: CurveSpec, scan: ScanSettings) -> Result<Self> {
        spec.validate()?;
        let mut geom = CurveGeometry {
            spec,
            scan,
            scale: 1.0,
            diameter: 1.0,
            length: 0.0,
            centroid: Vec2::ZERO,
            kappa_max: 0.0,
            kappa_s_max: 0.0,
            kappa_ss_max: 0.0,
        };
        let n = scan.samples.max(64);
        let period = geom.period();
        let ts: Vec<f64> = (0..n).map(|i| period * i as f64 / n as f64).collect();
        let raw: Vec<[Vec2; 5]> = ts.iter().map(|&t| geom.raw(t)).collect();
        geom.scale = raw.iter().map(|d| d[0].norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

        if let CurveKind::SupportRosette { support } = &geom.spec.kind {
            let r = |t: f64| {
                let d = support.derivatives::<4>(t);
                (d[0] + d[2], d[1] + d[3])
            };
            let (t, value) = minimise_periodic(|t| r(t).0, |t| r(t).1, &ts, period, scan.root_tol);
            if value <= 0.0 {
                return Err(Error::VanishingRosetteCurvature { t, value });
            }
        }

        let speed2 = |t: f64| geom.raw(t)[1].norm_sq();
        let dspeed2 = |t: f64| {
            let d = geom.raw(t);
            2.0 * d[1].dot(d[2])
        };
        let (t, s2) = minimise_periodic(speed2, dspeed2, &ts, period, scan.root_tol);
        let speed = s2.max(0.0).sqrt();
        if speed <= 1e-8 * geom.scale {
            return Err(Error::NonRegular { t, speed });
        }

        let pts: Vec<Vec2> = raw.iter().map(|d| d[0]).collect();
        geom.length = (0..n).map(|i| pts[i].distance(pts[(i + 1) % n])).sum();
        geom.centroid = pts.iter().fold(Vec2::ZERO, |acc, &p| acc + p) / n as f64;
        let stride = (n / 512).max(1);
        let coarse: Vec<Vec2> = pts.iter().step_by(stride).copied().collect();
        let mut diam: f64 = 0.0;
        for (i, a) in coarse.iter().enumerate() {
            for b in &coarse[i + 1..] {
                diam = diam.max(a.distance(*b));
            }
        }
        geom.diameter = diam.max(f64::MIN_POSITIVE);
        for &t in &ts {
            let j = geom.eval_jet(t);
            geom.kappa_max = geom.kappa_max.max(j.kappa.abs());
            geom.kappa_s_max = geom.kappa_s_max.max(j.kappa_s.abs());
            geom.kappa_ss_max = geom.kappa_ss_max.max(j.kappa_ss.abs());
        }
        Ok(geom)
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn period(&self) -> f64 {
        self.spec.period
    }

    pub fn scan_settings(&self) -> ScanSettings {
        self.scan
    }

    /// Largest distance of the curve from the origin.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn centroid(&self) -> Vec2 {
        self.centroid
    }

    pub fn kappa_max(&self) -> f64 {
        self.kappa_max
    }

    /// Natural magnitude of dκ/ds, floored by κ_max / length so that
    /// curves of constant curvature still have a usable scale.
    pub fn kappa_s_scale(&self) -> f64 {
        self.kappa_s_max.max(self.kappa_max / self.length.max(f64::MIN_POSITIVE))
    }

    pub fn kappa_ss_scale(&self) -> f64 {
        let floor = self.kappa_max / (self.length * self.length).max(f64::MIN_POSITIVE);
        self.kappa_ss_max.max(floor)
    }

    /// Reduce a parameter into `[0, period)`.
    pub fn wrap(&self, t: f64) -> f64 {
        t.rem_euclid(self.period())
    }

    /// Position and the first four parameter derivatives.
    pub fn raw(&self, t: f64) -> [Vec2; 5] {
        match &self.spec.kind {
            CurveKind::FourierParametric { x, y } => {
                let dx = x.derivatives::<5>(t);
                let dy = y.derivatives::<5>(t);
                std::array::from_fn(|k| Vec2::new(dx[k], dy[k]))
            }
            CurveKind::SupportRosette { support } => {
                let p = support.derivatives::<6>(t);
                let (s, c) = t.sin_cos();
                let e = Vec2::new(c, s);
                let n = Vec2::new(-s, c);
                // r = p + p'' and its derivatives
                let r0 = p[0] + p[2];
                let r1 = p[1] + p[3];
                let r2 = p[2] + p[4];
                let r3 = p[3] + p[5];
                let pos = e * p[0] + n * p[1];
                let d1 = n * r0;
                let d2 = n * r1 - e * r0;
                let d3 = n * (r2 - r0) - e * (2.0 * r1);
                let d4 = n * (r3 - 3.0 * r1) + e * (r0 - 3.0 * r2);
                [pos, d1, d2, d3, d4]
            }
        }
    }

    pub fn position(&self, t: f64) -> Vec2 {
        match &self.spec.kind {
            CurveKind::FourierParametric { x, y } => Vec2::new(x.value(t), y.value(t)),
            CurveKind::SupportRosette { .. } => self.raw(t)[0],
        }
    }

    pub fn tangent(&self, t: f64) -> Vec2 {
        self.raw(t)[1].normalized()
    }

    pub fn eval_jet(&self, t: f64) -> Jet {
        let [p, d1, d2, d3, d4] = self.raw(t);
        Jet::from_derivatives(t, p, d1, d2, d3, d4)
    }

    pub fn kappa(&self, t: f64) -> f64 {
        let d = self.raw(t);
        d[1].det(d[2]) / d[1].norm().powi(3)
    }

    /// `dθ/dt = κ · speed` for the tangent angle θ.
    pub fn turning_rate(&self, t: f64) -> f64 {
        let d = self.raw(t);
        d[1].det(d[2]) / d[1].norm_sq()
    }

    /// Curvature sign function `det(d1, d2)` and its derivative `det(d1, d3)`.
    fn curvature_numerator(&self, t: f64) -> (f64, f64) {
        let d = self.raw(t);
        (d[1].det(d[2]), d[1].det(d[3]))
    }

    pub fn find_inflexions(&self) -> Result<Vec<InflexionRecord>> {
        find_inflexions(self)
    }

    pub fn rotation_number(&self) -> i64 {
        rotation_number(self)
    }
}

/// Global minimum of a periodic function over the sample grid, refined at
/// every sampled local minimum by a root of the derivative.
fn minimise_periodic<F, D>(f: F, df: D, ts: &[f64], period: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let n = ts.len();
    let ys: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let mut best = (ts[0], ys[0]);
    for i in 0..n {
        let (a, b, c) = (ys[(i + n - 1) % n], ys[i], ys[(i + 1) % n]);
        if b < best.1 {
            best = (ts[i], b);
        }
        if b <= a && b <= c {
            let h = period / n as f64;
            let (lo, hi) = (ts[i] - h, ts[i] + h);
            let (dlo, dhi) = (df(lo), df(hi));
            if dlo * dhi < 0.0 {
                let t = roots::bisect(&df, Bracket { lo, hi, f_lo: dlo, f_hi: dhi }, tol);
                let v = f(t);
                if v < best.1 {
                    best = (t.rem_euclid(period), v);
                }
            }
        }
    }
    best
}

/// Every zero of the curvature in `[0, period)`, classified and sorted.
pub fn find_inflexions(curve: &CurveGeometry) -> Result<Vec<InflexionRecord>> {
    let period = curve.period();
    let n = curve.scan.samples.max(64);
    let tol = curve.scan.root_tol;
    let scale2 = curve.scale() * curve.scale();
    let degenerate_tol = 1e-8 * scale2;
    let touch_tol = 1e-10 * scale2;
    let ambiguous_tol = 1e-8 * scale2;
    let num = |t: f64| curve.curvature_numerator(t).0;
    let dnum = |t: f64| curve.curvature_numerator(t).1;

    let xs: Vec<f64> = (0..=n).map(|i| period * i as f64 / n as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&t| num(t)).collect();
    let mut roots_t: Vec<(f64, bool)> = Vec::new(); // (t, sign change)

    for br in roots::brackets_from_samples(&xs, &ys) {
        let t = roots::bisect(num, br, tol);
        let t = roots::newton_polish(num, dnum, t, br.lo, br.hi);
        if br.lo == br.hi {
            // exact zero on the grid: decide by the neighbours
            let h = period / n as f64;
            let (a, b) = (num(t - h), num(t + h));
            roots_t.push((t, a * b < 0.0));
        } else {
            roots_t.push((t, true));
        }
    }

    // touching zeros hide between samples with equal signs
    let mut cyc = ys.clone();
    cyc.insert(0, ys[n - 1]);
    for i in roots::touching_candidates(&cyc) {
        let i = i - 1;
        let h = period / n as f64;
        let (lo, hi) = (xs[i] - h, xs[i] + h);
        let (dlo, dhi) = (dnum(lo), dnum(hi));
        if dlo * dhi >= 0.0 {
            continue;
        }
        let tm = roots::bisect(dnum, Bracket { lo, hi, f_lo: dlo, f_hi: dhi }, tol);
        let vm = num(tm);
        if vm * ys[i] < 0.0 {
            // two close sign changes straddling the extremum
            for (a, b) in [(lo, tm), (tm, hi)] {
                let (fa, fb) = (num(a), num(b));
                if fa * fb < 0.0 {
                    let t = roots::bisect(num, Bracket { lo: a, hi: b, f_lo: fa, f_hi: fb }, tol);
                    roots_t.push((t, true));
                }
            }
        } else if vm.abs() <= touch_tol {
            roots_t.push((tm, false));
        } else if vm.abs() <= ambiguous_tol {
            return Err(Error::DegenerateRoot { t: tm.rem_euclid(period), witness: vm });
        }
    }

    let mut out: Vec<InflexionRecord> = roots_t
        .into_iter()
        .map(|(t, changes)| {
            let t = t.rem_euclid(period);
            let witness = dnum(t);
            let kind = if !changes {
                InflexionKind::Undulation
            } else if witness.abs() > degenerate_tol {
                InflexionKind::NondegenerateInflexion
            } else {
                InflexionKind::Degenerate
            };
            InflexionRecord { t, kind, witness }
        })
        .collect();
    out.sort_by(|a, b| a.t.total_cmp(&b.t));
    out.dedup_by(|a, b| (a.t - b.t).abs() < 1e-9);
    if out.len() > 1 {
        let (first, last) = (out[0].t, out[out.len() - 1].t);
        if (first + period - last).abs() < 1e-9 {
            out.pop();
        }
    }
    Ok(out)
}

/// Tangent angle increment between two parameters, subdividing until each
/// step turns by less than a quarter turn.
pub(crate) fn tangent_turn(curve: &CurveGeometry, a: f64, b: f64) -> f64 {
    fn rec(curve: &CurveGeometry, a: f64, b: f64, ta: Vec2, tb: Vec2, depth: u32) -> f64 {
        let d = wrap_pi(tb.angle() - ta.angle());
        if d.abs() < PI / 4.0 || depth > 40 {
            return d;
        }
        let m = 0.5 * (a + b);
        let tm = curve.raw(m)[1];
        rec(curve, a, m, ta, tm, depth + 1) + rec(curve, m, b, tm, tb, depth + 1)
    }
    rec(curve, a, b, curve.raw(a)[1], curve.raw(b)[1], 0)
}

/// Winding number of the tangent over one period.
pub fn rotation_number(curve: &CurveGeometry) -> i64 {
    let n = curve.scan.samples.max(64);
    let period = curve.period();
    let total: f64 = (0..n)
        .map(|i| {
            let a = period * i as f64 / n as f64;
            let b = period * (i + 1) as f64 / n as f64;
            tangent_turn(curve, a, b)
        })
        .sum();
    (total / TAU).round() as i64
}

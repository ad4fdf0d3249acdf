#![allow(dead_code)]

use centresym::caustic::PairFamily;
use centresym::{fixtures, CurveGeometry, CurveSpec, Decomposition, Frequency, TrigSeries, TrigTerm};

/// Generic curves used across the integration tests.
pub fn corpus() -> Vec<(&'static str, CurveSpec)> {
    vec![
        ("rosette", fixtures::two_rosette()),
        ("oval", fixtures::trefoil_oval(0.1)),
        ("bean", fixtures::bean(0.3)),
        ("four", fixtures::four_inflexion()),
        ("rand3", fixtures::random_rosette(3, 1)),
    ]
}

pub fn curve(spec: CurveSpec) -> CurveGeometry {
    CurveGeometry::new(spec).expect("valid fixture")
}

/// Run `f` on every unordered arc pair of every parallel-arc set.
pub fn each_family(curve: &CurveGeometry, d: &Decomposition, mut f: impl FnMut(usize, usize, &PairFamily)) {
    for set in &d.arc_sets {
        for (i, x) in set.arcs.iter().enumerate() {
            for y in &set.arcs[i + 1..] {
                let corr = d.correspondence(curve, x.arc, y.arc).expect("same set");
                let fam = PairFamily::new(curve, &d.angle, &corr);
                f(x.arc, y.arc, &fam);
            }
        }
    }
}

/// Support function `p` of a support-kind spec, with `p'` and `p''`.
pub fn support_jet(spec: &CurveSpec, t: f64) -> [f64; 4] {
    match &spec.kind {
        centresym::CurveKind::SupportRosette { support } => {
            let mut out = [support.constant, 0.0, 0.0, 0.0];
            for term in &support.terms {
                let w = *term.freq.numer() as f64 / *term.freq.denom() as f64;
                let (s, c) = (w * t).sin_cos();
                out[0] += term.cos * c + term.sin * s;
                out[1] += w * (term.sin * c - term.cos * s);
                out[2] += -w * w * (term.cos * c + term.sin * s);
                out[3] += -w * w * w * (term.sin * c - term.cos * s);
            }
            out
        }
        _ => panic!("not a support spec"),
    }
}

/// Radius of curvature `ρ = p + p''` of a support curve and its derivative.
pub fn support_rho(spec: &CurveSpec, t: f64) -> (f64, f64) {
    let p = support_jet(spec, t);
    (p[0] + p[2], p[1] + p[3])
}

/// Shift the parameter of a series: `f(t) ↦ f(t + c)`.
pub fn shift_series(s: &TrigSeries, c: f64) -> TrigSeries {
    let terms = s
        .terms
        .iter()
        .map(|t| {
            let w = *t.freq.numer() as f64 / *t.freq.denom() as f64;
            let (sn, cs) = (w * c).sin_cos();
            TrigTerm::new(t.freq, t.cos * cs + t.sin * sn, t.sin * cs - t.cos * sn)
        })
        .collect();
    TrigSeries::new(s.constant, terms)
}

pub fn term(num: i64, den: i64, cos: f64, sin: f64) -> TrigTerm {
    TrigTerm::new(Frequency::new(num, den), cos, sin)
}

/// Sign changes of `f` on a closed grid of `n + 1` points over `[a, b]`.
pub fn sign_changes(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev = f(a);
    for i in 1..=n {
        let t = a + (b - a) * i as f64 / n as f64;
        let v = f(t);
        if prev != 0.0 && v != 0.0 && prev.signum() != v.signum() {
            out.push(t);
        }
        if v != 0.0 {
            prev = v;
        }
    }
    out
}

//! Acceptance criteria, one printed line per criterion.
//!
//! Sub-cases listed in `KNOWN_UNATTAINABLE` are still run and reported as
//! FAIL; they do not change the exit status.

use centresym::branch::BranchKind;
use centresym::caustic::{EventKind, SingularEvent};
use centresym::io::{oracle_comparison, run_analysis, Analysis, AnalysisConfig};
use centresym::{fixtures, CurveGeometry, CurveSpec};
use std::f64::consts::PI;
use std::time::Instant;

/// `(criterion, sub-case, reason)`.
const KNOWN_UNATTAINABLE: &[(u32, &str, &str)] = &[(
    3,
    "eps=0.2",
    "1+0.2cos3θ has p+p'' = 1-1.6cos3θ, negative near θ=0, so it is not the support function of an oval",
)];

type Draw = (i64, u64, Analysis);

struct Outcome {
    criterion: u32,
    pass: bool,
    detail: String,
    failed_cases: Vec<String>,
}

fn default_config() -> AnalysisConfig {
    AnalysisConfig { timing: false, ..AnalysisConfig::default() }
}

fn all_events(a: &Analysis, map: BranchKind, kind: EventKind) -> Vec<&SingularEvent> {
    a.branches.iter().filter(|b| b.kind == map).flat_map(|b| &b.events).filter(|e| e.kind == kind).collect()
}

fn dist_mod(a: f64, b: f64, p: f64) -> f64 {
    let d = (a - b).rem_euclid(p);
    d.min(p - d)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let a = run_analysis(&fixtures::two_rosette(), &default_config());
    let secs = start.elapsed().as_secs_f64();
    let c = a.curve.as_ref().expect("rosette builds");
    let v = a.report.counts.as_ref().expect("rosette counts");
    let p = c.period();
    let near = |kind, t: f64| {
        all_events(&a, BranchKind::Css, kind)
            .iter()
            .map(|e| dist_mod(e.s1, t, p).min(dist_mod(e.s2, t, p)))
            .fold(f64::INFINITY, f64::min)
    };
    let (d0, d1) = (near(EventKind::Asymptote, 5.38207), near(EventKind::DoubleTangent, 5.26053));
    let rosette = a.report.theorem("rosette").map(|t| t.applicable && t.holds).unwrap_or(false);
    let checks = [
        ("css branches = 2", v.css_branches == 2),
        ("asymptote-bearing = 1", v.asymptote_bearing == 1),
        ("odd-cusp branches = 1", v.odd_cusp_branches == 1),
        ("t0 within 5e-4", d0 <= 5e-4),
        ("t1 within 5e-4", d1 <= 5e-4),
        ("wigner cusps even", v.total_wigner_cusps.is_multiple_of(2)),
        ("css cusps odd", v.total_css_cusps % 2 == 1),
        ("verify rosette", rosette),
        ("runtime < 30 s", secs < 30.0),
    ];
    finish(
        1,
        &checks,
        format!(
            "branches {}, asymptote-bearing {}, odd {}, |t0 err| {d0:.1e}, |t1 err| {d1:.1e}, wigner cusps {}, css cusps {}, {secs:.2} s",
            v.css_branches, v.asymptote_bearing, v.odd_cusp_branches, v.total_wigner_cusps, v.total_css_cusps
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let a = run_analysis(&fixtures::ellipse(2.0, 1.0), &default_config());
    let secs = start.elapsed().as_secs_f64();
    let worst = a
        .branches
        .iter()
        .filter(|b| b.kind == BranchKind::Css)
        .flat_map(|b| b.points())
        .map(|p| p.norm())
        .fold(0.0f64, f64::max);
    let css_points = a.branches.iter().filter(|b| b.kind == BranchKind::Css).flat_map(|b| b.points()).count();
    let generic = a.report.genericity.as_ref().map(|g| g.overall).unwrap_or(true);
    let degenerate = a.branches.iter().any(|b| b.kind == BranchKind::Css && b.degenerate);
    let checks = [
        ("css samples present", css_points > 0),
        ("within 1e-8 of origin", worst <= 1e-8),
        ("genericity fails", !generic),
        ("degenerate family flagged", degenerate),
        ("runtime < 5 s", secs < 5.0),
    ];
    finish(2, &checks, format!("{css_points} CSS points, max |p| {worst:.1e}, genericity fail {}, {secs:.2} s", !generic))
}

/// Support oval `1 + ε cos 3θ`: sign changes of the cusp defect over the
/// pairs `(t, t + π)`, `t ∈ [0, π)`, from `ρ = p + p''` alone.
fn oval_brute_force(eps: f64, n: usize) -> usize {
    let rho = |t: f64| (1.0 - 8.0 * eps * (3.0 * t).cos(), 24.0 * eps * (3.0 * t).sin());
    let kappa = |t: f64| {
        let (r, dr) = rho(t);
        (1.0 / r, -dr / r.powi(3))
    };
    let c = |t: f64| {
        let ((k1, ks1), (k2, ks2)) = (kappa(t), kappa(t + PI));
        ks1 * k2 * k2 - k1 * k1 * ks2
    };
    let h = PI / n as f64;
    let vals: Vec<f64> = (0..=n).map(|i| c((i as f64 + 0.37) * h)).collect();
    vals.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
}

fn criterion_3() -> Outcome {
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut parts = Vec::new();
    for eps in [0.05, 0.1, 0.2] {
        let case = format!("eps={eps}");
        let spec = fixtures::trefoil_oval(eps);
        if let Err(e) = CurveGeometry::new(spec.clone()) {
            parts.push(format!("{case}: rejected ({e})"));
            checks.push((case, false));
            continue;
        }
        let start = Instant::now();
        let a = run_analysis(&spec, &default_config());
        let secs = start.elapsed().as_secs_f64();
        let cusps = a.report.counts.as_ref().map(|v| v.total_css_cusps).unwrap_or(0);
        let mut ok = a.report.failure.is_none() && cusps % 2 == 1 && cusps >= 3 && secs < 10.0;
        let mut text = format!("{case}: {cusps} cusps, {secs:.2} s");
        if eps == 0.1 {
            let brute = oval_brute_force(eps, 20000);
            ok &= brute == cusps;
            text.push_str(&format!(", brute force {brute}"));
        }
        parts.push(text);
        checks.push((case, ok));
    }
    let checks: Vec<(&str, bool)> = checks.iter().map(|(c, ok)| (c.as_str(), *ok)).collect();
    finish(3, &checks, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let c = CurveGeometry::new(fixtures::two_rosette()).expect("rosette builds");
    let fine = oracle_comparison(&c, 20000, 3.0).expect("oracle runs");
    let coarse = oracle_comparison(&c, 10000, 3.0).expect("oracle runs");
    let (e1, e2) = (coarse.relative_error(), fine.relative_error());
    let ratio = e1 / e2;
    let checks = [
        ("stretches found", !fine.stretches.is_empty()),
        ("error < 1e-3 diameter", e2 < 1e-3),
        ("doubling ratio >= 1.8", ratio >= 1.8),
    ];
    finish(
        4,
        &checks,
        format!("{} stretches, n=10000 {e1:.2e}, n=20000 {e2:.2e} (x diameter), ratio {ratio:.2}", fine.stretches.len()),
    )
}

/// Generic random rosettes: `(n, seed, analysis)` for ten draws per `n`,
/// with the number of rejected draws per `n`.
fn generic_rosettes() -> (Vec<Draw>, Vec<(i64, usize)>) {
    let mut out = Vec::new();
    let mut redraws = Vec::new();
    for n in [2, 3, 4] {
        let mut seed = 0u64;
        let mut rejected = 0;
        let mut kept = 0;
        while kept < 10 {
            let a = run_analysis(&fixtures::random_rosette(n, seed), &default_config());
            let generic = a.report.genericity.as_ref().map(|g| g.overall).unwrap_or(false);
            if generic && a.report.failure.is_none() {
                out.push((n, seed, a));
                kept += 1;
            } else {
                rejected += 1;
            }
            seed += 1;
        }
        redraws.push((n, rejected));
    }
    (out, redraws)
}

fn criterion_5(draws: &[Draw], redraws: &[(i64, usize)]) -> Outcome {
    let mut bad = Vec::new();
    for (n, seed, a) in draws {
        let c = a.report.curve.as_ref().expect("curve summary");
        let v = a.report.counts.as_ref().expect("counts");
        let expected: usize = c.arc_set_sizes.iter().map(|&k| k * (k - 1) / 2).sum();
        let scheme_pairs: usize = a.report.schemes.iter().map(|s| s.arc_pairs.len()).sum();
        let n = *n as usize;
        let ok = c.arc_pair_total == expected
            && scheme_pairs == expected
            && v.css_branches == n
            && v.asymptote_bearing == n / 2
            && v.odd_cusp_branches == 1
            && v.cusp_comparison_holds();
        if !ok {
            bad.push(format!("n={n} seed={seed}"));
        }
    }
    let redraw_text: Vec<String> = redraws.iter().map(|(n, r)| format!("n={n}: {r} redraws")).collect();
    let checks: Vec<(&str, bool)> = bad.iter().map(|b| (b.as_str(), false)).collect();
    let mut out = finish(5, &checks, format!("{} generic draws ({}), {} failing", draws.len(), redraw_text.join(", "), bad.len()));
    out.pass &= draws.len() == 30;
    out
}

fn criterion_6(draws: &[Draw]) -> Outcome {
    let mut bad = Vec::new();
    let mut schemes = 0;
    let mut roots = 0;
    let mut worst = 0.0f64;
    for (n, seed, a) in draws {
        let v = a.report.counts.as_ref().expect("counts");
        schemes += v.duality.len();
        let gaps: Vec<f64> =
            all_events(a, BranchKind::Css, EventKind::Asymptote).iter().map(|e| e.secant_check.unwrap_or(f64::INFINITY)).collect();
        roots += gaps.len();
        worst = gaps.iter().fold(worst, |m, &g| m.max(g));
        if v.duality.is_empty() || !v.duality_holds() || gaps.iter().any(|&g| g > 1e-6) {
            bad.push(format!("n={n} seed={seed}"));
        }
    }
    let checks: Vec<(&str, bool)> = bad.iter().map(|b| (b.as_str(), false)).collect();
    finish(6, &checks, format!("{schemes} closed schemes, {roots} A-roots, max secant gap {worst:.1e}"))
}

fn corpus() -> Vec<(&'static str, CurveSpec)> {
    vec![
        ("rosette", fixtures::two_rosette()),
        ("ellipse", fixtures::ellipse(2.0, 1.0)),
        ("circle", fixtures::unit_circle()),
        ("oval 0.05", fixtures::trefoil_oval(0.05)),
        ("oval 0.1", fixtures::trefoil_oval(0.1)),
        ("bean", fixtures::bean(0.3)),
        ("four inflexions", fixtures::four_inflexion()),
    ]
}

fn criterion_7(draws: &[Draw]) -> Outcome {
    let config = AnalysisConfig {
        kinds: vec![
            BranchKind::Css,
            BranchKind::Wigner,
            BranchKind::Secant,
            BranchKind::Equidistant(0.25),
            BranchKind::Equidistant(0.7),
        ],
        ..default_config()
    };
    let mut analyses: Vec<(String, Analysis)> =
        corpus().into_iter().map(|(name, spec)| (name.to_string(), run_analysis(&spec, &config))).collect();
    let mut closed = 0;
    let mut collapsed = 0;
    let mut bad = Vec::new();
    let mut check = |name: &str, a: &Analysis| {
        for b in a.branches.iter().filter(|b| b.is_closed) {
            // a branch collapsed to a point is not a front
            if b.degenerate {
                collapsed += 1;
                continue;
            }
            closed += 1;
            let h = b.rotation_half_turns.expect("closed branches carry a rotation number");
            if b.cusps() % 2 != h.rem_euclid(2) as usize {
                bad.push(format!("{name} {} scheme {}", b.kind.name(), b.scheme));
            }
        }
    };
    for (name, a) in analyses.drain(..) {
        check(&name, &a);
    }
    for (n, seed, a) in draws {
        check(&format!("rand n={n} seed={seed}"), a);
    }
    let checks: Vec<(&str, bool)> = bad.iter().map(|b| (b.as_str(), false)).collect();
    finish(7, &checks, format!("{closed} closed branches, {} parity violations, {collapsed} collapsed branches skipped", bad.len()))
}

fn criterion_8() -> Outcome {
    let mut checks = Vec::new();
    let mut parts = Vec::new();
    for (name, spec, k) in [("bean", fixtures::bean(0.3), 1), ("four inflexions", fixtures::four_inflexion(), 2)] {
        let a = run_analysis(&spec, &default_config());
        let v = a.report.counts.as_ref().expect("counts");
        let interior: Vec<usize> = v.shell.iter().map(|s| s.interior_inflexions).collect();
        let ok = v.inflexion_count == 2 * k
            && v.inflexion_branches == k
            && v.inflexions_bound_once
            && interior.iter().all(|i| i % 2 == 0)
            && v.shell_holds();
        parts.push(format!(
            "{name}: {} inflexions, {} connecting branches, interior counts {interior:?}",
            v.inflexion_count, v.inflexion_branches
        ));
        checks.push((name, ok));
    }
    finish(8, &checks, parts.join("; "))
}

fn finish(criterion: u32, checks: &[(&str, bool)], detail: String) -> Outcome {
    let failed: Vec<String> = checks.iter().filter(|(_, ok)| !ok).map(|(c, _)| c.to_string()).collect();
    Outcome { criterion, pass: failed.is_empty(), detail, failed_cases: failed }
}

fn main() {
    let start = Instant::now();
    let (draws, redraws) = generic_rosettes();
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(&draws, &redraws),
        criterion_6(&draws),
        criterion_7(&draws),
        criterion_8(),
    ];
    let mut unexpected = 0;
    for o in &outcomes {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {status}  {}", o.criterion, o.detail);
        for case in &o.failed_cases {
            match KNOWN_UNATTAINABLE.iter().find(|(c, k, _)| *c == o.criterion && k == case) {
                Some((_, _, why)) => println!("    {case}: known unattainable: {why}"),
                None => {
                    println!("    {case}: failed");
                    unexpected += 1;
                }
            }
        }
        if !o.pass && o.failed_cases.is_empty() {
            unexpected += 1;
        }
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}

mod common;

use centresym::parallel::{angle_function, DivisionTag};
use centresym::{fixtures, CurveGeometry, Decomposition, Error};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Every `t ≠ s` with `T(t) ∥ T(s)`, from a uniform grid (offset so that
/// it never lands on `s`) and bisection on `det(T(s), T(t))`.
fn brute_force_partners(c: &CurveGeometry, s: f64, n: usize) -> Vec<f64> {
    let ts = c.tangent(s);
    let f = |t: f64| ts.det(c.tangent(t));
    let h = c.period() / n as f64;
    let grid = |i: usize| s + (i as f64 + 0.3719) * h;
    let mut out = Vec::new();
    for i in 0..n - 1 {
        let (mut lo, mut hi) = (grid(i), grid(i + 1));
        if f(lo).signum() == f(hi).signum() {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(lo).signum() == f(mid).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(c.wrap(0.5 * (lo + hi)));
    }
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn partner_sets_are_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, spec) in corpus() {
        let c = curve(spec);
        let d = Decomposition::new(&c).unwrap();
        for _ in 0..50 {
            let s = rng.gen_range(0.0..c.period());
            let found = d.partners(&c, s);
            let brute = brute_force_partners(&c, s, 20_000);
            assert_eq!(found.len(), brute.len(), "{name} s = {s}: {found:?} vs {brute:?}");
            for (a, b) in found.iter().zip(&brute) {
                let gap = (a - b).abs().min(c.period() - (a - b).abs());
                assert!(gap < 1e-6, "{name} s = {s}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn curvature_sign_is_constant_on_arcs() {
    for (name, spec) in corpus() {
        let c = curve(spec);
        let d = Decomposition::new(&c).unwrap();
        for a in &d.division.arcs {
            let signs: Vec<f64> = (1..100).map(|k| c.kappa(a.at(k as f64 / 100.0)).signum()).collect();
            assert!(signs.iter().all(|&s| s == signs[0]), "{name} arc {}", a.index);
        }
    }
}

#[test]
fn correspondence_derivative_is_curvature_ratio() {
    for (name, spec) in corpus() {
        let c = curve(spec);
        let d = Decomposition::new(&c).unwrap();
        each_family(&c, &d, |x, y, fam| {
            for k in 1..20 {
                let u = k as f64 / 20.0;
                let p = fam.pair(u);
                let h = 1e-6 * fam.corr.source.len();
                let s = p.s1;
                let t_plus = fam.corr.partner(&c, &d.angle, s + h);
                let t_minus = fam.corr.partner(&c, &d.angle, s - h);
                // arc-length derivative of the transported map
                let ds2_ds1 = ((t_plus - t_minus) / (2.0 * h)).abs() * p.b.speed / p.a.speed;
                let ratio = (p.a.kappa / p.b.kappa).abs();
                assert!((ds2_ds1 - ratio).abs() < 1e-5 * (1.0 + ratio), "{name} {x}-{y} u {u}: {ds2_ds1} vs {ratio}");
            }
        });
    }
}

#[test]
fn correspondences_are_parallel() {
    let c = curve(fixtures::two_rosette());
    let d = Decomposition::new(&c).unwrap();
    each_family(&c, &d, |_, _, fam| {
        for k in 0..=100 {
            assert!(fam.pair(k as f64 / 100.0).tangent_residual() < 1e-10);
        }
    });
}

#[test]
fn division_sequence_is_even_and_tags_inflexions() {
    for (name, spec) in corpus() {
        let c = curve(spec);
        let d = Decomposition::new(&c).unwrap();
        assert_eq!(d.division.len() % 2, 0, "{name}");
        let infl = c.find_inflexions().unwrap();
        let tagged: Vec<f64> =
            d.division.sequence.iter().filter(|p| p.tag == DivisionTag::Inflexion).map(|p| p.t).collect();
        assert_eq!(tagged.len(), infl.len(), "{name}");
        for r in &infl {
            assert!(tagged.iter().any(|t| (t - r.t).abs() < 1e-12), "{name}");
        }
        assert_eq!(d.extrema.len() % 2, 0);
    }
}

#[test]
fn rosettes_and_ovals() {
    for (spec, n) in [(fixtures::trefoil_oval(0.1), 1), (fixtures::two_rosette(), 2), (fixtures::random_rosette(3, 1), 3)] {
        let c = curve(spec);
        let d = Decomposition::new(&c).unwrap();
        assert_eq!(d.division.len(), 2 * n);
        assert_eq!(d.set_sizes(), vec![2 * n]);
        assert_eq!(d.arc_pair_count(), n * (2 * n - 1));
        assert!(d.extrema.is_empty());
        // the lift gains 2πn over one period
        let gain = d.angle.theta(&c, d.angle.base_t() + c.period()) - d.angle.theta(&c, d.angle.base_t());
        assert!((gain - 2.0 * PI * n as f64).abs() < 1e-9);
    }
}

#[test]
fn arcs_of_one_set_sweep_the_same_angles() {
    for (name, spec) in corpus() {
        let c = curve(spec);
        let d = Decomposition::new(&c).unwrap();
        for set in &d.arc_sets {
            let width = |a: usize| {
                let arc = d.division.arcs[a];
                (arc.theta_end - arc.theta_start).abs()
            };
            let w0 = width(set.arcs[0].arc);
            for x in &set.arcs {
                assert!((width(x.arc) - w0).abs() < 1e-9, "{name} set {}", set.index);
            }
            assert!((set.extremal_interval.1 - set.extremal_interval.0 - w0).abs() < 1e-9);
        }
        let two_arcs: usize = d.arc_sets.iter().map(|s| s.arcs.len()).sum();
        assert_eq!(two_arcs, d.division.arcs.len());
    }
}

#[test]
fn antipodal_maps() {
    for spec in [fixtures::unit_circle(), fixtures::ellipse(2.0, 1.0)] {
        let c = curve(spec);
        let d = Decomposition::new(&c).unwrap();
        for s in [0.3, 1.1, 2.0, 4.4, 5.9] {
            let p = d.partners(&c, s);
            assert_eq!(p.len(), 1);
            let expected = c.wrap(s + PI);
            assert!((p[0] - expected).abs() < 1e-10);
        }
    }
}

#[test]
fn base_point_at_inflexion_is_rejected() {
    let c = curve(fixtures::bean(0.3));
    let t = c.find_inflexions().unwrap()[0].t;
    assert!(matches!(angle_function(&c, t), Err(Error::BasePointIsInflexion { .. })));
}

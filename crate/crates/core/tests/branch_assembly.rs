mod common;

use centresym::branch::{
    assemble_branch, enumerate_maximal_schemes, merge_semibranches, BranchKind, CausticBranch, GlueingScheme,
    SamplingConfig, SchemeEnds,
};
use centresym::{fixtures, CurveGeometry, CurveSpec, Decomposition};
use common::{corpus, curve};
use std::collections::HashMap;

const KINDS: [BranchKind; 5] = [
    BranchKind::Css,
    BranchKind::Wigner,
    BranchKind::Secant,
    BranchKind::Equidistant(0.25),
    BranchKind::Equidistant(0.8),
];

fn setup(spec: CurveSpec) -> (CurveGeometry, Decomposition, Vec<GlueingScheme>) {
    let c = curve(spec);
    let d = Decomposition::new(&c).unwrap();
    let s = enumerate_maximal_schemes(&d).unwrap();
    (c, d, s)
}

fn branches(c: &CurveGeometry, d: &Decomposition, schemes: &[GlueingScheme], kind: BranchKind) -> Vec<CausticBranch> {
    let cfg = SamplingConfig { per_segment: 256, ..SamplingConfig::default() };
    schemes.iter().map(|s| assemble_branch(c, d, s, kind, &cfg).unwrap()).collect()
}

#[test]
fn every_arc_pair_lies_in_exactly_one_scheme() {
    for (name, spec) in corpus() {
        let (_, d, schemes) = setup(spec);
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for s in &schemes {
            for g in &s.segments {
                assert_ne!(g.top, g.bottom, "{name}");
                let key = (g.top.min(g.bottom), g.top.max(g.bottom));
                *seen.entry(key).or_default() += 1;
                assert_eq!(d.set_of_arc(g.top), d.set_of_arc(g.bottom), "{name}");
            }
        }
        assert!(seen.values().all(|&n| n == 1), "{name}: repeated pair");
        assert_eq!(seen.len(), d.arc_pair_count(), "{name}");
        let expected: usize = d.set_sizes().iter().map(|&k| k * (k - 1) / 2).sum();
        assert_eq!(seen.len(), expected, "{name}");
    }
}

#[test]
fn consecutive_segments_share_endpoints() {
    for (name, spec) in corpus() {
        let (_, d, schemes) = setup(spec);
        let div = &d.division;
        for s in &schemes {
            assert!(s.maximal);
            let n = s.segments.len();
            let links = if s.ends.is_closed() { n } else { n - 1 };
            for i in 0..links {
                let (a, b) = (s.segments[i], s.segments[(i + 1) % n]);
                let b = if i + 1 == n && s.ends == SchemeEnds::ClosedSwappedPair { b.swapped() } else { b };
                assert_eq!(div.arc_endpoint(a.top, a.top_dir), div.arc_endpoint(b.top, -b.top_dir), "{name}");
                assert_eq!(div.arc_endpoint(a.bottom, a.bottom_dir), div.arc_endpoint(b.bottom, -b.bottom_dir), "{name}");
            }
            if let SchemeEnds::InflexionToInflexion { p, q } = s.ends {
                assert!(div.is_inflexion(p) && div.is_inflexion(q) && p != q, "{name}");
                let (first, last) = (s.segments[0], s.segments[n - 1]);
                assert_eq!(div.arc_endpoint(first.top, -first.top_dir), p);
                assert_eq!(div.arc_endpoint(first.bottom, -first.bottom_dir), p);
                assert_eq!(div.arc_endpoint(last.top, last.top_dir), q);
                assert_eq!(div.arc_endpoint(last.bottom, last.bottom_dir), q);
            }
        }
    }
}

#[test]
fn rosettes_have_n_closed_schemes() {
    for n in 2..=4 {
        let (_, d, schemes) = setup(fixtures::random_rosette(n, 7));
        assert!(d.inflexions.is_empty());
        assert_eq!(schemes.len(), n as usize, "n = {n}");
        assert!(schemes.iter().all(|s| s.ends.is_closed()));
        let swapped = schemes.iter().filter(|s| s.ends == SchemeEnds::ClosedSwappedPair).count();
        assert_eq!(swapped, 1, "n = {n}");
    }
}

#[test]
fn shell_schemes_join_inflexion_pairs() {
    for (spec, k) in [(fixtures::bean(0.3), 1), (fixtures::four_inflexion(), 2)] {
        let (_, d, schemes) = setup(spec);
        assert_eq!(d.inflexions.len(), 2 * k);
        let open: Vec<_> = schemes.iter().filter(|s| !s.ends.is_closed()).collect();
        assert_eq!(open.len(), k);
        let mut hits: HashMap<usize, usize> = HashMap::new();
        for s in open {
            if let SchemeEnds::InflexionToInflexion { p, q } = s.ends {
                *hits.entry(p).or_default() += 1;
                *hits.entry(q).or_default() += 1;
            }
        }
        assert_eq!(hits.len(), 2 * k);
        assert!(hits.values().all(|&h| h == 1));
    }
}

#[test]
fn cusp_parity_matches_rotation_number() {
    let mut closed = 0;
    for (name, spec) in corpus() {
        let (c, d, schemes) = setup(spec);
        for kind in KINDS {
            for b in branches(&c, &d, &schemes, kind) {
                if !b.is_closed || b.degenerate {
                    continue;
                }
                let h = b.rotation_half_turns.expect("closed branches carry a rotation number");
                assert_eq!(b.cusps() % 2, h.rem_euclid(2) as usize, "{name} {} scheme {}", kind.name(), b.scheme);
                closed += 1;
            }
        }
    }
    assert!(closed >= 20);
}

#[test]
fn swapped_schemes_double_only_asymmetric_maps() {
    let (c, d, schemes) = setup(fixtures::two_rosette());
    let s = schemes.iter().find(|s| s.ends == SchemeEnds::ClosedSwappedPair).unwrap();
    for (kind, doubled) in [
        (BranchKind::Css, false),
        (BranchKind::Wigner, false),
        (BranchKind::Secant, true),
        (BranchKind::Equidistant(0.25), true),
    ] {
        let b = assemble_branch(&c, &d, s, kind, &SamplingConfig::default()).unwrap();
        assert_eq!(b.doubled, doubled, "{}", kind.name());
        assert!(b.is_closed);
    }
}

#[test]
fn open_branches_have_no_rotation_number() {
    let (c, d, schemes) = setup(fixtures::bean(0.3));
    for b in branches(&c, &d, &schemes, BranchKind::Css) {
        assert_eq!(b.is_closed, b.rotation_half_turns.is_some());
        assert_eq!(b.is_closed, b.connects_inflexions.is_none());
    }
}

#[test]
fn merging_glues_semibranches_across_asymptotes() {
    let (c, d, schemes) = setup(fixtures::trefoil_oval(0.1));
    let css = branches(&c, &d, &schemes, BranchKind::Css);
    let m = merge_semibranches(&css, c.scale()).unwrap();
    assert!(m.asymptotes.is_empty());
    assert_eq!(m.branches.len(), css.len());
    assert!(m.merge_tree.is_empty());

    let (c, d, schemes) = setup(fixtures::two_rosette());
    let css = branches(&c, &d, &schemes, BranchKind::Css);
    let m = merge_semibranches(&css, c.scale()).unwrap();
    assert_eq!(m.asymptotes.len(), 3);
    assert_eq!(m.branches.len(), 2);
    assert!(m.asymptotes.iter().all(|a| a.opposite_sides && a.opposite_ends));
    for mb in &m.branches {
        assert!(mb.semibranches.iter().all(|&i| css[m.semibranches[i].branch].scheme == mb.scheme));
    }
}

#[test]
fn circle_wigner_caustic_collapses_to_the_centre() {
    let (c, d, schemes) = setup(fixtures::unit_circle());
    for kind in [BranchKind::Wigner, BranchKind::Css] {
        for b in branches(&c, &d, &schemes, kind) {
            let worst = b.points().map(|p| p.norm()).fold(0.0f64, f64::max);
            assert!(worst < 1e-8, "{} {worst}", kind.name());
        }
    }
}

#[test]
fn events_lie_on_branch_samples() {
    let (c, d, schemes) = setup(fixtures::two_rosette());
    for b in branches(&c, &d, &schemes, BranchKind::Css) {
        let marked = b.samples.iter().filter(|s| s.event.is_some()).count();
        assert_eq!(marked, b.events.len(), "scheme {}", b.scheme);
    }
}

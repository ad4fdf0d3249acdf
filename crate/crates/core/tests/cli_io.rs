mod common;

use centresym::branch::BranchKind;
use centresym::caustic::EventKind;
use centresym::io::{
    self, branch_csv_name, emit_outputs, parse_curve_file, parse_curve_spec, run_analysis, AnalysisConfig,
    AnalysisReport, EmitOptions,
};
use centresym::{fixtures, CurveGeometry, CurveSpec, Error};
use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn quick() -> AnalysisConfig {
    AnalysisConfig { samples_per_period: 2048, timing: false, genericity_resolution: 1024, ..AnalysisConfig::default() }
}

fn same_curve(a: &CurveSpec, b: &CurveSpec) {
    let (ca, cb) = (CurveGeometry::new(a.clone()).unwrap(), CurveGeometry::new(b.clone()).unwrap());
    assert!((ca.period() - cb.period()).abs() < 1e-12);
    for i in 0..100 {
        let t = ca.period() * i as f64 / 100.0;
        assert!(ca.position(t).distance(cb.position(t)) < 1e-12);
    }
}

#[test]
fn fixture_files_match_builtin_specs() {
    for (name, spec) in [
        ("rosette", fixtures::two_rosette()),
        ("circle", fixtures::unit_circle()),
        ("ellipse", fixtures::ellipse(2.0, 1.0)),
        ("oval", fixtures::trefoil_oval(0.1)),
    ] {
        same_curve(&parse_curve_file(fixture(name)).unwrap(), &spec);
    }
    for name in ["bean", "four_inflexions"] {
        let c = CurveGeometry::new(parse_curve_file(fixture(name)).unwrap()).unwrap();
        assert!(!c.find_inflexions().unwrap().is_empty(), "{name}");
    }
}

#[test]
fn spec_json_roundtrips() {
    for spec in [fixtures::two_rosette(), fixtures::bean(0.3), fixtures::random_rosette(3, 9)] {
        let back = parse_curve_spec(&io::curve_spec_to_json(&spec)).unwrap();
        assert_eq!(back, spec);
    }
}

#[test]
fn invalid_rosette_is_a_validation_error() {
    let err = parse_curve_file(fixture("not_a_rosette")).unwrap_err();
    assert!(matches!(err, Error::Validation(_)), "{err}");
}

#[test]
fn syntax_errors_carry_a_position() {
    let text = "{\n  \"kind\": \"support\",\n  \"constant\": 1,,\n}";
    match parse_curve_spec(text) {
        Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 17)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_curve_spec("{\"kind\": \"spiral\"}"), Err(Error::Parse { .. })));
}

#[test]
fn report_roundtrips_and_counts_match_csv() {
    let spec = fixtures::two_rosette();
    let a = run_analysis(&spec, &quick());
    assert!(a.report.failure.is_none());
    let json = a.report.to_json();
    let back: AnalysisReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_json(), json);
    assert_eq!(back.schema, 1);
    assert!(back.timing.is_none());

    let dir = tempfile::tempdir().unwrap();
    emit_outputs(&a, dir.path(), EmitOptions { svg: true }).unwrap();
    for rec in &a.report.branches {
        let mut rdr = csv::Reader::from_path(dir.path().join(&rec.csv)).unwrap();
        assert_eq!(rdr.headers().unwrap(), vec!["s1", "s2", "x", "y", "event"]);
        let mut counts = [0usize; 3];
        let mut rows = 0;
        for row in rdr.records() {
            let row = row.unwrap();
            rows += 1;
            match &row[4] {
                "cusp" => counts[0] += 1,
                "asymptote" => counts[1] += 1,
                "double_tangent" => counts[2] += 1,
                "" => {}
                other => panic!("unknown event {other}"),
            }
        }
        assert_eq!(rows, rec.samples);
        assert_eq!(counts, [rec.cusps, rec.asymptotes, rec.double_tangents], "{}", rec.csv);
        let by_kind = |k| rec.events.iter().filter(|e| e.kind == k).count();
        assert_eq!(by_kind(EventKind::Cusp), rec.cusps);
    }
    let svg = std::fs::read_to_string(dir.path().join("figure.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
    assert!(svg.contains("<circle"));
    assert!(svg.contains("stroke-dasharray"));
}

#[test]
fn outputs_are_byte_deterministic() {
    let spec = fixtures::trefoil_oval(0.1);
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&d1, &d2] {
        emit_outputs(&run_analysis(&spec, &quick()), d.path(), EmitOptions { svg: true }).unwrap();
    }
    let mut names: Vec<_> = std::fs::read_dir(d1.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 4);
    for n in names {
        let (a, b) = (std::fs::read(d1.path().join(&n)).unwrap(), std::fs::read(d2.path().join(&n)).unwrap());
        assert!(a == b, "{n:?} differs");
    }
}

#[test]
fn kinds_select_the_branches() {
    let cfg = AnalysisConfig { kinds: vec![BranchKind::Css], ..quick() };
    let a = run_analysis(&fixtures::trefoil_oval(0.1), &cfg);
    assert!(a.branches.iter().all(|b| b.kind == BranchKind::Css));
    let dir = tempfile::tempdir().unwrap();
    let written = emit_outputs(&a, dir.path(), EmitOptions::default()).unwrap();
    assert!(written.iter().all(|p| !p.to_string_lossy().contains("wigner")));
    assert!(!dir.path().join("figure.svg").exists());
    assert_eq!(written.len(), 1 + a.branches.len());
    for b in &a.branches {
        assert!(dir.path().join(branch_csv_name(b)).exists());
    }
}

#[test]
fn empty_branch_csv_is_header_only() {
    let mut a = run_analysis(&fixtures::trefoil_oval(0.1), &AnalysisConfig { kinds: vec![BranchKind::Css], ..quick() });
    a.branches.truncate(1);
    a.branches[0].samples.clear();
    let dir = tempfile::tempdir().unwrap();
    emit_outputs(&a, dir.path(), EmitOptions::default()).unwrap();
    let text = std::fs::read_to_string(dir.path().join(branch_csv_name(&a.branches[0]))).unwrap();
    assert_eq!(text, "s1,s2,x,y,event\n");
}

#[test]
fn symmetric_curves_collapse_and_fail_genericity() {
    for spec in [fixtures::unit_circle(), fixtures::ellipse(2.0, 1.0)] {
        let r = run_analysis(&spec, &quick()).report;
        assert!(r.failure.is_none());
        assert!(r.css_extent.unwrap() < 1e-8);
        assert!(!r.genericity.as_ref().unwrap().overall);
        assert!(!r.theorem("rosette").unwrap().applicable);
    }
}

#[test]
fn rosette_and_oval_counts() {
    let r = run_analysis(&fixtures::two_rosette(), &quick()).report;
    let v = r.counts.unwrap();
    assert_eq!((v.css_branches, v.asymptote_bearing, v.odd_cusp_branches), (2, 1, 1));
    assert_eq!(v.total_wigner_cusps % 2, 0);
    assert_eq!(v.total_css_cusps % 2, 1);
    assert_eq!(r.css_merge.as_ref().unwrap().branches, 2);
    assert!(r.theorems.iter().all(|t| t.applicable && t.holds || t.theorem == "shell"));

    let r = run_analysis(&fixtures::trefoil_oval(0.1), &quick()).report;
    let v = r.counts.unwrap();
    assert_eq!((v.css_branches, v.asymptote_bearing, v.total_css_cusps), (1, 0, 3));
    assert_eq!(r.curve.unwrap().arc_pair_total, 1);
}

#[test]
fn failures_keep_the_partial_report() {
    let r = run_analysis(&fixtures::undulation(), &quick()).report;
    let f = r.failure.expect("undulation cannot be decomposed");
    assert_eq!(f.stage, "decomposition");
    assert!(r.curve.is_some());
    assert!(r.branches.is_empty());

    let r = run_analysis(&fixtures::two_rosette(), &AnalysisConfig { samples_per_period: 2, ..quick() }).report;
    assert_eq!(r.failure.unwrap().stage, "config");
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_centresym")).args(args).output().unwrap()
}

#[test]
fn cli_verify_and_analyze() {
    let rosette = fixture("rosette");
    let out = cli(&["verify", rosette.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass rosette"));
    assert!(text.contains("genericity pass"));

    let out = cli(&["verify", rosette.to_str().unwrap(), "--theorems", "rosette,bogus"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cli(&["verify", fixture("not_a_rosette").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let oval = fixture("oval");
    let out = cli(&[
        "analyze",
        oval.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--kinds",
        "css,equidistant:0.25",
        "--svg",
        "--no-timing",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: AnalysisReport =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report.config.kinds, vec![BranchKind::Css, BranchKind::Equidistant(0.25)]);
    assert!(dir.path().join("figure.svg").exists());
}

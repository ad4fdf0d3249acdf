//! Parse a curve-spec file, run the pipeline and write report, CSVs and SVG.
//!
//! `cargo run --example analyze_file -- crates/core/fixtures/rosette.json out/`

use centresym::io::{emit_outputs, parse_curve_file, run_analysis, AnalysisConfig, EmitOptions};
use std::path::PathBuf;

fn main() -> centresym::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/rosette.json").into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out".into()));
    let analysis = run_analysis(&parse_curve_file(&spec)?, &AnalysisConfig::default());
    for p in emit_outputs(&analysis, &out, EmitOptions { svg: true })? {
        println!("wrote {}", p.display());
    }
    for t in &analysis.report.theorems {
        println!("{:8} applicable {:5} holds {:5}  {}", t.theorem, t.applicable, t.holds, t.detail);
    }
    Ok(())
}

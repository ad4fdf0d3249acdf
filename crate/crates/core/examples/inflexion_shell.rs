//! CSS branches that join pairs of inflexions on non-convex curves.

use centresym::io::{run_analysis, AnalysisConfig};
use centresym::{fixtures, CurveGeometry};

fn main() -> centresym::Result<()> {
    let config = AnalysisConfig { timing: false, ..AnalysisConfig::default() };
    for (name, spec) in [("bean", fixtures::bean(0.3)), ("four inflexions", fixtures::four_inflexion())] {
        let curve = CurveGeometry::new(spec.clone())?;
        let ts: Vec<String> = curve.find_inflexions()?.iter().map(|r| format!("{:.4}", r.t)).collect();
        println!("{name}: inflexions at [{}]", ts.join(", "));
        let r = run_analysis(&spec, &config).report;
        let v = r.counts.as_ref().expect("analysis completed");
        for s in &v.shell {
            println!(
                "  branch of scheme {} joins t = {:.4} and t = {:.4}; {} inflexions strictly between",
                s.scheme, s.from_t, s.to_t, s.interior_inflexions
            );
        }
        println!("  every inflexion bounds exactly one branch: {}", v.inflexions_bound_once);
    }
    Ok(())
}

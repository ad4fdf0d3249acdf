//! Branch counts of the CSS of random generic n-rosettes.

use centresym::certificates::check_genericity;
use centresym::io::{run_analysis, AnalysisConfig};
use centresym::{fixtures, CurveGeometry};

fn main() -> centresym::Result<()> {
    let config = AnalysisConfig { timing: false, ..AnalysisConfig::default() };
    for n in 2..=4 {
        for seed in 0..3 {
            let spec = fixtures::random_rosette(n, seed);
            if !check_genericity(&CurveGeometry::new(spec.clone())?, 1024).overall {
                println!("n = {n} seed {seed}: not generic, skipped");
                continue;
            }
            let r = run_analysis(&spec, &config).report;
            let v = r.counts.as_ref().expect("analysis completed");
            println!(
                "n = {n} seed {seed}: {} branches, {} with asymptotes, {} odd, css cusps {}, wigner cusps {}, rosette law {}",
                v.css_branches,
                v.asymptote_bearing,
                v.odd_cusp_branches,
                v.total_css_cusps,
                v.total_wigner_cusps,
                r.theorem("rosette").map(|t| t.holds).unwrap_or(false)
            );
        }
    }
    Ok(())
}

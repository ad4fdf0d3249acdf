//! Numerical genericity report for generic and degenerate curves.

use centresym::certificates::{check_genericity, Status};
use centresym::{fixtures, CurveGeometry};

fn main() -> centresym::Result<()> {
    for (name, spec) in [
        ("2-rosette", fixtures::two_rosette()),
        ("ellipse", fixtures::ellipse(2.0, 1.0)),
        ("four inflexions", fixtures::four_inflexion()),
    ] {
        let r = check_genericity(&CurveGeometry::new(spec)?, 2048);
        println!("{name}: overall {}", if r.overall { "generic" } else { "not generic" });
        for e in &r.entries {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::NotCheckable => "n/a",
            };
            let margin = e.min_margin.map_or("-".to_string(), |m| format!("{m:.2e}"));
            println!("  ({:>4}) {status:4}  margin {margin:>8}  {}", e.id, e.note);
        }
    }
    Ok(())
}

//! Compare formula CSS points with intersections of consecutive chords.

use centresym::io::oracle_comparison;
use centresym::{fixtures, CurveGeometry};

fn main() -> centresym::Result<()> {
    let curve = CurveGeometry::new(fixtures::two_rosette())?;
    let mut prev: Option<f64> = None;
    for n in [2500, 5000, 10000, 20000] {
        let r = oracle_comparison(&curve, n, 3.0)?;
        let ratio = prev.map(|p| format!("  ratio {:.2}", p / r.max_hausdorff)).unwrap_or_default();
        println!("n = {n:5}: {} stretches, max Hausdorff {:.3e} x diameter{ratio}", r.stretches.len(), r.relative_error());
        prev = Some(r.max_hausdorff);
    }
    Ok(())
}

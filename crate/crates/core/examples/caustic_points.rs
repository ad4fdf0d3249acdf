//! Point maps and singular events along one family of parallel pairs.

use centresym::caustic::{
    css_curvature, css_point, detect_asymptotes, detect_cusps, detect_double_tangents, secant_point, wigner_point,
    PairFamily,
};
use centresym::{fixtures, CurveGeometry, Decomposition};

fn main() -> centresym::Result<()> {
    let curve = CurveGeometry::new(fixtures::two_rosette())?;
    let d = Decomposition::new(&curve)?;
    let set = &d.arc_sets[0];
    let corr = d.correspondence(&curve, set.arcs[0].arc, set.arcs[2].arc)?;
    let fam = PairFamily::new(&curve, &d.angle, &corr);
    println!("arcs {} and {}: sigma = {}", corr.source.index, corr.target.index, corr.sigma);

    for u in [0.1, 0.4, 0.7] {
        let p = fam.pair(u);
        let w = wigner_point(&p);
        let s = secant_point(&p);
        print!("u = {u}: s = ({:.5}, {:.5})  wigner ({:.4}, {:.4})  secant ({:.4}, {:.4})", p.s1, p.s2, w.x, w.y, s.x, s.y);
        match (css_point(&p), css_curvature(&p, curve.scale())) {
            (Ok(c), Ok(k)) => println!("  css ({:.4}, {:.4}) curvature {:.4e}", c.x, c.y, k),
            (Err(e), _) | (_, Err(e)) => println!("  css: {e}"),
        }
    }

    for (name, det) in [
        ("cusps", detect_cusps(&fam, 2048)),
        ("asymptotes", detect_asymptotes(&fam, 2048)),
        ("double tangents", detect_double_tangents(&fam, 2048)),
    ] {
        println!("{name}: {}", det.events.len());
        for e in &det.events {
            println!("  s = ({:.6}, {:.6})  witness {:+.3e}", e.s1, e.s2, e.witness);
        }
    }
    Ok(())
}

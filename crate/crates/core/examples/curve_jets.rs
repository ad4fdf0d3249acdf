//! Jets, curvature, inflexions and rotation number of a few curves.

use centresym::{fixtures, CurveGeometry};

fn main() -> centresym::Result<()> {
    let rosette = CurveGeometry::new(fixtures::two_rosette())?;
    let jet = rosette.eval_jet(0.0);
    println!("2-rosette at t = 0");
    println!("  position  ({:.6}, {:.6})", jet.position.x, jet.position.y);
    println!("  speed     {:.6}", jet.speed);
    println!("  kappa     {:.10}  (1/(p+p'') = {:.10})", jet.kappa, 1.0 / (14.0 + 3.0 - 6.75));
    println!("  kappa_s   {:.3e}", jet.kappa_s);
    println!("  kappa_ss  {:.3e}", jet.kappa_ss);
    println!("  rotation number {}", rosette.rotation_number());

    for (name, spec) in [("bean", fixtures::bean(0.3)), ("four inflexions", fixtures::four_inflexion())] {
        let c = CurveGeometry::new(spec)?;
        println!("{name}: rotation number {}", c.rotation_number());
        for r in c.find_inflexions()? {
            println!("  inflexion t = {:.9}  {:?}  det(d1,d3) = {:+.3e}", r.t, r.kind, r.witness);
        }
    }

    let und = CurveGeometry::new(fixtures::undulation())?;
    for r in und.find_inflexions()? {
        println!("undulation fixture: t = {:.6} classified {:?}", r.t, r.kind);
    }

    match CurveGeometry::new(fixtures::cardioid_like()) {
        Err(e) => println!("cardioid-like curve rejected: {e}"),
        Ok(_) => println!("cardioid-like curve unexpectedly accepted"),
    }
    Ok(())
}

//! Division points, parallel-arc sets and parallel partners.

use centresym::{fixtures, CurveGeometry, Decomposition};

fn main() -> centresym::Result<()> {
    let curve = CurveGeometry::new(fixtures::bean(0.3))?;
    let d = Decomposition::new(&curve)?;
    println!("angle function base t = {:.6}", d.angle.base_t());
    for e in &d.extrema {
        println!("extremum {:?} at t = {:.6}, phi = {:.6}", e.kind, e.t, e.phi);
    }
    println!("division points:");
    for (k, p) in d.division.sequence.iter().enumerate() {
        println!("  {k:2}  t = {:.6}  {:?}", p.t, p.tag);
    }
    for set in &d.arc_sets {
        let arcs: Vec<usize> = set.arcs.iter().map(|a| a.arc).collect();
        println!(
            "set {}: angles ({:.4}, {:.4}), arcs {:?}",
            set.index, set.extremal_interval.0, set.extremal_interval.1, arcs
        );
    }
    println!("arc pairs: {}", d.arc_pair_count());

    for s in [0.3, 1.7, 2.9] {
        let partners = d.partners(&curve, s);
        let ts: Vec<String> = partners.iter().map(|t| format!("{t:.6}")).collect();
        let ok = partners.iter().all(|&t| curve.tangent(s).det(curve.tangent(t)).abs() < 1e-9);
        println!("partners of s = {s}: [{}]  tangents parallel: {ok}", ts.join(", "));
    }
    Ok(())
}

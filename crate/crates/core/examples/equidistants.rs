//! Cusp counts of affine equidistants as lambda varies.

use centresym::branch::{assemble_branch, enumerate_maximal_schemes, BranchKind, SamplingConfig};
use centresym::{fixtures, CurveGeometry, Decomposition};

fn main() -> centresym::Result<()> {
    let curve = CurveGeometry::new(fixtures::trefoil_oval(0.1))?;
    let d = Decomposition::new(&curve)?;
    let schemes = enumerate_maximal_schemes(&d)?;
    let cfg = SamplingConfig::default();
    for lambda in [0.0, 0.1, 0.25, 0.5, 0.75, 1.0] {
        let mut cusps = 0;
        for s in &schemes {
            cusps += assemble_branch(&curve, &d, s, BranchKind::Equidistant(lambda), &cfg)?.cusps();
        }
        println!("lambda = {lambda:4}: {cusps} cusps");
    }
    Ok(())
}

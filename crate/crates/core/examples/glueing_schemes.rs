//! Maximal glueing schemes, assembled branches and merging at asymptotes.

use centresym::branch::{assemble_branch, enumerate_maximal_schemes, merge_semibranches, BranchKind, SamplingConfig};
use centresym::{fixtures, CurveGeometry, Decomposition};

fn main() -> centresym::Result<()> {
    let curve = CurveGeometry::new(fixtures::two_rosette())?;
    let d = Decomposition::new(&curve)?;
    let schemes = enumerate_maximal_schemes(&d)?;
    let cfg = SamplingConfig::default();
    let mut css = Vec::new();
    for s in &schemes {
        let pairs: Vec<String> = s.segments.iter().map(|g| format!("{}|{}", g.top, g.bottom)).collect();
        println!("scheme {} ({:?}): {}", s.index, s.ends, pairs.join(" -> "));
        for kind in [BranchKind::Css, BranchKind::Wigner, BranchKind::Secant, BranchKind::Equidistant(0.25)] {
            let b = assemble_branch(&curve, &d, s, kind, &cfg)?;
            println!(
                "  {:16} doubled {:5}  cusps {:2}  asymptotes {}  double tangents {}  rotation {:?}",
                kind.name(),
                b.doubled,
                b.cusps(),
                b.asymptotes(),
                b.double_tangents(),
                b.rotation_number()
            );
            if kind == BranchKind::Css {
                css.push(b);
            }
        }
    }
    let merged = merge_semibranches(&css, curve.scale())?;
    println!(
        "{} semibranches, {} asymptotes, merged into {} branches",
        merged.semibranches.len(),
        merged.asymptotes.len(),
        merged.branches.len()
    );
    for a in &merged.asymptotes {
        println!("  asymptote: opposite sides {}, opposite ends {}", a.opposite_sides, a.opposite_ends);
    }
    Ok(())
}

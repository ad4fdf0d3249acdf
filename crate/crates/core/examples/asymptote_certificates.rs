//! Sufficient conditions for an asymptote, checked on explicit data and on
//! arcs of a curve.

use centresym::caustic::{detect_asymptotes, PairFamily};
use centresym::certificates::{
    certificate_curvature_sign, certificate_parallelogram, parallelogram_construction, ArcEndpointData, Certificate,
};
use centresym::{fixtures, CurveGeometry, Decomposition, Vec2};

fn main() -> centresym::Result<()> {
    let e1 = Vec2::new(1.0, 0.0);
    let e2 = Vec2::new(0.0, 1.0);
    let data = ArcEndpointData {
        p0: Vec2::new(-3.0, 0.0),
        p1: Vec2::new(-1.75, 0.5),
        q0: Vec2::ZERO,
        q1: Vec2::new(1.0, 1.0),
        tangent_p0: e1,
        tangent_p1: e2,
        tangent_q0: e1,
        tangent_q1: e2,
        kappa_p0: 1.0,
        kappa_p1: 1.0,
        kappa_q0: -1.0,
        kappa_q1: -1.0,
        p_interior_sign: 1.0,
        q_interior_sign: -1.0,
        p_turning: 0.25,
        q_turning: 0.25,
        q_covered: true,
        p_covered: true,
        same_side_near_start: true,
        same_side_near_end: true,
        same_side_everywhere: true,
    };
    let pg = parallelogram_construction(&data)?;
    println!("parallelogram ratios {:.3} and {:.3}: {:?}", pg.rho.0, pg.rho.1, certificate_parallelogram(&data)?);

    let curve = CurveGeometry::new(fixtures::four_inflexion())?;
    let d = Decomposition::new(&curve)?;
    let mut certified = 0;
    for set in &d.arc_sets {
        for (i, x) in set.arcs.iter().enumerate() {
            for y in &set.arcs[i + 1..] {
                let corr = d.correspondence(&curve, x.arc, y.arc)?;
                let fam = PairFamily::new(&curve, &d.angle, &corr);
                let base = ArcEndpointData::from_family(&fam, 0.0, 1.0, 256);
                let found = detect_asymptotes(&fam, 2048).events.len();
                for v in [base, base.reversed(), base.swapped(), base.swapped().reversed()] {
                    let c = certificate_curvature_sign(&v).ok().or(certificate_parallelogram(&v).ok());
                    if c == Some(Certificate::AsymptoteCertified) {
                        certified += 1;
                        println!("arcs {}-{}: certified, detector finds {found} asymptote(s)", x.arc, y.arc);
                        break;
                    }
                }
            }
        }
    }
    println!("{certified} arc pairs certified");
    Ok(())
}

//! Centre symmetry sets and affine equidistants of closed planar curves.

pub mod branch;
pub mod caustic;
pub mod certificates;
pub mod curve;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod io;
pub mod parallel;
pub mod roots;

pub use curve::{CurveGeometry, CurveKind, CurveSpec, Frequency, Jet, TrigSeries, TrigTerm};
pub use error::{Error, Result};
pub use geom::{Line, Vec2};
pub use parallel::Decomposition;

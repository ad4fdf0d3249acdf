use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    // curve construction
    #[error("curve spec is invalid: {0}")]
    InvalidSpec(String),
    #[error("curve is not regular: speed {speed:.3e} at t = {t}")]
    NonRegular { t: f64, speed: f64 },
    #[error("support function gives p + p'' = {value:.3e} <= 0 at t = {t}")]
    VanishingRosetteCurvature { t: f64, value: f64 },
    #[error("curvature root at t = {t} cannot be classified (witness {witness:.3e})")]
    DegenerateRoot { t: f64, witness: f64 },

    // parallel structure
    #[error("base point t = {t} is an inflexion")]
    BasePointIsInflexion { t: f64 },
    #[error("angle level {level} is reached tangentially at t = {t}")]
    TangentialPreimage { t: f64, level: f64 },
    #[error("arcs {0} and {1} do not belong to the same set of parallel arcs")]
    NotSameFamily(usize, usize),

    // caustic maps
    #[error("pair ({s1}, {s2}) produces an asymptote, not a point")]
    AsymptoticPair { s1: f64, s2: f64 },
    #[error("pair ({s1}, {s2}) is a singular point of the centre symmetry set")]
    SingularPoint { s1: f64, s2: f64 },
    #[error("chord of pair ({s1}, {s2}) is degenerate")]
    DegenerateChord { s1: f64, s2: f64 },
    #[error("consecutive chords at s = {s} are parallel")]
    ParallelConsecutiveChords { s: f64 },
    #[error("envelope oracle needs at least 3 samples, got {0}")]
    TooFewSamples(usize),

    // branch assembly
    #[error("glueing scheme cannot be prolonged uniquely at division points ({0}, {1})")]
    ProlongationAmbiguous(usize, usize),
    #[error("two distinct pairs share the asymptote through {0:?}")]
    DoubleAsymptote(crate::geom::Vec2),
    #[error("branch is not closed and has no rotation number")]
    OpenBranch,

    // certificates
    #[error("pair has an inflexion at parameter {0}")]
    InflexionAtPair(f64),
    #[error("certificate hypotheses not met: {0:?}")]
    HypothesesUnmet(Vec<String>),
    #[error("parallelogram construction degenerates: {0}")]
    DegenerateConstruction(String),

    // io
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(Box<Error>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

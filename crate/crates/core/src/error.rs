use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bar {index} has non-positive length {length}")]
    NonPositiveLength { index: usize, length: f64 },
    #[error("a linkage needs at least 3 bars, got {0}")]
    TooFewBars(usize),
    #[error("linkage has {expected} bars but {got} vertices were given")]
    VertexCount { expected: usize, got: usize },
    #[error("bar {index} has length {actual}, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: f64,
        actual: f64,
    },
    #[error("first bar is too short to fix a frame")]
    DegenerateFrame,
    #[error("angle at vertex {vertex} is undefined: coincident vertices")]
    DegenerateAngle { vertex: usize },
    #[error("configurations realize different linkages")]
    LinkageMismatch,
    #[error("segment shorter than tolerance")]
    DegenerateSegment,
    #[error("circles do not intersect")]
    NoSolution,
    #[error("circles coincide")]
    Coincident,
    #[error("fold lengths ({0}, {1}, {2}) do not satisfy l_a > l_b < l_c")]
    InvalidFoldLengths(f64, f64, f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("layout construction failed: {0}")]
    LayoutFailure(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("loop undersampled: jump of {jump} rad after sample {index}")]
    UndersampledLoop { index: usize, jump: f64 },
    #[error("winding residue {residue} is not close to an integer")]
    NonIntegralWinding { residue: f64 },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("no convergence after {iterations} iterations (relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("a bar collapsed to zero length during projection")]
    SingularGeometry,
    #[error("filtration has {count} simplices, budget is {budget}")]
    TooLarge { count: usize, budget: usize },
}

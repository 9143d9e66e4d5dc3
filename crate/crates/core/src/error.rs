use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the identically zero field")]
    DivisionByZero,
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("point binds {got} coordinates, chart has {expected}")]
    PointArity { expected: usize, got: usize },
    #[error("matrix is identically singular")]
    SingularMatrix,
    #[error("matrix is singular at the sample point")]
    SingularAtPoint,
    #[error("matrix is not square or has inconsistent dimensions")]
    NotSquare,
    #[error("matrix entries must be polynomials")]
    NotPolynomial,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("metric is not symmetric: g[{i}][{j}] differs from g[{j}][{i}]")]
    AsymmetricMetric { i: usize, j: usize },
    #[error("invalid frame size: r = {r} with dim = {dim} (need dim - r even and positive)")]
    InvalidFrame { r: usize, dim: usize },
    #[error("unknown fixture `{0}` (expected example1, example2 or example3)")]
    UnknownFixture(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("usage: {0}")]
    Usage(String),

    #[error("unsupported tensor valence ({contra},{co}) for {op}")]
    UnsupportedValence {
        op: &'static str,
        contra: usize,
        co: usize,
    },
    #[error("g(xi_{alpha}, xi_{alpha}) = {value} is not a constant +1 or -1")]
    InvalidCausalCharacter { alpha: usize, value: String },
    #[error("phi is not skew-symmetric with respect to g; the fundamental form is undefined")]
    NotSkewSymmetric,

    #[error("vectors are linearly dependent at the point")]
    LinearlyDependent,
    #[error("degenerate plane: g(X,X)g(Y,Y) - g(X,Y)^2 = 0")]
    DegeneratePlane,
    #[error("vector is lightlike")]
    Lightlike,
    #[error("vector does not lie in Im(phi)")]
    NotInDistribution,
    #[error("reconstruction inapplicable at this plane: {0}")]
    ReconstructionInapplicable(String),
    #[error("no non-lightlike frame candidate found in Im(phi)")]
    NoFrameCandidate,
    #[error("structure is not an S-manifold: {0}")]
    NotSManifold(String),
    #[error("curvature symmetry self-check failed at {0:?}")]
    CurvatureSymmetry([usize; 4]),
}

pub type Result<T> = std::result::Result<T, Error>;

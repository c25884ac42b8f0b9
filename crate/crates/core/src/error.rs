use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("no square root up to a scalar was found")]
    NotAScalarSquare,
    #[error("odd block of the supermatrix is singular")]
    SingularOddBlock,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("torus coordinate {0} is zero")]
    ZeroTorusCoordinate(usize),
    #[error("generator {0} is not an eigenvector of the torus action")]
    NotAWeightVector(String),
    #[error("element is not central: bracket with {witness} is nonzero")]
    NotCentral { witness: String },
    #[error("monomial of degree {0} exceeds the supported degree 1")]
    DegreeTooHigh(usize),
    #[error("Laplacian of j divided by j is not constant: {0}")]
    NotEigenfunction(String),
    #[error("radial operator is not constant-coefficient at weight {weight:?}")]
    NotConstantCoefficient { weight: Vec<i32> },
    #[error("weights do not determine a polynomial of degree <= {degree}")]
    InsufficientWeights { degree: u32 },
    #[error("weight {0:?} is listed more than once")]
    DuplicateWeight(Vec<i32>),
    #[error("J does not square to -Id or mixes parities")]
    NotAlmostComplex,
    #[error("generators {0:?} do not span an even ideal")]
    NotAnIdeal(Vec<String>),
    #[error("structure constants are not real")]
    NonRealStructure,
    #[error("invalid algebra definition: {0}")]
    InvalidDefinition(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

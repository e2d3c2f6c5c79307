use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^63")]
    InvalidPrime(u64),

    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("cannot add homogeneous polynomials of degrees {left} and {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("unknown variable index {0}")]
    UnknownVariable(usize),

    #[error("derivative of order {order} has multipliers vanishing mod {prime}")]
    DegenerateMultiplicity { order: u64, prime: u64 },

    #[error("zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,

    #[error("divisor class has {got} exceptional coefficients, surface has {expected} markers")]
    MarkerCountMismatch { expected: usize, got: usize },

    #[error("marker index {index} out of range for {count} markers")]
    MarkerOutOfRange { index: usize, count: usize },

    #[error("elementary transformation would produce F_{0}")]
    NegativeHirzebruch(i64),

    #[error("twist requires n >= 2, got {0}")]
    TwistTooSmall(i64),

    #[error("bundle needs a0 >= a1 >= a2 >= 0 and n >= 2, got n = {n}, a = {a:?}")]
    InvalidSpace { n: u32, a: [i64; 3] },

    #[error("degree chain broken at position {position}: offset {found} differs from {expected}")]
    DegreeChainBroken { position: usize, expected: i64, found: i64 },

    #[error("sigma_{index} is not homogeneous of degree {degree}")]
    NonHomogeneous { index: usize, degree: u32 },

    #[error("sigma_{index} lives in {got} variables, bundle base needs {expected}")]
    WrongVariableCount { index: usize, expected: usize, got: usize },

    #[error("spec is not in the split sub-family (degree offset {0})")]
    NotSplitFamily(i64),

    #[error("line parametrization must be a 2 x {n} matrix of rank 2")]
    DegenerateLine { n: usize },

    #[error("discriminant vanishes identically")]
    ZeroDiscriminant,

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid grid parameters: {0}")]
    InvalidGrid(String),

    #[error("point sampling exhausted {0} attempts")]
    SamplingExhausted(usize),

    #[error("malformed spec: {0}")]
    MalformedSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

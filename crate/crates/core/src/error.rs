use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus {0} is below 2")]
    InvalidModulus(u64),

    #[error("group or register size {size} exceeds the configured maximum {max}")]
    TooLarge { size: u128, max: u128 },

    #[error("shape mismatch: expected {expected} components, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("residue {value} out of range for modulus {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },

    #[error("register {0} does not exist")]
    NoSuchRegister(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("label {label} out of range for register dimension {dim}")]
    LabelOutOfRange { label: usize, dim: usize },

    #[error("truth table incomplete: {got} of {expected} entries")]
    PartialTable { got: usize, expected: usize },

    #[error("truth table value {value} does not fit the codomain of size {codomain}")]
    ValueOutOfRange { value: u64, codomain: u64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{y} is not coprime to {modulus}")]
    NotCoprime { y: u64, modulus: u64 },

    #[error("state has zero norm on the requested branch")]
    ZeroNorm,

    #[error("unitary does not fix the all-zero basis state")]
    ZeroNotFixed,

    #[error("{what} gave up after {attempts} attempts")]
    BudgetExhausted { what: &'static str, attempts: usize },

    #[error("phase stages disagree at stage {stage}: estimate {estimate:.4} vs reconstruction {reconstructed:.4}")]
    InconsistentStages {
        stage: usize,
        estimate: f64,
        reconstructed: f64,
    },

    #[error("promise violated: {0}")]
    PromiseViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow")]
    Overflow,
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid degree component {0}; expected 0 or 1")]
    InvalidDegree(u8),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("coefficient set violates {failures} constraint relation instance(s); refusing to assemble")]
    ConstraintsFailed { failures: usize },

    #[error("search space of {estimated} candidates exceeds the cap of {cap} ({stage})")]
    SearchCap {
        stage: String,
        estimated: u128,
        cap: u128,
    },

    #[error("state space of dimension {required} exceeds the cap of {cap}")]
    DimensionCap { required: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed JSON at `{path}`: {message}")]
    Json { path: String, message: String },
}

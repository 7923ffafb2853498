use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the engine. Input-shaped problems (bad spec files,
/// unknown presets, illegal parameters) are kept distinct from internal
/// contract violations, which always indicate a bug.
#[derive(Error, Debug)]
pub enum Error {
    #[error("scalar error: {0}")]
    Scalar(String),

    #[error("degree {degree} exceeds truncation {truncation}")]
    DegreeAboveTruncation { degree: u32, truncation: u32 },

    #[error("elements belong to different algebras")]
    MixedAlgebras,

    #[error("algebra error: {0}")]
    Algebra(String),

    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("differential error: {0}")]
    Differential(String),

    #[error("d^2 != 0 on generator `{generator}`: d(d({generator})) = {value}")]
    DSquared { generator: String, value: String },

    #[error("truncation {truncation} too small: {context}")]
    InsufficientTruncation { truncation: u32, context: String },

    #[error("amalgam error: {0}")]
    Amalgam(String),

    #[error("koszul complex error: {0}")]
    Koszul(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("spec file error: {0}")]
    SpecFile(String),
}

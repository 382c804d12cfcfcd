use crate::zlinalg::IntMatrix;

/// Errors raised by constructors, validators and the file-format layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("minor order {k} out of range for a {rows}x{cols} matrix")]
    MinorOrder { k: usize, rows: usize, cols: usize },

    #[error("map does not descend to the presented quotients")]
    NotDescending,

    #[error("shape mismatch at degree {degree}: {detail}")]
    Shape { degree: i64, detail: String },

    #[error("d^{} * d^{} is nonzero: {product}", .degree + 1, .degree)]
    NotAComplex { degree: i64, product: IntMatrix },

    #[error("map does not commute with the differentials at degree {degree}")]
    NotAChainMap { degree: i64 },

    #[error("component at degree {0} is not a split monomorphism over Z")]
    NotSplitMono(i64),

    #[error("component at degree {0} is not a split epimorphism over Z")]
    NotSplitEpi(i64),

    #[error("endomorphism is not idempotent at degree {0}")]
    NotIdempotent(i64),

    #[error("composable data mismatch: {0}")]
    Mismatch(String),

    #[error("invalid conflation at degree {degree}: {detail}")]
    Conflation { degree: i64, detail: String },

    #[error("invalid eventually periodic data: {0}")]
    Periodic(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("format error: {0}")]
    Format(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("axiom {axiom} expects a {expected} class")]
    SortMismatch { axiom: String, expected: &'static str },

    #[error("invalid sample parameters: {0}")]
    SampleSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Every failure mode of the workbench. Messages are printed verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("internal limit exceeded: {what} ran past {cap} steps")]
    IterationCap { what: &'static str, cap: u64 },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at line {line}, column {column}: {kind}")]
    Parse { line: usize, column: usize, kind: String },
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("dangling reference: {0}")]
    DanglingReference(String),
    #[error("N out of range: {0}")]
    NOutOfRange(String),
    #[error("NONISOLATED: {0}")]
    NonIsolated(String),
    #[error("NONSINGULAR: {0}")]
    Nonsingular(String),
    #[error("VIOLATION: branch {branch}, generator {generator} leaves a term of order {order}{}", truncation_note(.truncation))]
    Violation { branch: String, generator: String, order: u32, truncation: Option<u32> },
    #[error("DEGENERATE: {0}")]
    Degenerate(String),
    #[error("INSTABILITY: {0}")]
    Instability(String),
    #[error("IMPROPER: {0}")]
    Improper(String),
    #[error("UNDEFINED-LE: {0}")]
    UndefinedLe(String),
    #[error("HYPOTHESIS-FAIL: {0}")]
    HypothesisFail(String),
    #[error("NONISOLATED-AT-THRESHOLD: {0}")]
    NonIsolatedAtThreshold(String),
    #[error("MISSING-SLICE: {0}")]
    MissingSlice(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(String),
}

fn truncation_note(t: &Option<u32>) -> String {
    match t {
        Some(k) => format!(" below truncation {k}"),
        None => " on an exact parametrization".to_string(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

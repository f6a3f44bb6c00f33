use thiserror::Error;

/// Errors raised by sphere and model operations.
///
/// Dimension mismatches between operands are programmer errors and panic
/// instead (matching the convention of the underlying linear algebra).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A vector that should be (nearly) unit norm is not.
    #[error("vector norm {norm} is too far from 1 to renormalize")]
    NotUnit { norm: f64 },

    /// The antipode `-e0` has no canonical square root.
    #[error("no canonical square root at the antipode -e0")]
    AntipodeRoot,

    /// An operation whose domain excludes the antipode was called there.
    #[error("{op} is undefined at the antipode -e0")]
    AntipodeDomain { op: &'static str },

    /// A zero or otherwise degenerate input.
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// A stated precondition does not hold for the given inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An operator expected to be orthogonal is not, within tolerance.
    #[error("operator is not orthogonal (defect {defect})")]
    NotOrthogonal { defect: f64 },

    /// An operator expected to fix `e0` (lie in O(V)) does not.
    #[error("operator does not fix e0 (defect {defect})")]
    NotInOv { defect: f64 },

    /// Antipodal points do not determine a unique spherical line.
    #[error("antipodal points admit no unique spherical line")]
    AntipodalPair,

    /// Rejection sampling failed to produce a value within the draw cap.
    #[error("random generator exhausted after {draws} draws")]
    GeneratorExhausted { draws: usize },

    /// A finite model failed a structural law required by a construction.
    #[error("structural law failed: {0}")]
    Structure(String),

    /// A malformed Cayley table or table file.
    #[error("malformed table: {0}")]
    MalformedTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

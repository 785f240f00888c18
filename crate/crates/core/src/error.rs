use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Every constructor site fills `op` with the
/// `module::operation` it originates from, so messages are self-locating.
#[derive(Debug, Error)]
pub enum Error {
    /// Structural validation of a space or input artifact failed.
    #[error("{op}: validation failed: {detail}")]
    ValidationError { op: &'static str, detail: String },

    /// An input file could not be parsed.
    #[error("{op}: parse error: {detail}")]
    ParseError { op: &'static str, detail: String },

    /// The space is too small or collapsed for the requested quantity.
    #[error("{op}: degenerate space: {detail}")]
    DegenerateSpace { op: &'static str, detail: String },

    /// The neighborhood graph at the requested scale has more than one
    /// component.
    #[error("{op}: disconnected at the requested scale: {detail}")]
    Disconnected { op: &'static str, detail: String },

    /// A caller-supplied argument is out of range or inconsistent.
    #[error("{op}: invalid argument: {detail}")]
    InvalidArgument { op: &'static str, detail: String },

    /// Exponent outside the admissible range of the operation.
    #[error("{op}: invalid exponent: {detail}")]
    InvalidExponent { op: &'static str, detail: String },

    /// The field is constant (or otherwise carries no usable variation).
    #[error("{op}: degenerate field: {detail}")]
    DegenerateField { op: &'static str, detail: String },

    /// An iteration failed to reach its tolerance or produced non-finite
    /// values.
    #[error("{op}: numerical failure: {detail}")]
    NumericalFailure { op: &'static str, detail: String },

    /// A subset is empty, full, or violates the mass constraint of a cut.
    #[error("{op}: invalid cut: {detail}")]
    InvalidCut { op: &'static str, detail: String },

    /// The instance exceeds the size limit of an exact method.
    #[error("{op}: too large: {detail}")]
    TooLarge { op: &'static str, detail: String },

    /// A correspondence does not cover both index sets.
    #[error("{op}: invalid correspondence: {detail}")]
    InvalidCorrespondence { op: &'static str, detail: String },

    /// Two spaces do not carry mutually comparable model coordinates.
    #[error("{op}: incompatible models: {detail}")]
    IncompatibleModels { op: &'static str, detail: String },

    /// A suspension base violates the diameter precondition.
    #[error("{op}: invalid base: {detail}")]
    InvalidBase { op: &'static str, detail: String },

    #[error("{op}: io error: {source}")]
    Io {
        op: &'static str,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Exit-code class used by the command-line frontend: `1` for input and
    /// validation problems, `2` for numerical failures discovered mid-run.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ValidationError { .. }
            | Error::ParseError { .. }
            | Error::InvalidArgument { .. }
            | Error::InvalidExponent { .. }
            | Error::InvalidCut { .. }
            | Error::TooLarge { .. }
            | Error::InvalidCorrespondence { .. }
            | Error::IncompatibleModels { .. }
            | Error::InvalidBase { .. }
            | Error::Io { .. } => 1,
            Error::DegenerateSpace { .. }
            | Error::Disconnected { .. }
            | Error::DegenerateField { .. }
            | Error::NumericalFailure { .. } => 2,
        }
    }
}

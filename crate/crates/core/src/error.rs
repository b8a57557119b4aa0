use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported mimetic order {0}; expected one of 2, 4, 6, 8")]
    UnsupportedOrder(usize),

    #[error("grid too small for order: {cells} cells, order {order} needs at least {}", 2 * order)]
    GridTooSmall { order: usize, cells: usize },

    #[error("stencil needs {expected} nodes for degree {degree}, got {actual}")]
    StencilArity {
        degree: usize,
        expected: usize,
        actual: usize,
    },

    #[error("singular stencil system: nodes must be distinct")]
    SingularStencil,

    #[error("length mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("shape mismatch: expected {expected_h}x{expected_w}, got {actual_h}x{actual_w}")]
    ShapeMismatch {
        expected_h: usize,
        expected_w: usize,
        actual_h: usize,
        actual_w: usize,
    },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("truncated payload: expected {expected} bytes, got {actual}")]
    TruncatedPayload { expected: usize, actual: usize },

    #[error("unsupported bit depth: {0}")]
    UnsupportedBitDepth(u32),

    #[error("unrecognized image format")]
    UnknownFormat,

    #[error("png decode failed: {0}")]
    Png(String),

    #[error("expected 3 color channels, got {0}")]
    ChannelCount(usize),

    #[error("sample {value} at index {index} outside [0, 1]")]
    SampleOutOfRange { index: usize, value: f64 },

    #[error("invalid image size {height}x{width}")]
    InvalidSize { height: usize, width: usize },

    #[error("statistic undefined for zero image")]
    ZeroImage,

    #[error("calibration needs at least {min} clean samples, got {actual}")]
    TooFewSamples { min: usize, actual: usize },

    #[error("false-positive rate must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("threshold must be positive and finite, got {0}")]
    InvalidThreshold(f64),

    #[error("calibration was computed for order {calibrated}, requested {requested}")]
    OrderMismatch { calibrated: usize, requested: usize },

    #[error("perturbation budget must be non-negative and finite, got {0}")]
    InvalidBudget(f64),

    #[error("no images found in {0}")]
    EmptyDirectory(PathBuf),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn at(self, path: impl Into<PathBuf>) -> Error {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

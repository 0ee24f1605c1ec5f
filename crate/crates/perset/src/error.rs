//! Crate-wide error type. Variant names double as the stable error names
//! printed by the CLI on stderr.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Asymmetric: d({i},{j}) = {forward} but d({j},{i}) = {backward}")]
    Asymmetric { i: usize, j: usize, forward: f64, backward: f64 },

    #[error("NonzeroDiagonal: d({i},{i}) = {value}")]
    NonzeroDiagonal { i: usize, value: f64 },

    /// `d(i,j) > d(i,k) + d(k,j)` beyond tolerance.
    #[error("TriangleViolation({i},{j},{k}): d({i},{j}) > d({i},{k}) + d({k},{j})")]
    TriangleViolation { i: usize, j: usize, k: usize },

    #[error("ZeroOffDiagonal: d({i},{j}) = 0 in a strict metric space")]
    ZeroOffDiagonal { i: usize, j: usize },

    #[error("BadMatrix: {0}")]
    BadMatrix(String),

    #[error("TooFewPoints: operation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("NonpositiveScale: {0}")]
    NonpositiveScale(f64),

    #[error("LabelMismatch: {0}")]
    LabelMismatch(String),

    #[error("GroundSetMismatch: {0}")]
    GroundSetMismatch(String),

    #[error("NegativeScale: {0}")]
    NegativeScale(f64),

    #[error("NotADendrogram: final partition has {blocks} blocks")]
    NotADendrogram { blocks: usize },

    #[error("EmptySpace")]
    EmptySpace,

    #[error("UnknownScheme: {0}")]
    UnknownScheme(String),

    #[error("UncoveredPoint: lens value {value} of point {label} lies in no cover interval")]
    UncoveredPoint { label: String, value: f64 },

    #[error("NotACorrespondence: {side} point {index} is uncovered")]
    NotACorrespondence { side: char, index: usize },

    #[error("TooLarge: |X| + |Y| = {total} exceeds the exhaustive search limit {limit}")]
    TooLarge { total: usize, limit: usize },

    #[error("EmptySubset")]
    EmptySubset,

    #[error("MissingLabels: ambient sample carries no component labels")]
    MissingLabels,

    #[error("OverlappingComponents: components {a} and {b} are at distance 0")]
    OverlappingComponents { a: usize, b: usize },

    #[error("BadSpec: {0}")]
    BadSpec(String),

    #[error("SampleTooSparse: covering radius {radius} >= half the component gap {gap}")]
    SampleTooSparse { radius: f64, gap: f64 },

    #[error("EmptySample")]
    EmptySample,

    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),

    #[error("Io: {0}")]
    Io(String),

    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the variant, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Asymmetric { .. } => "Asymmetric",
            Error::NonzeroDiagonal { .. } => "NonzeroDiagonal",
            Error::TriangleViolation { .. } => "TriangleViolation",
            Error::ZeroOffDiagonal { .. } => "ZeroOffDiagonal",
            Error::BadMatrix(_) => "BadMatrix",
            Error::TooFewPoints { .. } => "TooFewPoints",
            Error::NonpositiveScale(_) => "NonpositiveScale",
            Error::LabelMismatch(_) => "LabelMismatch",
            Error::GroundSetMismatch(_) => "GroundSetMismatch",
            Error::NegativeScale(_) => "NegativeScale",
            Error::NotADendrogram { .. } => "NotADendrogram",
            Error::EmptySpace => "EmptySpace",
            Error::UnknownScheme(_) => "UnknownScheme",
            Error::UncoveredPoint { .. } => "UncoveredPoint",
            Error::NotACorrespondence { .. } => "NotACorrespondence",
            Error::TooLarge { .. } => "TooLarge",
            Error::EmptySubset => "EmptySubset",
            Error::MissingLabels => "MissingLabels",
            Error::OverlappingComponents { .. } => "OverlappingComponents",
            Error::BadSpec(_) => "BadSpec",
            Error::SampleTooSparse { .. } => "SampleTooSparse",
            Error::EmptySample => "EmptySample",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::Io(_) => "Io",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

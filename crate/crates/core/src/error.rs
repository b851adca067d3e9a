use thiserror::Error;

use crate::coloring::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge index {index} out of range ({count} edges)")]
    EdgeOutOfRange { index: usize, count: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph JSON edges are not canonical: {0}")]
    NonCanonicalJson(String),

    #[error("invalid Hamilton cycle: {0}")]
    InvalidHamilton(String),

    #[error("invalid LCF notation: {0}")]
    InvalidLcf(String),
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("unknown catalog key `{0}`")]
    UnknownCatalogKey(String),
    #[error("catalog data error: {0}")]
    CatalogData(String),

    #[error("color {color} out of range for palette of {palette} colors")]
    ColorOutOfRange { color: usize, palette: usize },
    #[error("coloring has {got} {what} colors, graph needs {expected}")]
    ColoringShape {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("invalid pattern string: {0}")]
    InvalidPattern(String),
    #[error("pattern expands to {got} tokens, Hamilton cycle has {expected} vertices")]
    PatternLength { got: usize, expected: usize },
    #[error("not a semi-total coloring ({} violations, first: {})", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    NotSemiTotal(Vec<Violation>),
    #[error("not a total coloring")]
    NotTotal,
    #[error("no valid seam repair found for the default lacunar coloring")]
    NoSeamRepair,
    #[error("colorings are over different graphs")]
    GraphMismatch,
    #[error("coloring is not lacunar")]
    NotLacunar,

    #[error("start vertex {vertex} has color {actual}, expected {expected}")]
    StartColor {
        vertex: usize,
        expected: usize,
        actual: usize,
    },
    #[error("color pair must be two distinct colors, got ({0}, {0})")]
    EqualColors(usize),
    #[error("path does not match the coloring: {0}")]
    PathMismatch(String),
    #[error("edge {0} is not a beta-edge")]
    NotBetaEdge(usize),
    #[error("swap produced an invalid coloring: {0}")]
    PostValidation(String),

    #[error("map has {got} entries, source graph has {expected} vertices")]
    MapLength { got: usize, expected: usize },
    #[error("map is not surjective: target vertex {0} has no preimage")]
    NotSurjective(usize),
    #[error("map is not a local bijection at source vertex {0}")]
    NotLocalBijection(usize),
    #[error("unequal fibers: target vertex {vertex} has {size} preimages, expected {expected}")]
    UnequalFibers {
        vertex: usize,
        size: usize,
        expected: usize,
    },
    #[error("maximum degrees differ ({source_degree} vs {target_degree})")]
    DegreeMismatch {
        source_degree: usize,
        target_degree: usize,
    },
    #[error("lift scaling law violated: {0}")]
    Scaling(String),

    #[error("oracle cap {cap} exceeds the default without explicit consent")]
    CapConsent { cap: usize },

    #[error("I/O error: {0}")]
    Io(String),
    #[error("JSON error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

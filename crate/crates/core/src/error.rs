use thiserror::Error;

use crate::geometry::Space;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: Space, found: Space },

    #[error("invalid point on {space}: {reason}")]
    InvalidPoint { space: Space, reason: String },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("configuration points {i} and {j} are not distinct (distance {distance:e})")]
    NotDistinct { i: usize, j: usize, distance: f64 },

    #[error("projection index r={r} outside 1..={k}")]
    ProjectionOutOfRange { r: usize, k: usize },

    #[error("no unique shortest geodesic between the given points")]
    AmbiguousGeodesic,

    #[error("recipe {recipe} is not defined on {space}")]
    RecipeMismatch { recipe: String, space: Space },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("could not isolate the preimages of a regular value after {attempts} attempts")]
    DegenerateRegularValue { attempts: usize },

    #[error("coincidence detected: {0}")]
    CoincidenceDetected(String),

    #[error("empty list of self-maps")]
    EmptyMapList,

    #[error("search budget of {0} partial assignments exceeded")]
    SearchBudgetExceeded(u64),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid graded ring: {0}")]
    InvalidRing(String),

    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),

    #[error("certificate rejected: {0}")]
    Rejected(#[from] crate::certificates::Rejection),

    #[error("{0}")]
    Contradiction(Box<crate::bounds::Contradiction>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("space {0} is not Hausdorff; the characterization does not apply")]
    NotHausdorff(String),

    #[error("query lies in no planner region")]
    DegenerateQuery,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid family spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("invalid vertex {vertex} for family {family}: {reason}")]
    InvalidVertex {
        family: String,
        vertex: String,
        reason: String,
    },

    #[error("invalid edge {edge}: {reason}")]
    InvalidEdge { edge: String, reason: String },

    #[error("edge {edge} is not incident to {vertex}")]
    NotIncident { edge: String, vertex: String },

    #[error("malformed walk: {0}")]
    InvalidWalk(String),

    #[error("node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("series too short: need counts up to n = {required}, have n = {available}")]
    SeriesTooShort { required: usize, available: usize },

    #[error("series is truncated at n = {0}")]
    Truncated(usize),

    #[error("no series supplied for orbit representative {0}")]
    MissingOrbitSeries(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("graph has {n} vertices, limit is {limit}")]
    TooManyVertices { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),

    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph needs at least 2 vertices to have a biclique")]
    TooSmallForBicliques,

    #[error("not a biclique of the host graph")]
    NotABiclique,

    #[error("KB-vertex {vertex} has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: usize, degree: usize },

    #[error("KB-vertex {vertex} out of range ({count} bicliques)")]
    NoSuchKbVertex { vertex: usize, count: usize },

    #[error("host graph has false twins")]
    HasFalseTwins,

    #[error("triple ({0}, {1}, {2}) is not an induced P3")]
    NotInducedP3(usize, usize, usize),

    #[error("no degree-2 family matches")]
    NoFamilyMatches,

    #[error("plan does not match the host graph")]
    StalePlan,

    #[error("no preimage found for KB(H) - q within {max_n} vertices")]
    NoPreimage { max_n: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

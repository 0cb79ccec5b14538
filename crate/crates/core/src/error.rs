use thiserror::Error;

use crate::graph::Name;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element symbol `{0}`")]
    UnknownElement(String),
    #[error("invalid vertex label `{0}`")]
    InvalidLabel(String),
    #[error("invalid edge label `{0}`")]
    InvalidEdgeLabel(String),
    #[error("vertex `{0}` already exists")]
    DuplicateVertex(Name),
    #[error("reference to unknown vertex `{0}`")]
    DanglingName(Name),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(Name),

    #[error("relation element repeated in {0:?}")]
    RepeatedElement(Vec<Name>),
    #[error("tetrahedron {0:?} does not project onto the triangle relation")]
    ProjectionFailure(Vec<Name>),
    #[error("orientation violates graph constraints: {0}")]
    InvalidOrientation(String),
    #[error("map is not a labelled-graph isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("rule not applicable: {0}")]
    NotApplicable(String),
    #[error("rule {index} not applicable: {reason}")]
    NotApplicableAtIndex { index: usize, reason: String },
    #[error("malformed rule: {0}")]
    MalformedRule(String),

    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("not a matching: {0}")]
    NotAMatching(String),
    #[error("not a reaction scheme: {0}")]
    NotAScheme(String),
    #[error("matching does not fit the scheme: {0}")]
    SchemeMismatch(String),
    #[error("not a chemical subgraph: {0}")]
    NotChemicalSubgraph(String),
    #[error("net charge mismatch: {0} vs {1}")]
    ChargeMismatch(i64, i64),
    #[error("graph is not molecular: {0}")]
    NotMolecular(String),
    #[error("invalid reaction tuple: {0}")]
    InvalidReaction(String),
    #[error("composition boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("disconnection sequence endpoints are not molecular: {0}")]
    NotMolecularEndpoints(String),
    #[error("environment is not a superset: {0}")]
    NotASuperset(String),
    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),

    #[error("invalid search configuration: {0}")]
    ConfigInvalid(String),
    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema { path: format!("line {}, column {}", e.line(), e.column()), message: e.to_string() }
    }
}

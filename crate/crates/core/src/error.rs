use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("table is not a Latin square: {0}")]
    NotLatin(String),
    #[error("operation is not associative: {0}")]
    NotAssociative(String),
    #[error("no identity element")]
    NoIdentity,
    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("map is not a homomorphism: {0}")]
    NotAHom(String),
    #[error("map is not a bijection")]
    NotBijective,
    #[error("unknown group class `{0}`")]
    UnknownClass(String),
    #[error("condition violated: {0}")]
    ConditionViolated(String),
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arity must be at least 2, got {0}")]
    BadArity(usize),
    #[error("element {element} out of range for carrier of size {order}")]
    OutOfRange { element: usize, order: usize },
    #[error("not a polyadic group: {0}")]
    NotPolyadic(String),
    #[error("no isomorphism found: {0}")]
    NotFound(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("universal extension not found: {0}")]
    ExtensionNotFound(String),
    #[error("enumeration budget exceeded: {work} > {limit} ({what})")]
    BudgetExceeded { what: String, work: u128, limit: u128 },
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("map is ill-defined: {0}")]
    IllDefined(String),
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("inverse limit is empty")]
    EmptyLimit,
    #[error("invalid thread: {0}")]
    InvalidThread(String),
    #[error("incompatible system: {0}")]
    IncompatibleSystem(String),
    #[error("invalid inverse system: {0}")]
    InvalidSystem(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

/// Errors raised while building or analysing finite rings and modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} has order {size}, above the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: u32, b: u32, c: u32 },

    #[error("multiplication does not distribute over addition at ({a}, {b}, {c})")]
    NotDistributive { a: u32, b: u32, c: u32 },

    #[error("element {one} is not a two-sided identity (fails against {witness})")]
    NoIdentity { one: u32, witness: u32 },

    #[error("the identity equals zero")]
    TrivialRing,

    #[error("action is not unital: 1*{m} != {m}")]
    NotUnital { m: u32 },

    #[error("action is not associative: ({r}{s})*{m} != {r}*({s}*{m})")]
    NotAssociativeAction { r: u32, s: u32, m: u32 },

    #[error("action is not bi-additive at ({r}, {m}, {n})")]
    NotBiadditive { r: u32, m: u32, n: u32 },

    #[error("the zero module is not allowed")]
    ZeroModule,

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("submodules belong to different modules")]
    ParentMismatch,

    #[error("modules are defined over different rings")]
    RingMismatch,

    #[error("the set is not a submodule: {0}")]
    NotASubmodule(String),

    #[error("the submodule must be proper")]
    NotProper,

    #[error("the submodule must be fully invariant")]
    NotFullyInvariant,

    #[error("the closed-set family is not closed under finite unions")]
    NotATopology,

    #[error("the predicate is only defined for a non-empty space")]
    EmptySpace,

    #[error("too many spectrum points ({0}); at most 128 are supported")]
    TooManyPoints(usize),

    #[error("integer overflow during exact elimination")]
    Overflow,

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("check `{check}` applies to {expected} subjects")]
    SubjectKindMismatch {
        check: String,
        expected: &'static str,
    },

    #[error("{pointer}: {source}")]
    AtPath {
        pointer: String,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Prefixes this error with a JSON-pointer location.
    pub fn at(self, segment: impl AsRef<str>) -> Error {
        let segment = segment.as_ref();
        match self {
            Error::AtPath { pointer, source } => Error::AtPath {
                pointer: format!("{segment}{pointer}"),
                source,
            },
            other => Error::AtPath {
                pointer: segment.to_string(),
                source: Box::new(other),
            },
        }
    }

    /// The error with any location wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPath { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

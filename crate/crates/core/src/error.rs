use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GradeError {
    #[error("grades belong to different poset descriptors")]
    DescriptorMismatch,
    #[error("lexicographic order is only defined for coordinate grades")]
    UnsupportedOrder,
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("finite poset relation is not a partial order: {0}")]
    NotAPartialOrder(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0} is not collapsible")]
    NotCollapsible(String),
    #[error("no edge with index {0}")]
    MissingEdge(usize),
    #[error("operation requires an R^2-filtered graph")]
    UnsupportedPoset,
    #[error("edge {0} is not cycle-creating")]
    NoWitness(String),
    #[error("edge {0} is a self-loop; its witness path is empty")]
    SelfLoopWitness(String),
    #[error(transparent)]
    Grade(#[from] GradeError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DendrogramError {
    #[error("node {0} registered twice")]
    Duplicate(String),
    #[error("unknown node {0}")]
    MissingNode(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("grid has {size} values on one axis; the limit is {cap}")]
    GridTooLarge { size: usize, cap: usize },
    #[error("the Koszul oracle supports R^n with n <= 3")]
    UnsupportedPoset,
    #[error("{0} is not a supported prime (2, 3 or 5)")]
    UnsupportedField(u32),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Grade { line: usize, source: GradeError },
    #[error("cannot read poset file {path}: {message}")]
    PosetFile { path: String, message: String },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MultiCriticalError {
    #[error("invalid multi-critical graph: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<crate::multicritical::MultiViolation>),
    #[error(transparent)]
    Grade(#[from] GradeError),
}

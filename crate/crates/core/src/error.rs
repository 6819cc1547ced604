use thiserror::Error;

/// Domain errors. Variant names are stable and reported verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DuplicateObject {0}")]
    DuplicateObject(String),
    #[error("MissingIdentity at object {0}")]
    MissingIdentity(String),
    #[error(
        "NotComposable: {first}->{middle} and {middle}->{last} exist but {first}->{last} is empty"
    )]
    NotComposable {
        first: String,
        middle: String,
        last: String,
    },
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("UnknownObject {0}")]
    UnknownObject(String),
    #[error("NotAcyclic: category has a nontrivial circuit of morphisms")]
    NotAcyclic,
    #[error("CapExceeded: more than {0} filters")]
    CapExceeded(usize),
    #[error("MissingValue at object {0}")]
    MissingValue(String),
    #[error("NotDefinable: objects {0} and {1} are reflexible but carry different values")]
    NotDefinable(String, String),
    #[error("NotClassClosed: set splits the reflexibility class of {0}")]
    NotClassClosed(String),
    #[error("NotMeasurable: {0} has no Euler characteristic")]
    NotMeasurable(String),
    #[error("NotMeasurableMap: {0}")]
    NotMeasurableMap(String),
    #[error("SourceTargetMismatch: target of the first map is not the source of the second")]
    SourceTargetMismatch,
    #[error("TargetNotPoset: target category is not a poset")]
    TargetNotPoset,
    #[error("CycleDetected through node {0}")]
    CycleDetected(String),
    #[error("NotCoverEdge ({from},{to}); transitive reduction suggested: {}", fmt_edges(.reduction))]
    NotCoverEdge {
        from: String,
        to: String,
        reduction: Vec<(String, String)>,
    },
    #[error("DuplicateEdge ({0},{1})")]
    DuplicateEdge(String, String),
    #[error("UnknownNode {0}")]
    UnknownNode(String),
    #[error("InvalidPlacement: {0}")]
    InvalidPlacement(String),
    #[error("NotMonotone: h({0}) > h({1}) although {0} <= {1}")]
    NotMonotone(String, String),
}

fn fmt_edges(edges: &[(String, String)]) -> String {
    edges
        .iter()
        .map(|(p, q)| format!("({p},{q})"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Error {
    /// The bare variant name, e.g. `"NotMeasurableMap"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DuplicateObject(_) => "DuplicateObject",
            Error::MissingIdentity(_) => "MissingIdentity",
            Error::NotComposable { .. } => "NotComposable",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::UnknownObject(_) => "UnknownObject",
            Error::NotAcyclic => "NotAcyclic",
            Error::CapExceeded(_) => "CapExceeded",
            Error::MissingValue(_) => "MissingValue",
            Error::NotDefinable(..) => "NotDefinable",
            Error::NotClassClosed(_) => "NotClassClosed",
            Error::NotMeasurable(_) => "NotMeasurable",
            Error::NotMeasurableMap(_) => "NotMeasurableMap",
            Error::SourceTargetMismatch => "SourceTargetMismatch",
            Error::TargetNotPoset => "TargetNotPoset",
            Error::CycleDetected(_) => "CycleDetected",
            Error::NotCoverEdge { .. } => "NotCoverEdge",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::UnknownNode(_) => "UnknownNode",
            Error::InvalidPlacement(_) => "InvalidPlacement",
            Error::NotMonotone(..) => "NotMonotone",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

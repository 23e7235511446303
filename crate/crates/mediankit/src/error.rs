use thiserror::Error;

/// Failure modes shared by all modules. Each maps to a stable upper-case code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("wall count {walls} exceeds enumeration cap {cap}")]
    WallBudgetExceeded { walls: usize, cap: usize },
    #[error("search exceeded node budget {0}")]
    NodeBudgetExceeded(u64),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("point is in the image of the parent space")]
    NotANewPoint,
    #[error("word {word} leaves the window at {detail}")]
    OutOfWindow { word: String, detail: String },
    #[error("displacement {displacement} does not exceed bound {bound}")]
    DisplacementTooSmall { displacement: String, bound: String },
    #[error("inconclusive after words of length <= {0}")]
    Inconclusive(usize),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("halfspaces {0} and {1} are not transverse")]
    NotTransverse(String, String),
    #[error("not a facing tuple: {0}")]
    NotFacing(String),
    #[error("inclusion failed: {0}")]
    InclusionFailed(String),
    #[error("shift map does not preserve the class: {0}")]
    ClassNotPreserved(String),
    #[error("shift map permutes minimal classes: {0}")]
    ClassPermuted(String),
    #[error("tail stabilization not reached within horizon {0}")]
    HorizonExceeded(u64),
    #[error("unknown identifier {0}")]
    UnknownId(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::WallBudgetExceeded { .. } => "WALL_BUDGET_EXCEEDED",
            Error::NodeBudgetExceeded(_) => "NODE_BUDGET_EXCEEDED",
            Error::EmptyInput(_) => "EMPTY_INPUT",
            Error::NotAnAutomorphism(_) => "NOT_AN_AUTOMORPHISM",
            Error::NotANewPoint => "NOT_A_NEW_POINT",
            Error::OutOfWindow { .. } => "OUT_OF_WINDOW",
            Error::DisplacementTooSmall { .. } => "DISPLACEMENT_TOO_SMALL",
            Error::Inconclusive(_) => "INCONCLUSIVE",
            Error::NotFound(_) => "NOT_FOUND",
            Error::NotTransverse(..) => "NOT_TRANSVERSE",
            Error::NotFacing(_) => "NOT_FACING",
            Error::InclusionFailed(_) => "INCLUSION_FAILED",
            Error::ClassNotPreserved(_) => "CLASS_NOT_PRESERVED",
            Error::ClassPermuted(_) => "CLASS_PERMUTED",
            Error::HorizonExceeded(_) => "HORIZON_EXCEEDED",
            Error::UnknownId(_) => "UNKNOWN_ID",
            Error::Invalid(_) => "INVALID_INPUT",
        }
    }

    /// Search exhausted its budget without a verdict either way.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::Inconclusive(_)
                | Error::OutOfWindow { .. }
                | Error::NodeBudgetExceeded(_)
                | Error::WallBudgetExceeded { .. }
                | Error::HorizonExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

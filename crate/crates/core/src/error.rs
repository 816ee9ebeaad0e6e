use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid stair polygon: {0}")]
    InvalidStair(String),

    #[error("invalid rectangle: {0}")]
    InvalidRect(String),

    #[error("invalid covering instance: {0}")]
    InvalidInstance(String),

    #[error("translate index {index} out of range (instance has {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("argument must be non-negative, got {0}")]
    Negative(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),

    #[error("infeasible within budget: no lattice with multiplicity >= {k} found in {evaluations} evaluations")]
    InfeasibleWithinBudget { k: u32, evaluations: usize },

    #[error("optimality guard tripped: lattice density {density} is below the proven optimum {optimum}")]
    OptimalityViolated { density: String, optimum: String },

    #[error("no covering-preserving perturbation of translate {index} within {retries} retries")]
    PerturbationExhausted { index: usize, retries: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

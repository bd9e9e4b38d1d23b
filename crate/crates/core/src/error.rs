use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation degree must be positive")]
    DegreeZero,
    #[error("not a permutation of 1..{degree}: {detail}")]
    NotBijective { degree: usize, detail: String },
    #[error("group order {order} exceeds the supported cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("subgroup does not belong to this group")]
    NotSubgroup,
    #[error("unknown catalog group `{0}`")]
    UnknownCatalog(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("double coset counts disagree: direct {direct}, transversal formula {transversal}, class formula {class_formula}")]
    DoubleCosetMismatch {
        direct: String,
        transversal: String,
        class_formula: String,
    },
    #[error("{k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: i64, conductor: u32 },
    #[error("value {0} is not rational")]
    NotRational(String),
    #[error("{0} is not a nonnegative integer")]
    NotIntegral(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("Riemann-Hurwitz genus {value} is not a nonnegative integer")]
    RiemannHurwitz { value: String },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("package decomposition needs a nontrivial stabilizer")]
    TrivialStabilizer,
    #[error("internal consistency check failed: {0}")]
    Defect(String),
}

impl Error {
    pub(crate) fn parse(input: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }
}

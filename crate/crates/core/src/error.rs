use num_bigint::BigUint;
use thiserror::Error;

use crate::poincare::PoincareError;
use crate::profiles::{FactName, TriState};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poincare(#[from] PoincareError),

    #[error("Smith-Thom violation on {id}: real total {real} exceeds complex total {complex}")]
    SmithThomViolation {
        id: String,
        real: BigUint,
        complex: BigUint,
    },

    #[error(
        "fact contradiction on {id}: {fact} is {existing} [{existing_provenance}] \
         but {attempted} was derived [{attempted_provenance}]"
    )]
    FactContradiction {
        id: String,
        fact: FactName,
        existing: TriState,
        existing_provenance: String,
        attempted: TriState,
        attempted_provenance: String,
    },

    #[error("profile {id} is inconsistent: {detail}")]
    Inconsistent { id: String, detail: String },

    #[error("Harnack-Klein violation: a genus {genus} curve has at most {} real circles, got {circles}", genus + 1)]
    HarnackViolation { genus: u32, circles: u32 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("unknown catalog surface '{0}'")]
    UnknownSurface(String),

    #[error("rule {rule} is not applicable: {missing}")]
    RuleNotApplicable { rule: String, missing: String },

    #[error("rank {rank} and degree {degree} are not coprime")]
    NotCoprime { rank: i64, degree: i64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown variety '{0}'")]
    UnknownVariety(String),

    #[error("variety '{0}' is already defined")]
    DuplicateId(String),

    #[error("certificate for M({subject}) would create a cycle")]
    CertificateCycle { subject: String },

    #[error("unknown certificate '{0}'")]
    UnknownCertificate(String),

    #[error("strict mode: rule {rule} rests on an unchecked assumption: {assumption}")]
    UncheckedAssumption { rule: String, assumption: String },

    #[error("series order {requested} exceeds the truncation guard {limit}")]
    TruncationGuard { requested: usize, limit: usize },

    #[error("invalid parameters for {rule}: {detail}")]
    InvalidParameter { rule: String, detail: String },
}

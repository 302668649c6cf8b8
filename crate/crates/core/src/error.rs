use thiserror::Error;

/// Conditions a candidate model point must satisfy over `A[t]`.
///
/// `Determinant`: `det B ≡ 0 mod q`. `Residual`: `p(x, ȳ) ≡ 0 mod q^r`.
/// `Adjugate`: `B̂·p(x, ȳ) ≡ 0 mod q^{r+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Determinant,
    Residual,
    Adjugate,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::Determinant => write!(f, "determinant condition (det B ≡ 0 mod q)"),
            Condition::Residual => write!(f, "residual condition (p(x, ȳ) ≡ 0 mod q^r)"),
            Condition::Adjugate => {
                write!(f, "adjugate condition (adj(B)·p(x, ȳ) ≡ 0 mod q^(r+1))")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands live in different rings: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("element is not a unit (residue is zero)")]
    NotAUnit,
    #[error("divisor is not monic")]
    NotMonic,
    #[error("divisor is not congruent to a power of t modulo the maximal ideal")]
    NotDistinguished,
    #[error("base field {0} is infinite; enumeration is impossible")]
    NotEnumerable(String),
    #[error("residue of the series vanishes to precision {precision}")]
    ResidueZero { precision: usize },
    #[error("precision exhausted: need {needed}, have {available} ({context})")]
    PrecisionExhausted {
        needed: usize,
        available: usize,
        context: String,
    },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{0}")]
    Structural(String),
    #[error("arc does not lie on the variety: equation p{index} has nonzero coefficient at t^{order}")]
    ArcNotOnVariety { index: usize, order: usize },
    #[error("arc lies in the degeneracy locus: det(dp/dy) vanishes to precision {precision}")]
    ArcInDegeneracyLocus { precision: usize },
    #[error("lift obstructed at level {level}: {condition} violated")]
    ObstructedLift { level: usize, condition: Condition },
    #[error("inconsistent input: {condition} violated")]
    InconsistentInput { condition: Condition },
    #[error("refused: search space of {size_log2:.1} bits exceeds the {limit_log2}-bit guard")]
    Refused { size_log2: f64, limit_log2: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precision(needed: usize, available: usize, context: impl Into<String>) -> Self {
        Error::PrecisionExhausted {
            needed,
            available,
            context: context.into(),
        }
    }
}

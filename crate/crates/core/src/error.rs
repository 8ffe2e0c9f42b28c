use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("member {member} lies outside window [{lo}, {hi}]")]
    OutOfWindow { member: i64, lo: i64, hi: i64 },

    #[error("shift t = {t} is not shift-safe: n + |t| = {need} exceeds window length {len}")]
    ShiftUnsafe { t: i64, need: u64, len: u64 },

    /// The covering bound needs eps < gamma^2.
    #[error("bound undefined: eps = {eps} is not below gamma^2 = {gamma_sq}")]
    BoundUndefined { eps: String, gamma_sq: String },

    #[error("no witness: {0}")]
    NoWitness(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Whether the error reflects infeasible parameters (as opposed to bad input).
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::BoundUndefined { .. }
                | Error::NoWitness(_)
                | Error::Infeasible(_)
                | Error::Generation(_)
        )
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),

    #[error("central element is not dominant: {root} pairs to {pairing}")]
    NonDominant { root: String, pairing: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{0} is not a root of the system")]
    NotARoot(String),

    #[error("not a positive system: {0}")]
    NotPositiveSystem(String),

    #[error("invalid Weyl element: {0}")]
    InvalidWeylElement(String),

    #[error("parabolic subgroup exceeds enumeration cap of {cap} elements")]
    EnumerationCap { cap: usize },

    #[error("invalid gamma system: {0}")]
    InvalidGammaSystem(String),

    #[error("descriptor describes a closed orbit: every gamma lies in w(Delta_Theta)")]
    NotNonClosed,

    #[error("beta-system case precondition violated: {0}")]
    BetaCase(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("defining element does not match Theta: {0}")]
    ZThetaMismatch(String),

    #[error("separation certificate failed: gap {gap} is not positive")]
    CertificateFailure { gap: String },

    #[error("degenerate classification; near-zero quantities: {}", fmt_quantities(.quantities))]
    Degenerate { quantities: Vec<(String, f64)> },

    #[error("flag matches no orbit definition: {0}")]
    Unclassified(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("no witness found within budget (best violation {best_violation:e})")]
    NotFound { best_violation: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn fmt_quantities(q: &[(String, f64)]) -> String {
    q.iter()
        .map(|(name, v)| format!("{name}={v:e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

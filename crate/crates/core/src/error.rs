use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by a zero series")]
    DivisionByZero,
    #[error("truncation window is empty")]
    EmptyWindow,
    #[error("ramification {to} is not compatible with {from}")]
    NotMultiple { from: u32, to: u32 },
    #[error("face is not on the Newton polygon")]
    FaceNotOnPolygon,
    #[error("leading term does not annihilate the truncation (residual {0:e})")]
    NotAnnihilated(f64),
    #[error("kappa violates 2κ₀+κ₁+κ₂+κ₃+κ₄ = 1 (left side is {0})")]
    KappaConstraint(String),
    #[error("kappa is within tolerance of a wall; use rational input")]
    AmbiguousWall,
    #[error("rational kappa required for {0}")]
    NeedRational(&'static str),
    #[error("parameter predicate failed: {0}")]
    Predicate(String),
    #[error("resonance at exponent {0}")]
    Resonance(String),
    #[error("q is identically 0, 1 or z; the germ is Riccati-degenerate")]
    RiccatiDegenerate,
    #[error("unbounded affine growth: y_j + eps*y_k = {0:e}")]
    UnboundedGrowth(f64),
    #[error("z = {0} lies on the branch cut [1, inf)")]
    BranchCut(String),
    #[error("excluded point: {0}")]
    Excluded(String),
    #[error("pole guard tripped at z = {z} ({what})")]
    PoleGuard { z: String, what: String },
    #[error("step size underflow at z = {0}")]
    StepUnderflow(String),
    #[error("no return within {0} loops")]
    Diverged(u32),
    #[error("inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

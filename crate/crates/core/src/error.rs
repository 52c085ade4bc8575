use thiserror::Error;

/// Errors raised by the geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector is at the apex of the cone (all components within tolerance of zero)")]
    Apex,
    #[error("vector lies on the null cone, |Q(X)| = {0:e} is below tolerance")]
    OnCone(f64),
    #[error("vector is not on the null cone, Q(X) = {0:e}")]
    NotOnCone(f64),
    #[error("vector is not on Sigma(+/-): Q(X) = {0:e}, expected +1 or -1")]
    NotOnSigma(f64),
    #[error("point lies at the conformal infinity of the domain (X5 - X6 = {0:e})")]
    AtDomainInfinity(f64),
    #[error("lambda must be strictly positive and finite, got {0}")]
    InvalidLambda(f64),
    #[error("finite-difference step {step} is too large for lambda = {lambda}")]
    StepTooLarge { step: f64, lambda: f64 },
    #[error("invalid integration setting: {0}")]
    InvalidStep(String),
    #[error("parameter outside the domain of the closed-form solution: {0}")]
    ParamDomain(String),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("invalid generator specification: {0}")]
    InvalidSpec(String),
    #[error("operation requires a point of Sigma-minus")]
    WrongDomain,
    #[error("matrix does not preserve the O(4,2) form: max |M^T G M - G| = {0:e}")]
    NotConformal(f64),
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Failures reported by the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("grid too small")]
    GridTooSmall,
    #[error("period shorter than kernel support")]
    PeriodTooShort,
    #[error("state u=1 stable")]
    EquilibriumStable,
    #[error("tongue closed at this D")]
    TongueClosed,
    #[error("blow-up detected at t = {t}")]
    BlowUp { t: f64 },
    #[error("predictor undefined at this t")]
    PredictorUndefined,
    #[error("amplitude left the linear regime before the fit window")]
    NonlinearRegime,
    #[error("Newton failed after {iterations} iterations, residual {residual:.3e}")]
    NewtonFailure {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },
    #[error("trivial attractor; refine seed")]
    TrivialAttractor,
    #[error("increase X̂_R")]
    TailUnresolved,
    #[error("no positive front solution")]
    NoPositiveFront,
    #[error("refine D grid (branch jump near D = {d:.6e})")]
    BranchJump { d: f64 },
    #[error("root finding failed: {0}")]
    Root(String),
    #[error("time step underflow at t = {t}")]
    StepUnderflow { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

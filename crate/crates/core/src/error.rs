use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative method (quadrature, root finder, inversion) gave up.
    #[error("{op}: no convergence: {detail}")]
    Convergence { op: &'static str, detail: String },

    /// A fixed-step integration would need more steps than allowed.
    #[error("requested {requested} steps, limit is {max_steps}")]
    StepLimit { requested: usize, max_steps: usize },

    /// The integrated state left the finite numbers.
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },

    /// The oracle never returned to its section or turning point.
    #[error("{what} not detected within {max_steps} steps")]
    NotDetected { what: &'static str, max_steps: usize },

    /// The integration hit its deadline.
    #[error("integration interrupted at t = {t}")]
    Interrupted { t: f64 },

    /// Closed-form integration by parts is only implemented to a fixed depth.
    #[error("integration by parts not available for p = {p} (max {max})")]
    ByPartsUnavailable { p: u32, max: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

pub(crate) fn convergence(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Convergence {
        op,
        detail: detail.into(),
    }
}

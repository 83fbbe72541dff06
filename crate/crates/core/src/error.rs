use thiserror::Error;

/// Errors produced by the model, spectra and oracle layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a domain precondition (negative photon number,
    /// non-positive loss ratio, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A spectrum was requested at a fixed point whose drift matrix is not
    /// Hurwitz, i.e. at or above the Hopf bifurcation where the
    /// linearization is invalid.
    #[error("unstable system: max Re eigenvalue = {max_re:.3e} >= 0")]
    UnstableSystem { max_re: f64 },

    /// The resolvent inversion failed; only possible at a marginal point.
    #[error("singular matrix while inverting the resolvent at omega = {omega}")]
    SingularMatrix { omega: f64 },

    /// A Monte Carlo configuration that cannot resolve the dynamics.
    #[error("oracle configuration too coarse: {0}")]
    ConfigTooCoarse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

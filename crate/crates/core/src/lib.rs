//! Analysis toolkit for a driven two-mode optical cavity in which a
//! frequency-doubling nonlinearity competes with a Kerr-type one.
//!
//! The crate works entirely in scaled dimensionless variables: `model`
//! holds the deterministic fixed points, their eigenvalues and stability;
//! `spectra` the linearized quantum-noise spectra with phase and
//! frequency optimization; `oracle` independent stochastic and
//! polynomial cross-checks; `cli` the command-line front end.

pub mod cli;
pub mod error;
pub mod model;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use model::{
    classify_stability, critical_photon_number, drive_for_photon_number, efficiencies,
    eigenvalues_closed_form, jacobian, steady_states, CavityParams, EigenSet, FixedPoint,
    Stability,
};
pub use oracle::{simulate_linear_ou, steady_state_oracle, OracleConfig, SpectrumEstimate};
pub use spectra::{
    diffusion_matrix, optimal_frequency, quadrature_spectra, spectrum_matrix, sweep,
    LinearizedSystem, Mode, SqueezePoint, SweepRow,
};

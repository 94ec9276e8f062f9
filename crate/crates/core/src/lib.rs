//! Quantum-noise spectra of the polarization (Stokes) parameters of a
//! spin-flip model VCSEL.
//!
//! The crate covers the stationary x-polarized operating point and its
//! stability, closed-form quadrature spectra cross-checked against a matrix
//! resolvent computation, a virtual polarimeter (photocurrent spectra,
//! cross-correlations), and a semiclassical integrator for ringdown checks.

pub mod cli;
pub mod csv;
pub mod dynamics;
pub mod error;
pub mod figures;
pub mod grid;
pub mod linalg;
pub mod oracle;
pub mod params;
pub mod polarimeter;
pub mod spectra;
pub mod steady_state;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{FrequencyGrid, Spacing};
pub use oracle::{build_linear_model, compare, oracle_spectra, LinearModel, OracleSpectra, ResidualReport};
pub use params::{derive_operating_point, Branch, LaserParams, OperatingPoint, Violation};
pub use spectra::{
    mean_stokes, quadrature_spectra, stokes_spectra, Channel, ClosedForm, SpectrumMode, SpectrumSet, StokesSpectra,
    StokesVector,
};
pub use steady_state::{char_poly_values, relaxation_frequencies, stability_eigenvalues, Stability};

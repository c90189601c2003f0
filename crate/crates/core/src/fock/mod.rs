//! Brute-force reference engine in a truncated photon-number space.
//!
//! Builds the optical networks mode by mode (squeezers, beam splitters,
//! loss, detectors) without any Gaussian-state shortcut, and evaluates the
//! same observables as the closed forms.

mod basis;
mod channel;
mod density;
mod experiment;
mod hermite;
mod measure;
mod povm;
mod report;
mod state;

pub use basis::{neglected_input_mass, FockBasis, FockCutoff, AUTO_NEGLECTED_MASS, MAX_NEGLECTED_MASS};
pub use channel::{channel_matrix_oracle, QuadratureSpec, ORACLE_ROW_TOLERANCE};
pub use density::DensityOperator;
pub use experiment::{conditional_state, dakna_conditional_state, Conditioned, MIN_PROBABILITY};
pub use hermite::oscillator_functions;
pub use measure::{
    bell_pdf, bell_variances, displace, displacement_matrix, mean_photon, quadrature_pdf,
    quadrature_variance, vacuum_overlap, wigner, BellDensity, QuadratureDensity,
    DISPLACEMENT_TAIL_LIMIT,
};
pub use povm::{on_off_povm, DiagonalPOVM};
pub use report::{
    comparison_grid, oracle_report, OracleReport, ABS_TOL, DAKNA_TRACE_TOL, MODE_B_OVERLAP_MIN, PDET_REL_TOL,
};
pub use state::{beam_splitter, beam_splitter_sector, squeezed_vacuum_state, FockStateVector};

//! Exact 1D Dirac scattering off the general Hulthén barrier.
//!
//! The crate computes reflection and transmission coefficients two
//! independent ways and cross-validates them:
//!
//! * [`analytic`] — exact solutions in terms of Gauss hypergeometric
//!   functions on each half-line, matched at the origin;
//! * [`oracle`] — direct adaptive integration of the coupled first-order
//!   spinor system with a plane-wave decomposition at the box edge.
//!
//! [`sweeps`] grids either energy or barrier strength, locates transmission
//! resonances (T → 1) and measures their widths; [`special`] holds the
//! complex-parameter hypergeometric machinery, which transparently raises
//! its working precision when series cancellation demands it.
//!
//! ```
//! use hulthen::{PotentialParams, transmission};
//!
//! let barrier = PotentialParams::new(4.0, 1.0, 0.9, 1.0).unwrap();
//! let coeffs = transmission(&barrier, 2.0).unwrap();
//! assert!((coeffs.reflection + coeffs.transmission - 1.0).abs() < 1e-8);
//! ```

pub mod analytic;
pub mod error;
pub mod oracle;
pub mod potential;
pub mod special;
pub mod sweeps;

pub use analytic::{
    coefficients, kinematics, left_solution_at_origin, match_at_origin,
    right_solution_at_origin, spinor_components, transmission, Kinematics, MatchedAmplitudes,
    ScatteringCoefficients, SolutionAtOrigin,
};
pub use error::{Error, Result};
pub use oracle::{integrate_spinor, oracle_transmission, IntegrationConfig, SpinorTrajectory};
pub use potential::{OriginSide, PotentialParams};
pub use special::{gauss_2f1, gauss_2f1_derivative, HypergeometricArgs};
pub use sweeps::{
    find_resonances, run_sweep, Engine, FigurePreset, ResonancePeak, SweepRow, SweepSpec,
    SweepTable, SweepVariable,
};

//! Special functions backing the exact solutions: the Gauss hypergeometric
//! function for complex parameters with real argument in [0, 1), its t
//! derivative, and the principal-branch complex log-gamma.

mod bigfloat;
mod connection;
mod ddouble;
mod log_gamma;
mod series;

pub use connection::gauss_2f1_one_minus_t;
pub use log_gamma::log_gamma_complex;
pub use series::{gauss_2f1, gauss_2f1_derivative, HypergeometricArgs, MAX_TERMS};

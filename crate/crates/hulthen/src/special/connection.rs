//! Cross-check evaluation of ₂F₁ through the t → 1−t connection formula.
//!
//! Used only to validate the direct series on an independent path; the
//! matching pipeline never calls it. Degenerates when γ−α−β is an integer,
//! which the scattering parameter sets avoid (γ−α−β = 1 ∓ 2λ with λ purely
//! imaginary and nonzero).

use num_complex::Complex64;

use super::log_gamma::log_gamma_complex;
use super::series::{gauss_2f1, HypergeometricArgs};
use crate::error::{Error, Result};

fn near_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-9 && (z.re - z.re.round()).abs() < 1e-9
}

/// ₂F₁(α, β; γ; t) assembled from two series in 1−t and gamma-function
/// prefactors.
pub fn gauss_2f1_one_minus_t(args: HypergeometricArgs) -> Result<Complex64> {
    let HypergeometricArgs {
        alpha,
        beta,
        gamma,
        t,
    } = args;
    let cab = gamma - alpha - beta;
    if near_integer(cab) {
        return Err(Error::InvalidParameter {
            name: "gamma-alpha-beta",
            value: cab.re,
            reason: "connection formula degenerates at integer gamma-alpha-beta",
        });
    }
    let s = 1.0 - t;

    let first = {
        let prefactor = (log_gamma_complex(gamma)? + log_gamma_complex(cab)?
            - log_gamma_complex(gamma - alpha)?
            - log_gamma_complex(gamma - beta)?)
        .exp();
        prefactor * gauss_2f1(HypergeometricArgs::new(alpha, beta, 1.0 - cab, s)?)?
    };

    let second = {
        let prefactor = (log_gamma_complex(gamma)? + log_gamma_complex(-cab)?
            - log_gamma_complex(alpha)?
            - log_gamma_complex(beta)?)
        .exp();
        // s > 0, so the real logarithm fixes the power's branch
        let power = (cab * s.ln()).exp();
        power * prefactor * gauss_2f1(HypergeometricArgs::new(gamma - alpha, gamma - beta, cab + 1.0, s)?)?
    };

    Ok(first + second)
}

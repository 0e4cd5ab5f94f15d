//! Exact scattering solutions and their matching at the origin.
//!
//! On each half-line the second-order equation for φ = u₁ + iu₂ maps onto
//! the hypergeometric equation under y = q e^{ax} (left) or z = q e^{−ax}
//! (right). The left solution carries incident and reflected waves, the
//! right solution keeps only the transmitted wave; equating φ and dφ/dx at
//! x = 0 (where y = z = q) fixes the reflected and transmitted amplitudes,
//! and the conserved current turns those into R and T.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::special::{gauss_2f1, gauss_2f1_derivative, HypergeometricArgs};

/// Tolerance on the back-substituted matching residual, relative to the
/// largest matrix entry.
pub const MATCHING_RESIDUAL_TOL: f64 = 1e-10;

/// Condition-estimate ceiling beyond which the matching system is treated
/// as degenerate.
pub const MATCHING_CONDITION_LIMIT: f64 = 1e12;

/// Internal-consistency ceiling on |R + T − 1|; anything larger signals a
/// special-function or matching failure rather than physics.
pub const UNITARITY_ERROR_LIMIT: f64 = 1e-6;

/// Scattering wavenumbers and the derived complex exponents.
///
/// k is the asymptotic wavenumber, p the wavenumber shifted by the barrier
/// scale V₀/q; μ = ik/a, ν = ip/a and λ = iV₀/(aq) are purely imaginary by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    energy: f64,
    mass: f64,
    k: f64,
    p: f64,
    a: f64,
    lambda_im: f64,
}

impl Kinematics {
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mu(&self) -> Complex64 {
        Complex64::new(0.0, self.k / self.a)
    }

    pub fn nu(&self) -> Complex64 {
        Complex64::new(0.0, self.p / self.a)
    }

    pub fn lambda(&self) -> Complex64 {
        Complex64::new(0.0, self.lambda_im)
    }
}

/// Positive-branch wavenumbers for a scattering state with E > m.
pub fn kinematics(params: &PotentialParams, energy: f64) -> Result<Kinematics> {
    if !energy.is_finite() || energy <= params.m() {
        return Err(Error::SubThresholdEnergy {
            energy,
            mass: params.m(),
        });
    }
    let m = params.m();
    let shifted = energy + params.v0() / params.q();
    Ok(Kinematics {
        energy,
        mass: m,
        k: (energy * energy - m * m).sqrt(),
        p: (shifted * shifted - m * m).sqrt(),
        a: params.a(),
        lambda_im: params.v0() / (params.a() * params.q()),
    })
}

/// φ and dφ/dx at x = 0 for one basis solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionAtOrigin {
    pub phi: Complex64,
    pub dphi: Complex64,
}

/// The two left-region basis solutions at the origin: index 0 multiplies the
/// incident amplitude A, index 1 the reflected amplitude B.
///
/// Basis s = ±1 is y^{sμ}(1−y)^λ F(sμ−ν+λ, sμ+ν+λ; 1+2sμ; y) evaluated at
/// y = q, with dφ/dx = a·y·dφ/dy.
pub fn left_solution_at_origin(
    kin: &Kinematics,
    params: &PotentialParams,
) -> Result<[SolutionAtOrigin; 2]> {
    let q = params.q();
    let a = params.a();
    let (mu, nu, lambda) = (kin.mu(), kin.nu(), kin.lambda());
    let mut out = [SolutionAtOrigin {
        phi: Complex64::new(0.0, 0.0),
        dphi: Complex64::new(0.0, 0.0),
    }; 2];
    for (slot, sign) in out.iter_mut().zip([1.0, -1.0]) {
        let mu_s = sign * mu;
        let args =
            HypergeometricArgs::new(mu_s - nu + lambda, mu_s + nu + lambda, 1.0 + 2.0 * mu_s, q)?;
        let f = gauss_2f1(args)?;
        let df = gauss_2f1_derivative(args)?;
        // complex powers of the positive reals q and 1−q via the real log
        let prefactor = (mu_s * q.ln() + lambda * (1.0 - q).ln()).exp();
        *slot = SolutionAtOrigin {
            phi: prefactor * f,
            dphi: a * prefactor * ((mu_s - lambda * q / (1.0 - q)) * f + q * df),
        };
    }
    Ok(out)
}

/// The transmitted-wave solution at the origin:
/// z^{−μ}(1−z)^{−λ} F(−μ−ν−λ, −μ+ν−λ; 1−2μ; z) at z = q, with
/// dφ/dx = −a·z·dφ/dz.
pub fn right_solution_at_origin(
    kin: &Kinematics,
    params: &PotentialParams,
) -> Result<SolutionAtOrigin> {
    let q = params.q();
    let a = params.a();
    let (mu, nu, lambda) = (kin.mu(), kin.nu(), kin.lambda());
    let args = HypergeometricArgs::new(-mu - nu - lambda, -mu + nu - lambda, 1.0 - 2.0 * mu, q)?;
    let f = gauss_2f1(args)?;
    let df = gauss_2f1_derivative(args)?;
    let prefactor = (-mu * q.ln() - lambda * (1.0 - q).ln()).exp();
    Ok(SolutionAtOrigin {
        phi: prefactor * f,
        dphi: a * prefactor * ((mu - lambda * q / (1.0 - q)) * f - q * df),
    })
}

/// Amplitudes after matching, with the incident amplitude normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedAmplitudes {
    pub incident: Complex64,
    pub reflected: Complex64,
    pub transmitted: Complex64,
    /// max back-substitution residual over both matching equations,
    /// relative to the largest matrix entry
    pub residual: f64,
}

/// Solves the two matching conditions φ_L(0) = φ_R(0), φ_L′(0) = φ_R′(0)
/// for B and D with A = 1, by 2×2 elimination with partial pivoting.
pub fn match_at_origin(
    left: &[SolutionAtOrigin; 2],
    right: &SolutionAtOrigin,
) -> Result<MatchedAmplitudes> {
    let [basis_a, basis_b] = left;

    let wronskian = basis_a.phi * basis_b.dphi - basis_b.phi * basis_a.dphi;
    if wronskian.norm() < 1e-10 {
        return Err(Error::DegenerateMatching {
            condition: f64::INFINITY,
        });
    }

    // unknowns (B, D):  B·φ_b − D·φ_t = −φ_a,  B·φ_b′ − D·φ_t′ = −φ_a′
    let (a11, a12, b1) = (basis_b.phi, -right.phi, -basis_a.phi);
    let (a21, a22, b2) = (basis_b.dphi, -right.dphi, -basis_a.dphi);

    let norm_sq =
        a11.norm_sqr() + a12.norm_sqr() + a21.norm_sqr() + a22.norm_sqr();
    let det = a11 * a22 - a12 * a21;
    let condition = norm_sq / det.norm();
    if !condition.is_finite() || condition > MATCHING_CONDITION_LIMIT {
        return Err(Error::DegenerateMatching { condition });
    }

    let (reflected, transmitted) = if a21.norm() > a11.norm() {
        let factor = a11 / a21;
        let r12 = a12 - factor * a22;
        let r1 = b1 - factor * b2;
        let d = r1 / r12;
        let b = (b2 - a22 * d) / a21;
        (b, d)
    } else {
        let factor = a21 / a11;
        let r22 = a22 - factor * a12;
        let r2 = b2 - factor * b1;
        let d = r2 / r22;
        let b = (b1 - a12 * d) / a11;
        (b, d)
    };

    let max_entry = a11
        .norm()
        .max(a12.norm())
        .max(a21.norm())
        .max(a22.norm());
    let residual = ((a11 * reflected + a12 * transmitted - b1).norm())
        .max((a21 * reflected + a22 * transmitted - b2).norm())
        / max_entry;
    if residual > MATCHING_RESIDUAL_TOL {
        return Err(Error::MatchingResidual {
            residual,
            tolerance: MATCHING_RESIDUAL_TOL,
        });
    }

    Ok(MatchedAmplitudes {
        incident: Complex64::new(1.0, 0.0),
        reflected,
        transmitted,
        residual,
    })
}

/// Reflection and transmission coefficients with their unitarity residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoefficients {
    pub reflection: f64,
    pub transmission: f64,
    pub unitarity_residual: f64,
}

/// R = |B/A|²(E+k)/(E−k) and T = |D/A|², from the conserved current
/// j = ½(|φ|² − |χ|²).
pub fn coefficients(kin: &Kinematics, amps: &MatchedAmplitudes) -> Result<ScatteringCoefficients> {
    let a_sq = amps.incident.norm_sqr();
    // (E+k)/(E-k) = ((E+k)/m)^2 avoids the cancellation in E-k at high energy
    let flux_ratio = {
        let r = (kin.energy() + kin.k()) / kin.mass();
        r * r
    };
    let reflection = amps.reflected.norm_sqr() / a_sq * flux_ratio;
    let transmission = amps.transmitted.norm_sqr() / a_sq;
    let unitarity_residual = (reflection + transmission - 1.0).abs();
    if unitarity_residual > UNITARITY_ERROR_LIMIT {
        return Err(Error::UnitarityViolation {
            residual: unitarity_residual,
            limit: UNITARITY_ERROR_LIMIT,
        });
    }
    Ok(ScatteringCoefficients {
        reflection,
        transmission,
        unitarity_residual,
    })
}

/// Spinor components from φ and its derivative:
/// χ = [i(E−V)φ − φ′]/(im), u₁ = (φ+χ)/2, u₂ = (φ−χ)/(2i).
pub fn spinor_components(
    phi: Complex64,
    dphi: Complex64,
    kin: &Kinematics,
    potential_value: f64,
) -> (Complex64, Complex64) {
    let chi = ((kin.energy() - potential_value) * phi + Complex64::i() * dphi) / kin.mass();
    let u1 = (phi + chi) / 2.0;
    let u2 = (phi - chi) / (2.0 * Complex64::i());
    (u1, u2)
}

/// Full analytic pipeline: kinematics, basis solutions, matching,
/// coefficients.
pub fn transmission(params: &PotentialParams, energy: f64) -> Result<ScatteringCoefficients> {
    let kin = kinematics(params, energy)?;
    let left = left_solution_at_origin(&kin, params)?;
    let right = right_solution_at_origin(&kin, params)?;
    let amps = match_at_origin(&left, &right)?;
    coefficients(&kin, &amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_params() -> PotentialParams {
        PotentialParams::new(4.0, 1.0, 0.9, 1.0).unwrap()
    }

    #[test]
    fn kinematics_reference_values() {
        let kin = kinematics(&fig1_params(), 2.0).unwrap();
        assert!((kin.k() - 3.0f64.sqrt()).abs() < 1e-15);
        assert!((kin.p() - 6.366_385_489_234_127_6).abs() < 1e-12);
        let lambda = kin.lambda();
        assert_eq!(lambda.re, 0.0);
        assert!((lambda.im - 4.0 / 0.9).abs() < 1e-15);
        assert_eq!(kin.mu().re, 0.0);
        assert_eq!(kin.nu().re, 0.0);
    }

    #[test]
    fn sub_threshold_energy_is_rejected() {
        let p = fig1_params();
        assert!(matches!(
            kinematics(&p, 0.5),
            Err(Error::SubThresholdEnergy { .. })
        ));
        assert!(matches!(
            kinematics(&p, 1.0),
            Err(Error::SubThresholdEnergy { .. })
        ));
        assert!(kinematics(&p, 1.0 + 1e-9).is_ok());
    }

    #[test]
    fn free_limit_of_left_basis_is_a_plane_wave_at_origin() {
        // V0 -> 0 collapses F to 1, so basis 1 reduces to q^{ik/a}
        let p = PotentialParams::new(1e-30, 1.0, 0.9, 1.0).unwrap();
        let kin = kinematics(&p, 2.0).unwrap();
        let [basis_a, _] = left_solution_at_origin(&kin, &p).unwrap();
        let expected = (kin.mu() * 0.9f64.ln()).exp();
        assert!((basis_a.phi - expected).norm() < 1e-12);
    }

    #[test]
    fn free_limit_of_right_solution_is_a_plane_wave_at_origin() {
        let p = PotentialParams::new(1e-30, 1.0, 0.9, 1.0).unwrap();
        let kin = kinematics(&p, 2.0).unwrap();
        let right = right_solution_at_origin(&kin, &p).unwrap();
        let expected = (-kin.mu() * 0.9f64.ln()).exp();
        assert!((right.phi - expected).norm() < 1e-12);
    }

    #[test]
    fn right_solution_modulus_equals_hypergeometric_modulus() {
        // |z^{-mu}| = |(1-z)^{-lambda}| = 1 for purely imaginary mu, lambda
        let p = fig1_params();
        let kin = kinematics(&p, 2.0).unwrap();
        let right = right_solution_at_origin(&kin, &p).unwrap();
        let args = HypergeometricArgs::new(
            -kin.mu() - kin.nu() - kin.lambda(),
            -kin.mu() + kin.nu() - kin.lambda(),
            1.0 - 2.0 * kin.mu(),
            p.q(),
        )
        .unwrap();
        let f = gauss_2f1(args).unwrap();
        assert!((right.phi.norm() - f.norm()).abs() < 1e-12 * f.norm());
    }

    #[test]
    fn left_basis_wronskian_is_minus_two_i_k() {
        // The x-space equation has no first-derivative term, so the
        // Wronskian is constant; its asymptotic value is -2ik.
        for (v0, a, q, e) in [
            (4.0, 1.0, 0.9, 2.0),
            (4.0, 0.5, 0.9, 5.0),
            (4.0, 1.0, 0.5, 1.3),
            (8.0, 2.0, 0.3, 9.0),
            (0.5, 1.0, 0.6, 1.5),
        ] {
            let p = PotentialParams::new(v0, a, q, 1.0).unwrap();
            let kin = kinematics(&p, e).unwrap();
            let [b1, b2] = left_solution_at_origin(&kin, &p).unwrap();
            let w = b1.phi * b2.dphi - b2.phi * b1.dphi;
            let expected = Complex64::new(0.0, -2.0 * kin.k());
            assert!(
                (w - expected).norm() < 1e-9 * expected.norm(),
                "V0={v0} a={a} q={q} E={e}: W = {w}, expected {expected}"
            );
        }
    }

    #[test]
    fn negligible_barrier_transmits_perfectly() {
        let p = PotentialParams::new(1e-12, 1.0, 0.5, 1.0).unwrap();
        let kin = kinematics(&p, 2.0).unwrap();
        let left = left_solution_at_origin(&kin, &p).unwrap();
        let right = right_solution_at_origin(&kin, &p).unwrap();
        let amps = match_at_origin(&left, &right).unwrap();
        assert!(amps.reflected.norm() < 1e-11, "B = {}", amps.reflected);
        assert!((amps.transmitted.norm() - 1.0).abs() < 1e-11);
        let coeffs = coefficients(&kin, &amps).unwrap();
        assert!(coeffs.transmission >= 1.0 - 1e-9);
        assert!(coeffs.reflection <= 1e-9);
    }

    #[test]
    fn perfect_transmission_coefficients() {
        let kin = kinematics(&fig1_params(), 2.0).unwrap();
        let amps = MatchedAmplitudes {
            incident: Complex64::new(1.0, 0.0),
            reflected: Complex64::new(0.0, 0.0),
            transmitted: Complex64::new(0.6, -0.8),
            residual: 0.0,
        };
        let coeffs = coefficients(&kin, &amps).unwrap();
        assert_eq!(coeffs.reflection, 0.0);
        assert!((coeffs.transmission - 1.0).abs() < 1e-15);
    }

    #[test]
    fn total_reflection_requires_unit_r() {
        let kin = kinematics(&fig1_params(), 2.0).unwrap();
        // |B|^2 (E+k)/(E-k) = 1 with D = 0 keeps unitarity
        let e = kin.energy();
        let k = kin.k();
        let b = ((e - k) / (e + k)).sqrt();
        let amps = MatchedAmplitudes {
            incident: Complex64::new(1.0, 0.0),
            reflected: Complex64::new(b, 0.0),
            transmitted: Complex64::new(0.0, 0.0),
            residual: 0.0,
        };
        let coeffs = coefficients(&kin, &amps).unwrap();
        assert_eq!(coeffs.transmission, 0.0);
        assert!((coeffs.reflection - 1.0).abs() < 1e-14);
    }

    #[test]
    fn broken_amplitudes_fail_the_unitarity_check() {
        let kin = kinematics(&fig1_params(), 2.0).unwrap();
        let amps = MatchedAmplitudes {
            incident: Complex64::new(1.0, 0.0),
            reflected: Complex64::new(0.5, 0.0),
            transmitted: Complex64::new(1.0, 0.0),
            residual: 0.0,
        };
        assert!(matches!(
            coefficients(&kin, &amps),
            Err(Error::UnitarityViolation { .. })
        ));
    }

    #[test]
    fn plane_wave_spinor_reproduces_the_free_chi_ratio() {
        // phi = e^{ikx} with V = 0 gives chi = (E-k)/m phi
        let p = fig1_params();
        let kin = kinematics(&p, 2.0).unwrap();
        let x = 0.37;
        let phi = (Complex64::i() * kin.k() * x).exp();
        let dphi = Complex64::i() * kin.k() * phi;
        let (u1, u2) = spinor_components(phi, dphi, &kin, 0.0);
        let chi = (kin.energy() - kin.k()) / kin.mass() * phi;
        assert!((u1 - (phi + chi) / 2.0).norm() < 1e-14);
        assert!((u2 - (phi - chi) / (2.0 * Complex64::i())).norm() < 1e-14);
    }

    #[test]
    fn constant_phi_spinor() {
        // phi = c real, phi' = 0, V = 0: chi = (E/m) c, u1 = c(1 + E/m)/2
        let p = fig1_params();
        let kin = kinematics(&p, 2.0).unwrap();
        let c = Complex64::new(0.7, 0.0);
        let (u1, _) = spinor_components(c, Complex64::new(0.0, 0.0), &kin, 0.0);
        let expected = c * (1.0 + kin.energy() / kin.mass()) / 2.0;
        assert!((u1 - expected).norm() < 1e-14);
    }

    #[test]
    fn matched_spinors_are_continuous_at_the_origin() {
        let p = fig1_params();
        let kin = kinematics(&p, 2.0).unwrap();
        let left = left_solution_at_origin(&kin, &p).unwrap();
        let right = right_solution_at_origin(&kin, &p).unwrap();
        let amps = match_at_origin(&left, &right).unwrap();

        let phi_left = amps.incident * left[0].phi + amps.reflected * left[1].phi;
        let dphi_left = amps.incident * left[0].dphi + amps.reflected * left[1].dphi;
        let phi_right = amps.transmitted * right.phi;
        let dphi_right = amps.transmitted * right.dphi;

        let v0 = p.evaluate(0.0);
        let (u1_l, u2_l) = spinor_components(phi_left, dphi_left, &kin, v0);
        let (u1_r, u2_r) = spinor_components(phi_right, dphi_right, &kin, v0);
        let scale = u1_l.norm().max(u2_l.norm());
        assert!((u1_l - u1_r).norm() <= 1e-10 * scale);
        assert!((u2_l - u2_r).norm() <= 1e-10 * scale);
    }

    #[test]
    fn pipeline_is_bitwise_deterministic() {
        let p = fig1_params();
        let first = transmission(&p, 2.0).unwrap();
        let second = transmission(&p, 2.0).unwrap();
        assert_eq!(
            first.transmission.to_bits(),
            second.transmission.to_bits()
        );
        assert_eq!(first.reflection.to_bits(), second.reflection.to_bits());
    }

    #[test]
    fn fig1_transmission_reference_value() {
        // frozen from a 50-digit evaluation of the same matching system
        let coeffs = transmission(&fig1_params(), 2.0).unwrap();
        assert!(
            (coeffs.transmission - 0.045_337_100_148_188_27).abs() < 1e-11,
            "T = {}",
            coeffs.transmission
        );
        assert!(coeffs.unitarity_residual < 1e-10);
    }
}

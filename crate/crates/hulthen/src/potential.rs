//! The general Hulthén barrier
//!
//! ```text
//! V(x) = Θ(−x) V₀ / (e^{−ax} − q)  +  Θ(x) V₀ / (e^{ax} − q),   0 < q < 1,
//! ```
//!
//! an even, strictly decaying barrier with a cusp (derivative jump) at the
//! origin and maximum V₀/(1−q).

use crate::error::{Error, Result};

/// Margin keeping q strictly inside (0, 1) so that 1/(1−q) and V₀/q stay
/// finite.
pub const Q_MARGIN: f64 = 1e-12;

/// Validated shape parameters of the barrier plus the particle mass
/// (natural units, ħ = c = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    v0: f64,
    a: f64,
    q: f64,
    m: f64,
}

/// Which one-sided limit of dV/dx at the origin to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OriginSide {
    Left,
    Right,
}

impl PotentialParams {
    /// Validates and stores the barrier parameters.
    ///
    /// `v0` may be zero (free particle); `q` must lie strictly inside
    /// (Q_MARGIN, 1 − Q_MARGIN); `a` and `m` must be positive. All values
    /// must be finite.
    pub fn new(v0: f64, a: f64, q: f64, m: f64) -> Result<Self> {
        if !v0.is_finite() || v0 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "v0",
                value: v0,
                reason: "barrier strength must be finite and non-negative",
            });
        }
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                reason: "diffuseness must be finite and positive",
            });
        }
        if !q.is_finite() || q <= Q_MARGIN || q >= 1.0 - Q_MARGIN {
            return Err(Error::InvalidParameter {
                name: "q",
                value: q,
                reason: "shape parameter must lie strictly inside (0, 1)",
            });
        }
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "m",
                value: m,
                reason: "mass must be finite and positive",
            });
        }
        Ok(Self { v0, a, q, m })
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// V(x). Both branches coincide at the origin, where the value is
    /// V₀/(1−q) by continuity.
    pub fn evaluate(&self, x: f64) -> f64 {
        // e^{a|x|} in both branches keeps evaluate(x) == evaluate(-x) bitwise.
        self.v0 / ((self.a * x.abs()).exp() - self.q)
    }

    /// dV/dx away from the origin. Errors at x = 0, where the cusp makes the
    /// derivative two-valued; use [`derivative_one_sided`] there.
    ///
    /// [`derivative_one_sided`]: Self::derivative_one_sided
    pub fn derivative(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            return Err(Error::DerivativeAtOrigin);
        }
        let e = (self.a * x.abs()).exp();
        let slope = self.v0 * self.a * e / ((e - self.q) * (e - self.q));
        // V grows toward the origin from either side: positive slope for
        // x < 0, negative for x > 0.
        Ok(if x < 0.0 { slope } else { -slope })
    }

    /// One-sided limits of dV/dx at the origin: +V₀a/(1−q)² from the left,
    /// −V₀a/(1−q)² from the right.
    pub fn derivative_one_sided(&self, side: OriginSide) -> f64 {
        let magnitude = self.v0 * self.a / ((1.0 - self.q) * (1.0 - self.q));
        match side {
            OriginSide::Left => magnitude,
            OriginSide::Right => -magnitude,
        }
    }

    /// The barrier maximum V₀/(1−q), attained at x = 0.
    pub fn barrier_height(&self) -> f64 {
        self.v0 / (1.0 - self.q)
    }
}

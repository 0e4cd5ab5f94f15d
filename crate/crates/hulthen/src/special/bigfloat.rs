//! Minimal arbitrary-precision binary floats on top of `num-bigint`, used
//! only by the hypergeometric series when the requested value is smaller
//! than the largest intermediate term by more than double-double precision
//! can absorb.
//!
//! A value is `mant * 2^exp` with the mantissa rounded to a caller-chosen
//! number of bits after every operation. Only the operations the series
//! recurrence needs are implemented.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct BigF {
    mant: BigInt,
    exp: i64,
}

impl BigF {
    pub fn zero() -> BigF {
        BigF {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_f64(x: f64) -> BigF {
        assert!(x.is_finite(), "BigF::from_f64 requires a finite input");
        if x == 0.0 {
            return BigF::zero();
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let raw_frac = bits & 0x000f_ffff_ffff_ffff;
        let (frac, exp) = if raw_exp == 0 {
            (raw_frac, -1074) // subnormal
        } else {
            (raw_frac | (1 << 52), raw_exp - 1075)
        };
        let mut mant = BigInt::from(frac);
        if x.is_sign_negative() {
            mant = -mant;
        }
        BigF { mant, exp }
    }

    pub fn from_u32(n: u32) -> BigF {
        BigF {
            mant: BigInt::from(n),
            exp: 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let mag = self.mant.magnitude();
        let bits = mag.bits();
        // keep the top 53 bits exactly, track the dropped shift in the exponent
        let (top, shift) = if bits > 53 {
            let s = bits - 53;
            ((mag >> s).to_u64().unwrap(), s as i64)
        } else {
            (mag.to_u64().unwrap(), 0)
        };
        let mut value = top as f64;
        // apply 2^(exp + shift) in two halves so intermediates cannot overflow
        let e = self.exp + shift;
        let half = (e / 2) as i32;
        value *= 2f64.powi(half);
        value *= 2f64.powi((e - half as i64) as i32);
        if self.mant.sign() == Sign::Minus {
            value = -value;
        }
        value
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// floor(log2 |x|), or i64::MIN for zero. Cheap magnitude proxy.
    pub fn log2_mag(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            (self.mant.magnitude().bits() as i64 - 1) + self.exp
        }
    }

    fn round_to(&mut self, prec: u32) {
        let bits = self.mant.magnitude().bits();
        if bits <= prec as u64 {
            return;
        }
        let shift = (bits - prec as u64) as usize;
        let sign = self.mant.sign();
        let mag: BigUint = self.mant.magnitude().clone();
        let half = BigUint::from(1u8) << (shift - 1);
        let rounded = (mag + half) >> shift;
        self.mant = BigInt::from_biguint(sign, rounded);
        self.exp += shift as i64;
    }

    pub fn neg(&self) -> BigF {
        BigF {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &BigF, prec: u32) -> BigF {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let gap = (hi.exp - lo.exp) as u64;
        // the smaller addend is entirely below the rounding cutoff
        if gap > prec as u64 + hi.mant.magnitude().bits() + 2 {
            let mut out = hi.clone();
            out.round_to(prec);
            return out;
        }
        let mut out = BigF {
            mant: (&hi.mant << (gap as usize)) + &lo.mant,
            exp: lo.exp,
        };
        out.round_to(prec);
        out
    }

    pub fn sub(&self, other: &BigF, prec: u32) -> BigF {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &BigF, prec: u32) -> BigF {
        let mut out = BigF {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        };
        out.round_to(prec);
        out
    }

    pub fn div(&self, other: &BigF, prec: u32) -> BigF {
        assert!(!other.is_zero(), "BigF division by zero");
        if self.is_zero() {
            return BigF::zero();
        }
        let a_bits = self.mant.magnitude().bits() as i64;
        let b_bits = other.mant.magnitude().bits() as i64;
        let shift = (prec as i64 + 2 + b_bits - a_bits).max(0) as usize;
        let mut out = BigF {
            mant: (&self.mant << shift) / &other.mant,
            exp: self.exp - other.exp - shift as i64,
        };
        out.round_to(prec);
        out
    }
}

/// Complex value with BigF components.
#[derive(Debug, Clone)]
pub(crate) struct CBigF {
    pub re: BigF,
    pub im: BigF,
}

impl CBigF {
    pub fn from_f64(re: f64, im: f64) -> CBigF {
        CBigF {
            re: BigF::from_f64(re),
            im: BigF::from_f64(im),
        }
    }

    pub fn one() -> CBigF {
        CBigF {
            re: BigF::from_f64(1.0),
            im: BigF::zero(),
        }
    }

    pub fn add(&self, other: &CBigF, prec: u32) -> CBigF {
        CBigF {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &CBigF, prec: u32) -> CBigF {
        CBigF {
            re: self
                .re
                .mul(&other.re, prec)
                .sub(&self.im.mul(&other.im, prec), prec),
            im: self
                .re
                .mul(&other.im, prec)
                .add(&self.im.mul(&other.re, prec), prec),
        }
    }

    /// Multiply by the conjugate of `other`.
    pub fn mul_conj(&self, other: &CBigF, prec: u32) -> CBigF {
        CBigF {
            re: self
                .re
                .mul(&other.re, prec)
                .add(&self.im.mul(&other.im, prec), prec),
            im: self
                .im
                .mul(&other.re, prec)
                .sub(&self.re.mul(&other.im, prec), prec),
        }
    }

    pub fn div_real(&self, d: &BigF, prec: u32) -> CBigF {
        CBigF {
            re: self.re.div(d, prec),
            im: self.im.div(d, prec),
        }
    }

    /// |re|^2 + |im|^2.
    pub fn norm_sqr(&self, prec: u32) -> BigF {
        self.re
            .mul(&self.re, prec)
            .add(&self.im.mul(&self.im, prec), prec)
    }

    /// max of component log2 magnitudes; within one bit of log2 |z|.
    pub fn log2_mag(&self) -> i64 {
        self.re.log2_mag().max(self.im.log2_mag())
    }
}

//! Scaled-integer decimals that carry their own error bound.

use std::fmt;

use num_integer::Integer as _;
use num_traits::Signed;

use crate::exact::{ceil_rational, floor_rational, pow10, Integer, Rational};

/// A decimal `mantissa * 10^-scale` standing for the interval
/// `[mantissa - error_ulps, mantissa + error_ulps] * 10^-scale`.
///
/// Constructors guarantee that the quantity being approximated lies inside the
/// interval; `error_ulps` is never negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointDecimal {
    mantissa: Integer,
    scale: u32,
    error_ulps: Integer,
}

impl FixedPointDecimal {
    /// Assembles a decimal from parts the caller has already proven sound.
    pub fn from_parts(mantissa: Integer, scale: u32, error_ulps: Integer) -> Self {
        assert!(!error_ulps.is_negative(), "negative error bound");
        Self {
            mantissa,
            scale,
            error_ulps,
        }
    }

    /// `floor(r * 10^scale)` with a one-ulp error credit.
    pub fn from_rational(r: &Rational, scale: u32) -> Self {
        let scaled = r * Rational::from_integer(pow10(scale));
        Self::from_parts(floor_rational(&scaled), scale, Integer::from(1))
    }

    /// `ceil(r * 10^scale)` with a one-ulp error credit. The mantissa never
    /// understates `r`, which is what upper bounds need when printed.
    pub fn from_rational_ceil(r: &Rational, scale: u32) -> Self {
        let scaled = r * Rational::from_integer(pow10(scale));
        Self::from_parts(ceil_rational(&scaled), scale, Integer::from(1))
    }

    pub fn mantissa(&self) -> &Integer {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn error_ulps(&self) -> &Integer {
        &self.error_ulps
    }

    fn ulp(&self) -> Rational {
        Rational::new(1.into(), pow10(self.scale))
    }

    pub fn lower(&self) -> Rational {
        Rational::from_integer(&self.mantissa - &self.error_ulps) * self.ulp()
    }

    pub fn upper(&self) -> Rational {
        Rational::from_integer(&self.mantissa + &self.error_ulps) * self.ulp()
    }

    /// The mantissa read as an exact rational.
    pub fn midpoint(&self) -> Rational {
        Rational::from_integer(self.mantissa.clone()) * self.ulp()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    /// Drops fractional digits, flooring the mantissa toward negative infinity.
    ///
    /// The error grows to `ceil(error_ulps / 10^k) + 1` coarse ulps, so the
    /// interval still covers the original one.
    pub fn truncated(&self, scale: u32) -> Self {
        if scale >= self.scale {
            let factor = pow10(scale - self.scale);
            return Self::from_parts(&self.mantissa * &factor, scale, &self.error_ulps * &factor);
        }
        let factor = pow10(self.scale - scale);
        let mantissa = self.mantissa.div_floor(&factor);
        let error: Integer = (&self.error_ulps + &factor - 1u32).div_floor(&factor) + 1u32;
        Self::from_parts(mantissa, scale, error)
    }

    pub fn add(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        let a = self.truncated(scale);
        let b = other.truncated(scale);
        Self::from_parts(a.mantissa + b.mantissa, scale, a.error_ulps + b.error_ulps)
    }
}

/// Writes `[-]<integer part>.<scale digits>`, never in exponent notation.
/// A scale of zero prints the integer part alone.
impl fmt::Display for FixedPointDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let digits = self.mantissa.magnitude().to_str_radix(10);
        let scale = self.scale as usize;
        if scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = if digits.len() <= scale {
            format!("{}{digits}", "0".repeat(scale + 1 - digits.len()))
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int_part}.{frac_part}")
    }
}

pub fn fxp_from_rational(r: &Rational, scale: u32) -> FixedPointDecimal {
    FixedPointDecimal::from_rational(r, scale)
}

pub fn fxp_to_string(d: &FixedPointDecimal) -> String {
    d.to_string()
}

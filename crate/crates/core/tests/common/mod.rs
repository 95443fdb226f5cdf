//! Test-only reference values for `pi` and `pi^2 / 6`, computed from
//! `pi = 16 arctan(1/5) - 4 arctan(1/239)` with plain integer fixed-point
//! arithmetic. Nothing here touches the library's series code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scaled enclosure `[lo, hi] * 10^-scale`.
#[derive(Debug, Clone)]
pub struct Enclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl Enclosure {
    /// Common truncation of both ends to `digits` fractional digits, if they agree.
    pub fn digits(&self, digits: u32) -> Option<String> {
        let factor = ten_pow(self.scale - digits);
        let lo = self.lo.div_floor(&factor);
        let hi = self.hi.div_floor(&factor);
        (lo == hi).then(|| place_point(&lo, digits))
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), ten_pow(self.scale))
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), ten_pow(self.scale))
    }

    pub fn overlaps(&self, lower: &BigRational, upper: &BigRational) -> bool {
        &self.lower() <= upper && lower <= &self.upper()
    }
}

pub fn ten_pow(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

pub fn place_point(m: &BigInt, scale: u32) -> String {
    let digits = m.abs().to_str_radix(10);
    let scale = scale as usize;
    let padded = if digits.len() <= scale {
        format!("{}{digits}", "0".repeat(scale + 1 - digits.len()))
    } else {
        digits
    };
    let (int_part, frac) = padded.split_at(padded.len() - scale);
    let sign = if m.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac}")
}

/// `arctan(1/x) * 10^scale` as `(approx, err)`, with the true value inside
/// `[approx - err, approx + err]`.
fn arctan_inv(x: u64, scale: u32) -> (BigInt, BigInt) {
    let x_sq = BigInt::from(x) * x;
    // floor(floor(a / b) / c) == floor(a / (b c)), so `power` is exactly floor(10^s / x^(2k+1))
    let mut power = ten_pow(scale) / x;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut k = 0u64;
    loop {
        let t = &power / (2 * k + 1);
        if t.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        terms += 1;
        power /= &x_sq;
        k += 1;
    }
    // each kept term is off by under one ulp; the alternating tail is under its first term (< 1 ulp)
    (sum, BigInt::from(terms + 1))
}

/// `pi` enclosed at `scale` digits.
pub fn pi_enclosure(scale: u32) -> Enclosure {
    let (a, ea) = arctan_inv(5, scale);
    let (b, eb) = arctan_inv(239, scale);
    let mid = a * 16 - b * 4;
    let err = ea * 16 + eb * 4;
    Enclosure {
        lo: &mid - &err,
        hi: &mid + &err,
        scale,
    }
}

/// `pi^2 / 6` enclosed at `scale` digits.
pub fn pi_sq_over_6_enclosure(scale: u32) -> Enclosure {
    let pi = pi_enclosure(scale);
    assert!(pi.lo.is_positive());
    let unit6 = ten_pow(scale) * 6;
    let lo = (&pi.lo * &pi.lo).div_floor(&unit6);
    let hi_num = &pi.hi * &pi.hi;
    let hi = (&hi_num + &unit6 - BigInt::one()).div_floor(&unit6);
    Enclosure { lo, hi, scale }
}

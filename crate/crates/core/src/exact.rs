//! Exact integers, rationals and the combinatorial primitives built on them.
//!
//! Integers are `num_bigint::BigInt` and rationals are `num_rational::BigRational`,
//! which keeps every value normalized: the denominator is positive and coprime to
//! the numerator, so `==` on two rationals is plain structural equality.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Builds the normalized fraction `p/q`.
pub fn rat_make(p: Integer, q: Integer) -> Result<Rational> {
    if q.is_zero() {
        return Err(domain("rat_make", "zero denominator"));
    }
    Ok(Rational::new(p, q))
}

/// `num / den` for a small positive numerator, reduced without a big-integer gcd.
///
/// The denominator must be positive.
pub(crate) fn small_over(num: u64, den: Integer) -> Rational {
    debug_assert!(den.is_positive());
    let rem = (&den % num)
        .to_u64()
        .expect("remainder below a u64 modulus");
    let g = num.gcd(&rem);
    if g == 1 {
        Rational::new_raw(Integer::from(num), den)
    } else {
        Rational::new_raw(Integer::from(num / g), den / g)
    }
}

pub fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `n choose k` by the running product `C(n, j) = C(n, j-1) * (n - j + 1) / j`.
///
/// Every intermediate is itself a binomial coefficient, so each division is exact.
pub fn binom(n: u64, k: u64) -> Result<Integer> {
    if k > n {
        return Err(domain("binom", format!("k = {k} exceeds n = {n}")));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc *= n - j + 1;
        acc /= j;
    }
    Ok(acc.into())
}

/// The central binomial coefficient `C(2n, n)`.
pub fn central_binom(n: u64) -> Integer {
    binom(2 * n, n).expect("n <= 2n")
}

/// Floor of the square root: the unique `s` with `s^2 <= x < (s+1)^2`.
pub fn isqrt(x: &Integer) -> Result<Integer> {
    if x.is_negative() {
        return Err(domain("isqrt", "negative argument"));
    }
    Ok(isqrt_unsigned(x.magnitude()).into())
}

fn isqrt_unsigned(x: &BigUint) -> BigUint {
    if x.is_zero() {
        return BigUint::zero();
    }
    // 2^ceil(bits/2) >= sqrt(x): Newton from above decreases monotonically to the floor root.
    let mut s = BigUint::one() << x.bits().div_ceil(2);
    loop {
        let next = (&s + x / &s) >> 1u32;
        if next >= s {
            return s;
        }
        s = next;
    }
}

/// `10^k` as an integer.
pub fn pow10(k: u32) -> Integer {
    num_traits::pow(Integer::from(10u32), k as usize)
}

/// Smallest `k` with `10^k >= n` (zero for `n <= 1`).
pub(crate) fn ceil_log10(n: &BigUint) -> u32 {
    let mut k = 0u32;
    let mut p = BigUint::one();
    while &p < n {
        p *= 10u32;
        k += 1;
    }
    k
}

pub(crate) fn floor_rational(r: &Rational) -> Integer {
    r.numer().div_floor(r.denom())
}

pub(crate) fn ceil_rational(r: &Rational) -> Integer {
    -((-r.numer()).div_floor(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn rat(p: i64, q: i64) -> Rational {
        rat_make(int(p), int(q)).unwrap()
    }

    #[test]
    fn rat_make_normalizes() {
        let zero = rat(0, 7);
        assert_eq!((zero.numer(), zero.denom()), (&int(0), &int(1)));
        let r = rat(4, -6);
        assert_eq!((r.numer(), r.denom()), (&int(-2), &int(3)));
        let r = rat(8, 24);
        assert_eq!((r.numer(), r.denom()), (&int(1), &int(3)));
    }

    #[test]
    fn rat_make_rejects_zero_denominator() {
        assert!(matches!(
            rat_make(int(1), int(0)),
            Err(crate::Error::Domain { op: "rat_make", .. })
        ));
    }

    #[test]
    fn small_over_reduces() {
        assert_eq!(small_over(3, int(6)), rat(1, 2));
        assert_eq!(small_over(3, int(20)), rat(3, 20));
        assert_eq!(small_over(4, int(85_357_272)), rat(1, 21_339_318));
    }

    #[test]
    fn factorial_values() {
        // repeated multiplication oracle
        let oracle = |n: u64| (1..=n).product::<u64>();
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(10), int(3_628_800));
        for n in 0..=20 {
            assert_eq!(factorial(n), Integer::from(oracle(n)));
        }
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(0, 0).unwrap(), int(1));
        assert_eq!(binom(4, 2).unwrap(), int(6));
        assert_eq!(binom(34, 17).unwrap(), int(2_333_606_220));
        assert_eq!(binom(22, 11).unwrap(), int(705_432));
        assert!(binom(3, 4).is_err());
    }

    #[test]
    fn binom_matches_factorial_ratio() {
        for n in 0..=80u64 {
            for k in 0..=n {
                let oracle = factorial(n) / (factorial(k) * factorial(n - k));
                assert_eq!(binom(n, k).unwrap(), oracle, "C({n},{k})");
            }
        }
    }

    #[test]
    fn binom_pascal_and_symmetry() {
        for n in 0..=64u64 {
            for k in 0..=n {
                assert_eq!(binom(n, k).unwrap(), binom(n, n - k).unwrap());
                if 1 <= k && k < n {
                    let rhs = binom(n - 1, k - 1).unwrap() + binom(n - 1, k).unwrap();
                    assert_eq!(binom(n, k).unwrap(), rhs, "Pascal at ({n},{k})");
                }
            }
        }
    }

    #[test]
    fn isqrt_values() {
        assert_eq!(isqrt(&int(0)).unwrap(), int(0));
        assert_eq!(isqrt(&int(144)).unwrap(), int(12));
        assert_eq!(isqrt(&int(17)).unwrap(), int(4));
        assert!(isqrt(&int(-1)).is_err());
    }

    #[test]
    fn isqrt_exhaustive_small() {
        for x in 0..20_000i64 {
            let s = isqrt(&int(x)).unwrap();
            assert!(&s * &s <= int(x));
            assert!((&s + 1) * (&s + 1) > int(x));
        }
    }

    #[test]
    fn isqrt_perfect_squares_of_big_numbers() {
        let r = pow10(300) + 12345;
        assert_eq!(isqrt(&(&r * &r)).unwrap(), r);
        assert_eq!(isqrt(&(&r * &r - 1)).unwrap(), &r - 1);
        assert_eq!(isqrt(&(&r * &r + &r * 2)).unwrap(), r);
    }

    #[test]
    fn ceil_log10_values() {
        let c = |n: u64| ceil_log10(&BigUint::from(n));
        assert_eq!(c(0), 0);
        assert_eq!(c(1), 0);
        assert_eq!(c(9), 1);
        assert_eq!(c(10), 1);
        assert_eq!(c(11), 2);
        assert_eq!(c(1_000_001), 7);
    }

    #[test]
    fn floor_and_ceil_rational() {
        assert_eq!(floor_rational(&rat(7, 2)), int(3));
        assert_eq!(ceil_rational(&rat(7, 2)), int(4));
        assert_eq!(floor_rational(&rat(-7, 2)), int(-4));
        assert_eq!(ceil_rational(&rat(-7, 2)), int(-3));
        assert_eq!(ceil_rational(&rat(6, 2)), int(3));
    }

    proptest! {
        #[test]
        fn rat_make_scale_invariant(p in -1000i64..1000, q in -1000i64..1000, c in -50i64..50) {
            prop_assume!(q != 0 && c != 0);
            prop_assert_eq!(rat(p, q), rat(c * p, c * q));
        }

        #[test]
        fn isqrt_brackets(digits in proptest::collection::vec(0u32..u32::MAX, 1..12)) {
            let x: Integer = BigUint::new(digits).into();
            let s = isqrt(&x).unwrap();
            prop_assert!(&s * &s <= x);
            prop_assert!((&s + 1u32) * (&s + 1u32) > x);
        }
    }
}

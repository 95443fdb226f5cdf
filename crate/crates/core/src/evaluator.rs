//! Certified evaluation of `pi^2 / 6` from two series with the same limit:
//!
//! * `basel`: `sum 1/n^2`, tail after `N` terms at most `1/N`;
//! * `stirling`: `sum 3 / (n^2 C(2n, n))`, whose consecutive-term ratio
//!   `n^2 / ((2n+1)(2n+2))` never exceeds `1/4`, so the tail after `N` terms is
//!   at most `(4/3) * term(N + 1)`.
//!
//! A limit is reported as an interval: a fixed-point partial sum with its
//! rounding error, widened on the right by the tail bound. "`D` certified
//! digits" means the interval is narrower than `10^-D`. Printed digits are
//! truncated, never rounded, so the last one can sit one below the limit's own
//! digit when the interval straddles a digit boundary.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{
    ceil_log10, central_binom, floor_rational, isqrt, pow10, small_over, Integer, Rational,
};
use crate::fixed::FixedPointDecimal;

/// Largest `N` accepted by [`partial_sum_exact`].
pub const EXACT_TERM_CAP: u64 = 10_000;

/// Default ceiling on the number of terms a certified evaluation may sum.
pub const DEFAULT_TERM_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesId {
    /// `sum 1/n^2`
    Basel,
    /// `sum 3 / (n^2 C(2n, n))`
    Stirling,
}

impl SeriesId {
    pub const ALL: [SeriesId; 2] = [SeriesId::Basel, SeriesId::Stirling];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::Basel => "basel",
            SeriesId::Stirling => "stirling",
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basel" => Ok(SeriesId::Basel),
            "stirling" => Ok(SeriesId::Stirling),
            other => Err(domain("SeriesId", format!("unknown series {other:?}"))),
        }
    }
}

fn require_index(op: &'static str, n: u64) -> Result<()> {
    if n < 1 {
        return Err(domain(op, "index must be at least 1"));
    }
    Ok(())
}

/// `C(2n, n)` for `n = 1, 2, ...`, each derived from the previous one.
#[derive(Debug, Clone)]
pub struct CentralBinomials {
    n: u64,
    value: BigUint,
}

impl CentralBinomials {
    pub fn new() -> Self {
        Self {
            n: 0,
            value: BigUint::one(),
        }
    }
}

impl Default for CentralBinomials {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CentralBinomials {
    type Item = (u64, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        self.n += 1;
        let n = self.n;
        // C(2n, n) = C(2n-2, n-1) * 2(2n-1) / n, exact at each step
        self.value *= 2 * (2 * n - 1);
        self.value /= n;
        Some((n, self.value.clone()))
    }
}

/// The exact term `n` of a series.
pub fn term(series: SeriesId, n: u64) -> Result<Rational> {
    require_index("term", n)?;
    let sq = Integer::from(n) * n;
    Ok(match series {
        SeriesId::Basel => Rational::new_raw(Integer::one(), sq),
        SeriesId::Stirling => small_over(3, sq * central_binom(n)),
    })
}

/// Exact terms `1, 2, ...` of a series, produced incrementally.
pub fn terms(series: SeriesId) -> Box<dyn Iterator<Item = Rational> + Send> {
    match series {
        SeriesId::Basel => {
            Box::new((1u64..).map(|n| Rational::new_raw(Integer::one(), Integer::from(n) * n)))
        }
        SeriesId::Stirling => {
            Box::new(CentralBinomials::new().map(|(n, c)| small_over(3, Integer::from(c) * n * n)))
        }
    }
}

/// Upper bound on `sum_{n > N} term(series, n)`.
pub fn tail_bound(series: SeriesId, n: u64) -> Result<Rational> {
    require_index("tail_bound", n)?;
    Ok(match series {
        SeriesId::Basel => Rational::new_raw(Integer::one(), Integer::from(n)),
        SeriesId::Stirling => term(series, n + 1)? * Rational::new(4.into(), 3.into()),
    })
}

/// Exact partial sums `S_1 ..= S_N`.
pub fn exact_prefix_sums(series: SeriesId, n: u64) -> Result<Vec<Rational>> {
    require_index("partial_sum_exact", n)?;
    if n > EXACT_TERM_CAP {
        return Err(Error::ExactCapExceeded {
            requested: n,
            cap: EXACT_TERM_CAP,
        });
    }
    let mut acc = Rational::zero();
    Ok(terms(series)
        .take(n as usize)
        .map(|t| {
            acc += t;
            acc.clone()
        })
        .collect())
}

/// `S_N` in exact rational arithmetic; refuses `N` above [`EXACT_TERM_CAP`].
pub fn partial_sum_exact(series: SeriesId, n: u64) -> Result<Rational> {
    Ok(exact_prefix_sums(series, n)?.pop().expect("n >= 1"))
}

/// `S_N` as a sum of per-term floors at `scale` digits.
///
/// Each floor loses less than one ulp, so the mantissa never exceeds `S_N`
/// and the reported error is `N` ulps.
pub fn partial_sum_fixed(series: SeriesId, n: u64, scale: u32) -> Result<FixedPointDecimal> {
    require_index("partial_sum_fixed", n)?;
    if scale < 1 {
        return Err(domain("partial_sum_fixed", "scale must be at least 1"));
    }
    let mantissa = match series {
        SeriesId::Basel => basel_floor_sum(n, scale),
        SeriesId::Stirling => stirling_floor_sum(n, scale),
    };
    Ok(FixedPointDecimal::from_parts(
        mantissa,
        scale,
        Integer::from(n),
    ))
}

const BASEL_CHUNK: u64 = 1 << 16;

fn basel_floor_sum(n: u64, scale: u32) -> Integer {
    // sum of floor(10^s / k^2) stays below 2 * 10^s, so small scales fit in u128
    let chunks: Vec<(u64, u64)> = (0..n.div_ceil(BASEL_CHUNK))
        .map(|c| (c * BASEL_CHUNK + 1, ((c + 1) * BASEL_CHUNK).min(n)))
        .collect();
    if scale <= 37 {
        let unit = 10u128.pow(scale);
        let total: u128 = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                (lo..=hi)
                    .map(|k| {
                        let sq = u128::from(k) * u128::from(k);
                        unit / sq
                    })
                    .sum::<u128>()
            })
            .sum();
        return Integer::from(total);
    }
    let unit = pow10(scale);
    chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = Integer::zero();
            for k in lo..=hi {
                let sq = BigInt::from(k) * k;
                acc += &unit / sq;
            }
            acc
        })
        .sum()
}

fn stirling_floor_sum(n: u64, scale: u32) -> Integer {
    let numerator = BigUint::from(3u32) * pow10(scale).magnitude();
    let mut acc = BigUint::zero();
    for (k, c) in CentralBinomials::new().take(n as usize) {
        let den = c * k * k;
        if den > numerator {
            // every later term is smaller still and floors to zero
            break;
        }
        acc += &numerator / den;
    }
    acc.into()
}

/// Smallest `N` whose tail bound is below `10^-digits`.
///
/// For `basel` this is `10^digits + 1`, which may be astronomically large.
pub fn terms_for_digits(series: SeriesId, digits: u32) -> Result<BigUint> {
    if digits < 1 {
        return Err(domain("terms_for_digits", "digits must be at least 1"));
    }
    match series {
        SeriesId::Basel => Ok(pow10(digits).magnitude() + 1u32),
        SeriesId::Stirling => {
            // tail_bound(N) = 4 / ((N+1)^2 C(2N+2, N+1)) < 10^-D  <=>  4 * 10^D < (N+1)^2 C(2N+2, N+1)
            let target = pow10(digits).magnitude() * 4u32;
            let found = CentralBinomials::new()
                .skip(1)
                .find(|(m, c)| c * m * m > target)
                .map(|(m, _)| m - 1)
                .expect("central binomials are unbounded");
            Ok(BigUint::from(found))
        }
    }
}

/// Largest `D` with `width < 10^-D`; zero when the width is a unit or more.
pub fn certified_digits(width: &Rational) -> u32 {
    if !width.is_positive() {
        return u32::MAX;
    }
    let (p, q) = (width.numer(), width.denom());
    let fits = |d: u32| p * pow10(d) < *q;
    if !fits(0) {
        return 0;
    }
    // log10(2) ~ 0.30103; only a starting point, both loops below are exact
    let guess = q.bits().saturating_sub(p.bits()) * 30_103 / 100_000;
    let mut d = u32::try_from(guess).unwrap_or(u32::MAX - 1).max(1) - 1;
    while d > 0 && !fits(d) {
        d -= 1;
    }
    while fits(d + 1) {
        d += 1;
    }
    d
}

/// A certified enclosure of a limit.
///
/// The limit lies in `[value.lower(), value.upper() + tail_bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub series: SeriesId,
    pub terms_used: u64,
    pub value: FixedPointDecimal,
    pub tail_bound: Rational,
    pub certified_digits: u32,
    /// Digits asked for; never more than `certified_digits`.
    pub digits: u32,
}

impl EvalResult {
    /// Wraps an enclosure, failing unless it certifies `digits` digits.
    pub fn certify(
        series: SeriesId,
        terms_used: u64,
        value: FixedPointDecimal,
        tail_bound: Rational,
        digits: u32,
    ) -> Result<Self> {
        let mut result = Self {
            series,
            terms_used,
            value,
            tail_bound,
            certified_digits: 0,
            digits,
        };
        result.certified_digits = certified_digits(&result.total_error());
        if result.certified_digits < digits {
            return Err(Error::Uncertified {
                requested: digits,
                achieved: result.certified_digits,
            });
        }
        Ok(result)
    }

    pub fn lower(&self) -> Rational {
        self.value.lower()
    }

    pub fn upper(&self) -> Rational {
        self.value.upper() + &self.tail_bound
    }

    /// Width of the enclosing interval.
    pub fn total_error(&self) -> Rational {
        self.upper() - self.lower()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    pub fn overlaps(&self, other: &EvalResult) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// The partial sum completed by its tail bound: a point of the interval
    /// that sits close to the limit whenever the tail bound is nearly tight,
    /// as it is for both series.
    pub fn estimate(&self) -> Rational {
        self.value.midpoint() + &self.tail_bound
    }

    /// The estimate truncated to the requested digits.
    pub fn text(&self) -> String {
        FixedPointDecimal::from_rational(&self.estimate(), self.digits).to_string()
    }
}

/// Sums just enough terms of `series` to certify `digits` digits of its limit.
///
/// Fails with [`Error::BudgetExceeded`] when that takes more than `budget` terms.
pub fn eval_series(series: SeriesId, digits: u32, budget: u64) -> Result<EvalResult> {
    let required = terms_for_digits(series, digits)?;
    let n = match required.to_u64() {
        Some(n) if n <= budget => n,
        _ => {
            return Err(Error::BudgetExceeded {
                series,
                digits,
                required,
                budget,
            })
        }
    };
    let tail = tail_bound(series, n)?;
    let slack = Rational::new(One::one(), pow10(digits)) - &tail;
    // rounding contributes a width of 2n ulps; keep it under the slack left by the tail
    let mut scale = digits + ceil_log10(&BigUint::from(n)) + 5;
    while Rational::new(Integer::from(2 * n), pow10(scale)) >= slack {
        scale += 1;
    }
    let value = partial_sum_fixed(series, n, scale)?;
    EvalResult::certify(series, n, value, tail, digits)
}

/// `pi^2 / 6` to `digits` certified digits, from the central binomial series.
pub fn eval_constant(digits: u32) -> Result<EvalResult> {
    eval_series(SeriesId::Stirling, digits, u64::MAX)
}

/// `pi = sqrt(6 l)`, with `l` from [`eval_constant`].
///
/// With `l` in `[lo, lo + w]` and `m = floor(6 lo 10^2t)`, `r = isqrt(m)`:
/// `pi 10^t >= sqrt(m) >= r`, and since both roots are at least `r`,
/// `pi 10^t - sqrt(m) <= (6 w 10^2t + 1) / (2r)`.
pub fn eval_pi(digits: u32) -> Result<EvalResult> {
    if digits < 1 {
        return Err(domain("eval_pi", "digits must be at least 1"));
    }
    let mut last_err = None;
    for guard in 2..8 {
        let t = digits + guard;
        let limit = eval_constant(t + guard)?;
        let lo = limit.lower();
        let width = limit.total_error();
        let zoom = Rational::from_integer(pow10(2 * t) * 6);
        let m = floor_rational(&(&lo * &zoom));
        let root = isqrt(&m)?;
        if root.is_zero() {
            continue;
        }
        let spread = (width * &zoom + Rational::one()) / Rational::from_integer(&root * 2);
        let error = crate::exact::ceil_rational(&spread) + 1;
        let value = FixedPointDecimal::from_parts(root, t, error);
        match EvalResult::certify(
            SeriesId::Stirling,
            limit.terms_used,
            value,
            Rational::zero(),
            digits,
        ) {
            Ok(result) => return Ok(result),
            Err(e @ Error::Uncertified { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(SeriesId::Basel, 1).unwrap(), rat(1, 1));
        assert_eq!(term(SeriesId::Stirling, 1).unwrap(), rat(3, 2));
        assert_eq!(term(SeriesId::Stirling, 3).unwrap(), rat(1, 60));
        assert!(term(SeriesId::Basel, 0).is_err());
    }

    #[test]
    fn incremental_terms_match_direct() {
        for series in SeriesId::ALL {
            for (n, t) in (1..=150).zip(terms(series)) {
                assert_eq!(t, term(series, n).unwrap(), "{series} term {n}");
            }
        }
    }

    #[test]
    fn tail_bound_examples() {
        assert_eq!(tail_bound(SeriesId::Basel, 10).unwrap(), rat(1, 10));
        assert_eq!(
            tail_bound(SeriesId::Stirling, 10).unwrap(),
            rat(1, 21_339_318)
        );
        assert_eq!(tail_bound(SeriesId::Stirling, 1).unwrap(), rat(1, 6));
        assert!(tail_bound(SeriesId::Stirling, 0).is_err());
    }

    #[test]
    fn partial_sum_exact_examples() {
        assert_eq!(partial_sum_exact(SeriesId::Basel, 1).unwrap(), rat(1, 1));
        assert_eq!(partial_sum_exact(SeriesId::Basel, 3).unwrap(), rat(49, 36));
        assert_eq!(
            partial_sum_exact(SeriesId::Stirling, 2).unwrap(),
            rat(13, 8)
        );
    }

    #[test]
    fn partial_sum_exact_caps() {
        assert_eq!(
            partial_sum_exact(SeriesId::Basel, EXACT_TERM_CAP + 1),
            Err(Error::ExactCapExceeded {
                requested: EXACT_TERM_CAP + 1,
                cap: EXACT_TERM_CAP
            })
        );
        assert!(partial_sum_exact(SeriesId::Basel, 0).is_err());
    }

    #[test]
    fn partial_sum_fixed_examples() {
        let s = partial_sum_fixed(SeriesId::Basel, 1, 5).unwrap();
        assert_eq!(s.mantissa(), &Integer::from(100_000));
        assert_eq!(s.error_ulps(), &Integer::from(1));
        assert!(partial_sum_fixed(SeriesId::Basel, 3, 5)
            .unwrap()
            .contains(&rat(49, 36)));
        let exact = partial_sum_exact(SeriesId::Stirling, 9).unwrap();
        assert!(partial_sum_fixed(SeriesId::Stirling, 9, 12)
            .unwrap()
            .contains(&exact));
        assert!(partial_sum_fixed(SeriesId::Basel, 3, 0).is_err());
    }

    #[test]
    fn basel_wide_and_narrow_paths_agree() {
        // scale 37 takes the u128 path, 40 the big-integer path
        let narrow = partial_sum_fixed(SeriesId::Basel, 200_000, 37).unwrap();
        let wide = partial_sum_fixed(SeriesId::Basel, 200_000, 40).unwrap();
        let gap = (wide.truncated(37).mantissa() - narrow.mantissa()).abs();
        assert!(gap <= Integer::from(200_001));
        let exact_head = partial_sum_exact(SeriesId::Basel, 300).unwrap();
        for scale in [20, 37, 38, 45] {
            assert!(partial_sum_fixed(SeriesId::Basel, 300, scale)
                .unwrap()
                .contains(&exact_head));
        }
    }

    #[test]
    fn stirling_floor_sum_past_vanishing_terms() {
        // terms past ~n = 25 floor to zero at scale 15
        let s = partial_sum_fixed(SeriesId::Stirling, 5_000, 15).unwrap();
        assert_eq!(s.error_ulps(), &Integer::from(5_000));
        let exact = partial_sum_exact(SeriesId::Stirling, 60).unwrap();
        assert!(s.lower() <= exact);
    }

    #[test]
    fn terms_for_digits_examples() {
        assert_eq!(
            terms_for_digits(SeriesId::Stirling, 6).unwrap(),
            BigUint::from(9u32)
        );
        assert_eq!(
            terms_for_digits(SeriesId::Basel, 6).unwrap(),
            BigUint::from(1_000_001u32)
        );
        assert_eq!(
            terms_for_digits(SeriesId::Stirling, 1).unwrap(),
            BigUint::from(2u32)
        );
        assert!(terms_for_digits(SeriesId::Stirling, 0).is_err());
    }

    #[test]
    fn terms_for_digits_is_minimal_by_brute_force() {
        for digits in 1..=40u32 {
            let target = Rational::new(One::one(), pow10(digits));
            let brute = (1u64..)
                .find(|&n| tail_bound(SeriesId::Stirling, n).unwrap() < target)
                .unwrap();
            assert_eq!(
                terms_for_digits(SeriesId::Stirling, digits).unwrap(),
                BigUint::from(brute),
                "digits {digits}"
            );
        }
    }

    #[test]
    fn certified_digits_thresholds() {
        assert_eq!(certified_digits(&rat(1, 1)), 0);
        assert_eq!(certified_digits(&rat(3, 2)), 0);
        assert_eq!(certified_digits(&rat(1, 10)), 0);
        assert_eq!(certified_digits(&rat(99, 1000)), 1);
        assert_eq!(certified_digits(&rat(1, 1000)), 2);
        assert_eq!(certified_digits(&rat(1, 1001)), 3);
        let tiny = Rational::new(Integer::from(7), pow10(500));
        assert_eq!(certified_digits(&tiny), 499);
    }

    #[test]
    fn eval_constant_small() {
        assert_eq!(eval_constant(1).unwrap().text(), "1.6");
        assert_eq!(eval_constant(2).unwrap().text(), "1.64");
        let r = eval_constant(10).unwrap();
        assert_eq!(r.text(), "1.6449340668");
        assert!(r.certified_digits >= 10);
        assert!(eval_constant(0).is_err());
    }

    #[test]
    fn eval_pi_small() {
        assert_eq!(eval_pi(1).unwrap().text(), "3.1");
        assert_eq!(eval_pi(4).unwrap().text(), "3.1415");
        assert_eq!(eval_pi(10).unwrap().text(), "3.1415926535");
        assert!(eval_pi(0).is_err());
    }

    #[test]
    fn basel_budget_refusal() {
        let err = eval_series(SeriesId::Basel, 12, DEFAULT_TERM_BUDGET).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExceeded {
                budget: DEFAULT_TERM_BUDGET,
                ..
            }
        ));
        let r = eval_series(SeriesId::Basel, 3, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(r.terms_used, 1_001);
        assert_eq!(r.text(), "1.644");
    }

    #[test]
    fn series_id_round_trip() {
        for s in SeriesId::ALL {
            assert_eq!(s.to_string().parse::<SeriesId>().unwrap(), s);
        }
        assert!("xml".parse::<SeriesId>().is_err());
    }
}

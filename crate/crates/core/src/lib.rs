//! Exact and certified arithmetic around the identity
//! `pi^2 / 6 = sum 1/n^2 = sum 3 / (n^2 C(2n, n))`.
//!
//! * [`exact`]: big integers, rationals, factorials, binomials, integer square roots.
//! * [`fixed`]: fixed-point decimals carrying a sound error bound.
//! * [`coefficients`]: Taylor coefficients of `arcsin` and `arcsin^2` by independent routes.
//! * [`series`]: truncated formal power series and the differential equation check.
//! * [`evaluator`]: partial sums, tail bounds and certified digits of `pi^2/6` and `pi`.
//! * [`report`]: convergence tables for both series, as JSON or CSV.

pub mod coefficients;
pub mod error;
pub mod evaluator;
pub mod exact;
pub mod fixed;
pub mod report;
pub mod series;

pub use coefficients::{
    u_coeff, v_closed_form, v_via_cauchy, v_via_recurrence, verify_identity, w_factor, CoeffKind,
    CoeffTable, IdentityCheck, VRecurrence,
};
pub use error::{Error, Result};
pub use evaluator::{
    eval_constant, eval_pi, eval_series, partial_sum_exact, partial_sum_fixed, tail_bound, term,
    terms_for_digits, EvalResult, SeriesId, DEFAULT_TERM_BUDGET, EXACT_TERM_CAP,
};
pub use exact::{binom, factorial, isqrt, rat_make, Integer, Rational};
pub use fixed::{fxp_from_rational, fxp_to_string, FixedPointDecimal};
pub use report::{convergence_report, ConvergenceReport, ReportRow, SummaryEntry};
pub use series::{arcsin_series, f_series, inv_sqrt_one_minus_x2, ode_residual, TruncatedSeries};

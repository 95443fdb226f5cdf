//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order `k` knows the coefficients of `x^0 ..= x^k` and nothing
//! beyond. Every operation reports only coefficients it can compute completely
//! from what its inputs know.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact::{central_binom, Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// A series whose known coefficients are `coeffs` (at least one).
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(domain(
                "TruncatedSeries::new",
                "a series needs at least the constant term",
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// A polynomial viewed as a series of the given order. Coefficients of the
    /// polynomial past `order` are dropped; missing ones are zero.
    pub fn polynomial(coeffs: &[Rational], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| coeffs.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The coefficient of `x^k`, if known.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    /// Index of the first nonzero known coefficient, or `order + 1` when every
    /// known coefficient vanishes.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Highest degree at which `a * b` is fully determined by the known
    /// coefficients.
    ///
    /// Coefficient `k` of the product needs `a_i` for `i <= k - val(b)` and `b_j`
    /// for `j <= k - val(a)`.
    pub fn product_order_bound(a: &Self, b: &Self) -> usize {
        (a.order() + b.valuation()).min(b.order() + a.valuation())
    }

    /// Termwise sum, known up to the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    /// Termwise difference, known up to the smaller order.
    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| op(x, y))
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Antiderivative with zero constant term; the order goes up by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rational::from_integer(Integer::from(k + 1)));
        }
        Self { coeffs }
    }

    /// Termwise derivative; the order goes down by one. An order-0 input gives
    /// the zero series of order 0.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(Integer::from(k)))
            .collect();
        Self { coeffs }
    }

    /// Cauchy product through degree `order`.
    ///
    /// Fails when `order` exceeds [`Self::product_order_bound`].
    pub fn multiply(a: &Self, b: &Self, order: usize) -> Result<Self> {
        let bound = Self::product_order_bound(a, b);
        if order > bound {
            return Err(domain(
                "multiply",
                format!("order {order} exceeds the completeness bound {bound}"),
            ));
        }
        let coeffs = (0..=order)
            .map(|k| {
                let mut acc = Rational::zero();
                for i in 0..=k {
                    // unknown a_i / b_j only ever meet a known zero of the other factor
                    let (Some(x), Some(y)) = (a.coeff(i), b.coeff(k - i)) else {
                        continue;
                    };
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
                acc
            })
            .collect();
        Ok(Self { coeffs })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// `(1 - x^2)^(-1/2)` through degree `order`: `C(2n, n) / 4^n` at `x^(2n)`.
pub fn inv_sqrt_one_minus_x2(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|k| {
            if k % 2 == 1 {
                return Rational::zero();
            }
            let n = (k / 2) as u64;
            Rational::new(central_binom(n), Integer::one() << (2 * n))
        })
        .collect();
    TruncatedSeries { coeffs }
}

/// `arcsin(x)` through degree `order`, obtained by integrating its derivative.
pub fn arcsin_series(order: usize) -> Result<TruncatedSeries> {
    if order < 1 {
        return Err(domain("arcsin_series", "order must be at least 1"));
    }
    Ok(inv_sqrt_one_minus_x2(order - 1).integrate())
}

/// `arcsin(x)^2` through degree `order`, as the Cauchy square of the arcsin series.
pub fn f_series(order: usize) -> Result<TruncatedSeries> {
    if order < 2 {
        return Err(domain("f_series", "order must be at least 2"));
    }
    let g = arcsin_series(order - 1)?;
    TruncatedSeries::multiply(&g, &g, order)
}

/// `(1 - x^2) f'' - x f' - 2`, through degree `f.order() - 2`.
///
/// Zero exactly when `f` satisfies the differential equation of `arcsin^2` on
/// the coefficients it knows.
pub fn ode_residual(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.order() < 2 {
        return Err(domain("ode_residual", "series order must be at least 2"));
    }
    let order = f.order() - 2;
    let d1 = f.differentiate();
    let d2 = d1.differentiate();
    let one = Rational::one();
    let one_minus_x2 =
        TruncatedSeries::polynomial(&[one.clone(), Rational::zero(), -one.clone()], order);
    let x = TruncatedSeries::polynomial(&[Rational::zero(), one], order);
    let two = TruncatedSeries::polynomial(&[Rational::from_integer(Integer::from(2))], order);

    let lhs = TruncatedSeries::multiply(&one_minus_x2, &d2, order)?;
    let drift = TruncatedSeries::multiply(&x, &d1, order)?;
    Ok(lhs.sub(&drift).sub(&two))
}

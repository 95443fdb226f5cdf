//! Taylor coefficients of `arcsin(x)` and `arcsin(x)^2`.
//!
//! `u_n` is the coefficient of `x^(2n+1)` in `arcsin(x)` and `v_n` (n >= 1) the
//! coefficient of `x^(2n)` in `arcsin(x)^2`. The `v` family is available by three
//! routes that share nothing beyond exact arithmetic: the Cauchy square of the
//! `u` family, the two-term recurrence forced by the differential equation that
//! `arcsin^2` satisfies, and the closed factorial form of that recurrence.

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact::{binom, central_binom, factorial, Integer, Rational};

/// Which coefficient family a [`CoeffTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    U,
    V,
}

/// A run of consecutive coefficients; entry `j` is the coefficient of index
/// `start_index + j` (0 for `u`, 1 for `v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    pub start_index: u64,
    pub values: Vec<Rational>,
}

impl CoeffTable {
    /// `u_0 .. u_{count-1}`.
    pub fn u(count: usize) -> Self {
        Self {
            kind: CoeffKind::U,
            start_index: 0,
            values: (0..count as u64).map(u_coeff).collect(),
        }
    }

    /// `v_1 .. v_count`, from the recurrence.
    pub fn v(count: usize) -> Self {
        let mut rec = VRecurrence::new();
        let values = (1..=count as u64)
            .map(|n| rec.get(n).expect("index >= 1").clone())
            .collect();
        Self {
            kind: CoeffKind::V,
            start_index: 1,
            values,
        }
    }

    pub fn get(&self, index: u64) -> Option<&Rational> {
        let offset = index.checked_sub(self.start_index)?;
        self.values.get(usize::try_from(offset).ok()?)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `u_n = C(2n, n) / (4^n (2n + 1))`.
pub fn u_coeff(n: u64) -> Rational {
    let den = (Integer::one() << (2 * n)) * (2 * n + 1);
    Rational::new(central_binom(n), den)
}

/// `v_n` as the Cauchy convolution `sum_{i + j = n - 1} u_i u_j`.
pub fn v_via_cauchy(n: u64) -> Result<Rational> {
    if n < 1 {
        return Err(domain("v_via_cauchy", "index must be at least 1"));
    }
    let order = n - 1;
    let u: Vec<Rational> = (0..=order).map(u_coeff).collect();
    let last = order as usize;
    let acc = (0..=last).map(|i| &u[i] * &u[last - i]).sum();
    Ok(acc)
}

/// Prefix cache for the recurrence `v_1 = 1`, `(2n+2)(2n+1) v_{n+1} = 4n^2 v_n`.
///
/// Owned by a single caller; clone it to hand a copy to another thread.
#[derive(Debug, Clone)]
pub struct VRecurrence {
    values: Vec<Rational>,
}

impl Default for VRecurrence {
    fn default() -> Self {
        Self::new()
    }
}

impl VRecurrence {
    pub fn new() -> Self {
        Self {
            values: vec![Rational::one()],
        }
    }

    pub fn get(&mut self, n: u64) -> Result<&Rational> {
        if n < 1 {
            return Err(domain("v_via_recurrence", "index must be at least 1"));
        }
        let n = usize::try_from(n).map_err(|_| domain("v_via_recurrence", "index too large"))?;
        while self.values.len() < n {
            let k = self.values.len() as u64;
            let last = self.values.last().expect("seeded with v_1");
            let num = Integer::from(4 * k * k);
            let den = Integer::from((2 * k + 2) * (2 * k + 1));
            let next = last * Rational::new(num, den);
            self.values.push(next);
        }
        Ok(&self.values[n - 1])
    }
}

/// `v_n` by iterating the recurrence from `v_1 = 1`.
pub fn v_via_recurrence(n: u64) -> Result<Rational> {
    VRecurrence::new().get(n).cloned()
}

/// `w_i = 4i^2 / ((2i+2)(2i+1))`, so that `v_{n+1} = w_1 w_2 ... w_n`.
pub fn w_factor(i: u64) -> Result<Rational> {
    if i < 1 {
        return Err(domain("w_factor", "index must be at least 1"));
    }
    Ok(Rational::new(
        Integer::from(4 * i * i),
        Integer::from((2 * i + 2) * (2 * i + 1)),
    ))
}

/// `v_n = 2^(2n-1) ((n-1)!)^2 / (2n)!`.
pub fn v_closed_form(n: u64) -> Result<Rational> {
    if n < 1 {
        return Err(domain("v_closed_form", "index must be at least 1"));
    }
    let f = factorial(n - 1);
    let num = (Integer::one() << (2 * n - 1)) * &f * &f;
    Ok(Rational::new(num, factorial(2 * n)))
}

/// Both sides of
/// `(n+1)(2n+1) C(2n,n) sum_i C(2i,i) C(2n-2i,n-i) / ((2i+1)(2n-2i+1)) = 16^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

pub fn verify_identity(n: u64) -> IdentityCheck {
    let central: Vec<Integer> = (0..=n).map(|i| binom(2 * i, i).expect("i <= 2i")).collect();
    let mut sum = Rational::zero();
    for i in 0..=n {
        let j = n - i;
        let num = &central[i as usize] * &central[j as usize];
        let den = Integer::from((2 * i + 1) * (2 * j + 1));
        sum += Rational::new(num, den);
    }
    let factor = Integer::from((n + 1) * (2 * n + 1)) * &central[n as usize];
    let lhs = sum * Rational::from_integer(factor);
    let rhs = Rational::from_integer(Integer::one() << (4 * n));
    let holds = lhs == rhs;
    IdentityCheck { n, lhs, rhs, holds }
}

//! Side-by-side convergence tables for the two series.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::evaluator::{
    certified_digits, partial_sum_fixed, tail_bound, terms_for_digits, SeriesId,
};
use crate::exact::ceil_log10;
use crate::fixed::FixedPointDecimal;

/// Sample sizes used when the caller does not pick any.
pub const DEFAULT_SAMPLES: &[u64] = &[1, 2, 5, 10, 20, 50, 100, 1_000, 10_000];

/// One partial sum of one series.
///
/// `sum` shows `max(certified_digits, 1)` fractional digits, floored; `tail_bound`
/// is rounded up three digits further so it never understates the bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub n: u64,
    pub series: SeriesId,
    pub sum: String,
    pub tail_bound: String,
    pub certified_digits: u32,
}

/// Terms needed by one series for one digit target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryEntry {
    pub series: SeriesId,
    pub digits: u32,
    /// Decimal string, since basel counts outgrow any machine integer.
    pub terms: String,
    /// Whether `terms` fits within the summation budget.
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub series: Vec<SeriesId>,
    pub rows: Vec<ReportRow>,
    pub summary: Vec<SummaryEntry>,
}

/// Builds rows for every sample size and both series (sample sizes above
/// `budget` are left out) and a summary of [`terms_for_digits`] for
/// digit targets `1..=max_digits`.
pub fn convergence_report(
    max_digits: u32,
    samples: &[u64],
    budget: u64,
) -> Result<ConvergenceReport> {
    if max_digits < 1 {
        return Err(domain(
            "convergence_report",
            "digit target must be at least 1",
        ));
    }
    if samples.contains(&0) {
        return Err(domain(
            "convergence_report",
            "sample sizes must be at least 1",
        ));
    }
    let mut sizes: Vec<u64> = samples.iter().copied().filter(|&n| n <= budget).collect();
    sizes.sort_unstable();
    sizes.dedup();

    let mut rows = Vec::with_capacity(sizes.len() * SeriesId::ALL.len());
    for &n in &sizes {
        for series in SeriesId::ALL {
            rows.push(row(series, n, max_digits)?);
        }
    }

    let mut summary = Vec::new();
    for series in SeriesId::ALL {
        for digits in 1..=max_digits {
            let terms = terms_for_digits(series, digits)?;
            summary.push(SummaryEntry {
                series,
                digits,
                feasible: terms <= BigUint::from(budget),
                terms: terms.to_string(),
            });
        }
    }

    Ok(ConvergenceReport {
        series: SeriesId::ALL.to_vec(),
        rows,
        summary,
    })
}

fn row(series: SeriesId, n: u64, max_digits: u32) -> Result<ReportRow> {
    let scale = max_digits + ceil_log10(&BigUint::from(n)) + 5;
    let value = partial_sum_fixed(series, n, scale)?;
    let tail = tail_bound(series, n)?;
    let certified = certified_digits(&(value.upper() - value.lower() + &tail));
    let shown = certified.clamp(1, scale);
    Ok(ReportRow {
        n,
        series,
        sum: value.truncated(shown).to_string(),
        tail_bound: FixedPointDecimal::from_rational_ceil(&tail, shown + 3).to_string(),
        certified_digits: certified,
    })
}

impl ConvergenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Rows as CSV with header `n,series,sum,tail_bound,certified_digits`.
    pub fn rows_csv(&self) -> String {
        write_csv(&self.rows)
    }

    /// Summary as CSV with header `series,digits,terms,feasible`.
    pub fn summary_csv(&self) -> String {
        write_csv(&self.summary)
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes") + "\n"
    }
}

fn write_csv<T: Serialize>(records: &[T]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in records {
        writer.serialize(record).expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

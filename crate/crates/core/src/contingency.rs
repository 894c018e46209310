//! Risk Quotient for contingency tables.
//!
//! For a fourfold table `(a, b; c, d)` with total `n` the Risk Quotient is
//! `4|ad - bc| / n^2`. For general `r x c` tables it is the mean absolute
//! deviation from the independence manifold, `(1/n) * sum |O_ij - E_ij|`
//! with `E_ij = row_i * col_j / n`. Both map to a neutrality boundary value
//! through `RQ / (1 + RQ)`.
//!
//! All deviations are evaluated in exact integer arithmetic on the scale
//! `n * |O_ij - E_ij| = |n * O_ij - row_i * col_j|`, so the only rounding
//! is the final division.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::boundary::{canonical_transform, nb_general, Contrast, Domain, NbValue};
use crate::error::{NbError, Result};

/// Nonnegative integer cell counts with cached margins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct ContingencyTable {
    cells: Vec<Vec<u64>>,
    row_totals: Vec<u64>,
    col_totals: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    /// Builds a table from rows of counts. Needs at least 2 rows and 2
    /// columns, rectangular shape and a positive grand total.
    pub fn new(cells: Vec<Vec<u64>>) -> Result<Self> {
        let rows = cells.len();
        let cols = cells.first().map_or(0, Vec::len);
        if rows < 2 || cols < 2 {
            return Err(NbError::Dimension {
                expected: "r x c with r, c >= 2",
                rows,
                cols,
            });
        }
        if let Some(i) = cells.iter().position(|row| row.len() != cols) {
            return Err(NbError::validation(
                "cells",
                format!(
                    "row {} has {} cells, expected {cols}",
                    i + 1,
                    cells[i].len()
                ),
            ));
        }

        let mut row_totals = Vec::with_capacity(rows);
        let mut col_totals = vec![0u64; cols];
        for row in &cells {
            let mut row_total = 0u64;
            for (j, &count) in row.iter().enumerate() {
                row_total = row_total
                    .checked_add(count)
                    .ok_or(NbError::Overflow("row total"))?;
                col_totals[j] = col_totals[j]
                    .checked_add(count)
                    .ok_or(NbError::Overflow("column total"))?;
            }
            row_totals.push(row_total);
        }
        let total = row_totals
            .iter()
            .try_fold(0u64, |acc, &r| acc.checked_add(r))
            .ok_or(NbError::Overflow("grand total"))?;
        if total == 0 {
            return Err(NbError::DegenerateTable("grand total is zero".into()));
        }

        Ok(Self {
            cells,
            row_totals,
            col_totals,
            total,
        })
    }

    /// Fourfold table `(a, b; c, d)`.
    pub fn two_by_two(a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        Self::new(vec![vec![a, b], vec![c, d]])
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.col_totals.len()
    }

    pub fn cells(&self) -> &[Vec<u64>] {
        &self.cells
    }

    pub fn cell(&self, i: usize, j: usize) -> u64 {
        self.cells[i][j]
    }

    pub fn row_totals(&self) -> &[u64] {
        &self.row_totals
    }

    pub fn col_totals(&self) -> &[u64] {
        &self.col_totals
    }

    /// Grand total `n`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_2x2(&self) -> bool {
        self.rows() == 2 && self.cols() == 2
    }

    /// True when some row or column is entirely zero, which puts zeros in
    /// the expected counts.
    pub fn has_degenerate_margins(&self) -> bool {
        self.row_totals.contains(&0) || self.col_totals.contains(&0)
    }

    /// Every cell multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Result<Self> {
        let cells = self
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&c| c.checked_mul(k).ok_or(NbError::Overflow("scaled cell")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cells)
    }

    fn require_2x2(&self) -> Result<[u64; 4]> {
        if !self.is_2x2() {
            return Err(NbError::Dimension {
                expected: "2x2",
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        Ok([
            self.cells[0][0],
            self.cells[0][1],
            self.cells[1][0],
            self.cells[1][1],
        ])
    }
}

impl TryFrom<Vec<Vec<u64>>> for ContingencyTable {
    type Error = NbError;

    fn try_from(cells: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(cells)
    }
}

impl From<ContingencyTable> for Vec<Vec<u64>> {
    fn from(table: ContingencyTable) -> Self {
        table.cells
    }
}

/// Expected counts under independence, `E_ij = row_i * col_j / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedCounts {
    values: Vec<Vec<f64>>,
}

impl ExpectedCounts {
    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }
}

/// Signed `ad - bc` of a fourfold table, exact.
pub fn cross_product_diff(table: &ContingencyTable) -> Result<i128> {
    let [a, b, c, d] = table.require_2x2()?;
    let ad = i128::try_from(u128::from(a) * u128::from(d)).map_err(|_| NbError::Overflow("ad"))?;
    let bc = i128::try_from(u128::from(b) * u128::from(c)).map_err(|_| NbError::Overflow("bc"))?;
    Ok(ad - bc)
}

fn n_squared(table: &ContingencyTable) -> u128 {
    u128::from(table.total) * u128::from(table.total)
}

/// `4|ad - bc| / n^2`, in `[0, 1]`.
pub fn rq_2x2(table: &ContingencyTable) -> Result<f64> {
    let diff = cross_product_diff(table)?.unsigned_abs();
    let numer = diff.checked_mul(4).ok_or(NbError::Overflow("4|ad - bc|"))?;
    Ok(numer as f64 / n_squared(table) as f64)
}

/// Fourfold neutrality boundary value, `|ad - bc| / (|ad - bc| + n^2/4)`.
///
/// Evaluated through [`nb_general`] so it agrees with the general form
/// bit for bit; algebraically this equals `RQ / (1 + RQ)`.
pub fn nb_2x2(table: &ContingencyTable) -> Result<NbValue> {
    let diff = cross_product_diff(table)?.unsigned_abs() as f64;
    let scale = n_squared(table) as f64 / 4.0;
    let contrast = Contrast::new(diff, 0.0, scale)?;
    Ok(nb_general(&contrast)?.relabel(Domain::Binary2x2, "RQ-derived nb"))
}

pub fn expected_counts(table: &ContingencyTable) -> ExpectedCounts {
    let n = table.total as f64;
    let values = table
        .row_totals
        .iter()
        .map(|&r| {
            table
                .col_totals
                .iter()
                .map(|&c| (u128::from(r) * u128::from(c)) as f64 / n)
                .collect()
        })
        .collect();
    ExpectedCounts { values }
}

/// `sum |n * O_ij - row_i * col_j|`, which is `n * sum |O_ij - E_ij|`.
fn scaled_abs_deviation(table: &ContingencyTable) -> Result<u128> {
    let n = u128::from(table.total);
    let mut sum = 0u128;
    for (i, row) in table.cells.iter().enumerate() {
        for (j, &obs) in row.iter().enumerate() {
            let observed = n * u128::from(obs);
            let expected = u128::from(table.row_totals[i]) * u128::from(table.col_totals[j]);
            sum = sum
                .checked_add(observed.abs_diff(expected))
                .ok_or(NbError::Overflow("sum of absolute deviations"))?;
        }
    }
    Ok(sum)
}

/// Exact `(1/n) * sum |O_ij - E_ij|` as a reduced fraction.
pub fn rq_rxc_exact(table: &ContingencyTable) -> Result<Ratio<u128>> {
    Ok(Ratio::new(scaled_abs_deviation(table)?, n_squared(table)))
}

/// `(1/n) * sum |O_ij - E_ij|`.
///
/// Not clamped: tables with more than two rows and columns can exceed 1
/// (the 3x3 diagonal table with 3 on the diagonal gives 4/3).
pub fn rq_rxc(table: &ContingencyTable) -> Result<f64> {
    Ok(scaled_abs_deviation(table)? as f64 / n_squared(table) as f64)
}

/// `RQ / (1 + RQ)` with the generalized Risk Quotient; always in `[0, 1)`.
pub fn nb_rxc(table: &ContingencyTable) -> Result<NbValue> {
    let rq = rq_rxc(table)?;
    Ok(canonical_transform(rq)?.relabel(Domain::ContingencyRxc, "RQ-derived nb"))
}

/// Direction of a one-unit outcome exchange on a fourfold table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeDirection {
    /// `(a, b; c, d) -> (a+1, b-1; c-1, d+1)`, raising `ad - bc` by `n`.
    TowardDiagonal,
    /// `(a, b; c, d) -> (a-1, b+1; c+1, d-1)`, lowering `ad - bc` by `n`.
    TowardAntidiagonal,
}

/// Moves one unit between cells while keeping every margin fixed.
pub fn unit_exchange(
    table: &ContingencyTable,
    direction: ExchangeDirection,
) -> Result<ContingencyTable> {
    let [a, b, c, d] = table.require_2x2()?;
    let dec =
        |v: u64, cell: &'static str| v.checked_sub(1).ok_or(NbError::InfeasibleExchange { cell });
    let inc = |v: u64| v.checked_add(1).ok_or(NbError::Overflow("exchanged cell"));
    let (a, b, c, d) = match direction {
        ExchangeDirection::TowardDiagonal => (inc(a)?, dec(b, "b")?, dec(c, "c")?, inc(d)?),
        ExchangeDirection::TowardAntidiagonal => (dec(a, "a")?, inc(b)?, inc(c)?, dec(d, "d")?),
    };
    ContingencyTable::two_by_two(a, b, c, d)
}

/// `4/n`, the spacing between adjacent attainable fourfold RQ values under
/// fixed margins.
///
/// A toward-diagonal exchange on a table with `ad - bc >= 0` raises RQ by
/// exactly this amount. An exchange that crosses `ad - bc = 0` does not,
/// because of the absolute value; the signed cross product still moves by
/// exactly `n`.
pub fn lattice_step(table: &ContingencyTable) -> f64 {
    4.0 / table.total as f64
}

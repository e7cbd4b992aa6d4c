//! Observation matrices and the standardization / sample covariance
//! operations.
//!
//! Rows are observations, columns are variables, everywhere in this crate.

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{mirror_upper, MatrixRole, SymMatrix};

/// Columns whose sample standard deviation falls below this are treated as
/// degenerate and standardized to all-zeros instead of dividing by noise.
pub const DEGENERATE_SD: f64 = 1e-12;

/// An n x p matrix of real observations with standardization state.
#[derive(Debug, Clone)]
pub struct Dataset {
    values: DMatrix<f64>,
    standardized: bool,
    degenerate: BTreeSet<usize>,
}

impl Dataset {
    /// Wraps a raw observation matrix. Requires n >= 2, p >= 2 and all
    /// entries finite.
    pub fn new(values: DMatrix<f64>) -> Result<Self> {
        if values.nrows() < 2 || values.ncols() < 2 {
            return Err(Error::InvalidArgument(format!(
                "dataset must be at least 2x2, got {}x{}",
                values.nrows(),
                values.ncols()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("dataset".into()));
        }
        Ok(Self {
            values,
            standardized: false,
            degenerate: BTreeSet::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn p(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    /// Indices of columns zeroed out by standardization.
    pub fn degenerate_columns(&self) -> &BTreeSet<usize> {
        &self.degenerate
    }

    /// Keeps only the given rows, in the given order. Used by subsampling.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Dataset> {
        for &r in rows {
            if r >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    len: self.n(),
                });
            }
        }
        let mut out = DMatrix::zeros(rows.len(), self.p());
        for (i, &r) in rows.iter().enumerate() {
            out.set_row(i, &self.values.row(r));
        }
        Dataset::new(out)
    }
}

/// Centers and scales each column in place to sample mean 0 and sample
/// standard deviation 1 (denominator n-1). Columns with sd below
/// [`DEGENERATE_SD`] become all-zeros and are reported back.
pub(crate) fn standardize_columns(values: &mut DMatrix<f64>) -> BTreeSet<usize> {
    let n = values.nrows();
    let mut degenerate = BTreeSet::new();
    for j in 0..values.ncols() {
        let mut col = values.column_mut(j);
        let mean = col.iter().sum::<f64>() / n as f64;
        let ss: f64 = col.iter().map(|v| (v - mean) * (v - mean)).sum();
        let sd = (ss / (n - 1) as f64).sqrt();
        if sd < DEGENERATE_SD {
            col.fill(0.0);
            degenerate.insert(j);
        } else {
            for v in col.iter_mut() {
                *v = (*v - mean) / sd;
            }
        }
    }
    degenerate
}

/// Returns a standardized copy of the dataset: each non-degenerate column
/// has sample mean 0 and sample standard deviation 1.
pub fn standardize(data: &Dataset) -> Result<Dataset> {
    let mut values = data.values.clone();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("dataset".into()));
    }
    let degenerate = standardize_columns(&mut values);
    Ok(Dataset {
        values,
        standardized: true,
        degenerate,
    })
}

/// S = X'X / (n-1) for standardized X. Unit diagonal for non-degenerate
/// columns, zero rows/columns for degenerate ones.
pub fn sample_covariance(data: &Dataset) -> Result<SymMatrix> {
    if !data.standardized {
        return Err(Error::NotStandardized);
    }
    let x = &data.values;
    let mut s = x.transpose() * x;
    s /= (data.n() - 1) as f64;
    mirror_upper(&mut s);
    SymMatrix::new(s, MatrixRole::SampleCovariance)
}

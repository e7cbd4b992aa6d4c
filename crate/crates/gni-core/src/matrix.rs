//! Symmetric matrix wrapper with a role tag.

use nalgebra::{Cholesky, DMatrix, Dyn};

use crate::error::{Error, Result};

/// What a [`SymMatrix`] represents. Precision-tagged matrices must be
/// positive definite; the constructor enforces it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixRole {
    Covariance,
    Precision,
    SampleCovariance,
}

/// Dense symmetric p x p matrix of reals.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    entries: DMatrix<f64>,
    role: MatrixRole,
}

pub const SYMMETRY_TOL: f64 = 1e-10;

impl SymMatrix {
    /// Validates squareness, finiteness, symmetry within 1e-10 and (for the
    /// precision role) positive definiteness via a Cholesky factorization.
    pub fn new(entries: DMatrix<f64>, role: MatrixRole) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "expected square matrix, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("symmetric matrix".into()));
        }
        let p = entries.nrows();
        for k in 0..p {
            for l in (k + 1)..p {
                if (entries[(k, l)] - entries[(l, k)]).abs() > SYMMETRY_TOL {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let m = Self { entries, role };
        if role == MatrixRole::Precision {
            m.cholesky()?;
        }
        Ok(m)
    }

    /// Constructor for matrices whose invariants were just established by the
    /// caller (e.g. an inverse of a freshly factorized matrix).
    pub(crate) fn new_unchecked(entries: DMatrix<f64>, role: MatrixRole) -> Self {
        Self { entries, role }
    }

    pub fn p(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn role(&self) -> MatrixRole {
        self.role
    }

    pub fn cholesky(&self) -> Result<Cholesky<f64, Dyn>> {
        Cholesky::new(self.entries.clone()).ok_or_else(|| {
            Error::NotPositiveDefinite(format!("{:?} matrix of size {}", self.role, self.p()))
        })
    }

    /// Largest absolute off-diagonal entry.
    pub fn max_abs_offdiag(&self) -> f64 {
        let p = self.p();
        let mut best = 0.0f64;
        for k in 0..p {
            for l in (k + 1)..p {
                best = best.max(self.entries[(k, l)].abs());
            }
        }
        best
    }
}

/// Copies the upper triangle onto the lower one, making the matrix exactly
/// symmetric.
pub(crate) fn mirror_upper(m: &mut DMatrix<f64>) {
    let p = m.nrows();
    for k in 0..p {
        for l in (k + 1)..p {
            m[(l, k)] = m[(k, l)];
        }
    }
}

/// Averages opposite off-diagonal entries; used to clean up round-off
/// asymmetry from per-column reconstructions.
pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let p = m.nrows();
    for k in 0..p {
        for l in (k + 1)..p {
            let avg = 0.5 * (m[(k, l)] + m[(l, k)]);
            m[(k, l)] = avg;
            m[(l, k)] = avg;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.3, 1.0]);
        assert!(matches!(
            SymMatrix::new(m, MatrixRole::Covariance),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn rejects_non_positive_definite_precision() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(
            SymMatrix::new(m, MatrixRole::Precision),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn accepts_positive_definite_precision() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.2, 0.2, 1.0]);
        let sm = SymMatrix::new(m, MatrixRole::Precision).unwrap();
        assert_eq!(sm.p(), 2);
        assert!((sm.max_abs_offdiag() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_finite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, f64::NAN, f64::NAN, 1.0]);
        assert!(matches!(
            SymMatrix::new(m, MatrixRole::Covariance),
            Err(Error::NonFinite(_))
        ));
    }
}

use num_complex::Complex64;
use serde::Serialize;

use super::OracleError;
use crate::weights::{ShiftOperator, Side};

/// Which rows of `λI − A` a section keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionShape {
    /// Rows and columns both run over `offset..offset+dim`: the matrix has
    /// `λ` on the diagonal and `−w(offset+k−1)` in row `k` of the subdiagonal.
    Aligned,
    /// Columns `offset..offset+dim`, rows shifted down by one. The matrix is
    /// upper bidiagonal with `−w(offset+k)` on the diagonal and `λ` above it.
    Lagged,
}

/// A square bidiagonal cut of `λI − A`.
///
/// `sub` holds the section's weights: `dim − 1` of them for an aligned
/// section, `dim` for a lagged one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BidiagonalSection {
    pub dim: usize,
    pub offset: i64,
    pub diag: Complex64,
    pub sub: Vec<Complex64>,
    pub shape: SectionShape,
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n < 2 {
        Err(OracleError::InvalidArgument(format!("section size must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

/// The aligned section on indices `1..=n` (unilateral) or `−n..=n` (bilateral).
pub fn truncate(op: &ShiftOperator, lambda: Complex64, n: usize) -> Result<BidiagonalSection, OracleError> {
    check_size(n)?;
    let (offset, dim) = match op.side() {
        Side::Unilateral => (1, n),
        Side::Bilateral => (-(n as i64), 2 * n + 1),
    };
    let sub = (0..dim as i64 - 1)
        .map(|k| op.weight(offset + k).map(|w| -w))
        .collect::<Result<_, _>>()?;
    Ok(BidiagonalSection {
        dim,
        offset,
        diag: lambda,
        sub,
        shape: SectionShape::Aligned,
    })
}

/// Bilateral section with columns `−n..=n` and rows `−n+1..=n+1`.
///
/// The aligned centered section always has a near-null vector at its last
/// column when `|λ|` is small, because the cut removes the weight that would
/// carry `e_n` out of the window. Dropping the first row instead keeps every
/// weight, so for `|λ| < m` the singular values stay above `m − |λ|`.
pub fn truncate_lagged(op: &ShiftOperator, lambda: Complex64, n: usize) -> Result<BidiagonalSection, OracleError> {
    check_size(n)?;
    if op.side() != Side::Bilateral {
        return Err(OracleError::InvalidArgument("lagged sections are bilateral only".into()));
    }
    let offset = -(n as i64);
    let dim = 2 * n + 1;
    let sub = (0..dim as i64)
        .map(|k| op.weight(offset + k).map(|w| -w))
        .collect::<Result<_, _>>()?;
    Ok(BidiagonalSection {
        dim,
        offset,
        diag: lambda,
        sub,
        shape: SectionShape::Lagged,
    })
}

impl BidiagonalSection {
    /// Diagonal `a` and subdiagonal `b` of a lower bidiagonal matrix with the
    /// same singular values as this section (a lagged section is transposed).
    pub(crate) fn lower_form(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        match self.shape {
            SectionShape::Aligned => (vec![self.diag; self.dim], self.sub.clone()),
            SectionShape::Lagged => (self.sub.clone(), vec![self.diag; self.dim - 1]),
        }
    }

    /// Basis index of column `k`.
    pub fn column_index(&self, k: usize) -> i64 {
        self.offset + k as i64
    }

    /// Basis index of row `k`.
    pub fn row_index(&self, k: usize) -> i64 {
        match self.shape {
            SectionShape::Aligned => self.offset + k as i64,
            SectionShape::Lagged => self.offset + 1 + k as i64,
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        match self.shape {
            SectionShape::Aligned if row == col => self.diag,
            SectionShape::Aligned if row == col + 1 => self.sub[col],
            SectionShape::Lagged if row == col => self.sub[col],
            SectionShape::Lagged if col == row + 1 => self.diag,
            _ => zero,
        }
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector length must match the section");
        let n = self.dim;
        match self.shape {
            SectionShape::Aligned => (0..n)
                .map(|i| self.diag * x[i] + if i > 0 { self.sub[i - 1] * x[i - 1] } else { 0.0.into() })
                .collect(),
            SectionShape::Lagged => (0..n)
                .map(|i| self.sub[i] * x[i] + if i + 1 < n { self.diag * x[i + 1] } else { 0.0.into() })
                .collect(),
        }
    }

    pub fn mul_adjoint_vec(&self, y: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(y.len(), self.dim, "vector length must match the section");
        let n = self.dim;
        let lam = self.diag.conj();
        match self.shape {
            SectionShape::Aligned => (0..n)
                .map(|j| lam * y[j] + if j + 1 < n { self.sub[j].conj() * y[j + 1] } else { 0.0.into() })
                .collect(),
            SectionShape::Lagged => (0..n)
                .map(|j| self.sub[j].conj() * y[j] + if j > 0 { lam * y[j - 1] } else { 0.0.into() })
                .collect(),
        }
    }

    /// Solves `section · x = rhs` by substitution; `None` when a pivot vanishes.
    pub fn solve(&self, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
        assert_eq!(rhs.len(), self.dim, "vector length must match the section");
        let n = self.dim;
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        match self.shape {
            SectionShape::Aligned => {
                if self.diag == Complex64::new(0.0, 0.0) {
                    return None;
                }
                for i in 0..n {
                    let carry = if i > 0 { self.sub[i - 1] * x[i - 1] } else { 0.0.into() };
                    x[i] = (rhs[i] - carry) / self.diag;
                }
            }
            SectionShape::Lagged => {
                for i in (0..n).rev() {
                    if self.sub[i] == Complex64::new(0.0, 0.0) {
                        return None;
                    }
                    let carry = if i + 1 < n { self.diag * x[i + 1] } else { 0.0.into() };
                    x[i] = (rhs[i] - carry) / self.sub[i];
                }
            }
        }
        Some(x)
    }
}

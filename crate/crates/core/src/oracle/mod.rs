//! Numerical cross-checks that never consult the closed-form classification:
//! finite bidiagonal sections, their extreme singular values, exact residual
//! norms, and grid scans that put both side by side.

mod scan;
mod section;
mod smin;

use num_complex::Complex64;
use thiserror::Error;

pub use scan::{spectrum_scan, spectrum_scan_with, GridSpec, ScanCell, ScanResult, ScanSummary};
pub use section::{truncate, truncate_lagged, BidiagonalSection, SectionShape};
pub use smin::{
    largest_singular_value, singular_value_count_below, smallest_singular_value, smin_report, SminOptions,
    SminReport,
};

use crate::spectra::SpectralError;
use crate::weights::{CoefficientVector, ShiftOperator, Side, WeightError};

/// Default section sizes: indices `1..=400` unilateral, `−200..=200` bilateral.
pub const DEFAULT_UNILATERAL_SECTION: usize = 400;
pub const DEFAULT_BILATERAL_SECTION: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("residual of the zero vector is undefined")]
    ZeroVector,
    #[error("inverse iteration did not converge after {} iterations (last estimate {})", .report.iterations, .report.smin)]
    NotConverged { report: Box<SminReport> },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `‖(λI − A)x‖ / ‖x‖` with `A` the shift (or its adjoint) applied exactly.
pub fn residual_norm(
    op: &ShiftOperator,
    lambda: Complex64,
    x: &CoefficientVector,
    adjoint: bool,
) -> Result<f64, OracleError> {
    if x.is_zero() {
        return Err(OracleError::ZeroVector);
    }
    let image = if adjoint { op.apply_adjoint(x)? } else { op.apply(x)? };
    Ok(x.combine(lambda, &image, Complex64::new(-1.0, 0.0)).norm() / x.norm())
}

/// The oracle's verdict on `λ` at section size `n`.
///
/// Unilateral shifts use the aligned section. A bilateral cut has two edges
/// and each square section misbehaves at one of them: the aligned one is
/// nearly singular for every small `|λ|`, the lagged one for every large
/// `|λ|` when `m` is small. Both are compressions of `λI − T`, so neither
/// can report a value larger than a true residual; the larger of the two
/// is taken, and it is small only when both sections are nearly singular.
pub fn section_smin(
    op: &ShiftOperator,
    lambda: Complex64,
    n: usize,
    options: &SminOptions,
) -> Result<SminReport, OracleError> {
    let aligned = smin_report(&truncate(op, lambda, n)?, options)?;
    if op.side() == Side::Unilateral {
        return Ok(aligned);
    }
    let lagged = smin_report(&truncate_lagged(op, lambda, n)?, options)?;
    let mut report = if lagged.ln_smin > aligned.ln_smin { lagged } else { aligned };
    report.converged = aligned.converged && lagged.converged;
    report.iterations = aligned.iterations + lagged.iterations;
    Ok(report)
}

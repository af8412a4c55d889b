//! Explicit eigenvectors of the adjoint.
//!
//! `S*e_{n+1} = conj(α_n) e_n`, so `S*x = λx` reads `conj(α_n) x_{n+1} = λ x_n`
//! coordinatewise. Solving forward from `x_1 = 1` gives a square-summable
//! sequence whenever `|λ| < M`, because the coefficient ratios tend to
//! `|λ|/M`. For a bilateral shift the same recurrence runs forward from
//! `x_0 = 1` and backward as `x_n = conj(β_n) x_{n+1} / λ`, whose ratios tend
//! to `m/|λ|`. The returned vectors are the truncations to finitely many
//! terms; they are not normalized.

use num_complex::Complex64;

use super::SpectralError;
use crate::weights::{CoefficientVector, ShiftOperator, Side};

fn check_terms(terms: usize) -> Result<(), SpectralError> {
    if terms == 0 {
        Err(SpectralError::InvalidArgument("number of terms must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// First `terms` coefficients (indices `1..=terms`) of the eigenvector of `S*` for `λ`.
pub fn adjoint_eigenvector_unilateral(
    op: &ShiftOperator,
    lambda: Complex64,
    terms: usize,
) -> Result<CoefficientVector, SpectralError> {
    if op.side() != Side::Unilateral {
        return Err(SpectralError::NotUnilateral);
    }
    check_terms(terms)?;
    let upper = op.upper_limit();
    if !(lambda.norm() < upper) {
        return Err(SpectralError::LambdaNotInteriorDisk {
            abs_lambda: lambda.norm(),
            upper,
        });
    }
    let mut coefficients = Vec::with_capacity(terms);
    let mut current = Complex64::new(1.0, 0.0);
    coefficients.push(current);
    for n in 1..terms as i64 {
        current = current * lambda / op.weight(n)?.conj();
        coefficients.push(current);
    }
    Ok(CoefficientVector::new(1, coefficients))
}

/// Coefficients on indices `−terms..=terms` of the eigenvector of `T*` for `λ`.
pub fn adjoint_eigenvector_bilateral(
    op: &ShiftOperator,
    lambda: Complex64,
    terms: usize,
) -> Result<CoefficientVector, SpectralError> {
    if op.side() != Side::Bilateral {
        return Err(SpectralError::NotBilateral);
    }
    check_terms(terms)?;
    let (lower, upper) = (op.lower_limit(), op.upper_limit());
    let r = lambda.norm();
    if !(lower < r && r < upper) {
        return Err(SpectralError::LambdaNotInteriorAnnulus {
            abs_lambda: r,
            lower,
            upper,
        });
    }
    let n = terms as i64;
    let mut coefficients = vec![Complex64::new(0.0, 0.0); 2 * terms + 1];
    let centre = terms;
    coefficients[centre] = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let i = centre + k as usize;
        coefficients[i + 1] = coefficients[i] * lambda / op.weight(k)?.conj();
    }
    for k in (-n..0).rev() {
        let i = (centre as i64 + k) as usize;
        coefficients[i] = op.weight(k)?.conj() * coefficients[i + 1] / lambda;
    }
    Ok(CoefficientVector::new(-n, coefficients))
}

pub fn adjoint_eigenvector(op: &ShiftOperator, lambda: Complex64, terms: usize) -> Result<CoefficientVector, SpectralError> {
    match op.side() {
        Side::Unilateral => adjoint_eigenvector_unilateral(op, lambda, terms),
        Side::Bilateral => adjoint_eigenvector_bilateral(op, lambda, terms),
    }
}

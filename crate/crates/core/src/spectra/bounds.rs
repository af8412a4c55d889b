use num_complex::Complex64;
use serde::Serialize;

use super::SpectralError;
use crate::weights::{CoefficientVector, ShiftOperator, Side};

/// `m(Sⁿ)` and its `n`-th root for a unilateral shift.
///
/// With nondecreasing moduli the infimum `inf_k |α_k ⋯ α_{k+n−1}|` is
/// attained at `k = 1`, so `m(Sⁿ) = |α_1 ⋯ α_n|`. The product is accumulated
/// as a sum of logarithms; `m_sn` may underflow to zero for large `n` while
/// `r1_estimate` stays accurate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSequenceReport {
    pub n: u64,
    pub m_sn: f64,
    pub r1_estimate: f64,
}

pub fn lower_bound_sequence(op: &ShiftOperator, n: u64) -> Result<BoundSequenceReport, SpectralError> {
    if op.side() != Side::Unilateral {
        return Err(SpectralError::NotUnilateral);
    }
    if n == 0 {
        return Err(SpectralError::InvalidArgument("n must be at least 1".into()));
    }
    // Neumaier summation of ln|α_k|
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for k in 1..=n as i64 {
        let term = op.ln_modulus(k)?;
        let t = sum + term;
        carry += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    let log_product = sum + carry;
    Ok(BoundSequenceReport {
        n,
        m_sn: log_product.exp(),
        r1_estimate: (log_product / n as f64).exp(),
    })
}

pub fn r1_estimate(op: &ShiftOperator, n: u64) -> Result<f64, SpectralError> {
    lower_bound_sequence(op, n).map(|r| r.r1_estimate)
}

/// Returns `(‖(λI − T)x‖, (m − |λ|)‖x‖)` for `|λ| < m`; the first is never
/// smaller than the second.
pub fn resolvent_lower_bound_check(
    op: &ShiftOperator,
    lambda: Complex64,
    x: &CoefficientVector,
) -> Result<(f64, f64), SpectralError> {
    if op.side() != Side::Bilateral {
        return Err(SpectralError::NotBilateral);
    }
    let lower = op.lower_limit();
    if !(lambda.norm() < lower) {
        return Err(SpectralError::LambdaNotInnerResolvent {
            abs_lambda: lambda.norm(),
            lower,
        });
    }
    if x.is_zero() {
        return Err(SpectralError::InvalidArgument("x must be nonzero".into()));
    }
    let image = op.apply(x)?;
    let lhs = x.combine(lambda, &image, Complex64::new(-1.0, 0.0)).norm();
    let rhs = (lower - lambda.norm()) * x.norm();
    Ok((lhs, rhs))
}

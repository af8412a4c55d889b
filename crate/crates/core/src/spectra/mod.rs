//! Closed-form spectral classification of hyponormal weighted shifts.
//!
//! For a unilateral shift `S` with `M = lim |α_n|`:
//!
//! | region        | `S`        | `S*`       | `Π(S)` | `Γ(S)` | `Π(S*)` |
//! |---------------|------------|------------|--------|--------|---------|
//! | `|λ| < M`     | residual   | point      | no     | yes    | yes     |
//! | `|λ| = M`     | continuous | continuous | yes    | no     | yes     |
//! | `|λ| > M`     | resolvent  | resolvent  | no     | no     | no      |
//!
//! A bilateral shift `T` with `m = lim_{n→−∞} |β_n|` has the same table with
//! the open annulus `m < |λ| < M` in place of the open disk, both circles
//! `|λ| = m` and `|λ| = M` continuous, and `|λ| < m` resolvent. `Γ(S*)` and
//! `Γ(T*)` are always empty and no shift here has an eigenvalue.
//!
//! Exact circle membership is replaced by a band of half-width `tol`; points
//! in the band receive the on-circle verdict and `boundary_flag = true`.

mod bounds;
mod eigvec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weights::{ShiftOperator, Side, WeightError};

pub use bounds::{lower_bound_sequence, r1_estimate, resolvent_lower_bound_check, BoundSequenceReport};
pub use eigvec::{adjoint_eigenvector, adjoint_eigenvector_bilateral, adjoint_eigenvector_unilateral};

/// Default half-width of the circle band, relative to `M`.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("operation requires a bilateral shift")]
    NotBilateral,
    #[error("operation requires a unilateral shift")]
    NotUnilateral,
    #[error("requires |λ| < M (M = {upper}, |λ| = {abs_lambda})")]
    LambdaNotInteriorDisk { abs_lambda: f64, upper: f64 },
    #[error("requires m < |λ| < M{} (m = {lower}, M = {upper}, |λ| = {abs_lambda})", degenerate_note(*.lower, *.upper))]
    LambdaNotInteriorAnnulus { abs_lambda: f64, lower: f64, upper: f64 },
    #[error("requires |λ| < m (m = {lower}, |λ| = {abs_lambda})")]
    LambdaNotInnerResolvent { abs_lambda: f64, lower: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

fn degenerate_note(lower: f64, upper: f64) -> &'static str {
    if lower == upper {
        "; annulus is degenerate"
    } else {
        ""
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralPart {
    Resolvent,
    Point,
    Residual,
    Continuous,
}

impl SpectralPart {
    /// Integer code used in scan CSV output.
    pub fn code(self) -> u8 {
        match self {
            SpectralPart::Resolvent => 0,
            SpectralPart::Point => 1,
            SpectralPart::Residual => 2,
            SpectralPart::Continuous => 3,
        }
    }

    pub fn is_spectrum(self) -> bool {
        self != SpectralPart::Resolvent
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralClassification {
    pub lambda: Complex64,
    pub part_op: SpectralPart,
    pub part_adjoint: SpectralPart,
    /// `λ ∈ Π(A)`
    pub in_approx_point_op: bool,
    /// `λ ∈ Γ(A)`
    pub in_compression_op: bool,
    /// `λ ∈ Π(A*)`
    pub in_approx_point_adjoint: bool,
    /// `λ ∈ Γ(A*)`; never true for these shifts.
    pub in_compression_adjoint: bool,
    pub boundary_flag: bool,
    pub abs_lambda: f64,
    #[serde(rename = "M")]
    pub upper: f64,
    /// `m` for bilateral shifts, 0 otherwise.
    #[serde(rename = "m")]
    pub lower: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    Outside,
    Circle,
    Interior,
}

impl SpectralClassification {
    fn from_region(lambda: Complex64, region: Region, upper: f64, lower: f64) -> Self {
        let (part_op, part_adjoint, pi_op, gamma_op, pi_adj) = match region {
            Region::Outside => (SpectralPart::Resolvent, SpectralPart::Resolvent, false, false, false),
            Region::Circle => (SpectralPart::Continuous, SpectralPart::Continuous, true, false, true),
            Region::Interior => (SpectralPart::Residual, SpectralPart::Point, false, true, true),
        };
        SpectralClassification {
            lambda,
            part_op,
            part_adjoint,
            in_approx_point_op: pi_op,
            in_compression_op: gamma_op,
            in_approx_point_adjoint: pi_adj,
            in_compression_adjoint: false,
            boundary_flag: region == Region::Circle,
            abs_lambda: lambda.norm(),
            upper,
            lower,
        }
    }
}

fn check_tol(tol: f64) -> Result<(), SpectralError> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(SpectralError::InvalidArgument(format!("tol must be finite and ≥ 0, got {tol}")))
    }
}

/// `‖S‖ = ‖T‖ = M`, the certified upper limit.
pub fn operator_norm(op: &ShiftOperator) -> f64 {
    op.upper_limit()
}

pub fn classify_unilateral(op: &ShiftOperator, lambda: Complex64, tol: f64) -> Result<SpectralClassification, SpectralError> {
    if op.side() != Side::Unilateral {
        return Err(SpectralError::NotUnilateral);
    }
    check_tol(tol)?;
    let upper = op.upper_limit();
    let r = lambda.norm();
    let region = if (r - upper).abs() <= tol {
        Region::Circle
    } else if r < upper {
        Region::Interior
    } else {
        Region::Outside
    };
    Ok(SpectralClassification::from_region(lambda, region, upper, 0.0))
}

pub fn classify_bilateral(op: &ShiftOperator, lambda: Complex64, tol: f64) -> Result<SpectralClassification, SpectralError> {
    if op.side() != Side::Bilateral {
        return Err(SpectralError::NotBilateral);
    }
    check_tol(tol)?;
    let (lower, upper) = (op.lower_limit(), op.upper_limit());
    let r = lambda.norm();
    // with m = 0 the inner circle is the single point 0
    let region = if (r - upper).abs() <= tol || (r - lower).abs() <= tol {
        Region::Circle
    } else if lower < r && r < upper {
        Region::Interior
    } else {
        Region::Outside
    };
    Ok(SpectralClassification::from_region(lambda, region, upper, lower))
}

/// Dispatches on the side of `op`.
pub fn classify(op: &ShiftOperator, lambda: Complex64, tol: f64) -> Result<SpectralClassification, SpectralError> {
    match op.side() {
        Side::Unilateral => classify_unilateral(op, lambda, tol),
        Side::Bilateral => classify_bilateral(op, lambda, tol),
    }
}

/// Classification of `λ` for `A + center·I`: the spectrum of the shift
/// translated by `center`. `lambda` reports the original point while
/// `abs_lambda` stays `|λ − center|`, the distance the verdict rests on.
pub fn classify_translated(
    op: &ShiftOperator,
    center: Complex64,
    lambda: Complex64,
    tol: f64,
) -> Result<SpectralClassification, SpectralError> {
    let mut verdict = classify(op, lambda - center, tol)?;
    verdict.lambda = lambda;
    Ok(verdict)
}

/// Names of the regions containing `λ`, spelled out for reports.
pub fn region_names(op: &ShiftOperator, verdict: &SpectralClassification) -> Vec<String> {
    let sym = operator_symbol(op.side());
    let mut names = vec![part_name(verdict.part_op, sym), part_name(verdict.part_adjoint, "adjoint")];
    names.dedup();
    let flags = [
        (verdict.in_approx_point_op, format!("approximate_point_spectrum_of_{sym}")),
        (verdict.in_compression_op, format!("compression_spectrum_of_{sym}")),
        (verdict.in_approx_point_adjoint, "approximate_point_spectrum_of_adjoint".to_string()),
        (verdict.in_compression_adjoint, "compression_spectrum_of_adjoint".to_string()),
    ];
    names.extend(flags.into_iter().filter(|(on, _)| *on).map(|(_, n)| n));
    names
}

pub fn operator_symbol(side: Side) -> &'static str {
    match side {
        Side::Unilateral => "S",
        Side::Bilateral => "T",
    }
}

pub fn part_name(part: SpectralPart, of: &str) -> String {
    match part {
        SpectralPart::Resolvent => "resolvent_set".to_string(),
        SpectralPart::Point => format!("point_spectrum_of_{of}"),
        SpectralPart::Residual => format!("residual_spectrum_of_{of}"),
        SpectralPart::Continuous => format!("continuous_spectrum_of_{of}"),
    }
}

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{section_smin, OracleError, SminOptions, SminReport};
use crate::spectra::{classify, SpectralClassification, SpectralPart};
use crate::weights::ShiftOperator;

/// A rectangle sampled at `steps × steps` evenly spaced points, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn square(half_width: f64, steps: usize) -> Self {
        GridSpec {
            re_min: -half_width,
            re_max: half_width,
            im_min: -half_width,
            im_max: half_width,
            steps,
        }
    }

    /// The single point `λ`, as a one-step grid.
    pub fn point(lambda: Complex64) -> Self {
        GridSpec {
            re_min: lambda.re,
            re_max: lambda.re,
            im_min: lambda.im,
            im_max: lambda.im,
            steps: 1,
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let bounds = [self.re_min, self.re_max, self.im_min, self.im_max];
        if bounds.iter().any(|v| !v.is_finite()) {
            return Err(OracleError::InvalidGrid("grid bounds must be finite".into()));
        }
        if self.re_min > self.re_max || self.im_min > self.im_max {
            return Err(OracleError::InvalidGrid("grid minimum exceeds maximum".into()));
        }
        let single_point = self.re_min == self.re_max && self.im_min == self.im_max;
        match self.steps {
            0 => Err(OracleError::InvalidGrid("steps must be positive".into())),
            1 if !single_point => Err(OracleError::InvalidGrid(
                "steps must be at least 2 unless the grid is a single point".into(),
            )),
            _ => Ok(()),
        }
    }

    fn coordinate(lo: f64, hi: f64, k: usize, steps: usize) -> f64 {
        if steps == 1 || k == 0 {
            lo
        } else if k == steps - 1 {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (steps - 1) as f64
        }
    }

    /// Grid points in row-major order: imaginary part outer, real part inner, both ascending.
    pub fn points(&self) -> Vec<Complex64> {
        let s = self.steps;
        (0..s)
            .flat_map(|j| {
                let im = Self::coordinate(self.im_min, self.im_max, j, s);
                (0..s).map(move |i| Complex64::new(Self::coordinate(self.re_min, self.re_max, i, s), im))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanCell {
    pub classification: SpectralClassification,
    pub oracle: SminReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub resolvent: usize,
    pub point: usize,
    pub residual: usize,
    pub continuous: usize,
    pub boundary_flagged: usize,
    pub not_converged: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub grid: GridSpec,
    pub section_size: usize,
    pub tol: f64,
    pub cells: Vec<ScanCell>,
}

#[derive(Serialize)]
struct CsvRow {
    re: f64,
    im: f64,
    abs_lambda: f64,
    part_op: u8,
    part_adjoint: u8,
    in_pi_op: u8,
    in_gamma_op: u8,
    in_pi_adjoint: u8,
    boundary_flag: u8,
    smin: f64,
    smin_converged: u8,
}

impl ScanResult {
    pub fn summary(&self) -> ScanSummary {
        let mut summary = ScanSummary {
            cells: self.cells.len(),
            ..ScanSummary::default()
        };
        for cell in &self.cells {
            match cell.classification.part_op {
                SpectralPart::Resolvent => summary.resolvent += 1,
                SpectralPart::Point => summary.point += 1,
                SpectralPart::Residual => summary.residual += 1,
                SpectralPart::Continuous => summary.continuous += 1,
            }
            summary.boundary_flagged += usize::from(cell.classification.boundary_flag);
            summary.not_converged += usize::from(!cell.oracle.converged);
        }
        summary
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut writer = csv::Writer::from_writer(out);
        for cell in &self.cells {
            let v = &cell.classification;
            writer.serialize(CsvRow {
                re: v.lambda.re,
                im: v.lambda.im,
                abs_lambda: v.abs_lambda,
                part_op: v.part_op.code(),
                part_adjoint: v.part_adjoint.code(),
                in_pi_op: v.in_approx_point_op.into(),
                in_gamma_op: v.in_compression_op.into(),
                in_pi_adjoint: v.in_approx_point_adjoint.into(),
                boundary_flag: v.boundary_flag.into(),
                smin: cell.oracle.smin,
                smin_converged: cell.oracle.converged.into(),
            })?;
        }
        if self.cells.is_empty() {
            writer.write_record([
                "re", "im", "abs_lambda", "part_op", "part_adjoint", "in_pi_op", "in_gamma_op",
                "in_pi_adjoint", "boundary_flag", "smin", "smin_converged",
            ])?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buffer = Vec::new();
        self.write_csv(&mut buffer).expect("writing to memory cannot fail");
        String::from_utf8(buffer).expect("csv output is utf-8")
    }
}

pub fn spectrum_scan(op: &ShiftOperator, grid: &GridSpec, n: usize, tol: f64) -> Result<ScanResult, OracleError> {
    spectrum_scan_with(op, grid, n, tol, &SminOptions::default())
}

/// Classifies every grid point and runs the section oracle on it. Cells are
/// computed in parallel and returned in grid order; a cell whose oracle did
/// not converge keeps its last estimate with `converged = false`.
pub fn spectrum_scan_with(
    op: &ShiftOperator,
    grid: &GridSpec,
    n: usize,
    tol: f64,
    options: &SminOptions,
) -> Result<ScanResult, OracleError> {
    grid.validate()?;
    if n < 16 {
        return Err(OracleError::InvalidArgument(format!("scan section size must be at least 16, got {n}")));
    }
    let cells = grid
        .points()
        .into_par_iter()
        .map(|lambda| {
            Ok(ScanCell {
                classification: classify(op, lambda, tol)?,
                oracle: section_smin(op, lambda, n, options)?,
            })
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(ScanResult {
        grid: *grid,
        section_size: n,
        tol,
        cells,
    })
}

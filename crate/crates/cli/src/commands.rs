use std::fs::File;
use std::io::{self, BufWriter, ErrorKind, Write};
use std::path::Path;

use hyposhift::oracle::{residual_norm, spectrum_scan_with, GridSpec, OracleError, SminOptions};
use hyposhift::oracle::{DEFAULT_BILATERAL_SECTION, DEFAULT_UNILATERAL_SECTION};
use hyposhift::spectra::{
    adjoint_eigenvector, classify as classify_point, operator_norm, part_name, r1_estimate, region_names,
    operator_symbol, SpectralError, DEFAULT_RELATIVE_TOL,
};
use hyposhift::weights::{make_shift, ShiftOperator, WeightSpec};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::CliError;

pub fn load(path: &Path) -> Result<ShiftOperator, CliError> {
    let text = std::fs::read_to_string(path).map_err(|err| match err.kind() {
        ErrorKind::NotFound => CliError::input(format!("spec: file not found ({})", path.display())),
        _ => CliError::input(format!("spec: cannot read {}: {err}", path.display())),
    })?;
    let spec = WeightSpec::from_json(&text).map_err(|err| CliError::input(format!("spec: invalid JSON: {err}")))?;
    make_shift(spec).map_err(|err| CliError::input(format!("spec: {}: {err}", err.name())))
}

pub fn default_tol(op: &ShiftOperator) -> f64 {
    DEFAULT_RELATIVE_TOL * op.upper_limit()
}

fn spectral_error(err: SpectralError) -> CliError {
    match err {
        SpectralError::LambdaNotInteriorDisk { .. }
        | SpectralError::LambdaNotInteriorAnnulus { .. }
        | SpectralError::LambdaNotInnerResolvent { .. } => CliError::precondition(err.to_string()),
        other => CliError::input(other.to_string()),
    }
}

fn oracle_error(err: OracleError) -> CliError {
    match err {
        OracleError::Spectral(inner) => spectral_error(inner),
        other => CliError::input(other.to_string()),
    }
}

fn io_error(err: io::Error) -> CliError {
    CliError::input(format!("output: {err}"))
}

/// Opens `out` for writing, or standard output when absent.
fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|err| CliError::input(format!("output: cannot create {}: {err}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json(value: &Value) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value).map_err(|err| CliError::input(err.to_string()))?;
    writeln!(stdout).map_err(io_error)
}

pub fn describe(path: &Path) -> Result<(), CliError> {
    let op = load(path)?;
    let r1 = if op.is_bilateral() {
        Value::Null
    } else {
        let values = [10u64, 100, 1000]
            .iter()
            .map(|&n| r1_estimate(&op, n).map_err(spectral_error))
            .collect::<Result<Vec<f64>, _>>()?;
        json!(values)
    };
    let mut report = json!({
        "side": op.side(),
        "family": op.spec().family,
        "M": op.upper_limit(),
        "norm": operator_norm(&op),
        "r1_n": [10, 100, 1000],
        "r1": r1,
        "audit": op.audit(),
        "spec": op.spec(),
    });
    if op.is_bilateral() {
        report["m"] = json!(op.lower_limit());
    }
    print_json(&report)
}

pub fn classify(path: &Path, lambda: Complex64, tol: Option<f64>) -> Result<(), CliError> {
    let op = load(path)?;
    let tol = tol.unwrap_or_else(|| default_tol(&op));
    let verdict = classify_point(&op, lambda, tol).map_err(spectral_error)?;
    let symbol = operator_symbol(op.side());
    let mut report = serde_json::to_value(verdict).map_err(|err| CliError::input(err.to_string()))?;
    report["operator"] = json!(symbol);
    report["tol"] = json!(tol);
    report["part_op_name"] = json!(part_name(verdict.part_op, symbol));
    report["part_adjoint_name"] = json!(part_name(verdict.part_adjoint, "adjoint"));
    report["regions"] = json!(region_names(&op, &verdict));
    report["spec"] = json!(op.spec());
    print_json(&report)
}

/// `−0` prints as `-0`; normalize it so equal vectors print identically.
fn clean(value: f64) -> f64 {
    if value == 0.0 {
        0.0
    } else {
        value
    }
}

pub fn eigvec(path: &Path, lambda: Complex64, n: usize, out: Option<&Path>) -> Result<(), CliError> {
    let op = load(path)?;
    let x = adjoint_eigenvector(&op, lambda, n).map_err(spectral_error)?;
    let residual = residual_norm(&op, lambda, &x, true).map_err(oracle_error)?;
    let mut sink = sink(out)?;
    writeln!(sink, "index,re,im").map_err(io_error)?;
    for (index, c) in x.iter() {
        writeln!(sink, "{index},{},{}", clean(c.re), clean(c.im)).map_err(io_error)?;
    }
    let trailer = json!({
        "lambda": [lambda.re, lambda.im],
        "terms": n,
        "relative_residual": residual,
    });
    writeln!(sink, "{trailer}").map_err(io_error)?;
    sink.flush().map_err(io_error)
}

pub fn scan(
    path: &Path,
    grid: Option<[f64; 4]>,
    steps: usize,
    n: Option<usize>,
    tol: Option<f64>,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let op = load(path)?;
    let grid = match grid {
        Some([re_min, re_max, im_min, im_max]) => GridSpec {
            re_min,
            re_max,
            im_min,
            im_max,
            steps,
        },
        None => GridSpec::square(1.5 * op.upper_limit(), steps),
    };
    grid.validate().map_err(oracle_error)?;
    let n = n.unwrap_or(if op.is_bilateral() {
        DEFAULT_BILATERAL_SECTION
    } else {
        DEFAULT_UNILATERAL_SECTION
    });
    let tol = tol.unwrap_or_else(|| default_tol(&op));
    let options = SminOptions {
        seed,
        ..SminOptions::default()
    };
    let result = spectrum_scan_with(&op, &grid, n, tol, &options).map_err(oracle_error)?;

    let mut sink = sink(out)?;
    result
        .write_csv(&mut sink)
        .map_err(|err| CliError::input(format!("output: {err}")))?;
    sink.flush().map_err(io_error)?;
    drop(sink);

    let summary = serde_json::to_string(&result.summary()).map_err(|err| CliError::input(err.to_string()))?;
    // keep stdout clean for the CSV when no output file is given
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

//! Extreme singular values of bidiagonal sections.
//!
//! The smallest singular value comes from inverse iteration on the normal
//! equations: each step is one back substitution with the adjoint and one
//! forward substitution with the section. Substitution entries can grow like
//! `|λ|^{−dim}`, so both sweeps rescale on the fly and the estimate is carried
//! as a logarithm.
//!
//! Away from spectrum the singular values of a section cluster at the bottom
//! and inverse iteration slows to a crawl. Whenever the estimate is not
//! astronomically small it is therefore polished by bisection with Sturm
//! counts on the Golub–Kahan form `[[0, B*], [B, 0]]`, whose eigenvalues are
//! `±σ_i`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::section::BidiagonalSection;
use super::OracleError;

const RESCALE: f64 = 1e150;
/// Below this the Sturm recurrence loses its footing; inverse iteration alone decides.
const BISECTION_FLOOR: f64 = 1e-120;
const WARMUP_ITERS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SminReport {
    pub lambda: Complex64,
    pub dim: usize,
    pub smin: f64,
    /// `ln smin`; stays finite when `smin` itself underflows.
    pub ln_smin: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl SminReport {
    pub fn require_converged(self) -> Result<SminReport, OracleError> {
        if self.converged {
            Ok(self)
        } else {
            Err(OracleError::NotConverged { report: Box::new(self) })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SminOptions {
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SminOptions {
    fn default() -> Self {
        SminOptions {
            max_iters: 10_000,
            tol: 1e-12,
            seed: 0x5eed_5eed,
        }
    }
}

/// Smallest singular value with the default seed; `NotConverged` carries the last estimate.
pub fn smallest_singular_value(
    sec: &BidiagonalSection,
    max_iters: usize,
    tol: f64,
) -> Result<SminReport, OracleError> {
    let options = SminOptions {
        max_iters,
        tol,
        ..SminOptions::default()
    };
    smin_report(sec, &options)?.require_converged()
}

/// Like [`smallest_singular_value`] but never fails on convergence; check `converged`.
pub fn smin_report(sec: &BidiagonalSection, options: &SminOptions) -> Result<SminReport, OracleError> {
    if options.max_iters == 0 || !(options.tol > 0.0) {
        return Err(OracleError::InvalidArgument(
            "max_iters must be positive and tol must be a positive number".into(),
        ));
    }
    let (a, b) = sec.lower_form();
    let mut report = SminReport {
        lambda: sec.diag,
        dim: sec.dim,
        smin: 0.0,
        ln_smin: f64::NEG_INFINITY,
        iterations: 0,
        converged: true,
    };
    if a.iter().any(|d| *d == Complex64::new(0.0, 0.0)) {
        // a zero pivot makes the section exactly singular
        return Ok(report);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut x: Vec<Complex64> = (0..a.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    normalize(&mut x);

    let chain = golub_kahan_chain(&a, &b);
    let mut ln_est = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < options.max_iters {
        iterations += 1;
        let (y, ln_scale) = inverse_step(&a, &b, &x);
        let ln_norm = ln_norm(&y);
        let next = -0.5 * (ln_norm + ln_scale);
        let settled = (next - ln_est).abs() <= options.tol;
        ln_est = next;
        x = y;
        normalize(&mut x);
        if settled {
            converged = true;
            break;
        }
        if iterations >= WARMUP_ITERS && ln_est.exp() > BISECTION_FLOOR {
            break;
        }
    }

    let estimate = ln_est.exp();
    if estimate > BISECTION_FLOOR {
        if let Some((value, steps)) = bisect_smallest(&chain, a.len(), estimate, options.tol) {
            report.smin = value;
            report.ln_smin = value.ln();
            report.iterations = iterations + steps;
            return Ok(report);
        }
    }
    report.smin = estimate;
    report.ln_smin = ln_est;
    report.iterations = iterations;
    report.converged = converged;
    Ok(report)
}

/// Largest singular value by Sturm bisection, to relative accuracy `tol`.
pub fn largest_singular_value(sec: &BidiagonalSection, tol: f64) -> f64 {
    let (a, b) = sec.lower_form();
    let chain = golub_kahan_chain(&a, &b);
    let n = a.len();
    let peak = chain.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    // σ_max is at least the largest entry and at most the sum of the two largest
    let (mut lo, mut hi) = (peak, 2.0 * peak);
    while (hi - lo) > tol * hi {
        let mid = 0.5 * (lo + hi);
        if sturm_below(&chain, n, mid) >= n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Number of singular values strictly below `t > 0`.
pub fn singular_value_count_below(sec: &BidiagonalSection, t: f64) -> usize {
    let (a, b) = sec.lower_form();
    sturm_below(&golub_kahan_chain(&a, &b), a.len(), t)
}

fn normalize(x: &mut [Complex64]) {
    let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let norm = scale * x.iter().map(|c| (c / scale).norm_sqr()).sum::<f64>().sqrt();
    for c in x.iter_mut() {
        *c /= norm;
    }
}

fn ln_norm(x: &[Complex64]) -> f64 {
    let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    scale.ln() + 0.5 * x.iter().map(|c| (c / scale).norm_sqr()).sum::<f64>().ln()
}

/// `y = (L*L)^{-1} x` up to the factor `exp(ln_scale)`, with `L` lower
/// bidiagonal (diagonal `a`, subdiagonal `b`).
fn inverse_step(a: &[Complex64], b: &[Complex64], x: &[Complex64]) -> (Vec<Complex64>, f64) {
    let n = a.len();
    let mut ln_scale = 0.0;

    // L* z = x, back substitution
    let mut z = x.to_vec();
    for i in (0..n).rev() {
        let carry = if i + 1 < n { b[i].conj() * z[i + 1] } else { 0.0.into() };
        z[i] = (z[i] - carry) / a[i].conj();
        if z[i].norm() > RESCALE {
            for v in z.iter_mut() {
                *v /= RESCALE;
            }
            ln_scale += RESCALE.ln();
        }
    }

    // L y = z, forward substitution in place
    for i in 0..n {
        let carry = if i > 0 { b[i - 1] * z[i - 1] } else { 0.0.into() };
        z[i] = (z[i] - carry) / a[i];
        if z[i].norm() > RESCALE {
            for v in z.iter_mut() {
                *v /= RESCALE;
            }
            ln_scale += RESCALE.ln();
        }
    }
    (z, ln_scale)
}

/// Off-diagonal of the Golub–Kahan tridiagonal: `|a_0|, |b_0|, |a_1|, …, |a_{n−1}|`.
fn golub_kahan_chain(a: &[Complex64], b: &[Complex64]) -> Vec<f64> {
    let mut chain = Vec::with_capacity(2 * a.len());
    for (i, d) in a.iter().enumerate() {
        chain.push(d.norm());
        if let Some(e) = b.get(i) {
            chain.push(e.norm());
        }
    }
    chain
}

/// Singular values below `t`: negative pivots of `T_GK − t` minus the `n` values `−σ_i`.
fn sturm_below(chain: &[f64], n: usize, t: f64) -> usize {
    let mut d = -t;
    let mut negatives = usize::from(d < 0.0);
    for &e in chain {
        if d == 0.0 {
            d = -f64::MIN_POSITIVE;
        }
        d = -t - e * e / d;
        negatives += usize::from(d < 0.0);
    }
    negatives.saturating_sub(n)
}

/// Bisection for `σ_min` starting from the upper estimate `hi`. Returns
/// `None` when no bracket can be established above the bisection floor.
fn bisect_smallest(chain: &[f64], n: usize, estimate: f64, tol: f64) -> Option<(f64, usize)> {
    let mut steps = 0;
    let mut hi = estimate * (1.0 + 1e-9);
    while sturm_below(chain, n, hi) == 0 {
        hi *= 2.0;
        steps += 1;
        if !hi.is_finite() {
            return None;
        }
    }
    let mut lo = hi * 0.5;
    while sturm_below(chain, n, lo) > 0 {
        lo *= 0.5;
        steps += 1;
        if lo < BISECTION_FLOOR {
            return None;
        }
    }
    while hi / lo - 1.0 > tol {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_below(chain, n, mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Some(((lo * hi).sqrt(), steps))
}

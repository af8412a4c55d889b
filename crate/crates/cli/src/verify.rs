//! Property suite behind `hyposhift verify`. Every property reports a
//! margin: the worst slack observed, in the property's own units, so a
//! negative margin is a failure.

use std::path::Path;

use hyposhift::oracle::{residual_norm, section_smin, GridSpec, SminOptions};
use hyposhift::spectra::{adjoint_eigenvector, classify, r1_estimate, SpectralPart};
use hyposhift::weights::{CoefficientVector, ShiftOperator};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{default_tol, load};
use crate::{CliError, Level};

struct Check {
    name: &'static str,
    margin: f64,
    checks: usize,
    detail: String,
}

impl Check {
    fn passed(&self) -> bool {
        self.margin >= 0.0
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "pass": self.passed(),
            "margin": self.margin,
            "checks": self.checks,
            "detail": self.detail,
        })
    }
}

struct Settings {
    grid_steps: usize,
    section: usize,
    samples: usize,
}

impl Settings {
    fn for_level(level: Level) -> Self {
        match level {
            Level::Quick => Settings {
                grid_steps: 21,
                section: 100,
                samples: 200,
            },
            Level::Full => Settings {
                grid_steps: 81,
                section: 800,
                samples: 2000,
            },
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, op: &ShiftOperator) -> CoefficientVector {
    let len = rng.gen_range(1..=32);
    let lo = if op.is_bilateral() { rng.gen_range(-60..=60) } else { rng.gen_range(1..=60) };
    let coefficients = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CoefficientVector::new(lo, coefficients)
}

fn adjoint_pairing(op: &ShiftOperator, rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let mut margin = f64::INFINITY;
    for _ in 0..samples {
        let (x, y) = (random_vector(rng, op), random_vector(rng, op));
        let left = op.apply(&x).expect("in domain").inner(&y);
        let right = x.inner(&op.apply_adjoint(&y).expect("in domain"));
        let scale = op.upper_limit() * x.norm() * y.norm();
        margin = margin.min(1e-12 - (left - right).norm() / scale);
    }
    Check {
        name: "adjoint_pairing",
        margin,
        checks: samples,
        detail: "1e-12 minus the relative gap |<Ax,y> - <x,A*y>| / (M|x||y|)".into(),
    }
}

fn hyponormality(op: &ShiftOperator, rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let mut margin = f64::INFINITY;
    for _ in 0..samples {
        let x = random_vector(rng, op);
        let scale = op.upper_limit().powi(2) * x.norm_sqr();
        let gap = op.apply(&x).expect("in domain").norm_sqr() - op.apply_adjoint(&x).expect("in domain").norm_sqr();
        margin = margin.min(gap / scale + 1e-12);
    }
    Check {
        name: "hyponormality_certificate",
        margin,
        checks: samples,
        detail: "(|Ax|^2 - |A*x|^2) / (M^2 |x|^2), with 1e-12 slack".into(),
    }
}

fn region_partition(op: &ShiftOperator, points: &[Complex64], tol: f64) -> Check {
    let (upper, lower) = (op.upper_limit(), op.lower_limit());
    let mut violations = 0;
    for &lambda in points {
        let v = classify(op, lambda, tol).expect("valid tolerance");
        let r = lambda.norm();
        let inner = if op.is_bilateral() { lower - tol } else { f64::NEG_INFINITY };
        let ok = v.part_op != SpectralPart::Point
            && v.part_adjoint != SpectralPart::Residual
            && !v.in_compression_adjoint
            && (v.part_op == SpectralPart::Residual) == (v.part_adjoint == SpectralPart::Point)
            && (v.part_op == SpectralPart::Continuous) == (v.part_adjoint == SpectralPart::Continuous)
            && (v.in_approx_point_op || v.in_compression_op) == v.part_op.is_spectrum()
            && v.part_op.is_spectrum() == (inner <= r && r <= upper + tol);
        violations += usize::from(!ok);
    }
    Check {
        name: "region_partition",
        margin: 0.0 - violations as f64,
        checks: points.len(),
        detail: format!("{violations} cell(s) violate partition, duality or closed-spectrum consistency"),
    }
}

fn eigenvector_decay(op: &ShiftOperator, rng: &mut ChaCha8Rng) -> Check {
    let (upper, lower) = (op.upper_limit(), op.lower_limit());
    let (r_lo, r_hi) = if op.is_bilateral() {
        (lower + 0.05 * (upper - lower), upper - 0.05 * (upper - lower))
    } else {
        (0.05 * upper, 0.95 * upper)
    };
    if !(r_lo < r_hi) || (op.is_bilateral() && upper <= lower) {
        return Check {
            name: "eigenvector_decay",
            margin: 0.0,
            checks: 0,
            detail: "no open disk or annulus: nothing to construct".into(),
        };
    }
    let mut margin = f64::INFINITY;
    let mut checks = 0;
    for _ in 0..8 {
        let r = rng.gen_range(r_lo..r_hi);
        let lambda = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
        let residual = |n: usize| {
            let x = adjoint_eigenvector(op, lambda, n).expect("λ inside the region");
            residual_norm(op, lambda, &x, true).expect("nonzero eigenvector")
        };
        for n in [16usize, 64, 256] {
            let (a, b) = (residual(n), residual(2 * n));
            // the residual lives on the cut ends; monotone moduli bound how fast those shrink
            let mut q = r / op.weight(n as i64).expect("in domain").norm();
            if op.is_bilateral() {
                q = q.max(op.weight(-(n as i64) - 1).expect("in domain").norm() / r);
            }
            let bound = q.powi(n as i32) * a * (1.0 + 1e-9) + 1e-15;
            margin = margin.min((bound - b) / bound);
            checks += 1;
        }
    }
    Check {
        name: "eigenvector_decay",
        margin,
        checks,
        detail: "relative slack in residual(2N) <= q^N residual(N) for seeded interior λ".into(),
    }
}

fn r1_monotonicity(op: &ShiftOperator) -> Check {
    if op.is_bilateral() {
        return Check {
            name: "r1_monotonicity",
            margin: 0.0,
            checks: 0,
            detail: "not applicable to bilateral shifts".into(),
        };
    }
    let upper = op.upper_limit();
    let mut previous = 0.0;
    let mut margin = f64::INFINITY;
    let ns = [1u64, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10_000];
    for &n in &ns {
        let r1 = r1_estimate(op, n).expect("unilateral");
        margin = margin.min((r1 - previous) / upper + 1e-13).min((upper - r1) / upper + 1e-13);
        previous = r1;
    }
    Check {
        name: "r1_monotonicity",
        margin,
        checks: ns.len(),
        detail: format!("r1 nondecreasing and at most M; r1(10000) = {previous}"),
    }
}

fn oracle_agreement(op: &ShiftOperator, points: &[Complex64], tol: f64, section: usize, seed: u64) -> Check {
    let (upper, lower) = (op.upper_limit(), op.lower_limit());
    let options = SminOptions {
        seed,
        ..SminOptions::default()
    };
    let band = 0.1 * upper;
    let cells: Vec<(Complex64, f64)> = points
        .iter()
        .map(|&lambda| {
            let r = lambda.norm();
            let distance = if op.is_bilateral() {
                (r - upper).abs().min((r - lower).abs())
            } else {
                (r - upper).abs()
            };
            (lambda, distance)
        })
        .filter(|(_, distance)| *distance > band)
        .collect();
    let margins: Vec<f64> = cells.par_iter().map(|&(lambda, distance)| {
        let verdict = classify(op, lambda, tol).expect("valid tolerance");
        let small = section_smin(op, lambda, section, &options).expect("valid section");
        if verdict.part_op.is_spectrum() {
            let large = section_smin(op, lambda, 2 * section, &options).expect("valid section");
            // decay by at least a factor two, measured in ln units
            (small.ln_smin - std::f64::consts::LN_2) - large.ln_smin
        } else {
            (small.smin - distance / 2.0) / upper
        }
    }).collect();
    let margin = margins.into_iter().fold(f64::INFINITY, f64::min);
    Check {
        name: "oracle_classification_agreement",
        margin: if cells.is_empty() { 0.0 } else { margin },
        checks: cells.len(),
        detail: format!(
            "cells farther than 0.1M from the circles at N = {section}: spectrum halves smin from N to 2N, resolvent keeps smin >= dist/2"
        ),
    }
}

pub fn run(path: &Path, seed: u64, level: Level) -> Result<(), CliError> {
    let op = load(path)?;
    let settings = Settings::for_level(level);
    let tol = default_tol(&op);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = GridSpec::square(1.5 * op.upper_limit(), settings.grid_steps).points();

    let checks = [
        adjoint_pairing(&op, &mut rng, settings.samples),
        hyponormality(&op, &mut rng, settings.samples),
        region_partition(&op, &points, tol),
        eigenvector_decay(&op, &mut rng),
        r1_monotonicity(&op),
        oracle_agreement(&op, &points, tol, settings.section, seed),
    ];
    let all_pass = checks.iter().all(Check::passed);
    let report = json!({
        "level": match level { Level::Quick => "quick", Level::Full => "full" },
        "seed": seed,
        "grid_steps": settings.grid_steps,
        "section": settings.section,
        "properties": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        "pass": all_pass,
        "spec": op.spec(),
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if all_pass {
        Ok(())
    } else {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        Err(CliError::property(format!("failed properties: {}", failed.join(", "))))
    }
}

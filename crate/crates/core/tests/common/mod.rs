#![allow(dead_code)]

use hyposhift::weights::{make_shift, CoefficientVector, FamilyKind, ShiftOperator, Side, WeightSpec};
use hyposhift::Complex64;
use proptest::prelude::*;

/// Valid operators across every family, with random parameters and phases.
pub fn operators() -> impl Strategy<Value = ShiftOperator> {
    let phase = 0.0..std::f64::consts::TAU;
    prop_oneof![
        (0.1..3.0f64, phase.clone(), any::<bool>()).prop_map(|(r, t, bilateral)| {
            let side = if bilateral { Side::Bilateral } else { Side::Unilateral };
            WeightSpec::constant(side, Complex64::from_polar(r, t))
        }),
        (0.2..3.0f64, 0.5..5.0f64).prop_map(|(scale, shift)| WeightSpec::rational_unilateral(scale, shift)),
        (0.2..3.0f64, 0.05..0.95f64).prop_map(|(scale, ratio)| WeightSpec::geometric_unilateral(scale, ratio)),
        (0.1..2.0f64, 0.0..2.0f64, 0.3..4.0f64)
            .prop_map(|(low, gap, width)| WeightSpec::logistic_bilateral(low, low + gap, width)),
        (0.2..3.0f64, 1.2..4.0f64).prop_map(|(scale, base)| WeightSpec::two_sided_geometric(scale, base)),
        (proptest::collection::vec(0.1..1.0f64, 1..5), phase).prop_map(|(mut moduli, t)| {
            moduli.sort_by(f64::total_cmp);
            let tail = moduli.last().unwrap() * 1.5;
            let mut spec = WeightSpec::new(Side::Unilateral, FamilyKind::PrefixThenConstant, tail, None)
                .with_param("tail", tail);
            for (k, r) in moduli.iter().enumerate() {
                spec = spec.with_param(&format!("p{}", k + 1), Complex64::from_polar(*r, t * k as f64));
            }
            spec
        }),
    ]
    .prop_map(|spec| make_shift(spec).expect("generated specs are valid"))
}

pub fn unilateral_operators() -> impl Strategy<Value = ShiftOperator> {
    operators().prop_filter("unilateral", |op| !op.is_bilateral())
}

/// Finitely supported vectors with up to 12 nonzero-window coefficients.
pub fn vectors() -> impl Strategy<Value = CoefficientVector> {
    (
        -20i64..20,
        proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..12),
    )
        .prop_map(|(lo, pairs)| {
            CoefficientVector::new(lo, pairs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
        })
}

/// Restricts `x` to the indices an operator acts on.
pub fn in_domain(op: &ShiftOperator, x: &CoefficientVector) -> CoefficientVector {
    if op.is_bilateral() || x.lo() >= 1 || x.is_empty() {
        return x.clone();
    }
    let keep: Vec<Complex64> = x.iter().filter(|(n, _)| *n >= 1).map(|(_, c)| c).collect();
    CoefficientVector::new(1, keep)
}

pub fn lambdas(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi on its real
/// symmetric embedding `[[A, −B], [B, A]]` (each eigenvalue appears twice).
pub fn hermitian_eigenvalues(h: &[Vec<Complex64>]) -> Vec<f64> {
    let n = h.len();
    let m = 2 * n;
    let mut a = vec![vec![0.0f64; m]; m];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = h[i][j].re;
            a[i + n][j + n] = h[i][j].re;
            a[i][j + n] = -h[i][j].im;
            a[i + n][j] = h[i][j].im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    values.into_iter().step_by(2).collect()
}

//! Weight sequences and the shift operators they define.
//!
//! A [`ShiftOperator`] is built from a declarative [`WeightSpec`]. The spec
//! names a closed-form family and declares the limits `M` (and `m` for
//! bilateral shifts); construction audits the declaration by sampling the
//! weights on a geometric index schedule. Monotone moduli make the audit
//! one-sided: every sample must sit between `m` and `M`, and the sample at
//! the horizon must be within the family's analytic tail bound of the limit.

mod family;
mod spec;
mod vector;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use family::Family;
pub use spec::{DeclaredLimits, FamilyKind, ParamValue, Side, WeightSpec};
pub use vector::CoefficientVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error(
        "weight at index {index} is zero; weight sequences must be zero-free (a leading run of \
         zero weights spans a reducing subspace on which the shift vanishes, so study the shift \
         on its orthogonal complement instead)"
    )]
    ZeroWeight { index: i64 },
    #[error("moduli decrease between indices {index} and {next} ({left} > {right}); the shift is not hyponormal")]
    NotHyponormal {
        index: i64,
        next: i64,
        left: f64,
        right: f64,
    },
    #[error("declared {which} = {declared} disagrees with the sampled weights: {detail}")]
    LimitMismatch {
        which: &'static str,
        declared: f64,
        detail: String,
    },
    #[error("invalid parameters for family {family}: {reason}")]
    InvalidParams { family: FamilyKind, reason: String },
    #[error("index {index} lies outside the unilateral index domain n ≥ 1")]
    IndexOutOfDomain { index: i64 },
}

impl WeightError {
    pub fn name(&self) -> &'static str {
        match self {
            WeightError::ZeroWeight { .. } => "ZeroWeight",
            WeightError::NotHyponormal { .. } => "NotHyponormal",
            WeightError::LimitMismatch { .. } => "LimitMismatch",
            WeightError::InvalidParams { .. } => "InvalidParams",
            WeightError::IndexOutOfDomain { .. } => "IndexOutOfDomain",
        }
    }
}

/// Sampling window for the construction audit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    /// Largest `|n|` sampled.
    pub horizon: u64,
    /// Number of geometrically spaced samples per side.
    pub samples: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            horizon: 1_000_000,
            samples: 256,
        }
    }
}

const MIN_AUDIT: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditSummary {
    pub horizon: u64,
    pub indices_checked: usize,
    /// `M − |w_H|` at the horizon.
    pub upper_gap: f64,
    /// `|w_{−H}| − m` at the horizon (bilateral; 0 otherwise).
    pub lower_gap: f64,
    /// Smallest `ln|w_{n+1}| − ln|w_n|` over adjacent samples.
    pub min_log_step: f64,
}

/// A validated hyponormal weighted shift.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftOperator {
    spec: WeightSpec,
    family: Family,
    upper: f64,
    lower: f64,
    phase_seed: Option<u64>,
    audit: AuditSummary,
}

pub fn make_shift(spec: WeightSpec) -> Result<ShiftOperator, WeightError> {
    ShiftOperator::new(spec)
}

impl ShiftOperator {
    pub fn new(spec: WeightSpec) -> Result<Self, WeightError> {
        ShiftOperator::with_audit(spec, AuditConfig::default())
    }

    pub fn with_audit(spec: WeightSpec, config: AuditConfig) -> Result<Self, WeightError> {
        let family = Family::from_spec(&spec)?;
        let (upper, lower, audit) = run_audit(&spec, &family, config)?;
        Ok(ShiftOperator {
            spec,
            family,
            upper,
            lower,
            phase_seed: None,
            audit,
        })
    }

    /// The same moduli with every weight multiplied by a pseudo-random unit
    /// phase derived from `(seed, n)`. Unitarily equivalent to `self`.
    pub fn with_phase_scramble(&self, seed: u64) -> ShiftOperator {
        ShiftOperator {
            phase_seed: Some(seed),
            ..self.clone()
        }
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn side(&self) -> Side {
        self.spec.side
    }

    pub fn is_bilateral(&self) -> bool {
        self.spec.side == Side::Bilateral
    }

    /// `M = lim_{n→+∞} |w_n| = sup |w_n|`.
    pub fn upper_limit(&self) -> f64 {
        self.upper
    }

    /// `m = lim_{n→−∞} |w_n|` for bilateral shifts; 0 for unilateral ones.
    pub fn lower_limit(&self) -> f64 {
        self.lower
    }

    pub fn audit(&self) -> &AuditSummary {
        &self.audit
    }

    fn check_index(&self, n: i64) -> Result<(), WeightError> {
        if self.spec.side == Side::Unilateral && n < 1 {
            Err(WeightError::IndexOutOfDomain { index: n })
        } else {
            Ok(())
        }
    }

    pub fn weight(&self, n: i64) -> Result<Complex64, WeightError> {
        self.check_index(n)?;
        let w = self.family.value(n);
        Ok(match self.phase_seed {
            Some(seed) => w * Complex64::from_polar(1.0, scramble_angle(seed, n)),
            None => w,
        })
    }

    /// `ln|w_n|`, exact even where `|w_n|` underflows.
    pub fn ln_modulus(&self, n: i64) -> Result<f64, WeightError> {
        self.check_index(n)?;
        Ok(self.family.ln_modulus(n))
    }

    /// `(Sx)_{n+1} = w_n x_n`; no truncation.
    pub fn apply(&self, x: &CoefficientVector) -> Result<CoefficientVector, WeightError> {
        if x.is_empty() {
            return Ok(CoefficientVector::zero());
        }
        self.check_index(x.lo())?;
        let image = x
            .iter()
            .map(|(n, c)| self.weight(n).map(|w| w * c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoefficientVector::new(x.lo() + 1, image))
    }

    /// `(S*x)_n = conj(w_n) x_{n+1}`; a unilateral shift sends `e_1` to zero.
    pub fn apply_adjoint(&self, x: &CoefficientVector) -> Result<CoefficientVector, WeightError> {
        if x.is_empty() {
            return Ok(CoefficientVector::zero());
        }
        self.check_index(x.lo())?;
        let first = match self.spec.side {
            Side::Unilateral => (x.lo() - 1).max(1),
            Side::Bilateral => x.lo() - 1,
        };
        let last = x.hi() - 1;
        if last < first {
            return Ok(CoefficientVector::zero());
        }
        let image = (first..=last)
            .map(|n| self.weight(n).map(|w| w.conj() * x.get(n + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoefficientVector::new(first, image))
    }
}

pub fn weight_at(op: &ShiftOperator, n: i64) -> Result<Complex64, WeightError> {
    op.weight(n)
}

pub fn apply(op: &ShiftOperator, x: &CoefficientVector) -> Result<CoefficientVector, WeightError> {
    op.apply(x)
}

pub fn apply_adjoint(op: &ShiftOperator, x: &CoefficientVector) -> Result<CoefficientVector, WeightError> {
    op.apply_adjoint(x)
}

fn scramble_angle(seed: u64, n: i64) -> f64 {
    // splitmix64 finalizer over (seed, n)
    let mut z = seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    std::f64::consts::TAU * ((z >> 11) as f64 / (1u64 << 53) as f64)
}

fn check_declared_limits(spec: &WeightSpec) -> Result<(f64, f64), WeightError> {
    let DeclaredLimits { upper, lower } = spec.limits;
    if !(upper.is_finite() && upper > 0.0) {
        return Err(WeightError::LimitMismatch {
            which: "M",
            declared: upper,
            detail: "M must be finite and positive".into(),
        });
    }
    let lower = match (spec.side, lower) {
        (Side::Unilateral, None) => 0.0,
        (Side::Unilateral, Some(m)) => {
            return Err(WeightError::LimitMismatch {
                which: "m",
                declared: m,
                detail: "unilateral shifts declare only M".into(),
            })
        }
        (Side::Bilateral, None) => {
            return Err(WeightError::LimitMismatch {
                which: "m",
                declared: f64::NAN,
                detail: "bilateral shifts must declare m".into(),
            })
        }
        (Side::Bilateral, Some(m)) if !(m.is_finite() && (0.0..=upper).contains(&m)) => {
            return Err(WeightError::LimitMismatch {
                which: "m",
                declared: m,
                detail: format!("need 0 ≤ m ≤ M = {upper}"),
            })
        }
        (Side::Bilateral, Some(m)) => m,
    };
    Ok((upper, lower))
}

/// Positive sample offsets `1..=horizon`: dense up to 64, geometric beyond.
fn sample_schedule(horizon: u64, samples: usize) -> Vec<u64> {
    let samples = samples.max(MIN_AUDIT as usize);
    let mut out: Vec<u64> = (1..=MIN_AUDIT.min(horizon)).collect();
    if horizon > MIN_AUDIT {
        let growth = (horizon as f64 / MIN_AUDIT as f64).ln() / (samples - 1) as f64;
        out.extend((0..samples).map(|i| ((MIN_AUDIT as f64) * (growth * i as f64).exp()).round() as u64));
        out.push(horizon);
    }
    out.retain(|&n| n <= horizon);
    out
}

fn run_audit(
    spec: &WeightSpec,
    family: &Family,
    config: AuditConfig,
) -> Result<(f64, f64, AuditSummary), WeightError> {
    let critical = family.critical_indices();
    let last_critical = critical.iter().map(|n| n.unsigned_abs()).max().unwrap_or(0);
    let horizon = config.horizon.max(MIN_AUDIT).max(last_critical + 1);
    let schedule = sample_schedule(horizon, config.samples);

    let mut indices: Vec<i64> = Vec::with_capacity(4 * schedule.len() + critical.len());
    for &k in &schedule {
        let k = k as i64;
        indices.extend([k, k + 1]);
        if spec.side == Side::Bilateral {
            indices.extend([-k, -k + 1]);
        }
    }
    if spec.side == Side::Bilateral {
        indices.push(0);
    }
    indices.extend(critical);
    indices.retain(|&n| spec.side == Side::Bilateral || n >= 1);
    indices.sort_unstable();
    indices.dedup();

    let mut min_log_step = f64::INFINITY;
    let mut log_moduli: Vec<(i64, f64)> = Vec::with_capacity(indices.len());
    for &n in &indices {
        let ln = family.ln_modulus(n);
        if !(ln > f64::NEG_INFINITY) {
            return Err(WeightError::ZeroWeight { index: n });
        }
        if let Some(&(p, ln_p)) = log_moduli.last() {
            let step: f64 = ln - ln_p;
            min_log_step = min_log_step.min(step);
            if step < -8.0 * f64::EPSILON * ln.abs().max(1.0) {
                return Err(WeightError::NotHyponormal {
                    index: p,
                    next: n,
                    left: ln_p.exp(),
                    right: ln.exp(),
                });
            }
        }
        log_moduli.push((n, ln));
    }

    let (upper, lower) = check_declared_limits(spec)?;
    let tol = 1e-12 * upper.max(1.0);
    for &(n, ln) in &log_moduli {
        let modulus = ln.exp();
        if modulus > upper + tol {
            return Err(WeightError::LimitMismatch {
                which: "M",
                declared: upper,
                detail: format!("|w({n})| = {modulus} exceeds M"),
            });
        }
        if spec.side == Side::Bilateral && modulus < lower - tol {
            return Err(WeightError::LimitMismatch {
                which: "m",
                declared: lower,
                detail: format!("|w({n})| = {modulus} is below m"),
            });
        }
    }

    let h = horizon as i64;
    let upper_gap = upper - family.ln_modulus(h).exp();
    let allowed = family.upper_gap_bound(h) + tol;
    if upper_gap > allowed {
        return Err(WeightError::LimitMismatch {
            which: "M",
            declared: upper,
            detail: format!("M − |w({h})| = {upper_gap:e} exceeds the family tail bound {allowed:e}"),
        });
    }
    let lower_gap = if spec.side == Side::Bilateral {
        let gap = family.ln_modulus(-h).exp() - lower;
        let allowed = family.lower_gap_bound(-h) + tol;
        if gap > allowed {
            return Err(WeightError::LimitMismatch {
                which: "m",
                declared: lower,
                detail: format!("|w({})| − m = {gap:e} exceeds the family tail bound {allowed:e}", -h),
            });
        }
        gap
    } else {
        0.0
    };

    let summary = AuditSummary {
        horizon,
        indices_checked: indices.len(),
        upper_gap,
        lower_gap,
        min_log_step,
    };
    Ok((upper, lower, summary))
}

//! Closed-form weight families.
//!
//! Every family evaluates its weights directly and also reports `ln|w_n|`
//! analytically, so that moduli far below the `f64` range (the negative tail
//! of `two_sided_geometric`, say) are still audited as nonzero. Each family
//! also supplies a bound on how far `|w_n|` can sit from its limits, which
//! the sampling audit uses as its tolerance.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use super::spec::{FamilyKind, ParamValue, Side, WeightSpec};
use super::WeightError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Profile {
    /// unilateral `1 − 1/(n + shift)`; bilateral `(1 + n/(|n| + shift)) / 2`
    Rational { shift: f64 },
    /// unilateral `1 − ratio^n`; bilateral `1 − ratio^{n+1}/2` for `n ≥ 0`,
    /// `ratio^{|n|}/2` for `n < 0`
    Geometric { ratio: f64 },
    /// `σ((n − center) / width)`
    Logistic { center: f64, width: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Family {
    Constant {
        value: Complex64,
    },
    Prefix {
        head: Option<Complex64>,
        prefix: Vec<Complex64>,
        tail: Complex64,
    },
    /// `scale · (low + (high − low) · h(n))` for a monotone profile `h ∈ (0, 1)`.
    Bridge {
        side: Side,
        scale: Complex64,
        low: f64,
        high: f64,
        profile: Profile,
    },
    TwoSidedGeometric {
        scale: Complex64,
        base: f64,
    },
}

struct Params<'a> {
    family: FamilyKind,
    raw: &'a BTreeMap<String, ParamValue>,
    used: BTreeSet<&'a str>,
}

impl<'a> Params<'a> {
    fn new(spec: &'a WeightSpec) -> Self {
        Params {
            family: spec.family,
            raw: &spec.params,
            used: BTreeSet::new(),
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> WeightError {
        WeightError::InvalidParams {
            family: self.family,
            reason: reason.into(),
        }
    }

    fn lookup(&mut self, name: &str) -> Option<ParamValue> {
        let (key, value) = self.raw.get_key_value(name)?;
        self.used.insert(key.as_str());
        Some(*value)
    }

    fn complex(&mut self, name: &str, default: Option<Complex64>) -> Result<Complex64, WeightError> {
        let value = match self.lookup(name) {
            Some(v) => v.as_complex(),
            None => default.ok_or_else(|| self.invalid(format!("missing parameter \"{name}\"")))?,
        };
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(self.invalid(format!("parameter \"{name}\" is not finite")));
        }
        Ok(value)
    }

    fn real(&mut self, name: &str, default: Option<f64>) -> Result<f64, WeightError> {
        let value = match self.lookup(name) {
            Some(v) => v
                .as_real()
                .ok_or_else(|| self.invalid(format!("parameter \"{name}\" must be real")))?,
            None => default.ok_or_else(|| self.invalid(format!("missing parameter \"{name}\"")))?,
        };
        if !value.is_finite() {
            return Err(self.invalid(format!("parameter \"{name}\" is not finite")));
        }
        Ok(value)
    }

    fn finish(self) -> Result<(), WeightError> {
        let unknown: Vec<&str> = self
            .raw
            .keys()
            .map(String::as_str)
            .filter(|k| !self.used.contains(k))
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(self.invalid(format!("unknown parameter(s): {}", unknown.join(", "))))
        }
    }
}

impl Family {
    pub(crate) fn from_spec(spec: &WeightSpec) -> Result<Family, WeightError> {
        let mut p = Params::new(spec);
        let family = match (spec.family, spec.side) {
            (FamilyKind::Constant, _) => Family::Constant {
                value: p.complex("value", None)?,
            },
            (FamilyKind::PrefixThenConstant, side) => {
                let mut prefix = Vec::new();
                while let Some(v) = p.lookup(&format!("p{}", prefix.len() + 1)) {
                    prefix.push(v.as_complex());
                }
                let head = match side {
                    Side::Bilateral => Some(p.complex("head", None)?),
                    Side::Unilateral => None,
                };
                let tail = p.complex("tail", None)?;
                let all = prefix.iter().chain(head.iter()).chain(std::iter::once(&tail));
                if all.into_iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                    return Err(p.invalid("prefix weights must be finite"));
                }
                Family::Prefix { head, prefix, tail }
            }
            (FamilyKind::RationalApproach | FamilyKind::GeometricApproach, Side::Unilateral) => {
                let scale = p.complex("scale", Some(Complex64::new(1.0, 0.0)))?;
                let profile = unilateral_profile(&mut p)?;
                Family::Bridge {
                    side: Side::Unilateral,
                    scale,
                    low: 0.0,
                    high: 1.0,
                    profile,
                }
            }
            (kind, side) if kind != FamilyKind::TwoSidedGeometric => {
                let scale = p.complex("scale", Some(Complex64::new(1.0, 0.0)))?;
                let (low, high) = match (kind, side) {
                    (FamilyKind::LogisticBridge, Side::Unilateral) => {
                        (p.real("low", Some(0.0))?, p.real("high", Some(1.0))?)
                    }
                    _ => (p.real("low", None)?, p.real("high", None)?),
                };
                if !(0.0 <= low && low <= high && high > 0.0) {
                    return Err(p.invalid(format!("need 0 ≤ low ≤ high and high > 0, got low={low}, high={high}")));
                }
                let profile = match kind {
                    FamilyKind::RationalApproach => rational_profile(&mut p)?,
                    FamilyKind::GeometricApproach => geometric_profile(&mut p)?,
                    _ => logistic_profile(&mut p)?,
                };
                Family::Bridge {
                    side,
                    scale,
                    low,
                    high,
                    profile,
                }
            }
            (_, Side::Bilateral) => {
                let scale = p.complex("scale", Some(Complex64::new(1.0, 0.0)))?;
                let base = p.real("base", Some(2.0))?;
                if base <= 1.0 {
                    return Err(p.invalid(format!("base must exceed 1, got {base}")));
                }
                Family::TwoSidedGeometric { scale, base }
            }
            (_, Side::Unilateral) => {
                return Err(p.invalid("two_sided_geometric is defined for bilateral shifts only"));
            }
        };
        p.finish()?;
        Ok(family)
    }

    /// Direct evaluation; may underflow to zero where `ln_modulus` does not.
    pub(crate) fn value(&self, n: i64) -> Complex64 {
        match self {
            Family::Constant { value } => *value,
            Family::Prefix { head, prefix, tail } => {
                // unilateral: p_n at n (1-based); bilateral: p_{n+1} at n ≥ 0
                let slot = match head {
                    None => n - 1,
                    Some(h) if n < 0 => return *h,
                    Some(_) => n,
                };
                prefix.get(slot as usize).copied().unwrap_or(*tail)
            }
            Family::Bridge {
                side,
                scale,
                low,
                high,
                profile,
            } => {
                let h = profile_value(*side, *profile, n);
                scale * (low + (high - low) * h)
            }
            Family::TwoSidedGeometric { scale, base } => scale * base.powi(n.min(0).max(i32::MIN as i64) as i32),
        }
    }

    pub(crate) fn ln_modulus(&self, n: i64) -> f64 {
        match self {
            Family::Constant { .. } | Family::Prefix { .. } => self.value(n).norm().ln(),
            Family::Bridge {
                side,
                scale,
                low,
                high,
                profile,
            } => {
                let ln_h = profile_ln(*side, *profile, n);
                let ln_shape = if *low == 0.0 {
                    high.ln() + ln_h
                } else {
                    (low + (high - low) * ln_h.exp()).ln()
                };
                scale.norm().ln() + ln_shape
            }
            Family::TwoSidedGeometric { scale, base } => scale.norm().ln() + n.min(0) as f64 * base.ln(),
        }
    }

    /// Upper bound on `M − |w_n|` for `n ≥ 1`.
    pub(crate) fn upper_gap_bound(&self, n: i64) -> f64 {
        match self {
            Family::Constant { .. } | Family::TwoSidedGeometric { .. } => 0.0,
            Family::Prefix { head, prefix, .. } => {
                let last = if head.is_some() { prefix.len() as i64 - 1 } else { prefix.len() as i64 };
                if n > last {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Family::Bridge {
                side,
                scale,
                low,
                high,
                profile,
            } => scale.norm() * (high - low) * profile_upper_gap(*side, *profile, n),
        }
    }

    /// Upper bound on `|w_n| − m` for `n ≤ −1` (bilateral only).
    pub(crate) fn lower_gap_bound(&self, n: i64) -> f64 {
        match self {
            Family::Constant { .. } | Family::Prefix { .. } => 0.0,
            Family::Bridge {
                side,
                scale,
                low,
                high,
                profile,
            } => scale.norm() * (high - low) * profile_value(*side, *profile, n),
            Family::TwoSidedGeometric { scale, base } => scale.norm() * base.powf(n as f64),
        }
    }

    /// Indices the audit must always visit (every explicit prefix slot).
    pub(crate) fn critical_indices(&self) -> Vec<i64> {
        match self {
            Family::Prefix { head: None, prefix, .. } => (1..=prefix.len() as i64 + 1).collect(),
            Family::Prefix { head: Some(_), prefix, .. } => (-1..=prefix.len() as i64).collect(),
            _ => Vec::new(),
        }
    }
}

fn unilateral_profile(p: &mut Params<'_>) -> Result<Profile, WeightError> {
    match p.family {
        FamilyKind::RationalApproach => rational_profile(p),
        _ => geometric_profile(p),
    }
}

fn rational_profile(p: &mut Params<'_>) -> Result<Profile, WeightError> {
    let shift = p.real("shift", Some(1.0))?;
    if shift <= 0.0 {
        return Err(p.invalid(format!("shift must be positive, got {shift}")));
    }
    Ok(Profile::Rational { shift })
}

fn geometric_profile(p: &mut Params<'_>) -> Result<Profile, WeightError> {
    let ratio = p.real("ratio", Some(0.5))?;
    if !(0.0 < ratio && ratio < 1.0) {
        return Err(p.invalid(format!("ratio must lie in (0, 1), got {ratio}")));
    }
    Ok(Profile::Geometric { ratio })
}

fn logistic_profile(p: &mut Params<'_>) -> Result<Profile, WeightError> {
    let center = p.real("center", Some(0.0))?;
    let width = p.real("width", Some(1.0))?;
    if width <= 0.0 {
        return Err(p.invalid(format!("width must be positive, got {width}")));
    }
    Ok(Profile::Logistic { center, width })
}

fn profile_value(side: Side, profile: Profile, n: i64) -> f64 {
    let x = n as f64;
    match (side, profile) {
        (Side::Unilateral, Profile::Rational { shift }) => 1.0 - 1.0 / (x + shift),
        (Side::Bilateral, Profile::Rational { shift }) => 0.5 * (1.0 + x / (x.abs() + shift)),
        (Side::Unilateral, Profile::Geometric { ratio }) => 1.0 - ratio.powf(x),
        (Side::Bilateral, Profile::Geometric { ratio }) => {
            if n >= 0 {
                1.0 - 0.5 * ratio.powf(x + 1.0)
            } else {
                0.5 * ratio.powf(-x)
            }
        }
        (_, Profile::Logistic { center, width }) => logistic((x - center) / width),
    }
}

fn profile_ln(side: Side, profile: Profile, n: i64) -> f64 {
    let x = n as f64;
    match (side, profile) {
        (Side::Unilateral, Profile::Rational { shift }) => (-1.0 / (x + shift)).ln_1p(),
        (Side::Bilateral, Profile::Rational { shift }) => {
            if n >= 0 {
                (0.5 * (1.0 + x / (x + shift))).ln()
            } else {
                (0.5 * shift / (shift - x)).ln()
            }
        }
        (Side::Unilateral, Profile::Geometric { ratio }) => (-ratio.powf(x)).ln_1p(),
        (Side::Bilateral, Profile::Geometric { ratio }) => {
            if n >= 0 {
                (-0.5 * ratio.powf(x + 1.0)).ln_1p()
            } else {
                -x * ratio.ln() - std::f64::consts::LN_2
            }
        }
        (_, Profile::Logistic { center, width }) => ln_logistic((x - center) / width),
    }
}

fn profile_upper_gap(side: Side, profile: Profile, n: i64) -> f64 {
    let x = n as f64;
    match (side, profile) {
        (Side::Unilateral, Profile::Rational { shift }) => 1.0 / (x + shift),
        (Side::Bilateral, Profile::Rational { shift }) => 0.5 * shift / (x.max(0.0) + shift),
        (Side::Unilateral, Profile::Geometric { ratio }) => ratio.powf(x),
        (Side::Bilateral, Profile::Geometric { ratio }) => 0.5 * ratio.powf(x + 1.0),
        (_, Profile::Logistic { center, width }) => (-(x - center) / width).exp().min(1.0),
    }
}

fn logistic(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

fn ln_logistic(t: f64) -> f64 {
    if t >= 0.0 {
        -(-t).exp().ln_1p()
    } else {
        t - t.exp().ln_1p()
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Whether the shift acts on `ℓ²(ℕ)` (indices `n ≥ 1`) or `ℓ²(ℤ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Unilateral,
    Bilateral,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Unilateral => "unilateral",
            Side::Bilateral => "bilateral",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Constant,
    PrefixThenConstant,
    RationalApproach,
    GeometricApproach,
    LogisticBridge,
    TwoSidedGeometric,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Constant => "constant",
            FamilyKind::PrefixThenConstant => "prefix_then_constant",
            FamilyKind::RationalApproach => "rational_approach",
            FamilyKind::GeometricApproach => "geometric_approach",
            FamilyKind::LogisticBridge => "logistic_bridge",
            FamilyKind::TwoSidedGeometric => "two_sided_geometric",
        })
    }
}

/// A family parameter: a bare JSON number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Real(f64),
    Complex([f64; 2]),
}

impl ParamValue {
    pub fn as_complex(self) -> Complex64 {
        match self {
            ParamValue::Real(re) => Complex64::new(re, 0.0),
            ParamValue::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    /// `None` when the value carries a nonzero imaginary part.
    pub fn as_real(self) -> Option<f64> {
        match self {
            ParamValue::Real(re) => Some(re),
            ParamValue::Complex([re, im]) if im == 0.0 => Some(re),
            ParamValue::Complex(_) => None,
        }
    }
}

impl From<f64> for ParamValue {
    fn from(value: f64) -> Self {
        ParamValue::Real(value)
    }
}

impl From<Complex64> for ParamValue {
    fn from(value: Complex64) -> Self {
        if value.im == 0.0 {
            ParamValue::Real(value.re)
        } else {
            ParamValue::Complex([value.re, value.im])
        }
    }
}

/// The limits a spec promises: `M = lim_{n→+∞} |w_n|` and, for bilateral
/// shifts, `m = lim_{n→−∞} |w_n|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredLimits {
    #[serde(rename = "M")]
    pub upper: f64,
    #[serde(rename = "m", default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
}

/// Declarative description of a weight sequence. This is the JSON document
/// the command line reads:
///
/// ```json
/// {"side": "bilateral", "family": "logistic_bridge",
///  "params": {"low": 1, "high": 2}, "limits": {"M": 2, "m": 1}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub side: Side,
    pub family: FamilyKind,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
    pub limits: DeclaredLimits,
}

impl WeightSpec {
    pub fn new(side: Side, family: FamilyKind, upper: f64, lower: Option<f64>) -> Self {
        WeightSpec {
            side,
            family,
            params: BTreeMap::new(),
            limits: DeclaredLimits { upper, lower },
        }
    }

    pub fn with_param(mut self, name: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    /// `w_n = value` for every index.
    pub fn constant(side: Side, value: impl Into<ParamValue>) -> Self {
        let value = value.into();
        let modulus = value.as_complex().norm();
        let lower = (side == Side::Bilateral).then_some(modulus);
        WeightSpec::new(side, FamilyKind::Constant, modulus, lower).with_param("value", value)
    }

    /// Unilateral `α_n = scale · (1 − 1/(n + shift))`.
    pub fn rational_unilateral(scale: f64, shift: f64) -> Self {
        WeightSpec::new(Side::Unilateral, FamilyKind::RationalApproach, scale.abs(), None)
            .with_param("scale", scale)
            .with_param("shift", shift)
    }

    /// Unilateral `α_n = scale · (1 − ratio^n)`.
    pub fn geometric_unilateral(scale: f64, ratio: f64) -> Self {
        WeightSpec::new(Side::Unilateral, FamilyKind::GeometricApproach, scale.abs(), None)
            .with_param("scale", scale)
            .with_param("ratio", ratio)
    }

    /// Bilateral `β_n = low + (high − low) · σ(n / width)` with the logistic σ.
    pub fn logistic_bilateral(low: f64, high: f64, width: f64) -> Self {
        WeightSpec::new(Side::Bilateral, FamilyKind::LogisticBridge, high, Some(low))
            .with_param("low", low)
            .with_param("high", high)
            .with_param("width", width)
    }

    /// Bilateral `β_n = scale · base^{min(n, 0)}`; `m = 0`.
    pub fn two_sided_geometric(scale: impl Into<ParamValue>, base: f64) -> Self {
        let scale = scale.into();
        WeightSpec::new(
            Side::Bilateral,
            FamilyKind::TwoSidedGeometric,
            scale.as_complex().norm(),
            Some(0.0),
        )
        .with_param("scale", scale)
        .with_param("base", base)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weight spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

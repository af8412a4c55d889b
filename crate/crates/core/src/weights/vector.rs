use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A finitely supported vector `Σ c_k e_{lo+k}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CoefficientVector {
    lo: i64,
    coefficients: Vec<Complex64>,
}

impl CoefficientVector {
    pub fn new(lo: i64, coefficients: Vec<Complex64>) -> Self {
        CoefficientVector { lo, coefficients }
    }

    pub fn zero() -> Self {
        CoefficientVector::default()
    }

    pub fn basis(index: i64) -> Self {
        CoefficientVector::new(index, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last represented index; meaningless for an empty window.
    pub fn hi(&self) -> i64 {
        self.lo + self.coefficients.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn get(&self, index: i64) -> Complex64 {
        let k = index - self.lo;
        if k < 0 {
            return ZERO;
        }
        self.coefficients.get(k as usize).copied().unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.lo + k as i64, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| *c == ZERO)
    }

    /// Euclidean norm, scaled so tiny or huge coefficients neither underflow nor overflow.
    pub fn norm(&self) -> f64 {
        let scale = self.coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 || !scale.is_finite() {
            return scale;
        }
        let sum: f64 = self.coefficients.iter().map(|c| (c / scale).norm_sqr()).sum();
        scale * sum.sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self, other⟩ = Σ self_n · conj(other_n)`.
    pub fn inner(&self, other: &CoefficientVector) -> Complex64 {
        self.iter().map(|(n, c)| c * other.get(n).conj()).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> CoefficientVector {
        CoefficientVector::new(self.lo, self.coefficients.iter().map(|c| c * factor).collect())
    }

    pub fn normalized(&self) -> Option<CoefficientVector> {
        let norm = self.norm();
        (norm > 0.0 && norm.is_finite()).then(|| self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    /// `a·self + b·other` over the union of both windows.
    pub fn combine(&self, a: Complex64, other: &CoefficientVector, b: Complex64) -> CoefficientVector {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => return CoefficientVector::zero(),
            (false, true) => return self.scaled(a),
            (true, false) => return other.scaled(b),
            _ => {}
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let coefficients = (lo..=hi).map(|n| a * self.get(n) + b * other.get(n)).collect();
        CoefficientVector::new(lo, coefficients)
    }
}

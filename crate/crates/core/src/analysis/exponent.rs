//! Empirical decay exponents between consecutive refinement levels.

use std::fmt;

use crate::error::{Error, Result};

/// Estimated exponent p in value ~ C N^(-p) between two refinement levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Value(f64),
    /// Both values are exactly zero; no rate to measure.
    ExactZero,
    /// One value is zero or negative while the other is not.
    Undefined,
}

impl Exponent {
    pub fn value(self) -> Option<f64> {
        match self {
            Exponent::Value(v) => Some(v),
            _ => None,
        }
    }

    /// Exponent from two (N, value) samples; decay gives a positive result.
    pub fn between(coarse: (usize, f64), fine: (usize, f64)) -> Self {
        let (n0, v0) = coarse;
        let (n1, v1) = fine;
        if v0 == 0.0 && v1 == 0.0 {
            return Exponent::ExactZero;
        }
        let usable = |v: f64| v.is_finite() && v > 0.0;
        if !usable(v0) || !usable(v1) {
            return Exponent::Undefined;
        }
        Exponent::Value((v0 / v1).ln() / (n1 as f64 / n0 as f64).ln())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Value(v) => write!(f, "{v}"),
            Exponent::ExactZero => write!(f, "exact-zero"),
            Exponent::Undefined => write!(f, "undefined"),
        }
    }
}

/// Consecutive-pair estimates `ln(v_i / v_{i+1}) / ln(N_{i+1} / N_i)`; one
/// entry per pair, so the result is one shorter than the input.
pub fn estimate_exponent(pairs: &[(usize, f64)]) -> Result<Vec<Exponent>> {
    if pairs.len() < 2 {
        return Err(Error::InvalidArgument(
            "at least two (N, value) pairs are needed".into(),
        ));
    }
    if pairs.windows(2).any(|w| w[1].0 <= w[0].0) || pairs[0].0 == 0 {
        return Err(Error::InvalidArgument(
            "N must be positive and strictly increasing".into(),
        ));
    }
    Ok(pairs
        .windows(2)
        .map(|w| Exponent::between(w[0], w[1]))
        .collect())
}

/// Least-squares slope of -ln(value) against ln(N) over all samples.
pub fn fitted_exponent(pairs: &[(usize, f64)]) -> Option<f64> {
    if pairs.len() < 2 || pairs.iter().any(|&(n, v)| n == 0 || v.is_nan() || v <= 0.0) {
        return None;
    }
    let pts: Vec<(f64, f64)> = pairs
        .iter()
        .map(|&(n, v)| ((n as f64).ln(), -v.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

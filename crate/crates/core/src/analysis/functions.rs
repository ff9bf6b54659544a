//! Test functions with closed-form derivatives and the exact operator.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::schemes::Diffusivity;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    /// e^mu
    Exp,
    /// A constant.
    Constant(f64),
    /// mu^k
    Monomial(u32),
    /// a + b mu
    Affine { a: f64, b: f64 },
}

/// Highest monomial degree accepted by name lookup.
pub const MAX_MONOMIAL_DEGREE: u32 = 5;

impl TestFunction {
    pub fn value(&self, mu: f64) -> f64 {
        match *self {
            TestFunction::Exp => mu.exp(),
            TestFunction::Constant(c) => c,
            TestFunction::Monomial(k) => mu.powi(k as i32),
            TestFunction::Affine { a, b } => a + b * mu,
        }
    }

    pub fn first_derivative(&self, mu: f64) -> f64 {
        match *self {
            TestFunction::Exp => mu.exp(),
            TestFunction::Constant(_) => 0.0,
            TestFunction::Monomial(0) => 0.0,
            TestFunction::Monomial(k) => k as f64 * mu.powi(k as i32 - 1),
            TestFunction::Affine { b, .. } => b,
        }
    }

    pub fn second_derivative(&self, mu: f64) -> f64 {
        match *self {
            TestFunction::Exp => mu.exp(),
            TestFunction::Monomial(k) if k >= 2 => (k * (k - 1)) as f64 * mu.powi(k as i32 - 2),
            _ => 0.0,
        }
    }

    pub fn values(&self, mus: &[f64]) -> Vec<f64> {
        mus.iter().map(|&m| self.value(m)).collect()
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestFunction::Exp => write!(f, "exp"),
            TestFunction::Constant(1.0) => write!(f, "const"),
            TestFunction::Constant(c) => write!(f, "const({c})"),
            TestFunction::Monomial(1) => write!(f, "mu"),
            TestFunction::Monomial(k) => write!(f, "mu{k}"),
            TestFunction::Affine { a, b } => write!(f, "affine({a},{b})"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// Accepts `exp`, `const`, `mu`, `mu0`..`mu5` (also `mu^k`) and
    /// `linear` (3 - 2 mu).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "exp" => return Ok(TestFunction::Exp),
            "const" | "constant" => return Ok(TestFunction::Constant(1.0)),
            "mu" => return Ok(TestFunction::Monomial(1)),
            "linear" => return Ok(TestFunction::Affine { a: 3.0, b: -2.0 }),
            _ => {}
        }
        let degree = s
            .strip_prefix("mu^")
            .or_else(|| s.strip_prefix("mu"))
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|&k| k <= MAX_MONOMIAL_DEGREE);
        degree
            .map(TestFunction::Monomial)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown test function `{s}`")))
    }
}

/// (D f')' = D' f' + D f'' at each node.
pub fn exact_fp_laplacian(diff: &dyn Diffusivity, tf: &TestFunction, nodes: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .map(|&mu| {
            diff.derivative(mu) * tf.first_derivative(mu)
                + diff.value(mu) * tf.second_derivative(mu)
        })
        .collect()
}

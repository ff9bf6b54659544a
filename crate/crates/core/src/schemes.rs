//! Assembly of the discrete operator (D(mu) f'(mu))' as a tridiagonal
//! operator.
//!
//! Every scheme here has the flux-difference form
//!
//! ```text
//! y_n = [c_{n+1/2} s_n - c_{n-1/2} s_{n-1}] / (mu_{n+1/2} - mu_{n-1/2})
//! ```
//!
//! with `s_n` the divided difference of f over [mu_n, mu_{n+1}]. Type I
//! schemes use `c = D` at the points; type II schemes use surrogate values
//! alpha. The first row has no left flux and the last row no right flux.

use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// Tolerance for treating D(±1) as zero.
pub const ENDPOINT_TOLERANCE: f64 = 1e-14;

/// A diffusion coefficient D(mu) on [-1, 1] with its derivative.
pub trait Diffusivity: Send + Sync {
    fn name(&self) -> &str;
    fn value(&self, mu: f64) -> f64;
    fn derivative(&self, mu: f64) -> f64;

    fn vanishes_at_endpoints(&self) -> bool {
        self.value(-1.0).abs() <= ENDPOINT_TOLERANCE && self.value(1.0).abs() <= ENDPOINT_TOLERANCE
    }
}

/// D(mu) = 1 - mu^2.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FokkerPlanck;

impl Diffusivity for FokkerPlanck {
    fn name(&self) -> &str {
        "1-mu^2"
    }

    fn value(&self, mu: f64) -> f64 {
        1.0 - mu * mu
    }

    fn derivative(&self, mu: f64) -> f64 {
        -2.0 * mu
    }
}

/// A diffusivity given by a pair of closures.
pub struct FnDiffusivity<F, G> {
    name: String,
    value: F,
    derivative: G,
}

impl<F, G> FnDiffusivity<F, G>
where
    F: Fn(f64) -> f64 + Send + Sync,
    G: Fn(f64) -> f64 + Send + Sync,
{
    pub fn new(name: impl Into<String>, value: F, derivative: G) -> Self {
        Self {
            name: name.into(),
            value,
            derivative,
        }
    }
}

impl<F, G> Diffusivity for FnDiffusivity<F, G>
where
    F: Fn(f64) -> f64 + Send + Sync,
    G: Fn(f64) -> f64 + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn value(&self, mu: f64) -> f64 {
        (self.value)(mu)
    }

    fn derivative(&self, mu: f64) -> f64 {
        (self.derivative)(mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphaSource {
    ExactDiffusivity,
    MorelRecursion,
    Rk4Recursion,
}

/// Surrogate diffusivity values alpha_{1/2}, ..., alpha_{N+1/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCoefficients {
    values: Vec<f64>,
    source: AlphaSource,
}

impl AlphaCoefficients {
    /// Wraps caller-provided values; the first must be exactly 0.
    pub fn new(values: Vec<f64>, source: AlphaSource) -> Result<Self> {
        match values.first() {
            None => Err(Error::LengthMismatch {
                expected: 2,
                found: 0,
            }),
            Some(&a) if a != 0.0 => Err(Error::NonzeroLeftAlpha(a)),
            Some(_) => Ok(Self { values, source }),
        }
    }

    /// D evaluated at the points, with D(-1) pinned to 0.
    pub fn exact(mesh: &Mesh, diff: &dyn Diffusivity) -> Self {
        let mut values: Vec<f64> = mesh.points().iter().map(|&p| diff.value(p)).collect();
        values[0] = 0.0;
        Self {
            values,
            source: AlphaSource::ExactDiffusivity,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source(&self) -> AlphaSource {
        self.source
    }

    /// alpha_{N+1/2}; it never enters the stencil.
    pub fn last(&self) -> f64 {
        *self.values.last().expect("alpha is never empty")
    }
}

/// alpha_{n+1/2} = alpha_{n-1/2} + D'(mu_n) (mu_{n+1/2} - mu_{n-1/2}), alpha_{1/2} = 0.
///
/// This is the unique choice that makes the type II scheme exact on
/// polynomials of degree 1 (when alpha_{N+1/2} = 0).
pub fn morel_alpha(mesh: &Mesh, diff: &dyn Diffusivity) -> AlphaCoefficients {
    let mut values = Vec::with_capacity(mesh.len() + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for (i, &x) in mesh.nodes().iter().enumerate() {
        acc += diff.derivative(x) * mesh.cell_width(i);
        values.push(acc);
    }
    AlphaCoefficients {
        values,
        source: AlphaSource::MorelRecursion,
    }
}

/// Largest tolerated |(p_{n} - p_{n-1}) - w_n| for the cumulative-point check.
const CUMULATIVE_TOLERANCE: f64 = 1e-13;

/// Fourth-order Runge–Kutta recursion for D(mu) = 1 - mu^2:
/// alpha_{n+1/2} = alpha_{n-1/2} - w_n (2 mu_{n-1/2} + w_n).
///
/// Requires points that are cumulative sums of the weights.
pub fn rk4_alpha(mesh: &Mesh) -> Result<AlphaCoefficients> {
    let weights = mesh.weights().ok_or(Error::MissingWeights)?;
    let points = mesh.points();
    for (i, &w) in weights.iter().enumerate() {
        if ((points[i + 1] - points[i]) - w).abs() > CUMULATIVE_TOLERANCE {
            return Err(Error::NonCumulativePoints { cell: i + 1 });
        }
    }
    let mut values = Vec::with_capacity(mesh.len() + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc -= w * (2.0 * points[i] + w);
        values.push(acc);
    }
    Ok(AlphaCoefficients {
        values,
        source: AlphaSource::Rk4Recursion,
    })
}

/// Three diagonals of an N x N tridiagonal operator. `sub[i]` couples row
/// `i + 1` to node `i`; `sup[i]` couples row `i` to node `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "operator must have at least one row".into(),
            ));
        }
        for off in [&sub, &sup] {
            if off.len() != n - 1 {
                return Err(Error::LengthMismatch {
                    expected: n - 1,
                    found: off.len(),
                });
            }
        }
        Ok(Self { sub, diag, sup })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    /// Coefficients of row `i` as (sub, diag, sup), zero where out of range.
    pub fn row(&self, i: usize) -> (f64, f64, f64) {
        let lower = if i > 0 { self.sub[i - 1] } else { 0.0 };
        let upper = if i + 1 < self.len() { self.sup[i] } else { 0.0 };
        (lower, self.diag[i], upper)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.sub
            .iter()
            .chain(&self.diag)
            .chain(&self.sup)
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// y = A f.
    ///
    /// Each row is evaluated as `sub (f_{i-1} - f_i) + sup (f_{i+1} - f_i) +
    /// (diag + (sub + sup)) f_i`, which is the same product regrouped so that
    /// the differences of f carry the cancellation. Rows with zero row-sum
    /// annihilate constants exactly.
    pub fn apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        if f.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: f.len(),
            });
        }
        Ok((0..n)
            .map(|i| {
                let (lower, centre, upper) = self.row(i);
                let mut y = (centre + (lower + upper)) * f[i];
                if i > 0 {
                    y += lower * (f[i - 1] - f[i]);
                }
                if i + 1 < n {
                    y += upper * (f[i + 1] - f[i]);
                }
                y
            })
            .collect())
    }

    /// CSV dump: `row,sub,diag,sup` with 1-based rows and out-of-range
    /// couplings written as 0.
    pub fn to_csv(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("row,sub,diag,sup\n");
        for i in 0..self.len() {
            let (l, c, u) = self.row(i);
            let _ = writeln!(out, "{},{:e},{:e},{:e}", i + 1, l, c, u);
        }
        out
    }
}

/// Builds the stencil from flux coefficients at the points. The first and
/// last entries of `coefficients` are never read.
fn assemble_flux_form(mesh: &Mesh, coefficients: &[f64]) -> TridiagonalOperator {
    let x = mesh.nodes();
    let n = x.len();
    let mut sub = vec![0.0; n.saturating_sub(1)];
    let mut sup = vec![0.0; n.saturating_sub(1)];
    let mut diag = vec![0.0; n];
    for i in 0..n {
        let width = mesh.cell_width(i);
        let mut right = 0.0;
        let mut left = 0.0;
        if i + 1 < n {
            right = coefficients[i + 1] / ((x[i + 1] - x[i]) * width);
            sup[i] = right;
        }
        if i > 0 {
            left = coefficients[i] / ((x[i] - x[i - 1]) * width);
            sub[i - 1] = left;
        }
        diag[i] = -(left + right);
    }
    TridiagonalOperator { sub, diag, sup }
}

/// Type I scheme: the exact diffusivity at the points. The boundary rows drop
/// the fluxes through ±1, so D must vanish there.
pub fn assemble_type1(mesh: &Mesh, diff: &dyn Diffusivity) -> Result<TridiagonalOperator> {
    if !diff.vanishes_at_endpoints() {
        return Err(Error::EndpointDiffusivity(diff.name().to_string()));
    }
    let coefficients: Vec<f64> = mesh.points().iter().map(|&p| diff.value(p)).collect();
    Ok(assemble_flux_form(mesh, &coefficients))
}

/// Type II scheme: surrogate values alpha at the points. alpha_{N+1/2} is not
/// used by the last row.
pub fn assemble_type2(mesh: &Mesh, alpha: &AlphaCoefficients) -> Result<TridiagonalOperator> {
    let values = alpha.values();
    if values.len() != mesh.len() + 1 {
        return Err(Error::LengthMismatch {
            expected: mesh.len() + 1,
            found: values.len(),
        });
    }
    if values[0] != 0.0 {
        return Err(Error::NonzeroLeftAlpha(values[0]));
    }
    Ok(assemble_flux_form(mesh, values))
}

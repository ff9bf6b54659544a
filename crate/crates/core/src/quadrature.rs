//! Gauss–Legendre rules on (-1, 1) and the half-range variant on (-1, 0) ∪ (0, 1).
//!
//! Nodes are found by Newton iteration on the three-term recurrence. Only the
//! non-positive half is computed; the other half is obtained by mirroring, so
//! node antisymmetry and weight symmetry hold bit-exactly.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Iteration cap for the Newton root finder.
pub const MAX_NEWTON_ITERATIONS: usize = 20;

/// Largest accepted full-range rule size.
pub const MAX_RULE_SIZE: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// One rule of N points on (-1, 1).
    FullRange,
    /// One rule of N points on each of (-1, 0) and (0, 1); 2N nodes in total.
    HalfRange,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::FullRange => "FR",
            Mode::HalfRange => "HR",
        }
    }
}

/// A quadrature rule with nodes in strictly increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    mode: Mode,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Total number of nodes (2N for a half-range rule built from N).
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of nodes per underlying Gauss–Legendre rule.
    pub fn base_size(&self) -> usize {
        match self.mode {
            Mode::FullRange => self.nodes.len(),
            Mode::HalfRange => self.nodes.len() / 2,
        }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Evaluates `(P_n(x), P_n'(x))` with the three-term recurrence.
///
/// The derivative uses `P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)` away from the
/// endpoints and the closed form `P_n'(±1) = (±1)^(n+1) n(n+1)/2` at them.
pub fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut curr = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * curr - kf * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    let nf = n as f64;
    let derivative = if x == 1.0 || x == -1.0 {
        let magnitude = nf * (nf + 1.0) / 2.0;
        if x < 0.0 && n.is_multiple_of(2) {
            -magnitude
        } else {
            magnitude
        }
    } else {
        nf * (x * curr - prev) / (x * x - 1.0)
    };
    (curr, derivative)
}

/// Newton iteration for the k-th largest root of `P_n` (1-based `k`).
fn legendre_root(n: usize, k: usize) -> Result<f64> {
    let mut x = (PI * (4 * k - 1) as f64 / (4 * n + 2) as f64).cos();
    let tol = 4.0 * f64::EPSILON;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let (p, dp) = legendre_eval(n, x);
        let step = p / dp;
        x -= step;
        if step.abs() <= tol {
            return Ok(x);
        }
    }
    Err(Error::RootNotConverged {
        degree: n,
        root: k,
        iterations: MAX_NEWTON_ITERATIONS,
    })
}

/// Gauss–Legendre rule of `n` points on (-1, 1).
pub fn gl_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_RULE_SIZE {
        return Err(Error::InvalidArgument(format!(
            "rule size must lie in 1..={MAX_RULE_SIZE}, got {n}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n / 2;
    for k in 1..=half {
        let root = legendre_root(n, k)?;
        let (_, dp) = legendre_eval(n, root);
        let w = 2.0 / ((1.0 - root * root) * dp * dp);
        nodes[k - 1] = -root;
        nodes[n - k] = root;
        weights[k - 1] = w;
        weights[n - k] = w;
    }
    if n % 2 == 1 {
        // The middle node is exactly 0; P_n'(0) follows from the recurrence.
        let (_, dp) = legendre_eval(n, 0.0);
        weights[half] = 2.0 / (dp * dp);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        mode: Mode::FullRange,
    })
}

/// Half-range rule: `gl_rule(n)` mapped onto (-1, 0) and onto (0, 1), weights
/// halved, 2n nodes in increasing order.
pub fn hr_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_RULE_SIZE / 2 {
        return Err(Error::InvalidArgument(format!(
            "half-range rule size must lie in 1..={}, got {n}",
            MAX_RULE_SIZE / 2
        )));
    }
    let base = gl_rule(n)?;
    let mut nodes = Vec::with_capacity(2 * n);
    let mut weights = Vec::with_capacity(2 * n);
    for (&x, &w) in base.nodes.iter().zip(&base.weights) {
        nodes.push((x - 1.0) / 2.0);
        weights.push(w / 2.0);
    }
    for (&x, &w) in base.nodes.iter().zip(&base.weights) {
        nodes.push((x + 1.0) / 2.0);
        weights.push(w / 2.0);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        mode: Mode::HalfRange,
    })
}

/// Builds the rule for `mode` with `n` nodes per underlying Gauss–Legendre rule.
pub fn rule(mode: Mode, n: usize) -> Result<QuadratureRule> {
    match mode {
        Mode::FullRange => gl_rule(n),
        Mode::HalfRange => hr_rule(n),
    }
}

//! Convergence studies, discrete moment residuals and node-wise error profiles.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analysis::diagnostics::MeshDiagnostics;
use crate::analysis::exponent::Exponent;
use crate::analysis::functions::{exact_fp_laplacian, TestFunction};
use crate::error::{Error, Result};
use crate::mesh::{haldy_ligou_mesh, lee_mesh, shifted_uniform_mesh, uniform_mesh, Mesh};
use crate::quadrature::{rule, Mode};
use crate::schemes::{
    assemble_type1, assemble_type2, morel_alpha, rk4_alpha, AlphaCoefficients, FokkerPlanck,
    TridiagonalOperator,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Type I on Gauss–Legendre nodes with midpoint points.
    Lee,
    /// Type I on Gauss–Legendre nodes with cumulative-weight points.
    HaldyLigou,
    /// Type II on the Haldy–Ligou mesh with the degree-1-exact recursion.
    Morel,
    /// Type II on the Haldy–Ligou mesh with the Runge–Kutta recursion.
    Rk4,
    /// Type I on the uniform mesh.
    Uniform,
    /// Type I on the shifted uniform mesh.
    ShiftedUniform,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Lee,
        Scheme::HaldyLigou,
        Scheme::Morel,
        Scheme::Rk4,
        Scheme::Uniform,
        Scheme::ShiftedUniform,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::Lee => "lee",
            Scheme::HaldyLigou => "haldy-ligou",
            Scheme::Morel => "morel",
            Scheme::Rk4 => "rk4",
            Scheme::Uniform => "uniform",
            Scheme::ShiftedUniform => "uniform-shifted",
        }
    }

    pub fn uses_quadrature(self) -> bool {
        !matches!(self, Scheme::Uniform | Scheme::ShiftedUniform)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.label() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scheme `{s}`")))
    }
}

/// A scheme together with its mode of application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub mode: Mode,
}

/// Everything built for one refinement level.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub mesh: Mesh,
    pub alpha: Option<AlphaCoefficients>,
    pub operator: TridiagonalOperator,
}

impl Discretization {
    pub fn diagnostics(&self) -> MeshDiagnostics {
        MeshDiagnostics::compute(&self.mesh, &FokkerPlanck, self.alpha.as_ref())
    }
}

impl SchemeConfig {
    pub fn new(scheme: Scheme, mode: Mode) -> Result<Self> {
        if mode == Mode::HalfRange && !scheme.uses_quadrature() {
            return Err(Error::InvalidArgument(format!(
                "half-range mode is only defined for Gauss-Legendre schemes, not `{scheme}`"
            )));
        }
        Ok(Self { scheme, mode })
    }

    pub fn full_range(scheme: Scheme) -> Self {
        Self {
            scheme,
            mode: Mode::FullRange,
        }
    }

    /// Total node count for `n` (2n in half-range mode).
    pub fn node_count(&self, n: usize) -> usize {
        match self.mode {
            Mode::FullRange => n,
            Mode::HalfRange => 2 * n,
        }
    }

    pub fn mesh(&self, n: usize) -> Result<Mesh> {
        match self.scheme {
            Scheme::Uniform => uniform_mesh(n),
            Scheme::ShiftedUniform => shifted_uniform_mesh(n),
            Scheme::Lee => lee_mesh(&rule(self.mode, n)?),
            Scheme::HaldyLigou | Scheme::Morel | Scheme::Rk4 => {
                haldy_ligou_mesh(&rule(self.mode, n)?)
            }
        }
    }

    /// Builds mesh, surrogate values and operator for D(mu) = 1 - mu^2; `n`
    /// counts nodes per half in half-range mode.
    pub fn build(&self, n: usize) -> Result<Discretization> {
        let mesh = self.mesh(n)?;
        let alpha = match self.scheme {
            Scheme::Morel => Some(morel_alpha(&mesh, &FokkerPlanck)),
            Scheme::Rk4 => Some(rk4_alpha(&mesh)?),
            _ => None,
        };
        let operator = match &alpha {
            Some(a) => assemble_type2(&mesh, a)?,
            None => assemble_type1(&mesh, &FokkerPlanck)?,
        };
        Ok(Discretization {
            mesh,
            alpha,
            operator,
        })
    }

    /// Columns printed for this scheme, following the published table layouts.
    pub fn columns(&self) -> Vec<Column> {
        use Column::*;
        let mut cols = match self.scheme {
            Scheme::Lee => vec![Order, Q, S],
            Scheme::HaldyLigou | Scheme::Rk4 => vec![Order, Q, R, S, T],
            Scheme::Morel => vec![Order, Q, R, S, T, U],
            Scheme::Uniform => vec![Order],
            Scheme::ShiftedUniform => vec![Order, Q],
        };
        if self.mode == Mode::HalfRange {
            cols.retain(|c| *c != Order);
        }
        cols
    }
}

impl fmt::Display for SchemeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.scheme, self.mode.label())
    }
}

/// Exponent columns of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    /// Order of E.
    Order,
    /// Decay of D*_N.
    Q,
    /// Decay of D_N.
    R,
    /// Growth of 1/m*_N.
    S,
    /// Decay of beta_N.
    T,
    /// Decay of beta*_N.
    U,
    /// Decay of X_N.
    V,
}

impl Column {
    pub const ALL: [Column; 7] = [
        Column::Order,
        Column::Q,
        Column::R,
        Column::S,
        Column::T,
        Column::U,
        Column::V,
    ];

    pub fn header(self) -> &'static str {
        match self {
            Column::Order => "order",
            Column::Q => "q",
            Column::R => "r",
            Column::S => "s",
            Column::T => "t",
            Column::U => "u",
            Column::V => "v",
        }
    }
}

/// Measurements for one refinement level.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    /// max_n |exact - discrete|
    pub error: f64,
    pub diagnostics: MeshDiagnostics,
}

impl Measurement {
    /// The quantity whose decay defines `column`.
    pub fn tracked(&self, column: Column) -> Option<f64> {
        let d = &self.diagnostics;
        match column {
            Column::Order => Some(self.error),
            Column::Q => Some(d.node_offset),
            Column::R => Some(d.point_offset),
            Column::S => Some(d.min_cell_width),
            Column::T => Some(d.beta),
            Column::U => d.beta_star,
            Column::V => d.x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    /// Requested size (nodes per half in half-range mode).
    pub n: usize,
    /// Total node count.
    pub nodes: usize,
    pub outcome: std::result::Result<Measurement, Error>,
    /// Estimates against the previous row; empty in the first row or when
    /// either row failed.
    pub exponents: Vec<(Column, Exponent)>,
}

impl StudyRow {
    pub fn exponent(&self, column: Column) -> Option<Exponent> {
        self.exponents
            .iter()
            .find(|(c, _)| *c == column)
            .map(|&(_, e)| e)
    }

    pub fn error(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|m| m.error)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub config: SchemeConfig,
    pub function: TestFunction,
    pub columns: Vec<Column>,
    pub rows: Vec<StudyRow>,
}

/// Threshold on |t| below which a half-range study is flagged non-convergent.
pub const NON_CONVERGENCE_T: f64 = 0.5;

impl ConvergenceReport {
    /// True when the last available beta_N exponent is below
    /// [`NON_CONVERGENCE_T`] in magnitude.
    pub fn non_convergent(&self) -> bool {
        self.rows
            .iter()
            .rev()
            .find_map(|r| r.exponent(Column::T).and_then(Exponent::value))
            .is_some_and(|t| t.abs() < NON_CONVERGENCE_T)
    }

    pub fn row(&self, n: usize) -> Option<&StudyRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Error of one discretization on `tf`.
pub fn max_error(disc: &Discretization, tf: &TestFunction) -> Result<f64> {
    Ok(signed_errors(disc, tf)?
        .iter()
        .fold(0.0, |m: f64, e| m.max(e.abs())))
}

fn signed_errors(disc: &Discretization, tf: &TestFunction) -> Result<Vec<f64>> {
    let x = disc.mesh.nodes();
    let approx = disc.operator.apply(&tf.values(x))?;
    let exact = exact_fp_laplacian(&FokkerPlanck, tf, x);
    Ok(exact.iter().zip(&approx).map(|(e, a)| e - a).collect())
}

fn measure(config: &SchemeConfig, tf: &TestFunction, n: usize) -> Result<Measurement> {
    let disc = config.build(n)?;
    Ok(Measurement {
        error: max_error(&disc, tf)?,
        diagnostics: disc.diagnostics(),
    })
}

/// Runs the scheme on every size in `ns` (ascending) and fits exponents
/// between consecutive rows. A failing size is reported in its row without
/// stopping the others.
pub fn convergence_study(
    config: &SchemeConfig,
    tf: &TestFunction,
    ns: &[usize],
) -> Result<ConvergenceReport> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("no sizes requested".into()));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "sizes must be strictly increasing".into(),
        ));
    }
    let outcomes: Vec<Result<Measurement>> =
        ns.par_iter().map(|&n| measure(config, tf, n)).collect();

    let mut rows: Vec<StudyRow> = Vec::with_capacity(ns.len());
    for (&n, outcome) in ns.iter().zip(outcomes) {
        let nodes = config.node_count(n);
        let exponents = match (rows.last(), &outcome) {
            (Some(prev), Ok(curr)) => match &prev.outcome {
                Ok(before) => Column::ALL
                    .iter()
                    .filter_map(|&c| {
                        let (a, b) = (before.tracked(c)?, curr.tracked(c)?);
                        Some((c, Exponent::between((prev.nodes, a), (nodes, b))))
                    })
                    .collect(),
                Err(_) => Vec::new(),
            },
            _ => Vec::new(),
        };
        rows.push(StudyRow {
            n,
            nodes,
            outcome,
            exponents,
        });
    }
    Ok(ConvergenceReport {
        config: *config,
        function: *tf,
        columns: config.columns(),
        rows,
    })
}

/// Discrete moment residuals `(sum w_n y_n, sum w_n mu_n y_n + 2 sum w_n mu_n f_n)`.
/// Both vanish when the scheme preserves the zeroth and first moments.
pub fn moment_residuals(mesh: &Mesh, op_output: &[f64], fvals: &[f64]) -> Result<(f64, f64)> {
    let w = mesh.weights().ok_or(Error::MissingWeights)?;
    for v in [op_output, fvals] {
        if v.len() != mesh.len() {
            return Err(Error::LengthMismatch {
                expected: mesh.len(),
                found: v.len(),
            });
        }
    }
    let x = mesh.nodes();
    let mut zeroth = 0.0;
    let mut first = 0.0;
    for i in 0..mesh.len() {
        zeroth += w[i] * op_output[i];
        first += w[i] * x[i] * (op_output[i] + 2.0 * fvals[i]);
    }
    Ok((zeroth, first))
}

/// Moment residuals of the scheme applied to `tf` at size `n`.
pub fn scheme_moments(config: &SchemeConfig, tf: &TestFunction, n: usize) -> Result<(f64, f64)> {
    let disc = config.build(n)?;
    let f = tf.values(disc.mesh.nodes());
    let y = disc.operator.apply(&f)?;
    moment_residuals(&disc.mesh, &y, &f)
}

/// Node-wise signed error `exact - discrete` as (mu_n, error) pairs.
pub fn error_profile(
    config: &SchemeConfig,
    tf: &TestFunction,
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    let disc = config.build(n)?;
    let errors = signed_errors(&disc, tf)?;
    Ok(disc.mesh.nodes().iter().copied().zip(errors).collect())
}

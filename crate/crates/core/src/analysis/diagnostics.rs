//! Mesh regularity constants and the scheme-specific constants that control
//! second-order convergence.

use crate::mesh::{cell_geometry, Mesh};
use crate::schemes::{AlphaCoefficients, Diffusivity};

fn max_abs<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// All quantities are nonnegative. The alpha-dependent ones are `None` unless
/// surrogate values were supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshDiagnostics {
    /// M_N: largest gap between consecutive nodes.
    pub max_node_gap: f64,
    /// M̃_N: largest of mu_1 + 1, M_N and 1 - mu_N.
    pub max_gap_with_ends: f64,
    /// M*_N: largest cell width mu_{n+1/2} - mu_{n-1/2}.
    pub max_cell_width: f64,
    /// m*_N: smallest cell width.
    pub min_cell_width: f64,
    /// D_N: largest offset of a point from the midpoint of its node pair.
    pub point_offset: f64,
    /// D*_N: largest offset of a node from the midpoint of its cell.
    pub node_offset: f64,
    /// A_N = max |d_n + d*_n|.
    pub a: f64,
    /// B_N = max |d_{n-1} + d*_n|.
    pub b: f64,
    /// C_N = D_N + D*_N.
    pub c: f64,
    /// beta_N(D).
    pub beta: f64,
    /// max |(mu_{n-1} + mu_{n+1})/2 - mu_n| over interior nodes.
    pub node_defect: f64,
    /// beta*_N(D).
    pub beta_star: Option<f64>,
    /// Lambda_N = max |D(mu_{n+1/2}) - alpha_{n+1/2}|.
    pub lambda: Option<f64>,
    /// X_N = |alpha_{N+1/2} / (1 - mu_{N-1/2})|.
    pub x: Option<f64>,
}

impl MeshDiagnostics {
    pub fn compute(mesh: &Mesh, diff: &dyn Diffusivity, alpha: Option<&AlphaCoefficients>) -> Self {
        let x = mesh.nodes();
        let p = mesh.points();
        let n = mesh.len();
        let geom = cell_geometry(mesh);

        let max_node_gap = max_abs(x.windows(2).map(|w| w[1] - w[0]));
        let max_gap_with_ends = max_node_gap.max(x[0] + 1.0).max(1.0 - x[n - 1]);
        let widths: Vec<f64> = (0..n).map(|i| mesh.cell_width(i)).collect();
        let max_cell_width = max_abs(widths.iter().copied());
        let min_cell_width = widths.iter().copied().fold(f64::INFINITY, f64::min);

        let point_offset = max_abs(geom.d.iter().copied());
        let node_offset = max_abs(geom.d_star.iter().copied());
        let a = max_abs(geom.d.iter().zip(&geom.d_star).map(|(d, ds)| d + ds));
        let b = max_abs((1..n).map(|i| geom.d[i - 1] + geom.d_star[i]));

        // Interior rows i = 1..N-2 (0-based) couple d[i-1] - d[i] with the
        // value at the point to the right of node i.
        let weighted_jump = |at_point: &dyn Fn(usize) -> f64| {
            max_abs(
                (1..n.saturating_sub(1))
                    .map(|i| (geom.d[i - 1] - geom.d[i]) * at_point(i + 1) / widths[i]),
            )
        };
        let beta = weighted_jump(&|k| diff.value(p[k]));
        let node_defect = max_abs(x.windows(3).map(|w| (w[0] + w[2]) / 2.0 - w[1]));

        let (beta_star, lambda, x_last) = match alpha {
            Some(alpha) => {
                let lam: Vec<f64> = p
                    .iter()
                    .zip(alpha.values())
                    .map(|(&pt, &av)| diff.value(pt) - av)
                    .collect();
                let beta_star = weighted_jump(&|k| lam[k]);
                let x_last = (alpha.last() / (1.0 - p[n - 1])).abs();
                (
                    Some(beta_star),
                    Some(max_abs(lam.iter().copied())),
                    Some(x_last),
                )
            }
            None => (None, None, None),
        };

        Self {
            max_node_gap,
            max_gap_with_ends,
            max_cell_width,
            min_cell_width,
            point_offset,
            node_offset,
            a,
            b,
            c: point_offset + node_offset,
            beta,
            node_defect,
            beta_star,
            lambda,
            x: x_last,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{haldy_ligou_mesh, lee_mesh, shifted_uniform_mesh, uniform_mesh};
    use crate::quadrature::{gl_rule, hr_rule};
    use crate::schemes::{morel_alpha, FokkerPlanck};

    #[test]
    fn uniform_four_nodes() {
        let m = uniform_mesh(4).unwrap();
        let d = MeshDiagnostics::compute(&m, &FokkerPlanck, None);
        assert_eq!(d.max_node_gap, 0.5);
        assert_eq!(d.max_gap_with_ends, 0.5);
        assert_eq!(d.point_offset, 0.0);
        assert_eq!(d.node_offset, 0.0);
        assert_eq!(d.min_cell_width, 0.5);
        assert_eq!(d.beta, 0.0);
        assert!(d.lambda.is_none());
    }

    #[test]
    fn lee_has_no_point_offset() {
        for n in [3, 20, 101] {
            let m = lee_mesh(&gl_rule(n).unwrap()).unwrap();
            let d = MeshDiagnostics::compute(&m, &FokkerPlanck, None);
            assert_eq!(d.point_offset, 0.0);
            assert_eq!(d.beta, 0.0);
        }
    }

    #[test]
    fn morel_two_nodes_lambda() {
        let m = haldy_ligou_mesh(&gl_rule(2).unwrap()).unwrap();
        let a = morel_alpha(&m, &FokkerPlanck);
        let d = MeshDiagnostics::compute(&m, &FokkerPlanck, Some(&a));
        let expected = (1.0 - 2.0 / 3f64.sqrt()).abs();
        assert!((d.lambda.unwrap() - expected).abs() < 1e-15);
        assert!(d.x.unwrap() < 1e-15);
    }

    #[test]
    fn structural_inequalities_hold() {
        let meshes = vec![
            lee_mesh(&gl_rule(37).unwrap()).unwrap(),
            haldy_ligou_mesh(&gl_rule(64).unwrap()).unwrap(),
            haldy_ligou_mesh(&hr_rule(20).unwrap()).unwrap(),
            uniform_mesh(50).unwrap(),
            shifted_uniform_mesh(50).unwrap(),
        ];
        for m in &meshes {
            let n = m.len() as f64;
            let d = MeshDiagnostics::compute(m, &FokkerPlanck, None);
            assert_eq!(d.c, d.point_offset + d.node_offset);
            assert!(d.a <= d.c + 1e-15 && d.b <= d.c + 1e-15);
            assert!(d.max_cell_width <= 2.0 * d.max_gap_with_ends);
            assert!(d.max_gap_with_ends <= 2.0 * d.max_cell_width);
            assert!((n + 1.0) * d.max_gap_with_ends >= 2.0 - 1e-12);
            assert!(d.min_cell_width <= 2.0 / n + 1e-15);
        }
    }
}

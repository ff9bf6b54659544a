//! Truncation errors of the two centred divided differences the schemes are
//! built from.

use crate::error::{Error, Result};
use crate::mesh::Mesh;

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// E*_n = phi'(mu_n) - [phi(mu_{n+1/2}) - phi(mu_{n-1/2})] / (mu_{n+1/2} - mu_{n-1/2}),
/// for n = 1..N.
///
/// `phi_at_points` has N + 1 entries, `phi_prime_at_nodes` has N.
pub fn truncation_error_star(
    phi_at_points: &[f64],
    phi_prime_at_nodes: &[f64],
    mesh: &Mesh,
) -> Result<Vec<f64>> {
    check_len(mesh.len() + 1, phi_at_points.len())?;
    check_len(mesh.len(), phi_prime_at_nodes.len())?;
    Ok(phi_prime_at_nodes
        .iter()
        .enumerate()
        .map(|(i, dphi)| dphi - (phi_at_points[i + 1] - phi_at_points[i]) / mesh.cell_width(i))
        .collect())
}

/// E_n = phi'(mu_{n+1/2}) - [phi(mu_{n+1}) - phi(mu_n)] / (mu_{n+1} - mu_n),
/// for n = 1..N-1.
///
/// `phi_at_nodes` has N entries, `phi_prime_at_points` has the N - 1 interior
/// points mu_{3/2}..mu_{N-1/2}.
pub fn truncation_error_mid(
    phi_at_nodes: &[f64],
    phi_prime_at_points: &[f64],
    mesh: &Mesh,
) -> Result<Vec<f64>> {
    check_len(mesh.len(), phi_at_nodes.len())?;
    check_len(mesh.len() - 1, phi_prime_at_points.len())?;
    let x = mesh.nodes();
    Ok(phi_prime_at_points
        .iter()
        .enumerate()
        .map(|(i, dphi)| dphi - (phi_at_nodes[i + 1] - phi_at_nodes[i]) / (x[i + 1] - x[i]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{cell_geometry, haldy_ligou_mesh, lee_mesh, uniform_mesh};
    use crate::quadrature::gl_rule;

    fn star_for(mesh: &Mesh, phi: impl Fn(f64) -> f64, dphi: impl Fn(f64) -> f64) -> Vec<f64> {
        let p: Vec<f64> = mesh.points().iter().map(|&v| phi(v)).collect();
        let d: Vec<f64> = mesh.nodes().iter().map(|&v| dphi(v)).collect();
        truncation_error_star(&p, &d, mesh).unwrap()
    }

    fn mid_for(mesh: &Mesh, phi: impl Fn(f64) -> f64, dphi: impl Fn(f64) -> f64) -> Vec<f64> {
        let f: Vec<f64> = mesh.nodes().iter().map(|&v| phi(v)).collect();
        let pts = mesh.points();
        let d: Vec<f64> = pts[1..pts.len() - 1].iter().map(|&v| dphi(v)).collect();
        truncation_error_mid(&f, &d, mesh).unwrap()
    }

    #[test]
    fn exact_on_linear_functions() {
        let mesh = haldy_ligou_mesh(&gl_rule(40).unwrap()).unwrap();
        // Rounding in the difference quotient grows like eps / width.
        let tol = 1e-14 / mesh.cell_width(0);
        for e in star_for(&mesh, |x| 2.0 - 3.0 * x, |_| -3.0) {
            assert!(e.abs() < tol);
        }
        for e in mid_for(&mesh, |x| 2.0 - 3.0 * x, |_| -3.0) {
            assert!(e.abs() < tol);
        }
    }

    #[test]
    fn quadratic_on_centred_meshes() {
        let uniform = uniform_mesh(32).unwrap();
        for e in star_for(&uniform, |x| x * x, |x| 2.0 * x) {
            assert!(e.abs() < 1e-14);
        }
        let lee = lee_mesh(&gl_rule(30).unwrap()).unwrap();
        for e in mid_for(&lee, |x| x * x, |x| 2.0 * x) {
            assert!(e.abs() < 1e-13);
        }
    }

    #[test]
    fn quadratic_closed_forms() {
        let mesh = haldy_ligou_mesh(&gl_rule(3).unwrap()).unwrap();
        let g = cell_geometry(&mesh);
        for (e, d) in mid_for(&mesh, |x| x * x, |x| 2.0 * x).iter().zip(&g.d) {
            assert!((e + 2.0 * d).abs() < 1e-15);
        }
        for (e, d) in star_for(&mesh, |x| x * x, |x| 2.0 * x)
            .iter()
            .zip(&g.d_star)
        {
            assert!((e + 2.0 * d).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_lengths() {
        let mesh = uniform_mesh(4).unwrap();
        assert!(truncation_error_star(&[0.0; 4], &[0.0; 4], &mesh).is_err());
        assert!(truncation_error_mid(&[0.0; 4], &[0.0; 4], &mesh).is_err());
    }
}

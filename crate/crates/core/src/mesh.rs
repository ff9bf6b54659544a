//! Interlaced node/point meshes of [-1, 1] and their cell geometry.
//!
//! A mesh of N nodes carries N + 1 points with
//! `-1 = p_0 < x_1 < p_1 < ... < p_{N-1} < x_N < p_N = 1`,
//! where `p_k` stands for the point mu_{k+1/2}. Indices in this module are
//! 0-based: `nodes[i]` is mu_{i+1} and `points[k]` is mu_{k+1/2}.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::quadrature::{Mode, QuadratureRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeshFamily {
    /// Gauss–Legendre nodes, points at node midpoints.
    Lee,
    /// Gauss–Legendre nodes, points at cumulative weight sums.
    HaldyLigou,
    /// Equally spaced nodes centred in equal cells.
    Uniform,
    /// Equally spaced nodes from -1 + 2/N to 1 - 1/N, midpoint points.
    ShiftedUniform,
}

impl MeshFamily {
    pub fn label(self) -> &'static str {
        match self {
            MeshFamily::Lee => "lee",
            MeshFamily::HaldyLigou => "haldy-ligou",
            MeshFamily::Uniform => "uniform",
            MeshFamily::ShiftedUniform => "uniform-shifted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    nodes: Vec<f64>,
    points: Vec<f64>,
    weights: Option<Vec<f64>>,
    family: MeshFamily,
    mode: Mode,
}

impl Mesh {
    /// Validates strict interlacing and the endpoint convention before
    /// accepting the mesh.
    pub fn new(
        nodes: Vec<f64>,
        points: Vec<f64>,
        weights: Option<Vec<f64>>,
        family: MeshFamily,
        mode: Mode,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument(
                "a mesh needs at least one node".into(),
            ));
        }
        if points.len() != nodes.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: nodes.len() + 1,
                found: points.len(),
            });
        }
        if let Some(w) = &weights {
            if w.len() != nodes.len() {
                return Err(Error::LengthMismatch {
                    expected: nodes.len(),
                    found: w.len(),
                });
            }
        }
        if points[0] != -1.0 {
            return Err(Error::NotInterlaced { position: 0 });
        }
        if points[nodes.len()] != 1.0 {
            return Err(Error::NotInterlaced {
                position: 2 * nodes.len(),
            });
        }
        // Written so that NaN coordinates also fail.
        for (i, &x) in nodes.iter().enumerate() {
            if points[i].partial_cmp(&x) != Some(Ordering::Less) {
                return Err(Error::NotInterlaced {
                    position: 2 * i + 1,
                });
            }
            if x.partial_cmp(&points[i + 1]) != Some(Ordering::Less) {
                return Err(Error::NotInterlaced {
                    position: 2 * i + 2,
                });
            }
        }
        Ok(Self {
            nodes,
            points,
            weights,
            family,
            mode,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// The N + 1 points mu_{1/2}, ..., mu_{N+1/2}.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn family(&self) -> MeshFamily {
        self.family
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Width mu_{i+3/2} - mu_{i+1/2} of the cell around node `i`.
    pub fn cell_width(&self, i: usize) -> f64 {
        self.points[i + 1] - self.points[i]
    }

    /// Writes the mesh as CSV: `index,node,point_left,point_right,weight`.
    /// `index` is 1-based; `weight` is empty for meshes without weights.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,node,point_left,point_right,weight\n");
        for (i, &x) in self.nodes.iter().enumerate() {
            let w = self
                .weights
                .as_ref()
                .map(|w| format!("{:e}", w[i]))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{:e},{:e},{:e},{}",
                i + 1,
                x,
                self.points[i],
                self.points[i + 1],
                w
            );
        }
        out
    }
}

fn midpoint_points(nodes: &[f64]) -> Vec<f64> {
    let mut points = Vec::with_capacity(nodes.len() + 1);
    points.push(-1.0);
    points.extend(nodes.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    points.push(1.0);
    points
}

/// Gauss–Legendre nodes with points at node midpoints (d_n = 0).
pub fn lee_mesh(rule: &QuadratureRule) -> Result<Mesh> {
    let points = midpoint_points(rule.nodes());
    Mesh::new(
        rule.nodes().to_vec(),
        points,
        Some(rule.weights().to_vec()),
        MeshFamily::Lee,
        rule.mode(),
    )
}

/// Cumulative sums from `start` up to the midpoint index, then mirrored about
/// `centre`. Returns the `weights.len() + 1` points; the first is `start`, the
/// last is exactly `2 * centre - start`.
fn mirrored_cumulative(weights: &[f64], start: f64, centre: f64) -> Vec<f64> {
    let n = weights.len();
    let mut points = vec![0.0; n + 1];
    points[0] = start;
    // Indices 0..=last_direct are summed; the rest come from the mirror.
    let last_direct = if n.is_multiple_of(2) {
        n / 2 - 1
    } else {
        n / 2
    };
    for k in 1..=last_direct {
        points[k] = points[k - 1] + weights[k - 1];
    }
    if n.is_multiple_of(2) {
        points[n / 2] = centre;
    }
    for k in 0..=last_direct {
        points[n - k] = 2.0 * centre - points[k];
    }
    points
}

/// Gauss–Legendre nodes with points mu_{n+1/2} = mu_{n-1/2} + w_n.
///
/// Full range: the sums run up to the midpoint and the rest is mirrored, so
/// points are exactly antisymmetric and the last one is exactly 1. Half range:
/// the same construction is applied to (-1, 0) and mirrored onto (0, 1), with
/// 0 as the shared interior point.
pub fn haldy_ligou_mesh(rule: &QuadratureRule) -> Result<Mesh> {
    let weights = rule.weights();
    let points = match rule.mode() {
        Mode::FullRange => mirrored_cumulative(weights, -1.0, 0.0),
        Mode::HalfRange => {
            let half = rule.base_size();
            let left = mirrored_cumulative(&weights[..half], -1.0, -0.5);
            let mut points = left.clone();
            points.extend(left.iter().rev().skip(1).map(|&p| -p));
            points
        }
    };
    Mesh::new(
        rule.nodes().to_vec(),
        points,
        Some(weights.to_vec()),
        MeshFamily::HaldyLigou,
        rule.mode(),
    )
}

/// N equally spaced nodes -1 + (2k - 1)/N with midpoint points; every node
/// carries the weight h = 2/N.
pub fn uniform_mesh(n: usize) -> Result<Mesh> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "uniform mesh needs at least 2 nodes, got {n}"
        )));
    }
    let nf = n as f64;
    let nodes: Vec<f64> = (1..=n).map(|k| -1.0 + (2 * k - 1) as f64 / nf).collect();
    let points = midpoint_points(&nodes);
    Mesh::new(
        nodes,
        points,
        Some(vec![2.0 / nf; n]),
        MeshFamily::Uniform,
        Mode::FullRange,
    )
}

/// N equally spaced nodes from -1 + 2/N to 1 - 1/N with midpoint points.
pub fn shifted_uniform_mesh(n: usize) -> Result<Mesh> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "shifted uniform mesh needs at least 3 nodes, got {n}"
        )));
    }
    let nf = n as f64;
    let first = -1.0 + 2.0 / nf;
    let last = 1.0 - 1.0 / nf;
    let spacing = (last - first) / (nf - 1.0);
    let mut nodes: Vec<f64> = (0..n).map(|k| first + k as f64 * spacing).collect();
    nodes[n - 1] = last;
    let points = midpoint_points(&nodes);
    Mesh::new(
        nodes,
        points,
        None,
        MeshFamily::ShiftedUniform,
        Mode::FullRange,
    )
}

/// Cell quantities for a mesh. Vectors are 0-based: `h[i]`, `d[i]` describe the
/// cell [mu_{i+1}, mu_{i+2}] (N - 1 entries); `h_star[i]`, `d_star[i]` the
/// cell [mu_{i+1/2}, mu_{i+3/2}] around node `i` (N entries).
#[derive(Debug, Clone, PartialEq)]
pub struct CellGeometry {
    pub h: Vec<f64>,
    pub d: Vec<f64>,
    pub h_star: Vec<f64>,
    pub d_star: Vec<f64>,
    /// Midpoints of the cells around each node.
    pub secondary_nodes: Vec<f64>,
    /// Midpoints between consecutive nodes.
    pub secondary_points: Vec<f64>,
}

pub fn cell_geometry(mesh: &Mesh) -> CellGeometry {
    let x = mesh.nodes();
    let p = mesh.points();
    let secondary_points: Vec<f64> = x.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    let secondary_nodes: Vec<f64> = p.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    let h = x.windows(2).map(|w| (w[1] - w[0]) / 2.0).collect();
    let d = secondary_points
        .iter()
        .zip(&p[1..p.len() - 1])
        .map(|(s, q)| s - q)
        .collect();
    let h_star = p.windows(2).map(|w| (w[1] - w[0]) / 2.0).collect();
    let d_star = secondary_nodes.iter().zip(x).map(|(s, q)| s - q).collect();
    CellGeometry {
        h,
        d,
        h_star,
        d_star,
        secondary_nodes,
        secondary_points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{gl_rule, hr_rule};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn lee_points_are_midpoints() {
        let m = lee_mesh(&gl_rule(2).unwrap()).unwrap();
        assert_eq!(m.points(), &[-1.0, 0.0, 1.0]);
        let m = lee_mesh(&gl_rule(3).unwrap()).unwrap();
        let s = 0.6f64.sqrt() / 2.0;
        assert!(close(m.points(), &[-1.0, -s, s, 1.0], 1e-16));
        let g = cell_geometry(&m);
        assert_eq!(g.d, vec![0.0, 0.0]);
    }

    #[test]
    fn haldy_ligou_small_cases() {
        let m = haldy_ligou_mesh(&gl_rule(2).unwrap()).unwrap();
        assert_eq!(m.points(), &[-1.0, 0.0, 1.0]);
        let m = haldy_ligou_mesh(&gl_rule(3).unwrap()).unwrap();
        assert!(close(
            m.points(),
            &[-1.0, -4.0 / 9.0, 4.0 / 9.0, 1.0],
            1e-15
        ));
        let g = cell_geometry(&m);
        assert_eq!(g.d_star[1], 0.0);
        let m = haldy_ligou_mesh(&gl_rule(1).unwrap()).unwrap();
        assert_eq!(m.points(), &[-1.0, 1.0]);
    }

    #[test]
    fn haldy_ligou_points_antisymmetric() {
        for n in [4, 5, 50, 51, 1000] {
            let m = haldy_ligou_mesh(&gl_rule(n).unwrap()).unwrap();
            let p = m.points();
            for k in 0..=n {
                assert_eq!(p[k], -p[n - k]);
            }
            if n.is_multiple_of(2) {
                assert_eq!(p[n / 2], 0.0);
            }
        }
    }

    #[test]
    fn haldy_ligou_half_range_has_zero_point() {
        for n in [1, 2, 3, 10, 25] {
            let rule = hr_rule(n).unwrap();
            let m = haldy_ligou_mesh(&rule).unwrap();
            assert_eq!(m.len(), 2 * n);
            assert_eq!(m.points()[n], 0.0);
            assert_eq!(*m.points().last().unwrap(), 1.0);
            // cumulative within each half
            for i in 0..2 * n {
                assert!((m.cell_width(i) - rule.weights()[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn uniform_meshes() {
        let m = uniform_mesh(4).unwrap();
        assert_eq!(m.nodes(), &[-0.75, -0.25, 0.25, 0.75]);
        assert_eq!(m.points(), &[-1.0, -0.5, 0.0, 0.5, 1.0]);
        let g = cell_geometry(&m);
        assert!(g.d.iter().all(|&v| v == 0.0));
        assert!(g.d_star.iter().all(|&v| v == 0.0));
        assert!(g.h_star.iter().all(|&v| v == 0.25));
        assert_eq!(m.weights().unwrap(), &[0.5; 4]);

        let m = uniform_mesh(2).unwrap();
        assert_eq!(m.nodes(), &[-0.5, 0.5]);
        assert_eq!(m.points(), &[-1.0, 0.0, 1.0]);
        assert!(uniform_mesh(1).is_err());
    }

    #[test]
    fn shifted_uniform_meshes() {
        let m = shifted_uniform_mesh(4).unwrap();
        assert_eq!(m.nodes()[0], -0.5);
        assert_eq!(m.nodes()[3], 0.75);
        assert!((m.nodes()[1] - m.nodes()[0] - 1.25 / 3.0).abs() < 1e-15);
        assert!(m.weights().is_none());
        assert!(shifted_uniform_mesh(2).is_err());
        assert_eq!(shifted_uniform_mesh(100).unwrap().len(), 100);

        // d*_1 = O(1/N): N * |d*_1| settles to a constant.
        let scaled: Vec<f64> = [100, 200, 400]
            .iter()
            .map(|&n| {
                let g = cell_geometry(&shifted_uniform_mesh(n).unwrap());
                n as f64 * g.d_star[0].abs()
            })
            .collect();
        assert!(scaled[0] > 0.1);
        assert!((scaled[2] - scaled[1]).abs() < 0.01 * scaled[2]);
    }

    #[test]
    fn constructor_rejects_bad_meshes() {
        let err = Mesh::new(
            vec![-0.5, 0.5],
            vec![-1.0, 0.6, 1.0],
            None,
            MeshFamily::Lee,
            Mode::FullRange,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotInterlaced { position: 3 });
        let err = Mesh::new(
            vec![0.0],
            vec![-0.9, 1.0],
            None,
            MeshFamily::Lee,
            Mode::FullRange,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotInterlaced { position: 0 });
        assert!(matches!(
            Mesh::new(
                vec![0.0],
                vec![-1.0],
                None,
                MeshFamily::Lee,
                Mode::FullRange
            ),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn csv_dump_layout() {
        let csv = uniform_mesh(2).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "index,node,point_left,point_right,weight");
        assert_eq!(lines[1], "1,-5e-1,-1e0,0e0,1e0");
        let csv = shifted_uniform_mesh(3).unwrap().to_csv();
        assert!(csv.lines().nth(1).unwrap().ends_with(','));
    }
}

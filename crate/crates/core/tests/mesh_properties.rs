use fpdiff::analysis::MeshDiagnostics;
use fpdiff::{
    cell_geometry, gl_rule, haldy_ligou_mesh, hr_rule, lee_mesh, shifted_uniform_mesh,
    uniform_mesh, FokkerPlanck, Mesh,
};
use proptest::prelude::*;

/// Every mesh family at size `n` (half-range ones with n nodes per half).
fn all_meshes(n: usize) -> Vec<(&'static str, Mesh)> {
    let fr = gl_rule(n).unwrap();
    let hr = hr_rule(n).unwrap();
    let mut out = vec![
        ("lee FR", lee_mesh(&fr).unwrap()),
        ("haldy-ligou FR", haldy_ligou_mesh(&fr).unwrap()),
        ("lee HR", lee_mesh(&hr).unwrap()),
        ("haldy-ligou HR", haldy_ligou_mesh(&hr).unwrap()),
    ];
    if n >= 2 {
        out.push(("uniform", uniform_mesh(n).unwrap()));
    }
    if n >= 3 {
        out.push(("uniform-shifted", shifted_uniform_mesh(n).unwrap()));
    }
    out
}

fn interlaced(m: &Mesh) -> bool {
    let (x, p) = (m.nodes(), m.points());
    p[0] == -1.0
        && p[m.len()] == 1.0
        && x.iter()
            .enumerate()
            .all(|(i, &xi)| p[i] < xi && xi < p[i + 1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constructors_interlace(n in 1usize..=3000) {
        for (name, m) in all_meshes(n) {
            prop_assert!(interlaced(&m), "{name} n={n}");
        }
    }

    #[test]
    fn haldy_ligou_points_are_antisymmetric(n in 1usize..=3000) {
        let m = haldy_ligou_mesh(&gl_rule(n).unwrap()).unwrap();
        let p = m.points();
        for k in 0..=n {
            prop_assert_eq!(p[k], -p[n - k]);
        }
    }

    #[test]
    fn node_defect_identity(n in 3usize..=1000) {
        for (name, m) in all_meshes(n) {
            let g = cell_geometry(&m);
            let (x, p) = (m.nodes(), m.points());
            for i in 1..m.len() - 1 {
                let lhs = (x[i - 1] + x[i + 1]) / 2.0 - x[i];
                let rhs = (g.secondary_points[i - 1] - p[i])
                    + (g.secondary_points[i] - p[i + 1])
                    + 2.0 * (g.secondary_nodes[i] - x[i]);
                prop_assert!((lhs - rhs).abs() <= 1e-13, "{name} n={n} i={i}");
            }
        }
    }

    #[test]
    fn cell_width_and_gap_bounds(n in 1usize..=2000) {
        for (name, m) in all_meshes(n) {
            let d = MeshDiagnostics::compute(&m, &FokkerPlanck, None);
            prop_assert!(d.max_cell_width <= 2.0 * d.max_gap_with_ends, "{name} n={n}");
            prop_assert!(d.max_gap_with_ends <= 2.0 * d.max_cell_width, "{name} n={n}");
        }
    }
}

#[test]
fn largest_sizes_interlace() {
    for (name, m) in all_meshes(20_000) {
        assert!(interlaced(&m), "{name}");
    }
}

#[test]
fn csv_lists_every_node() {
    let m = haldy_ligou_mesh(&gl_rule(7).unwrap()).unwrap();
    let csv = m.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "index,node,point_left,point_right,weight");
    assert_eq!(lines.len(), 8);
    for (i, line) in lines[1..].iter().enumerate() {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols[1], m.nodes()[i]);
        assert_eq!(cols[2], m.points()[i]);
        assert_eq!(cols[3], m.points()[i + 1]);
        assert_eq!(cols[4], m.weights().unwrap()[i]);
    }
}

use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fpdiff_ffi::*;

fn last_error() -> String {
    let needed = unsafe { fp_last_error_message(ptr::null_mut(), 0) };
    let mut buf = vec![0 as std::ffi::c_char; needed + 1];
    unsafe { fp_last_error_message(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_string_lossy()
        .into_owned()
}

fn rule(n: usize, mode: FpMode) -> *mut FpRule {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { fp_rule_new(n, mode, &mut r) }, FpStatus::Ok);
    r
}

#[test]
fn rule_round_trip() {
    let r = rule(3, FpMode::FullRange);
    let mut n = 0;
    let mut nodes = [0.0; 3];
    let mut weights = [0.0; 3];
    unsafe {
        assert_eq!(fp_rule_len(r, &mut n), FpStatus::Ok);
        assert_eq!(fp_rule_nodes(r, nodes.as_mut_ptr(), 3), FpStatus::Ok);
        assert_eq!(fp_rule_weights(r, weights.as_mut_ptr(), 3), FpStatus::Ok);
        fp_rule_free(r);
    }
    assert_eq!(n, 3);
    assert_eq!(nodes[1], 0.0);
    assert!((nodes[2] - 0.6f64.sqrt()).abs() <= f64::EPSILON);
    assert!((weights.iter().sum::<f64>() - 2.0).abs() < 1e-15);
}

#[test]
fn half_range_rule_has_2n_nodes() {
    let r = rule(4, FpMode::HalfRange);
    let mut n = 0;
    unsafe {
        fp_rule_len(r, &mut n);
        fp_rule_free(r);
    }
    assert_eq!(n, 8);
}

#[test]
fn morel_operator_matches_core() {
    let n = 64;
    let r = rule(n, FpMode::FullRange);
    let (mut mesh, mut alpha, mut op) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    let mut x = vec![0.0; n];
    let mut y = vec![0.0; n];
    let (mut sub, mut diag, mut sup) = (vec![0.0; n - 1], vec![0.0; n], vec![0.0; n - 1]);
    unsafe {
        assert_eq!(fp_mesh_haldy_ligou(r, &mut mesh), FpStatus::Ok);
        assert_eq!(fp_alpha_morel(mesh, &mut alpha), FpStatus::Ok);
        assert_eq!(fp_operator_type2(mesh, alpha, &mut op), FpStatus::Ok);
        assert_eq!(fp_mesh_nodes(mesh, x.as_mut_ptr(), n), FpStatus::Ok);
        let f: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        assert_eq!(
            fp_operator_apply(op, f.as_ptr(), y.as_mut_ptr(), n),
            FpStatus::Ok
        );
        assert_eq!(
            fp_operator_diagonals(op, sub.as_mut_ptr(), diag.as_mut_ptr(), sup.as_mut_ptr(), n),
            FpStatus::Ok
        );
        fp_operator_free(op);
        fp_alpha_free(alpha);
        fp_mesh_free(mesh);
        fp_rule_free(r);
    }
    let m = fpdiff::haldy_ligou_mesh(&fpdiff::gl_rule(n).unwrap()).unwrap();
    let a = fpdiff::morel_alpha(&m, &fpdiff::FokkerPlanck);
    let core = fpdiff::assemble_type2(&m, &a).unwrap();
    assert_eq!(diag, core.diag());
    assert_eq!(sub, core.sub());
    assert_eq!(sup, core.sup());
    let f: Vec<f64> = m.nodes().iter().map(|v| v.exp()).collect();
    assert_eq!(y, core.apply(&f).unwrap());
}

#[test]
fn meshes_and_alpha_values() {
    let (mut mesh, mut alpha) = (ptr::null_mut(), ptr::null_mut());
    let mut points = [0.0; 5];
    let mut w = [0.0; 4];
    let mut values = [0.0; 5];
    unsafe {
        assert_eq!(fp_mesh_uniform(4, &mut mesh), FpStatus::Ok);
        assert_eq!(fp_mesh_points(mesh, points.as_mut_ptr(), 5), FpStatus::Ok);
        assert_eq!(fp_mesh_weights(mesh, w.as_mut_ptr(), 4), FpStatus::Ok);
        assert_eq!(fp_alpha_morel(mesh, &mut alpha), FpStatus::Ok);
        assert_eq!(fp_alpha_values(alpha, values.as_mut_ptr(), 5), FpStatus::Ok);
        fp_alpha_free(alpha);
        fp_mesh_free(mesh);
    }
    assert_eq!(points, [-1.0, -0.5, 0.0, 0.5, 1.0]);
    assert_eq!(w, [0.5; 4]);
    assert_eq!(values[0], 0.0);
}

#[test]
fn errors_are_reported() {
    let mut r = ptr::null_mut();
    let mut mesh = ptr::null_mut();
    let mut alpha = ptr::null_mut();
    let mut buf = [0.0; 10];
    unsafe {
        assert_eq!(
            fp_rule_new(0, FpMode::FullRange, &mut r),
            FpStatus::InvalidArgument
        );
        assert!(r.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(fp_mesh_lee(ptr::null(), &mut mesh), FpStatus::NullPointer);
        assert_eq!(
            fp_rule_new(3, FpMode::FullRange, ptr::null_mut()),
            FpStatus::NullPointer
        );

        assert_eq!(fp_mesh_shifted_uniform(10, &mut mesh), FpStatus::Ok);
        assert_eq!(
            fp_mesh_weights(mesh, buf.as_mut_ptr(), 10),
            FpStatus::InvalidArgument
        );
        assert_eq!(
            fp_mesh_nodes(mesh, buf.as_mut_ptr(), 9),
            FpStatus::LengthMismatch
        );
        assert!(last_error().contains("9"));
        assert_eq!(fp_mesh_nodes(mesh, buf.as_mut_ptr(), 10), FpStatus::Ok);
        assert!(last_error().is_empty());
        assert_eq!(fp_alpha_rk4(mesh, &mut alpha), FpStatus::InvalidArgument);

        let mut op = ptr::null_mut();
        assert_eq!(fp_operator_type1(mesh, &mut op), FpStatus::Ok);
        let mut y = [0.0; 10];
        assert_eq!(
            fp_operator_apply(op, buf.as_ptr(), y.as_mut_ptr(), 8),
            FpStatus::LengthMismatch
        );
        assert_eq!(
            fp_operator_apply(op, ptr::null(), y.as_mut_ptr(), 10),
            FpStatus::NullPointer
        );
        fp_operator_free(op);
        fp_mesh_free(mesh);

        fp_mesh_free(ptr::null_mut());
        fp_rule_free(ptr::null_mut());
    }
}

#[test]
fn status_names() {
    for (s, name) in [
        (FpStatus::Ok, "ok"),
        (FpStatus::LengthMismatch, "length mismatch"),
    ] {
        let got = unsafe { CStr::from_ptr(fp_status_name(s)) };
        assert_eq!(got.to_str().unwrap(), name);
    }
}

fn target_dir() -> PathBuf {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let base = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let profile = if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    };
    base.join(profile)
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libfpdiff_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = std::env::temp_dir().join(format!("fpdiff-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("run cc");
    assert!(status.success());
    let out = Command::new(&exe).output().expect("run smoke test");
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "n=100 E=1.762e-03");
}

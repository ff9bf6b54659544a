//! One test per acceptance criterion; each prints a PASS/FAIL line.

use fpdiff::verify;

fn run(id: u8) {
    let outcome = verify::criterion(id).expect("criterion id");
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_lee_full_range_table() {
    run(1);
}

#[test]
fn criterion_02_haldy_ligou_full_range_table() {
    run(2);
}

#[test]
fn criterion_03_haldy_ligou_half_range_fails_to_converge() {
    run(3);
}

#[test]
fn criterion_04_morel_full_range_table() {
    run(4);
}

#[test]
fn criterion_05_uniform_table() {
    run(5);
}

#[test]
fn criterion_06_shifted_uniform_table() {
    run(6);
}

#[test]
fn criterion_07_morel_exact_on_linear_functions() {
    run(7);
}

#[test]
fn criterion_08_moment_properties() {
    run(8);
}

#[test]
fn criterion_09_lambda_decay() {
    run(9);
}

#[test]
fn criterion_10_gauss_legendre_offsets() {
    run(10);
}

#[test]
fn criterion_11_truncation_closed_form() {
    run(11);
}

#[test]
fn criterion_12_quadrature_sanity() {
    run(12);
}

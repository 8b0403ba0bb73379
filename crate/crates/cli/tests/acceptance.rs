//! Acceptance suite: one test per release-gating criterion.
//!
//! Run with `cargo test -p bdris-cli --test acceptance -- --nocapture` to see
//! the one-line pass/fail report of every criterion.

use bdris_cli::acceptance::{self, CriterionResult};

fn assert_criterion(r: CriterionResult) {
    println!(
        "ACCEPTANCE {:>2} {}: {} — {}",
        r.id,
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        r.detail
    );
    assert!(r.passed, "criterion {} failed: {}", r.id, r.detail);
}

#[test]
fn criterion_01_specular_maximum() {
    assert_criterion(acceptance::specular_maximum());
}

#[test]
fn criterion_02_no_ss_ceiling() {
    assert_criterion(acceptance::no_ss_ceiling());
}

#[test]
fn criterion_03_structural_gain_factor() {
    assert_criterion(acceptance::structural_gain_factor());
}

#[test]
fn criterion_04_cross_mode_cancellation() {
    assert_criterion(acceptance::cross_mode_cancellation());
}

#[test]
fn criterion_05_projection_property_suite() {
    assert_criterion(acceptance::projection_property_suite());
}

#[test]
fn criterion_06_aligned_users_equivalence() {
    assert_criterion(acceptance::aligned_users_equivalence());
}

#[test]
fn criterion_07_model_hierarchy() {
    assert_criterion(acceptance::model_hierarchy());
}

#[test]
fn criterion_08_closed_form_vs_phase_grid() {
    assert_criterion(acceptance::closed_form_vs_phase_grid());
}

#[test]
fn criterion_09_beam_pointing() {
    assert_criterion(acceptance::beam_pointing());
}

#[test]
fn criterion_10_rate_reproduction() {
    assert_criterion(acceptance::rate_reproduction());
}

//! Acceptance gate: one test per criterion, each printing a single verdict line.
//! Lines go straight to the stderr handle so they show even under output capture.

use std::io::Write;

use ccdiff::repro;

fn gate(number: usize, id: &str) {
    let item = repro::find(id).unwrap_or_else(|| panic!("unknown item {id}"));
    let v = item.run();
    let _ = writeln!(std::io::stderr(), "criterion {number:>2}: {}", v.line());
    assert!(v.passed, "criterion {number} ({id}) failed: {}", v.computed);
    assert!(
        v.within_budget(),
        "criterion {number} ({id}) took {} ms, budget {:?} ms",
        v.elapsed_ms,
        v.budget_ms
    );
}

#[test]
fn criterion_01_ccz_companion_gf16() {
    gate(1, "ccz-companion-gf16");
}

#[test]
fn criterion_02_ccz_companion_gf64() {
    gate(2, "ccz-companion-gf64");
}

#[test]
fn criterion_03_trace_sum_profile() {
    gate(3, "trace-sum-profile");
}

#[test]
fn criterion_04_gold_uniformity() {
    gate(4, "gold-uniformity");
}

#[test]
fn criterion_05_monomial_reduction() {
    gate(5, "monomial-reduction");
}

#[test]
fn criterion_06_walsh_moments() {
    gate(6, "walsh-moments");
}

#[test]
fn criterion_07_walsh_certificates() {
    gate(7, "walsh-certificates");
}

#[test]
fn criterion_08_c_ccz_invariance() {
    gate(8, "c-ccz-invariance");
}

#[test]
fn criterion_09_c_ccz_constructions() {
    gate(9, "c-ccz-constructions");
}

#[test]
fn criterion_10_minus_one_suite() {
    gate(10, "minus-one-suite");
}

#[test]
fn criterion_11_structural_lemmas() {
    gate(11, "structural-lemmas");
}

#[test]
fn criterion_12_power_table() {
    gate(12, "power-table");
}

//! Acceptance gate: one test per numbered criterion. Every tolerance is
//! pinned here through the verification suite; each test prints one
//! pass/fail line per sub-criterion and fails if any sub-criterion fails.

use trimode::verify::{run_criterion, CriterionResult, DEFAULT_SEED};

fn run(number: usize) {
    let results: Vec<CriterionResult> =
        run_criterion(number, DEFAULT_SEED).expect("criterion must evaluate");
    assert!(!results.is_empty());
    let mut all_pass = true;
    for r in &results {
        println!(
            "{} {:6} {} | measured={} expected={}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.description,
            r.measured,
            r.expected
        );
        all_pass &= r.pass;
    }
    assert!(
        all_pass,
        "criterion {number} has failing checks: {:?}",
        results
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("{}: measured={} expected={}", r.id, r.measured, r.expected))
            .collect::<Vec<_>>()
    );
}

#[test]
fn c01_ghz_tripartite_negativity() {
    run(1);
}

#[test]
fn c02_w_state_tripartite_negativity() {
    run(2);
}

#[test]
fn c03_closed_form_numeric_equivalence() {
    run(3);
}

#[test]
fn c04_phase_scan_oracle() {
    run(4);
}

#[test]
fn c05_iii0_no_squeezing() {
    run(5);
}

#[test]
fn c06_iii1a_extrema() {
    run(6);
}

#[test]
fn c07_iii1b_extrema() {
    run(7);
}

#[test]
fn c08_squeezing_thresholds() {
    run(8);
}

#[test]
fn c09_iii2_nonentangled_squeezed_states() {
    run(9);
}

#[test]
fn c10_iii3_entanglement_peak() {
    run(10);
}

#[test]
fn c11_iii3_squeezing() {
    run(11);
}

#[test]
fn c12_table_one_matrix() {
    run(12);
}

#[test]
fn c13_invariant_suite() {
    run(13);
}

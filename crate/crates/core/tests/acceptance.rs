//! One test per acceptance criterion, each at its stated tolerance and
//! sample counts with the default seed.

use paracr::suite::{run_criterion, SuiteConfig};

fn criterion(id: u8) {
    let r = run_criterion(id, &SuiteConfig::default());
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    println!("criterion {id} ({}): {verdict} in {} ms", r.title, r.millis);
    for c in &r.checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        match (c.residual, c.tolerance) {
            (Some(res), Some(tol)) => println!("    {mark:6} {} residual {res:.2e} tol {tol:.0e}", c.name),
            _ => println!("    {mark:6} {}", c.name),
        }
    }
    if let Some(e) = &r.error {
        println!("    error: {e}");
    }
    assert!(r.passed, "criterion {id} ({}) failed", r.title);
}

#[test]
fn criterion_1_integrability() {
    criterion(1);
}

#[test]
fn criterion_2_invariant_values() {
    criterion(2);
}

#[test]
fn criterion_3_classification() {
    criterion(3);
}

#[test]
fn criterion_4_realization() {
    criterion(4);
}

#[test]
fn criterion_5_jacobi() {
    criterion(5);
}

#[test]
fn criterion_6_s_ranges() {
    criterion(6);
}

#[test]
fn criterion_7_flatness() {
    criterion(7);
}

#[test]
fn criterion_8_symmetries() {
    criterion(8);
}

#[test]
fn criterion_9_engine_properties() {
    criterion(9);
}

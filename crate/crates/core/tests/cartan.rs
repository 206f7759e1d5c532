use paracr::cartan::{bundle_protocol, LiftedForms};
use paracr::expr::ZeroTestProtocol;

fn proto() -> ZeroTestProtocol {
    bundle_protocol(&ZeroTestProtocol::default(), 20)
}

#[test]
fn flatness_all_entries() {
    let l = LiftedForms::new();
    let r = l.verify_flatness(&proto()).unwrap();
    assert_eq!(r.entries.len(), 25);
    assert!(r.passed, "{:?}", r.failing().collect::<Vec<_>>());
    assert!(r.entries.iter().all(|e| e.check.worst < 1e-9));
}

#[test]
fn structure_equations() {
    let l = LiftedForms::new();
    let r = l.verify_structure_equations(&proto()).unwrap();
    assert_eq!(r.entries.len(), 10);
    assert!(r.passed, "{:?}", r.failing().collect::<Vec<_>>());
}

#[test]
fn perturbation_detected() {
    let l = LiftedForms::new();
    let bad = l.perturbed(4, &l.theta[0]);
    assert!(!bad.verify_flatness(&proto()).unwrap().passed);
    assert!(!bad.verify_structure_equations(&proto()).unwrap().passed);
}

#[test]
fn gauge_relation() {
    let l = LiftedForms::new();
    let r = l.verify_gauge_relation(&proto().with_tolerance(1e-8)).unwrap();
    assert!(r.samples >= 20);
    assert!(r.zero_pattern && r.identity_exact);
    assert!(r.passed, "{r:?}");
}

#[test]
fn closed_and_independent() {
    let l = LiftedForms::new();
    assert!(l.verify_dd(&proto()).unwrap().passed);
    assert!(l.min_abs_det(&proto()).unwrap() > 1e-8);
    assert!(l.verify_identity_section().unwrap().passed);
}

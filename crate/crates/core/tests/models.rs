use paracr::expr::{rat, Expr, ZeroTestProtocol};
use paracr::models::{
    iiib_implicit_check, s_of_b, s_threshold, ModelId, ModelSpec, StructureConstants, Target,
};

fn proto(samples: usize) -> ZeroTestProtocol {
    ZeroTestProtocol::default().with_samples(samples)
}

#[test]
fn iiia_realization() {
    for b in [rat(3, 2), rat(5, 4)] {
        let m = ModelSpec::load(ModelId::Iiia, Some(b)).unwrap();
        let r = m.verify_realization(None, &proto(50)).unwrap();
        assert_eq!(r.eps, Some(-1));
        assert!(r.passed, "{r:#?}");
        assert!(r.residuals.iter().all(|c| c.worst < 1e-9));
    }
}

#[test]
fn iiib_realization() {
    let m = ModelSpec::load(ModelId::Iiib, Some(rat(3, 1))).unwrap();
    let r = m.verify_realization(None, &proto(50)).unwrap();
    assert_eq!(r.eps, Some(-1));
    assert!(r.passed, "{r:#?}");
    assert!(r.residuals.iter().all(|c| c.worst < 1e-9));
    assert!(r.min_abs_det > 0.0);
}

#[test]
fn iiib_uncorrected_entry_fails() {
    let m = ModelSpec::load(ModelId::Iiib, Some(rat(3, 1))).unwrap();
    let r = m.verify_uncorrected_s11(None, &proto(20)).unwrap().unwrap();
    assert!(!r.passed);
    assert!(!r.residuals[0].zero);
}

#[test]
fn iiib_positive_eps_breaks_group_shape() {
    let m = ModelSpec::load(ModelId::Iiib, Some(rat(3, 1))).unwrap();
    let r = m.verify_realization(Some(1), &proto(20)).unwrap();
    assert!(!r.rho_positive);
}

#[test]
fn coframes_independent() {
    for id in ModelId::ALL {
        let m = ModelSpec::load(id, None).unwrap();
        let cf = m.model_coframe(&proto(50)).unwrap();
        assert_eq!(cf.forms().len(), 5);
    }
}

#[test]
fn jacobi_for_branch_constants() {
    for e in [-1, 1] {
        let eps = Expr::int(e);
        assert!(StructureConstants::homo1(&eps).jacobi_check().holds);
        assert!(StructureConstants::homo2(&eps, &Expr::var("s")).jacobi_check().holds);
        for s in [-2, 0, 1] {
            assert!(StructureConstants::homo2(&eps, &Expr::int(s)).jacobi_check().holds);
        }
    }
    let mut sc = StructureConstants::homo1(&Expr::int(1));
    sc.set(0, 1, 3, Expr::int(-1));
    assert!(!sc.jacobi_check().holds);
}

#[test]
fn target_tables() {
    let m = ModelSpec::load(ModelId::Ii, None).unwrap();
    assert_eq!(m.target, Target::Homo1);
    let sc = m.target_structure(Some(1)).unwrap();
    assert_eq!(sc.get(0, 0, 2), Expr::int(-6));
    assert_eq!(sc.get(0, 1, 3), Expr::int(1));
}

#[test]
fn s_ranges() {
    let th = s_threshold();
    assert!((s_of_b(ModelId::Iiia, 1.0).unwrap().s - th).abs() < 1e-12);
    for i in 1..=100 {
        let b = 1.0 + i as f64 / 101.0;
        assert!(s_of_b(ModelId::Iiia, b).unwrap().s <= th);
        let b = 10.0 * i as f64 / 100.0;
        assert!(s_of_b(ModelId::Iiib, b).unwrap().s > th);
    }
    assert!(s_of_b(ModelId::Iiib, 3f64.sqrt()).unwrap().s.abs() < 1e-12);
}

#[test]
fn s_derivative_matches_finite_differences() {
    for i in 0..20 {
        for (id, b) in [
            (ModelId::Iiia, 1.05 + 0.045 * i as f64),
            (ModelId::Iiib, 0.3 + 0.4 * i as f64),
        ] {
            let h = 1e-5;
            let fd = (s_of_b(id, b + h).unwrap().s - s_of_b(id, b - h).unwrap().s) / (2.0 * h);
            let v = s_of_b(id, b).unwrap().ds_db;
            assert!((fd - v).abs() <= 1e-6 * v.abs().max(1.0), "{id} b={b}: {fd} vs {v}");
        }
    }
}

#[test]
fn iiib_implicit_equations() {
    for b in [1.0, 3.0] {
        let r = iiib_implicit_check(b, &proto(100).with_tolerance(1e-8)).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

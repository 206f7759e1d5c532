use paracr::expr::{rat, ZeroTestProtocol};
use paracr::exterior::VectorField;
use paracr::models::ModelId;
use paracr::paracr::PdePair;
use paracr::symmetry::{solve_determining_equations, symmetry_residuals, GeneratorSet};

fn proto() -> ZeroTestProtocol {
    ZeroTestProtocol::default().with_samples(20)
}

#[test]
fn flat_algebra() {
    let set = GeneratorSet::catalog(ModelId::Flat, None).unwrap();
    let r = set.verify(&proto()).unwrap();
    assert!(r.passed, "{:#?}", r.mismatches);
    assert_eq!(r.rank, 10);
    let a = r.algebra.unwrap();
    assert_eq!(a.derived_dimension, 10);
    assert!(!a.solvable);
}

#[test]
fn five_dimensional_models() {
    for (id, b) in [(ModelId::Ii, None), (ModelId::Iiia, Some(rat(3, 2))), (ModelId::Iiib, Some(rat(3, 1)))] {
        let set = GeneratorSet::catalog(id, b).unwrap();
        let r = set.verify(&proto()).unwrap();
        assert!(r.passed, "{id}: {r:#?}");
        let a = r.algebra.unwrap();
        assert!(a.solvable, "{id}");
        let w = a.abelian_ideal.unwrap();
        assert!(w.is_ideal && w.is_abelian, "{id}");
    }
}

#[test]
fn iiia_uncorrected_generator_fails() {
    let set = GeneratorSet::iiia_uncorrected(Some(rat(3, 2))).unwrap();
    let v = set.verdicts(&proto()).unwrap();
    assert!(!v[1].verdict.is_symmetry);
    assert!(v.iter().enumerate().all(|(i, g)| i == 1 || g.verdict.is_symmetry));
}

#[test]
fn iiib_needs_matching_scalar() {
    let set = GeneratorSet::catalog_with_omega(ModelId::Iiib, Some(rat(3, 1)), Some(rat(0, 1))).unwrap();
    let v = set.verdicts(&proto()).unwrap();
    assert!(!v[1].verdict.is_symmetry);
}

#[test]
fn d_dp_is_not_a_symmetry() {
    let set = GeneratorSet::catalog(ModelId::Flat, None).unwrap();
    let dp = VectorField::coordinate(&set.pair.chart(), 3);
    let v = symmetry_residuals(&dp, &set.pair).check(&set.protocol(&proto())).unwrap();
    assert!(!v.conditions[0].zero);
}

#[test]
fn determining_equations_recover_catalogs() {
    for (id, d, n) in [(ModelId::Flat, 2, 10), (ModelId::Ii, 3, 5)] {
        let set = GeneratorSet::catalog(id, None).unwrap();
        let r = solve_determining_equations(&set.pair, d, &proto()).unwrap();
        assert_eq!(r.kernel_dimension, n, "{id}");
        let inside = r.contains(&set.gens, &set.protocol(&proto())).unwrap();
        assert!(inside.iter().all(|&b| b), "{id}: {inside:?}");
    }
}

#[test]
fn non_integrable_pair() {
    let pair = PdePair::parse("p^2/4", "r").unwrap();
    let r = solve_determining_equations(&pair, 1, &proto()).unwrap();
    let p = pair.protocol(&proto());
    for k in &r.kernel {
        assert!(symmetry_residuals(k, &pair).check(&p).unwrap().is_symmetry);
    }
}

use paracr::expr::{parse_expression as p, Expr, SampleBox, ZeroTestProtocol};
use paracr::exterior::Form;
use paracr::paracr::{BranchLabel, PChart, PdePair};

fn proto() -> ZeroTestProtocol {
    ZeroTestProtocol::default()
}

fn iiia(b: &str) -> PdePair {
    let bind = [("b".to_string(), p(b).unwrap())].into_iter().collect();
    let f = paracr::expr::parse_with_constants("p^b/4", &bind).unwrap();
    let h = paracr::expr::parse_with_constants("(2-b)*r^2/p", &bind).unwrap();
    PdePair::new(f, h).unwrap()
}

fn iiib(b: i64) -> PdePair {
    let bind = [("b".to_string(), Expr::int(b))].into_iter().collect();
    let q = |s: &str| paracr::expr::parse_with_constants(s, &bind).unwrap();
    let pp = q("exp(b*t)*(cos(t) - b*sin(t))");
    let f = q("exp(b*t)*(sin(t) + b*cos(t))");
    let hh = q("((b^2-3)*P - 4*b*G)/(G - b*P)^2*r^2")
        .substitute(&[("P".to_string(), pp.clone()), ("G".to_string(), f.clone())].into_iter().collect());
    PdePair::with_p_chart(f, hh, PChart::new("t", pp)).with_box(PdePair::default_box().with("t", 0.2, 1.1))
}

#[test]
fn integrability_exact_for_rational_models() {
    for pair in [
        PdePair::parse("p^2/4", "0").unwrap(),
        PdePair::parse("p^2/4", "r^3").unwrap(),
        iiia("5/4"),
        iiia("3/2"),
        iiia("7/4"),
    ] {
        let res = pair.integrability_residual();
        assert!(res.is_zero(), "{res}");
    }
    let bad = PdePair::parse("p^2/4", "r").unwrap();
    assert!(!bad.integrability_residual().is_zero());
}

#[test]
fn integrability_numeric_for_iiib() {
    for b in [1, 3] {
        let rep = iiib(b).check_admissibility(&proto().with_samples(100)).unwrap();
        assert!(rep.admissible(), "b={b}: {:?}", rep.integrable);
    }
}

#[test]
fn model_ii_invariants() {
    let pair = PdePair::parse("p^2/4", "r^3").unwrap();
    let inv = pair.invariants(&proto()).unwrap();
    assert_eq!(inv.i3, p("2*r").unwrap());
    assert!(inv.i1.is_zero() && inv.i2.is_zero());
    assert_eq!(inv.c, p("6*r").unwrap());
    assert_eq!(inv.c4, p("6*r^3").unwrap());
    assert_eq!((&inv.c5 - p("3*r^2*(1+p*r)").unwrap()).simplify(), Expr::zero());
    assert_eq!(inv.c_tilde, p("6*r^2").unwrap());
    assert!(inv.cross_relations().iter().all(|e| e.is_zero()));
    assert_eq!(inv.i3.to_string(), "2*r");
}

#[test]
fn model_iiia_invariants() {
    let pair = iiia("3/2");
    let inv = pair.invariants(&proto()).unwrap();
    assert!(inv.i3.is_zero(), "{}", inv.i3);
    let at1 = inv.i2.substitute_one("p", &Expr::one());
    assert_eq!(at1, Expr::frac(-5, 54));
    assert!(inv.cross_relations().iter().all(|e| e.is_zero()));
}

#[test]
fn classification_of_catalog_pairs() {
    let flat = PdePair::parse("p^2/4", "0").unwrap();
    assert_eq!(flat.classify(&proto()).unwrap().branch, BranchLabel::Flat);
    let ii = PdePair::parse("p^2/4", "r^3").unwrap();
    assert_eq!(ii.classify(&proto()).unwrap().branch, BranchLabel::NonflatI3 { eps: Some(-1) });
    assert_eq!(iiia("3/2").classify(&proto()).unwrap().branch, BranchLabel::NonflatI2 { eps: Some(-1) });
    assert_eq!(iiib(3).classify(&proto()).unwrap().branch, BranchLabel::NonflatI2 { eps: Some(-1) });
    let neg = ii.clone().with_box(SampleBox::default().with("p", 0.5, 2.0).with("r", -2.0, -0.5));
    assert_eq!(neg.classify(&proto()).unwrap().branch, BranchLabel::NonflatI3 { eps: Some(1) });
    let bad = PdePair::parse("p^2/4", "r").unwrap();
    assert_eq!(bad.classify(&proto()).unwrap().branch, BranchLabel::Inadmissible);
}

#[test]
fn initial_differentials_match_structure_equations() {
    for pair in [PdePair::parse("p^2/4", "0").unwrap(), PdePair::parse("p^2/4", "r^3").unwrap(), iiia("3/2")] {
        let w = pair.initial_forms();
        let expected = pair.expected_initial_differentials();
        for (k, (wk, ek)) in w.iter().zip(&expected).enumerate() {
            let r = wk.d().sub(ek);
            let c = r.check_zero(&proto()).unwrap();
            assert!(c.zero, "d omega{} : {:?}", k + 1, c.failing);
        }
    }
}

#[test]
fn coframe_derivatives_reconstruct_df() {
    let pair = PdePair::parse("p^2/4", "r^3").unwrap();
    let cf = pair.initial_coframe(&proto()).unwrap();
    let f = p("x*r^2 + z*p").unwrap();
    let fm = cf.coframe_derivatives(&f);
    let rebuilt = Form::sum(cf.chart(), 1, fm.iter().zip(cf.forms()).map(|(c, w)| w.scale(c)).collect::<Vec<_>>().iter());
    let diff = Form::differential(cf.chart(), &f).sub(&rebuilt);
    assert!(diff.check_zero(&proto()).unwrap().zero);
}

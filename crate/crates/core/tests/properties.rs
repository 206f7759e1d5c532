//! Randomized checks of the algebraic laws the engine relies on.

use paracr::expr::{
    is_identically_zero, normalize_rational, numeric_zero_test, parse_expression, EvaluationPoint, Expr,
    ZeroTestProtocol,
};
use paracr::exterior::{CoordChart, Form, VectorField};
use paracr::paracr::{BranchLabel, PdePair};
use paracr::suite::engine::{fd_error, random_elementary, random_rational, zero_test_case};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn chart() -> CoordChart {
    CoordChart::new(&["x", "y", "z"]).unwrap()
}

fn proto() -> ZeroTestProtocol {
    ZeroTestProtocol::default().with_samples(32)
}

fn vanishes(e: &Expr) -> bool {
    is_identically_zero(e, &proto()).unwrap().zero
}

fn random_form(r: &mut ChaCha8Rng, degree: usize) -> Form {
    let c = chart();
    let mut out = Form::zero(&c, degree);
    let singles: Vec<Form> = (0..3).map(|i| Form::dx(&c, i)).collect();
    let mut idx: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..degree {
        idx = idx
            .into_iter()
            .flat_map(|v| {
                let start = v.last().map_or(0, |&l| l + 1);
                (start..3).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    for ix in idx {
        let basis = ix
            .iter()
            .fold(Form::function(&c, Expr::one()), |acc, &i| acc.wedge(&singles[i]));
        out = out.add(&basis.scale(&random_elementary(r, 2)));
    }
    out
}

fn random_field(r: &mut ChaCha8Rng) -> VectorField {
    VectorField::new(&chart(), (0..3).map(|_| random_rational(r, 2)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let e = random_elementary(&mut rng(seed), 3);
        let back = parse_expression(&e.to_string()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let e = random_rational(&mut rng(seed), 3);
        let once = normalize_rational(&e);
        prop_assume!(once.converted);
        let twice = normalize_rational(&once.expr);
        prop_assert_eq!(twice.expr, once.expr);
    }

    #[test]
    fn derivatives_match_central_differences(seed in any::<u64>(), x in -1.0..1.0f64, y in -1.0..1.0f64, z in -1.0..1.0f64) {
        let e = random_elementary(&mut rng(seed), 3);
        let pt = EvaluationPoint::new().with("x", x).with("y", y).with("z", z);
        let err = fd_error(&e, &pt, 1e-5).unwrap();
        prop_assert!(err < 1e-6, "relative error {err:e} for {e}");
    }

    #[test]
    fn derivative_is_linear_and_leibniz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_elementary(&mut r, 2);
        let b = random_elementary(&mut r, 2);
        let k = Expr::frac(3, 7);
        let lin = (&k * &a + &b).diff("x") - (&k * a.diff("x") + b.diff("x"));
        let prod = (&a * &b).diff("y") - (a.diff("y") * &b + &a * b.diff("y"));
        prop_assert!(vanishes(&lin));
        prop_assert!(vanishes(&prod));
    }

    #[test]
    fn exact_and_sampled_zero_tests_agree(seed in any::<u64>(), zero in any::<bool>()) {
        let e = zero_test_case(&mut rng(seed), zero);
        let ex = is_identically_zero(&e, &proto()).unwrap();
        let nu = numeric_zero_test(&e, &proto()).unwrap();
        prop_assert!(ex.is_exact());
        prop_assert_eq!(ex.zero, zero);
        prop_assert_eq!(nu.zero, zero);
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), degree in 0usize..2) {
        let w = random_form(&mut rng(seed), degree);
        prop_assert!(w.d().d().check_zero(&proto()).unwrap().zero);
    }

    #[test]
    fn graded_leibniz(seed in any::<u64>(), p in 0usize..3) {
        let mut r = rng(seed);
        let a = random_form(&mut r, p);
        let b = random_form(&mut r, 1);
        let sign = if p % 2 == 0 { Expr::one() } else { -Expr::one() };
        let lhs = a.wedge(&b).d();
        let rhs = a.d().wedge(&b).add(&a.wedge(&b.d()).scale(&sign));
        prop_assert!(lhs.sub(&rhs).check_zero(&proto()).unwrap().zero);
    }

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v, w) = (random_field(&mut r), random_field(&mut r), random_field(&mut r));
        let sampled = proto().numeric_only();
        let anti = u.bracket(&v).add(&v.bracket(&u));
        prop_assert!(anti.check_zero(&sampled).unwrap().zero);
        let jac = u
            .bracket(&v.bracket(&w))
            .add(&v.bracket(&w.bracket(&u)))
            .add(&w.bracket(&u.bracket(&v)));
        prop_assert!(jac.check_zero(&sampled).unwrap().zero);
    }

    #[test]
    fn form_indices_stay_increasing(seed in any::<u64>(), p in 0usize..3, q in 0usize..3) {
        let mut r = rng(seed);
        let w = random_form(&mut r, p).wedge(&random_form(&mut r, q));
        prop_assert_eq!(w.degree(), p + q);
        for (ix, c) in w.terms() {
            prop_assert!(ix.windows(2).all(|s| s[0] < s[1]));
            prop_assert!(!c.is_zero());
        }
        if p + q > 3 {
            prop_assert!(w.is_structurally_zero());
        }
    }
}

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..10, 1i64..6)
}

fn coeff((n, d): (i64, i64)) -> String {
    format!("({n}/{d})")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn cross_relations_on_flat_perturbations(
        a in small_rat().prop_filter("F_pp must not vanish", |(n, _)| *n != 0),
        b in small_rat(),
        c in small_rat(),
        k in small_rat(),
    ) {
        let f = format!("{}*p^2 + {}*p + {}", coeff(a), coeff(b), coeff(c));
        let h = format!("{}*r^3", coeff(k));
        let pair = PdePair::parse(&f, &h).unwrap();
        prop_assert!(pair.check_admissibility(&proto()).unwrap().admissible());
        let inv = pair.invariants(&proto()).unwrap();
        for rel in inv.cross_relations() {
            prop_assert!(vanishes(&rel), "{rel} for F = {f}, H = {h}");
        }
    }

    #[test]
    fn flat_branch_survives_rescaling(l in small_rat().prop_filter("nonzero", |(n, _)| *n != 0)) {
        // (x, y, z) -> (lx, l^2 y, l^2 z) turns p^2/4 into p^2/(4 l^2)
        let f = format!("p^2/(4*{}^2)", coeff(l));
        let pair = PdePair::parse(&f, "0").unwrap();
        let cls = pair.classify(&proto()).unwrap();
        prop_assert_eq!(cls.branch, BranchLabel::Flat);
        let inv = pair.invariants(&proto()).unwrap();
        prop_assert!(vanishes(&inv.i1));
    }
}

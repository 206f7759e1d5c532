//! Seeded random expressions for the engine self-checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::expr::{Expr, EvaluationPoint};

const VARS: [&str; 3] = ["x", "y", "z"];

/// A random polynomial-rational expression in `x, y, z`, defined on all of
/// space.
pub fn random_rational(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 | 1 => random_rational(rng, depth - 1) + random_rational(rng, depth - 1),
        2 => random_rational(rng, depth - 1) * random_rational(rng, depth - 1),
        3 => random_rational(rng, depth - 1).powi(rng.gen_range(2..4)),
        _ => {
            let d = Expr::one() + random_rational(rng, depth - 1).powi(2);
            random_rational(rng, depth - 1) / d
        }
    }
}

/// Like [`random_rational`] with elementary functions mixed in.
pub fn random_elementary(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let a = random_elementary(rng, depth - 1);
    match rng.gen_range(0..8) {
        0 => a + random_elementary(rng, depth - 1),
        1 => a * random_elementary(rng, depth - 1),
        2 => Expr::sin(&a),
        3 => Expr::cos(&a),
        4 => Expr::exp(&(a / Expr::int(2))),
        5 => Expr::atan(&a),
        6 => Expr::log(&(Expr::int(2) + a.powi(2))),
        _ => (Expr::int(2) + a.powi(2)).sqrt(),
    }
}

fn leaf(rng: &mut ChaCha8Rng) -> Expr {
    if rng.gen_bool(0.7) {
        Expr::var(VARS[rng.gen_range(0..3)])
    } else {
        let n = rng.gen_range(1..6) * if rng.gen_bool(0.5) { 1 } else { -1 };
        Expr::frac(n, rng.gen_range(1..4))
    }
}

/// An identity in disguise when `zero`, otherwise a nearby non-identity.
pub fn zero_test_case(rng: &mut ChaCha8Rng, zero: bool) -> Expr {
    let a = random_rational(rng, 2) + Expr::var("x");
    let b = random_rational(rng, 2) + Expr::var("y");
    match (rng.gen_range(0..3), zero) {
        (0, true) => (&a + &b) * (&a - &b) - (a.powi(2) - b.powi(2)),
        (0, false) => (&a + &b).powi(2) - a.powi(2) - b.powi(2),
        (1, true) => {
            let d = Expr::int(1) + Expr::var("z").powi(2);
            &a / &d + &b / &d - (&a + &b) / &d
        }
        (1, false) => {
            let d = Expr::int(1) + Expr::var("z").powi(2);
            &a / &d + &b / &d - (&a + &b) / (d + Expr::one())
        }
        (_, true) => (&a * &b).powi(2) - a.powi(2) * b.powi(2),
        (_, false) => (&a * &b).powi(2) - a.powi(2) * b.powi(2) + Expr::var("z") * Expr::var("x").powi(2) + Expr::frac(1, 7),
    }
}

/// Largest relative error of central differences against `diff` for each
/// variable at `pt`.
pub fn fd_error(e: &Expr, pt: &EvaluationPoint, h: f64) -> Option<f64> {
    let mut worst: f64 = 0.0;
    for v in VARS {
        let x0 = pt.get(v).unwrap_or(0.0);
        let at = |x: f64| {
            let mut q = pt.clone();
            q.set(v, x);
            e.eval_f64(&q).ok()
        };
        let fd = (at(x0 + h)? - at(x0 - h)?) / (2.0 * h);
        let exact = e.diff(v).eval_f64(pt).ok()?;
        worst = worst.max((fd - exact).abs() / exact.abs().max(1.0));
    }
    Some(worst)
}

//! The parameter `s` of the `I3 = 0` family as a function of `b`.

use serde::Serialize;

use crate::expr::{Expr, Rat};

use super::{ModelError, ModelId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SValue {
    pub b: f64,
    pub s: f64,
    pub ds_db: f64,
}

/// `-3 * 2^(-5/3)`, the common boundary of the two ranges.
pub fn s_threshold() -> f64 {
    -3.0 * 2f64.powf(-5.0 / 3.0)
}

fn check_domain(id: ModelId, b: f64) -> Result<(), ModelError> {
    let ok = match id {
        ModelId::Iiia => (1.0..2.0).contains(&b),
        ModelId::Iiib => b > 0.0 && b.is_finite(),
        _ => return Err(ModelError::NoSMap(id)),
    };
    if ok {
        Ok(())
    } else {
        Err(ModelError::Domain {
            model: id,
            b,
            expected: domain_text(id, true),
        })
    }
}

pub(crate) fn domain_text(id: ModelId, closed_left: bool) -> &'static str {
    match (id, closed_left) {
        (ModelId::Iiia, true) => "1 <= b < 2",
        (ModelId::Iiia, false) => "1 < b < 2",
        _ => "b > 0",
    }
}

/// `s(b)` and `ds/db` from the closed forms. The `iiia` map extends to
/// `b = 1` where it attains `-3 * 2^(-5/3)`.
pub fn s_of_b(id: ModelId, b: f64) -> Result<SValue, ModelError> {
    check_domain(id, b)?;
    let (s, ds_db) = match id {
        ModelId::Iiia => {
            let w = ((b - 2.0) * (b + 1.0) * (2.0 * b - 1.0)).cbrt();
            (
                -1.5 * (1.0 - b + b * b) / (w * w),
                13.5 * b * (b - 1.0) / w.powi(5),
            )
        }
        _ => {
            let w = (2.0 * b * (9.0 + b * b)).cbrt();
            (
                -1.5 * (b * b - 3.0) / (w * w),
                -27.0 / 2f64.powf(2.0 / 3.0) * (b * b + 1.0) / (b * (b * b + 9.0)).powf(5.0 / 3.0),
            )
        }
    };
    Ok(SValue { b, s, ds_db })
}

/// `s(b)` as an exact expression for rational `b`.
pub fn s_expr(id: ModelId, b: &Rat) -> Result<Expr, ModelError> {
    let bf = num_traits::ToPrimitive::to_f64(b).unwrap_or(f64::NAN);
    check_domain(id, bf)?;
    let b = Expr::num(b.clone());
    let (num, w) = match id {
        ModelId::Iiia => (
            Expr::one() - &b + b.powi(2),
            (&b - Expr::int(2)) * (&b + Expr::one()) * (Expr::int(2) * &b - Expr::one()),
        ),
        _ => (b.powi(2) - Expr::int(3), Expr::int(2) * &b * (Expr::int(9) + b.powi(2))),
    };
    Ok(Expr::frac(-3, 2) * num * w.powq(-2, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{rat, EvaluationPoint};

    #[test]
    fn known_values() {
        let v = s_of_b(ModelId::Iiia, 1.0).unwrap();
        assert!((v.s - s_threshold()).abs() < 1e-12);
        let v = s_of_b(ModelId::Iiib, 3f64.sqrt()).unwrap();
        assert!(v.s.abs() < 1e-12);
        let v = s_of_b(ModelId::Iiib, 3.0).unwrap();
        assert!((v.s + 0.396850).abs() < 1e-6);
        let v = s_of_b(ModelId::Iiia, 1.5).unwrap();
        assert!((v.s + 1.4250692).abs() < 1e-6);
        assert!(s_of_b(ModelId::Iiia, 2.0).is_err());
        assert!(s_of_b(ModelId::Iiib, 0.0).is_err());
        assert!(s_of_b(ModelId::Ii, 1.0).is_err());
    }

    #[test]
    fn exact_matches_float() {
        let pt = EvaluationPoint::new();
        for (id, b) in [(ModelId::Iiia, rat(3, 2)), (ModelId::Iiib, rat(3, 1))] {
            let e = s_expr(id, &b).unwrap();
            let bf = num_traits::ToPrimitive::to_f64(&b).unwrap();
            let v = s_of_b(id, bf).unwrap().s;
            assert!((e.eval_f64(&pt).unwrap() - v).abs() < 1e-13);
        }
    }
}

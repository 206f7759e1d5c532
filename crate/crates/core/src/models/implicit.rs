//! The implicit equations for `f` and `h` of model `iiib`, checked on the
//! general solution `Z = exp(b atan(Y/X)) sqrt(X^2 + Y^2)` with
//! `X = x + xb`, `Y = y + yb`.

use serde::Serialize;

use crate::expr::{parse_with_constants, Expr, ZeroTestProtocol};

use super::ModelError;

#[derive(Clone, Debug, Serialize)]
pub struct ImplicitReport {
    pub b: f64,
    pub samples: usize,
    pub tolerance: f64,
    /// Largest `|(p^2 + f^2) exp(2b atan((bp - f)/(p + bf))) - (1 + b^2)|`.
    pub f_residual: f64,
    /// Largest `|Z_XXX - h(p) Z_XX^2|`, scaled by `1 + |Z_XXX|`.
    pub h_residual: f64,
    pub passed: bool,
}

/// Samples `X in [1/2, 2]`, `Y in [1/5, 2]`.
pub fn iiib_implicit_check(b: f64, proto: &ZeroTestProtocol) -> Result<ImplicitReport, ModelError> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(ModelError::Domain {
            model: super::ModelId::Iiib,
            b,
            expected: "b > 0",
        });
    }
    let bindings = Default::default();
    let z = parse_with_constants("exp(B*arctan(Y/X))*sqrt(X^2+Y^2)", &bindings)?;
    let zx = z.diff("X");
    let zy = z.diff("Y");
    let zxx = zx.diff("X");
    let zxxx = zxx.diff("X");
    let bx = proto
        .sample_box
        .clone()
        .with("X", 0.5, 2.0)
        .with("Y", 0.2, 2.0)
        .with("B", b, b);
    let proto = proto.clone().with_box(bx);
    let eval = |e: &Expr, pt: &crate::expr::EvaluationPoint| {
        e.eval_f64(pt)
            .map_err(|e| ModelError::Exterior(crate::exterior::ExteriorError::Eval(e)))
    };
    let (mut fr, mut hr) = (0.0f64, 0.0f64);
    for pt in proto.points(&["X", "Y", "B"]) {
        let p = eval(&zx, &pt)?;
        let f = eval(&zy, &pt)?;
        let r = eval(&zxx, &pt)?;
        let t = eval(&zxxx, &pt)?;
        let ef = (p * p + f * f) * (2.0 * b * ((b * p - f) / (p + b * f)).atan()).exp() - (1.0 + b * b);
        let h = ((b * b - 3.0) * p - 4.0 * b * f) / (f - b * p).powi(2);
        fr = fr.max(ef.abs() / (1.0 + b * b));
        hr = hr.max((t - h * r * r).abs() / (1.0 + t.abs()));
    }
    Ok(ImplicitReport {
        b,
        samples: proto.samples,
        tolerance: proto.tolerance,
        f_residual: fr,
        h_residual: hr,
        passed: fr <= proto.tolerance && hr <= proto.tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_for_several_b() {
        for b in [0.5, 1.0, 3.0] {
            let r = iiib_implicit_check(b, &ZeroTestProtocol::default().with_tolerance(1e-8)).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}

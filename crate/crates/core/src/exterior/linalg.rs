//! Matrix inversion for coefficient matrices of coframes.

use crate::expr::{rat, EvaluationPoint, Expr, ZeroTestProtocol};

use super::{simplify_expr, ExteriorError};
use crate::expr::rational::{RatFun, RationalContext};

/// Inverse and determinant of a symbolic square matrix.
#[derive(Clone, Debug)]
pub struct SymbolicInverse {
    pub inverse: Vec<Vec<Expr>>,
    pub det: Expr,
}

trait Arith {
    type T: Clone;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Option<Self::T>;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Option<Self::T>;
    fn div(&self, a: &Self::T, b: &Self::T) -> Option<Self::T>;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn to_expr(&self, a: &Self::T) -> Expr;
}

struct RatArith<'a>(&'a RationalContext);

impl Arith for RatArith<'_> {
    type T = RatFun;
    fn zero(&self) -> RatFun {
        RatFun::constant(self.0.nvars(), rat(0, 1))
    }
    fn one(&self) -> RatFun {
        RatFun::constant(self.0.nvars(), rat(1, 1))
    }
    fn neg(&self, a: &RatFun) -> RatFun {
        a.neg()
    }
    fn sub(&self, a: &RatFun, b: &RatFun) -> Option<RatFun> {
        a.sub(b)
    }
    fn mul(&self, a: &RatFun, b: &RatFun) -> Option<RatFun> {
        a.mul(b)
    }
    fn div(&self, a: &RatFun, b: &RatFun) -> Option<RatFun> {
        a.div(b)
    }
    fn is_zero(&self, a: &RatFun) -> bool {
        a.is_zero()
    }
    fn to_expr(&self, a: &RatFun) -> Expr {
        self.0.to_expr(a)
    }
}

struct ExprArith;

impl Arith for ExprArith {
    type T = Expr;
    fn zero(&self) -> Expr {
        Expr::zero()
    }
    fn one(&self) -> Expr {
        Expr::one()
    }
    fn neg(&self, a: &Expr) -> Expr {
        -a
    }
    fn sub(&self, a: &Expr, b: &Expr) -> Option<Expr> {
        Some(simplify_expr(&(a - b)))
    }
    fn mul(&self, a: &Expr, b: &Expr) -> Option<Expr> {
        Some(simplify_expr(&(a * b)))
    }
    fn div(&self, a: &Expr, b: &Expr) -> Option<Expr> {
        Some(simplify_expr(&(a / b)))
    }
    fn is_zero(&self, a: &Expr) -> bool {
        a.is_zero()
    }
    fn to_expr(&self, a: &Expr) -> Expr {
        a.clone()
    }
}

/// A point where every entry evaluates.
fn probe_point(m: &[Vec<Expr>], proto: &ZeroTestProtocol) -> Result<EvaluationPoint, ExteriorError> {
    let mut vars: Vec<String> = Vec::new();
    for e in m.iter().flatten() {
        for s in e.free_symbols().iter() {
            if !vars.iter().any(|v| v == &**s) {
                vars.push(s.to_string());
            }
        }
    }
    let pts = proto.clone().with_samples(proto.samples.max(8)).points(&vars);
    let mut last = None;
    for pt in pts {
        match m.iter().flatten().try_for_each(|e| e.eval_f64(&pt).map(|_| ())) {
            Ok(()) => return Ok(pt),
            Err(e) => last = Some(e),
        }
    }
    Err(ExteriorError::Eval(last.expect("at least one sample")))
}

fn eliminate<A: Arith>(
    ar: &A,
    mut a: Vec<Vec<A::T>>,
    pt: &EvaluationPoint,
) -> Result<Option<(Vec<Vec<A::T>>, A::T)>, ExteriorError> {
    let n = a.len();
    let mut inv: Vec<Vec<A::T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ar.one() } else { ar.zero() }).collect())
        .collect();
    let mut det = ar.one();
    let mut scale = 0.0f64;
    for row in &a {
        for e in row {
            if !ar.is_zero(e) {
                scale = scale.max(ar.to_expr(e).eval_f64(pt)?.abs());
            }
        }
    }
    let eps = 1e-10 * scale.max(1e-300);
    for c in 0..n {
        let mut best = None;
        for (r, row) in a.iter().enumerate().skip(c) {
            if ar.is_zero(&row[c]) {
                continue;
            }
            let v = ar.to_expr(&row[c]).eval_f64(pt)?.abs();
            if best.map_or(true, |(_, b)| v > b) {
                best = Some((r, v));
            }
        }
        let Some((r, v)) = best else {
            return Err(ExteriorError::Singular);
        };
        if v <= eps {
            return Err(ExteriorError::Singular);
        }
        if r != c {
            a.swap(r, c);
            inv.swap(r, c);
            det = ar.neg(&det);
        }
        let piv = a[c][c].clone();
        let Some(d) = ar.mul(&det, &piv) else { return Ok(None) };
        det = d;
        for j in 0..n {
            if !ar.is_zero(&a[c][j]) {
                let Some(x) = ar.div(&a[c][j], &piv) else { return Ok(None) };
                a[c][j] = x;
            }
            if !ar.is_zero(&inv[c][j]) {
                let Some(x) = ar.div(&inv[c][j], &piv) else { return Ok(None) };
                inv[c][j] = x;
            }
        }
        for r in 0..n {
            if r == c || ar.is_zero(&a[r][c]) {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                if !ar.is_zero(&a[c][j]) {
                    let Some(t) = ar.mul(&f, &a[c][j]) else { return Ok(None) };
                    let Some(x) = ar.sub(&a[r][j], &t) else { return Ok(None) };
                    a[r][j] = x;
                }
                if !ar.is_zero(&inv[c][j]) {
                    let Some(t) = ar.mul(&f, &inv[c][j]) else { return Ok(None) };
                    let Some(x) = ar.sub(&inv[r][j], &t) else { return Ok(None) };
                    inv[r][j] = x;
                }
            }
            a[r][c] = ar.zero();
        }
    }
    Ok(Some((inv, det)))
}

/// Gauss-Jordan elimination with pivots chosen by magnitude at a sample
/// point. Entries are carried as rational functions over a shared atom table
/// when possible, otherwise as simplified expression trees.
pub fn invert_symbolic(m: &[Vec<Expr>], proto: &ZeroTestProtocol) -> Result<SymbolicInverse, ExteriorError> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix");
    let pt = probe_point(m, proto)?;
    let flat: Vec<Expr> = m.iter().flatten().cloned().collect();
    let ctx = RationalContext::new(&flat);
    let conv: Option<Vec<Vec<RatFun>>> = m
        .iter()
        .map(|row| row.iter().map(|e| ctx.convert(e)).collect())
        .collect();
    if let Some(a) = conv {
        let ar = RatArith(&ctx);
        if let Some((inv, det)) = eliminate(&ar, a, &pt)? {
            return Ok(SymbolicInverse {
                inverse: inv.iter().map(|r| r.iter().map(|e| ar.to_expr(e)).collect()).collect(),
                det: ar.to_expr(&det),
            });
        }
    }
    let (inv, det) = eliminate(&ExprArith, m.to_vec(), &pt)?.expect("expression arithmetic is total");
    Ok(SymbolicInverse { inverse: inv, det })
}

/// Pointwise inverse by partial pivoting; `None` when singular.
pub fn invert_numeric(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let scale = a.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    for c in 0..n {
        let r = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[r][c].abs() <= 1e-13 * scale {
            return None;
        }
        a.swap(r, c);
        inv.swap(r, c);
        let piv = a[c][c];
        for j in 0..n {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0.0 {
                let f = a[r][c];
                for j in 0..n {
                    a[r][j] -= f * a[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    Some(inv)
}

/// Determinant by partial pivoting.
pub fn det_numeric(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let r = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .expect("nonempty");
        if a[r][c] == 0.0 {
            return 0.0;
        }
        if r != c {
            a.swap(r, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for j in c..n {
                a[r][j] -= f * a[c][j];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression as p;

    #[test]
    fn inverse_times_matrix() {
        let m = vec![
            vec![p("x").unwrap(), p("y").unwrap()],
            vec![p("1").unwrap(), p("x*y + 1").unwrap()],
        ];
        let inv = invert_symbolic(&m, &ZeroTestProtocol::default()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = Expr::sum((0..2).map(|k| &m[i][k] * &inv.inverse[k][j]));
                let e = simplify_expr(&(e - Expr::int((i == j) as i64)));
                assert!(e.is_zero(), "{e}");
            }
        }
        let d = simplify_expr(&(&inv.det - p("x^2*y + x - y").unwrap()));
        assert!(d.is_zero(), "{d}");
    }

    #[test]
    fn transcendental_entries() {
        let m = vec![
            vec![p("exp(u)").unwrap(), p("u").unwrap()],
            vec![p("0").unwrap(), p("(1+u^2)^(1/2)").unwrap()],
        ];
        let inv = invert_symbolic(&m, &ZeroTestProtocol::default()).unwrap();
        assert_eq!(inv.inverse[0][0], p("exp(-u)").unwrap());
    }

    #[test]
    fn numeric() {
        let inv = invert_numeric(&[vec![2.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(inv, vec![vec![1.0, -1.0], vec![-1.0, 2.0]]);
        assert!(invert_numeric(&[vec![1.0, 2.0], vec![2.0, 4.0]]).is_none());
        assert!((det_numeric(&[vec![0.0, 2.0], vec![3.0, 1.0]]) + 6.0).abs() < 1e-15);
    }
}

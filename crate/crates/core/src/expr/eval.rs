//! Pointwise evaluation: plain `f64`, a double-double shadow value and a
//! propagated magnitude used as the error scale by the zero test.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{Expr, Func, Node, Rat};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("pole: division by zero or negative power of zero")]
    Pole,
    #[error("domain error: {0}")]
    Domain(String),
}

/// Variable bindings for numeric evaluation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvaluationPoint {
    values: BTreeMap<String, f64>,
}

impl EvaluationPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, v: f64) -> Self {
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn set(&mut self, name: &str, v: f64) {
        self.values.insert(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl<'a> FromIterator<(&'a str, f64)> for EvaluationPoint {
    fn from_iter<I: IntoIterator<Item = (&'a str, f64)>>(it: I) -> Self {
        let mut p = EvaluationPoint::new();
        for (k, v) in it {
            p.set(k, v);
        }
        p
    }
}

/// Exact bindings for rational evaluation.
pub type RationalPoint = HashMap<String, Rat>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated {
    /// Plain binary64 result.
    pub value: f64,
    /// Double-double result rounded to binary64.
    pub compensated: f64,
    /// Propagated magnitude of intermediate quantities; the natural scale of
    /// rounding error in `value`.
    pub magnitude: f64,
}

impl Evaluated {
    /// True when the two precisions disagree beyond `tol` relative to the
    /// propagated magnitude.
    pub fn ill_conditioned(&self, tol: f64) -> bool {
        (self.value - self.compensated).abs() > tol * (1.0 + self.magnitude)
    }
}

#[derive(Clone, Copy)]
struct Dd(f64, f64);

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd(s, b - (s - a))
}

impl Dd {
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.0, o.0);
        quick(s, e + self.1 + o.1)
    }
    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p);
        quick(p, e + self.0 * o.1 + self.1 * o.0)
    }
    fn recip(self) -> Dd {
        let q1 = 1.0 / self.0;
        let r = Dd(1.0, 0.0).add(self.mul(Dd(-q1, 0.0)));
        quick(q1, r.0 / self.0)
    }
    fn powi(self, n: i64) -> Dd {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut k = n.unsigned_abs();
        let mut acc = Dd(1.0, 0.0);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        acc
    }
    /// First-order lift of a smooth scalar function.
    fn lift(self, f: f64, df: f64) -> Dd {
        quick(f, df * self.1)
    }
}

fn real_pow(x: f64, q: &Rat) -> Result<f64, EvalError> {
    let n = q.numer().to_i64().ok_or(EvalError::Domain("huge exponent".into()))?;
    let d = q.denom().to_i64().ok_or(EvalError::Domain("huge exponent".into()))?;
    if x == 0.0 {
        return if n > 0 { Ok(0.0) } else { Err(EvalError::Pole) };
    }
    if d == 1 {
        return Ok(x.powi(n as i32));
    }
    if x < 0.0 {
        if d % 2 == 0 {
            return Err(EvalError::Domain(format!("even root of negative {x}")));
        }
        let m = (-x).powf(n as f64 / d as f64);
        return Ok(if n % 2 == 0 { m } else { -m });
    }
    Ok(x.powf(n as f64 / d as f64))
}

type Triple = (f64, Dd, f64);

impl Expr {
    /// Evaluate at a point in both precisions.
    pub fn evaluate(&self, pt: &EvaluationPoint) -> Result<Evaluated, EvalError> {
        let mut memo = HashMap::new();
        let (v, dd, m) = self.eval_memo(pt, &mut memo)?;
        Ok(Evaluated {
            value: v,
            compensated: dd.0 + dd.1,
            magnitude: m,
        })
    }

    /// Plain `f64` value.
    pub fn eval_f64(&self, pt: &EvaluationPoint) -> Result<f64, EvalError> {
        self.evaluate(pt).map(|e| e.value)
    }

    fn eval_memo(
        &self,
        pt: &EvaluationPoint,
        memo: &mut HashMap<usize, Triple>,
    ) -> Result<Triple, EvalError> {
        if let Some(t) = memo.get(&self.ptr_id()) {
            return Ok(*t);
        }
        let out: Triple = match self.node() {
            Node::Num(c) => {
                let v = c.to_f64().unwrap_or(f64::NAN);
                let lo = (c - Rat::from_float(v).unwrap_or_else(Rat::zero))
                    .to_f64()
                    .unwrap_or(0.0);
                (v, Dd(v, lo), v.abs())
            }
            Node::Var(name) => {
                let v = pt.get(name).ok_or_else(|| EvalError::Unbound(name.to_string()))?;
                (v, Dd(v, 0.0), v.abs())
            }
            Node::Add(ts) => {
                let (mut v, mut dd, mut m) = (0.0, Dd(0.0, 0.0), 0.0);
                for t in ts {
                    let (tv, tdd, tm) = t.eval_memo(pt, memo)?;
                    v += tv;
                    dd = dd.add(tdd);
                    m += tm;
                }
                (v, dd, m)
            }
            Node::Mul(fs) => {
                let (mut v, mut dd, mut m) = (1.0, Dd(1.0, 0.0), 1.0);
                for f in fs {
                    let (fv, fdd, fm) = f.eval_memo(pt, memo)?;
                    v *= fv;
                    dd = dd.mul(fdd);
                    m *= fm;
                }
                (v, dd, m)
            }
            Node::Pow(b, q) => {
                let (bv, bdd, bm) = b.eval_memo(pt, memo)?;
                let v = real_pow(bv, q)?;
                let dd = if q.is_integer() {
                    bdd.powi(q.numer().to_i64().unwrap_or(0))
                } else {
                    let hi = real_pow(bdd.0, q)?;
                    let qf = q.to_f64().unwrap_or(0.0);
                    bdd.lift(hi, qf * hi / bdd.0)
                };
                let qf = q.to_f64().unwrap_or(0.0).abs();
                let slope = real_pow(bv.abs(), &(q - Rat::from_integer(1.into()))).unwrap_or(0.0);
                let m = v.abs() + qf * slope.abs() * bm;
                (v, dd, m)
            }
            Node::Fun(f, a) => {
                let (av, add, am) = a.eval_memo(pt, memo)?;
                let x = add.0;
                let (v, dd, m) = match f {
                    Func::Exp => {
                        let v = av.exp();
                        let h = x.exp();
                        (v, add.lift(h, h), v.abs() * (1.0 + am))
                    }
                    Func::Log => {
                        if av <= 0.0 {
                            return Err(EvalError::Domain(format!("log of {av}")));
                        }
                        let v = av.ln();
                        (v, add.lift(x.ln(), 1.0 / x), v.abs() + am / av.abs())
                    }
                    Func::Arctan => {
                        let v = av.atan();
                        (v, add.lift(x.atan(), 1.0 / (1.0 + x * x)), v.abs() + am / (1.0 + av * av))
                    }
                    Func::Sin => {
                        let v = av.sin();
                        (v, add.lift(x.sin(), x.cos()), v.abs() + am)
                    }
                    Func::Cos => {
                        let v = av.cos();
                        (v, add.lift(x.cos(), -x.sin()), v.abs() + am)
                    }
                    Func::Sign => {
                        let s = if av > 0.0 {
                            1.0
                        } else if av < 0.0 {
                            -1.0
                        } else {
                            0.0
                        };
                        (s, Dd(s, 0.0), 1.0)
                    }
                };
                (v, dd, m)
            }
        };
        if !out.0.is_finite() {
            return Err(EvalError::Pole);
        }
        memo.insert(self.ptr_id(), out);
        Ok(out)
    }

    /// Exact value at a rational point, when every operation stays in Q.
    pub fn eval_rational(&self, pt: &RationalPoint) -> Option<Rat> {
        let mut memo = HashMap::new();
        self.eval_rat_memo(pt, &mut memo)
    }

    fn eval_rat_memo(&self, pt: &RationalPoint, memo: &mut HashMap<usize, Option<Rat>>) -> Option<Rat> {
        if let Some(v) = memo.get(&self.ptr_id()) {
            return v.clone();
        }
        let out = (|| match self.node() {
            Node::Num(c) => Some(c.clone()),
            Node::Var(v) => pt.get(&**v).cloned(),
            Node::Add(ts) => {
                let mut acc = Rat::zero();
                for t in ts {
                    acc += t.eval_rat_memo(pt, memo)?;
                }
                Some(acc)
            }
            Node::Mul(fs) => {
                let mut acc = Rat::from_integer(1.into());
                for f in fs {
                    acc *= f.eval_rat_memo(pt, memo)?;
                    if acc.is_zero() {
                        return Some(acc);
                    }
                }
                Some(acc)
            }
            Node::Pow(b, q) => {
                let bv = b.eval_rat_memo(pt, memo)?;
                super::fold_num_pow(&bv, q)
            }
            Node::Fun(Func::Sign, a) => {
                let v = a.eval_rat_memo(pt, memo)?;
                Some(Rat::from_integer(
                    (if v.is_positive() {
                        1
                    } else if v.is_negative() {
                        -1
                    } else {
                        0
                    })
                    .into(),
                ))
            }
            Node::Fun(..) => None,
        })();
        memo.insert(self.ptr_id(), out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression as p;

    #[test]
    fn spec_examples() {
        let pt = EvaluationPoint::new().with("p", 2.0).with("b", 1.0);
        assert_eq!(p("p^2/4").unwrap().eval_f64(&pt).unwrap(), 1.0);
        let t = p("((b-2)*(b+1)*(2*b-1))^(1/3)").unwrap();
        assert!((t.eval_f64(&pt).unwrap() + 2f64.cbrt()).abs() < 1e-12);
        let t2 = p("x^(2/3)").unwrap();
        let v = t2.eval_f64(&EvaluationPoint::new().with("x", -2.5)).unwrap();
        assert!((v - 2.5f64.powf(2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let pt = EvaluationPoint::new().with("x", 0.0);
        assert_eq!(p("1/x").unwrap().evaluate(&pt), Err(EvalError::Pole));
        assert!(matches!(
            p("log(x)").unwrap().evaluate(&pt),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            p("y").unwrap().evaluate(&pt),
            Err(EvalError::Unbound(_))
        ));
        let neg = EvaluationPoint::new().with("x", -1.0);
        assert!(matches!(
            p("x^(1/2)").unwrap().evaluate(&neg),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn compensated_catches_cancellation() {
        let e = p("x + 1 - x").unwrap();
        // canonical form already cancels; build a raw cancellation instead
        assert!(e.is_one());
        let pt = EvaluationPoint::new().with("x", 1e12).with("y", 1.0);
        let big = p("(x + y)^2 - x^2 - 2*x*y").unwrap();
        let r = big.evaluate(&pt).unwrap();
        assert!((r.compensated - 1.0).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn rational_eval() {
        let mut pt = RationalPoint::new();
        pt.insert("x".into(), crate::expr::rat(1, 4));
        assert_eq!(p("x^(1/2) + 2*x").unwrap().eval_rational(&pt), Some(crate::expr::rat(1, 1)));
        assert_eq!(p("x^(1/3)").unwrap().eval_rational(&pt), None);
        assert_eq!(p("exp(x)").unwrap().eval_rational(&pt), None);
    }
}

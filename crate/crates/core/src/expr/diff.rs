use std::collections::HashMap;

use num_traits::One;
use thiserror::Error;

use super::{Expr, Func, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("sgn({0}) depends on the differentiation variable")]
    Signum(String),
}

impl Expr {
    /// Exact partial derivative. Fails only when a `sgn` node depends on `v`.
    pub fn try_diff(&self, v: &str) -> Result<Expr, DiffError> {
        let mut memo = HashMap::new();
        self.diff_memo(v, &mut memo)
    }

    /// Partial derivative of a `sgn`-free (in `v`) expression.
    ///
    /// # Panics
    /// When a `sgn` node depends on `v`; use [`Expr::try_diff`] otherwise.
    pub fn diff(&self, v: &str) -> Expr {
        self.try_diff(v).unwrap_or_else(|e| panic!("{e}"))
    }

    fn diff_memo(&self, v: &str, memo: &mut HashMap<usize, Expr>) -> Result<Expr, DiffError> {
        if !self.depends_on(v) {
            return Ok(Expr::zero());
        }
        if let Some(d) = memo.get(&self.ptr_id()) {
            return Ok(d.clone());
        }
        let out = match self.node() {
            Node::Num(_) => Expr::zero(),
            Node::Var(_) => Expr::one(),
            Node::Add(ts) => {
                let mut parts = Vec::with_capacity(ts.len());
                for t in ts {
                    parts.push(t.diff_memo(v, memo)?);
                }
                Expr::sum(parts)
            }
            Node::Mul(fs) => {
                let mut parts = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    if !f.depends_on(v) {
                        continue;
                    }
                    let df = f.diff_memo(v, memo)?;
                    let mut factors: Vec<Expr> = Vec::with_capacity(fs.len());
                    factors.extend(fs[..i].iter().cloned());
                    factors.push(df);
                    factors.extend(fs[i + 1..].iter().cloned());
                    parts.push(Expr::product(factors));
                }
                Expr::sum(parts)
            }
            Node::Pow(b, q) => {
                let db = b.diff_memo(v, memo)?;
                Expr::product([
                    Expr::num(q.clone()),
                    Expr::pow(b, &(q - super::Rat::one())),
                    db,
                ])
            }
            Node::Fun(f, a) => {
                let da = a.diff_memo(v, memo)?;
                let outer = match f {
                    Func::Exp => self.clone(),
                    Func::Log => a.recip(),
                    Func::Arctan => (Expr::one() + a.powi(2)).recip(),
                    Func::Sin => Expr::cos(a),
                    Func::Cos => -Expr::sin(a),
                    Func::Sign => return Err(DiffError::Signum(a.to_string())),
                };
                outer * da
            }
        };
        memo.insert(self.ptr_id(), out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse_expression as p;

    #[test]
    fn spec_examples() {
        assert_eq!(p("p^2/4").unwrap().diff("p"), p("p/2").unwrap());
        assert_eq!(
            p("(2-b)*r^2/p").unwrap().diff("r"),
            p("2*(2-b)*r/p").unwrap()
        );
        let e = p("exp(b*arctan(u))").unwrap();
        assert_eq!(e.diff("u"), p("b*exp(b*arctan(u))/(1+u^2)").unwrap());
        assert!(p("x*y").unwrap().diff("z").is_zero());
    }

    #[test]
    fn signum_is_opaque() {
        let e = p("sgn(r)*p").unwrap();
        assert_eq!(e.diff("p"), p("sgn(r)").unwrap());
        assert!(e.try_diff("r").is_err());
    }
}

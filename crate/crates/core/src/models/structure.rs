//! Constant-coefficient structure equations `d theta^k = sum_{i<j} c^k_ij theta^i ^ theta^j`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::expr::{EvaluationPoint, Expr};
use crate::exterior::Form;

/// The tensor `c^k_ij`, antisymmetric in `(i, j)`. Indices are zero-based.
#[derive(Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    entries: Vec<BTreeMap<(usize, usize), Expr>>,
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.entries.iter().enumerate() {
            write!(f, "dθ{} =", k + 1)?;
            if row.is_empty() {
                write!(f, " 0")?;
            }
            for ((i, j), c) in row {
                write!(f, " + ({c}) θ{}^θ{}", i + 1, j + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl StructureConstants {
    pub fn new(dim: usize) -> StructureConstants {
        StructureConstants {
            dim,
            entries: vec![BTreeMap::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Set `c^k_ij`; `c^k_ji` becomes its negative. `i == j` is ignored.
    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Expr) {
        assert!(k < self.dim && i < self.dim && j < self.dim, "index out of range");
        if i == j {
            return;
        }
        let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -v) };
        if v.is_zero() {
            self.entries[k].remove(&key);
        } else {
            self.entries[k].insert(key, v);
        }
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> Expr {
        if i == j {
            return Expr::zero();
        }
        if i < j {
            self.entries[k].get(&(i, j)).cloned().unwrap_or_else(Expr::zero)
        } else {
            -self.entries[k].get(&(j, i)).cloned().unwrap_or_else(Expr::zero)
        }
    }

    /// Nonzero entries `(k, i, j, c)` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Expr)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().map(move |(&(i, j), c)| (k, i, j, c)))
    }

    fn from_table(dim: usize, rows: Vec<Vec<((usize, usize), Expr)>>) -> StructureConstants {
        let mut sc = StructureConstants::new(dim);
        for (k, row) in rows.into_iter().enumerate() {
            for ((i, j), v) in row {
                let cur = sc.get(k, i, j);
                sc.set(k, i, j, cur + v);
            }
        }
        sc
    }

    /// Equations of the branch `I3 != 0`.
    pub fn homo1(eps: &Expr) -> StructureConstants {
        let e = |c: Expr| eps * &c;
        let q = Expr::frac;
        StructureConstants::from_table(
            5,
            vec![
                vec![
                    ((0, 2), e(Expr::int(-6))),
                    ((0, 3), e(q(1, 2))),
                    ((0, 4), e(q(-3, 2))),
                    ((1, 3), Expr::one()),
                ],
                vec![
                    ((0, 1), e(q(-1, 16))),
                    ((1, 2), e(Expr::int(-2))),
                    ((1, 3), e(q(1, 2))),
                    ((1, 4), e(Expr::int(-1))),
                    ((0, 2), Expr::int(-1)),
                    ((0, 3), q(1, 32)),
                    ((0, 4), q(-1, 8)),
                    ((2, 3), Expr::one()),
                ],
                vec![
                    ((0, 2), e(q(-3, 16))),
                    ((2, 3), e(q(1, 2))),
                    ((2, 4), e(q(-1, 2))),
                    ((1, 3), q(1, 32)),
                    ((1, 4), q(-1, 8)),
                ],
                vec![
                    ((0, 3), e(q(-1, 8))),
                    ((0, 4), e(q(1, 4))),
                    ((2, 3), e(Expr::int(4))),
                    ((3, 4), e(q(-1, 2))),
                    ((1, 4), Expr::int(-1)),
                ],
                vec![((0, 4), e(q(-1, 16))), ((2, 4), e(Expr::int(2))), ((3, 4), e(q(-1, 4)))],
            ],
        )
    }

    /// Equations of the branch `I3 = 0, I2 != 0`, a one-parameter family in `s`.
    pub fn homo2(eps: &Expr, s: &Expr) -> StructureConstants {
        let one = Expr::one;
        StructureConstants::from_table(
            5,
            vec![
                vec![((0, 2), -eps), ((0, 4), -eps), ((1, 3), one())],
                vec![((0, 1), eps * s), ((1, 4), -eps), ((0, 3), -s), ((2, 3), one())],
                vec![((0, 3), eps.clone()), ((2, 4), -eps), ((0, 1), -one()), ((1, 3), -s)],
                vec![((0, 3), -(eps * s)), ((2, 3), eps.clone()), ((0, 1), s.clone()), ((1, 4), -one())],
                vec![((0, 3), -eps), ((2, 4), eps.clone()), ((0, 1), one()), ((1, 3), s.clone())],
            ],
        )
    }

    /// Flat equations with `varpi_2 = r omega^5` and the other connection
    /// forms zero; coefficients depend on `r`.
    pub fn flat(r: &Expr) -> StructureConstants {
        StructureConstants::from_table(
            5,
            vec![
                vec![((1, 3), Expr::one())],
                vec![((2, 3), Expr::one()), ((1, 4), r.clone())],
                vec![((2, 4), Expr::int(2) * r)],
                vec![((1, 4), Expr::int(-1)), ((3, 4), -r)],
                vec![],
            ],
        )
    }

    pub fn substitute(&self, bindings: &HashMap<String, Expr>) -> StructureConstants {
        let mut out = StructureConstants::new(self.dim);
        for (k, i, j, c) in self.entries() {
            out.set(k, i, j, c.substitute(bindings));
        }
        out
    }

    /// `sum_{i<j} c^k_ij theta^i ^ theta^j`.
    pub fn rhs(&self, k: usize, theta: &[Form]) -> Form {
        assert_eq!(theta.len(), self.dim, "one form per index");
        let chart = theta[0].chart();
        let mut acc = Form::zero(chart, 2);
        for ((i, j), c) in &self.entries[k] {
            acc = acc.add(&theta[*i].wedge(&theta[*j]).scale(c));
        }
        acc
    }

    /// The Jacobi identity, exact in whatever symbols the constants carry.
    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.dim;
        let mut failures = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut terms = Vec::new();
                        for m in 0..n {
                            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                                let x = self.get(m, a, b);
                                let y = self.get(l, m, c);
                                if !x.is_zero() && !y.is_zero() {
                                    terms.push(x * y);
                                }
                            }
                        }
                        let v = Expr::sum(terms).simplify();
                        if !v.is_zero() {
                            failures.push(JacobiFailure {
                                indices: [i + 1, j + 1, k + 1, l + 1],
                                value: v,
                            });
                        }
                    }
                }
            }
        }
        let worst = failures.iter().map(|f| probe_magnitude(&f.value)).fold(0.0, f64::max);
        JacobiReport {
            holds: failures.is_empty(),
            worst,
            failures,
        }
    }
}

/// Largest |value| over `eps = +-1`, `s in {-2, 0, 1}` and `r in {1/2, 1, 2}`.
fn probe_magnitude(e: &Expr) -> f64 {
    let mut worst = 0.0f64;
    for eps in [-1.0, 1.0] {
        for s in [-2.0, 0.0, 1.0] {
            for r in [0.5, 1.0, 2.0] {
                let mut pt = EvaluationPoint::new();
                pt.set("eps", eps);
                pt.set("s", s);
                pt.set("r", r);
                match e.eval_f64(&pt) {
                    Ok(v) => worst = worst.max(v.abs()),
                    Err(_) => return f64::INFINITY,
                }
            }
        }
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiFailure {
    /// One-based `(i, j, k, l)`.
    pub indices: [usize; 4],
    pub value: Expr,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub holds: bool,
    pub worst: f64,
    pub failures: Vec<JacobiFailure>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry() {
        let sc = StructureConstants::homo1(&Expr::one());
        assert_eq!(sc.get(0, 0, 2), Expr::int(-6));
        assert_eq!(sc.get(0, 2, 0), Expr::int(6));
        assert_eq!(sc.get(0, 1, 3), Expr::one());
        assert_eq!(sc.get(0, 3, 3), Expr::zero());
    }

    #[test]
    fn homo2_entries() {
        let sc = StructureConstants::homo2(&Expr::int(-1), &Expr::zero());
        assert_eq!(sc.get(1, 1, 4), Expr::one());
        let sc = StructureConstants::homo2(&Expr::var("eps"), &Expr::var("s"));
        assert_eq!(sc.get(4, 0, 1), Expr::one());
    }

    #[test]
    fn jacobi() {
        for e in [-1, 1] {
            assert!(StructureConstants::homo1(&Expr::int(e)).jacobi_check().holds);
            assert!(StructureConstants::homo2(&Expr::int(e), &Expr::var("s")).jacobi_check().holds);
        }
        let mut sc = StructureConstants::homo1(&Expr::one());
        sc.set(0, 1, 3, Expr::int(-1));
        let r = sc.jacobi_check();
        assert!(!r.holds && r.worst > 0.0);
    }
}

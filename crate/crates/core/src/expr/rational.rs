//! Canonical rational-function form.
//!
//! Variables carrying fractional exponents are replaced by a root atom
//! `w = v^(1/n)`; transcendental nodes and fractional powers of composite
//! bases become opaque atoms treated as independent indeterminates. A zero
//! numerator is then a proof of vanishing; a nonzero numerator is a proof of
//! non-vanishing only when no opaque atom occurs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{try_gcd, with_budget, Budget, Poly};
use super::{Expr, Node, Rat};

/// Largest intermediate polynomial (in terms) before conversion gives up.
const TERM_LIMIT: usize = 6000;

#[derive(Clone, Debug)]
pub struct Normalized {
    pub expr: Expr,
    /// The tree was converted (false: returned unchanged).
    pub converted: bool,
    /// Conversion involved no opaque atoms, so zero and nonzero are both
    /// decided exactly by the numerator.
    pub exact: bool,
}

/// Normalize an expression of the rational-function subclass. Trees with
/// transcendental nodes come back unchanged with `converted == false`.
pub fn normalize_rational(e: &Expr) -> Normalized {
    if e.has_functions() {
        return Normalized {
            expr: e.clone(),
            converted: false,
            exact: false,
        };
    }
    normalize_with_atoms(e)
}

/// Normalize treating transcendental subtrees as independent atoms.
pub fn normalize_with_atoms(e: &Expr) -> Normalized {
    let ctx = RationalContext::new(std::slice::from_ref(e));
    match with_budget(Budget::DEFAULT, || ctx.convert(e)) {
        Some(rf) => Normalized {
            expr: ctx.to_expr(&rf),
            converted: true,
            exact: ctx.exact(),
        },
        None => Normalized {
            expr: e.clone(),
            converted: false,
            exact: false,
        },
    }
}

impl Expr {
    /// Rational normal form (atoms allowed) when conversion succeeds and does
    /// not blow up the tree; otherwise `self`.
    pub fn simplify(&self) -> Expr {
        if self.as_num().is_some() || self.as_var().is_some() {
            return self.clone();
        }
        let n = normalize_with_atoms(self);
        if n.converted && n.expr.size() <= self.size().max(8) * 2 {
            n.expr
        } else {
            self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatFun {
    pub num: Poly,
    pub den: Poly,
}

impl RatFun {
    fn reduce(num: Poly, den: Poly) -> Option<RatFun> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            let n = num.nvars();
            return Some(RatFun {
                num,
                den: Poly::one(n),
            });
        }
        let g = try_gcd(&num, &den)?;
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lc = den.leading_coeff();
        let out = RatFun {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        };
        if out.num.len() + out.den.len() > TERM_LIMIT {
            return None;
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant(n: usize, c: Rat) -> RatFun {
        RatFun {
            num: Poly::constant(n, c),
            den: Poly::one(n),
        }
    }

    pub fn add(&self, o: &RatFun) -> Option<RatFun> {
        if self.den == o.den {
            return RatFun::reduce(self.num.add(&o.num), self.den.clone());
        }
        let g = try_gcd(&self.den, &o.den)?;
        let a = o.den.div_exact(&g)?;
        let b = self.den.div_exact(&g)?;
        let num = self.num.mul(&a).add(&o.num.mul(&b));
        let den = self.den.mul(&a);
        RatFun::reduce(num, den)
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFun) -> Option<RatFun> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFun) -> Option<RatFun> {
        if self.is_zero() || o.is_zero() {
            return Some(RatFun::constant(self.num.nvars(), Rat::zero()));
        }
        let g1 = try_gcd(&self.num, &o.den)?;
        let g2 = try_gcd(&o.num, &self.den)?;
        let num = self.num.div_exact(&g1)?.mul(&o.num.div_exact(&g2)?);
        let den = self.den.div_exact(&g2)?.mul(&o.den.div_exact(&g1)?);
        let lc = den.leading_coeff();
        let out = RatFun {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        };
        if out.num.len() + out.den.len() > TERM_LIMIT {
            return None;
        }
        Some(out)
    }

    pub fn recip(&self) -> Option<RatFun> {
        if self.is_zero() {
            return None;
        }
        RatFun::reduce(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFun) -> Option<RatFun> {
        self.mul(&o.recip()?)
    }

    fn powi(&self, k: i64) -> Option<RatFun> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        let out = RatFun {
            num: base.num.pow(k),
            den: base.den.pow(k),
        };
        if out.num.len() + out.den.len() > TERM_LIMIT {
            return None;
        }
        Some(out)
    }
}

#[derive(Clone, Debug)]
struct Atom {
    base: Expr,
    root: u32,
    opaque: bool,
}

/// Shared atom table for converting several expressions consistently.
pub(crate) struct RationalContext {
    atoms: Vec<Atom>,
    index: HashMap<Expr, usize>,
}

impl RationalContext {
    pub fn new(exprs: &[Expr]) -> RationalContext {
        let mut roots: HashMap<Expr, u32> = HashMap::new();
        let mut order: Vec<Expr> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for e in exprs {
            collect(e, &mut roots, &mut order, &mut seen);
        }
        let mut atoms = Vec::new();
        let mut index = HashMap::new();
        for b in order {
            let root = roots[&b];
            let opaque = !matches!(b.node(), Node::Var(_));
            index.insert(b.clone(), atoms.len());
            atoms.push(Atom { base: b, root, opaque });
        }
        RationalContext { atoms, index }
    }

    pub fn nvars(&self) -> usize {
        self.atoms.len()
    }

    /// No opaque atoms: exact decisions in both directions.
    pub fn exact(&self) -> bool {
        self.atoms.iter().all(|a| !a.opaque)
    }

    fn atom_power(&self, base: &Expr, q: &Rat) -> Option<RatFun> {
        let i = *self.index.get(base)?;
        let k = q * Rat::from_integer(BigInt::from(self.atoms[i].root));
        if !k.is_integer() {
            return None;
        }
        let k = k.to_integer().to_i64()?;
        let n = self.nvars();
        let mono = Poly::var_pow(n, i, k.unsigned_abs() as u32);
        Some(if k >= 0 {
            RatFun {
                num: mono,
                den: Poly::one(n),
            }
        } else {
            RatFun {
                num: Poly::one(n),
                den: mono,
            }
        })
    }

    pub fn convert(&self, e: &Expr) -> Option<RatFun> {
        let mut memo = HashMap::new();
        self.convert_memo(e, &mut memo)
    }

    fn convert_memo(&self, e: &Expr, memo: &mut HashMap<usize, Option<RatFun>>) -> Option<RatFun> {
        if let Some(r) = memo.get(&e.ptr_id()) {
            return r.clone();
        }
        let n = self.nvars();
        let out = match e.node() {
            Node::Num(c) => Some(RatFun::constant(n, c.clone())),
            Node::Var(_) => self.atom_power(e, &Rat::one()),
            Node::Add(ts) => {
                let mut acc = Some(RatFun::constant(n, Rat::zero()));
                for t in ts {
                    let Some(a) = acc else { break };
                    acc = self.convert_memo(t, memo).and_then(|x| a.add(&x));
                }
                acc
            }
            Node::Mul(fs) => {
                let mut acc = Some(RatFun::constant(n, Rat::one()));
                for f in fs {
                    let Some(a) = acc else { break };
                    acc = self.convert_memo(f, memo).and_then(|x| a.mul(&x));
                }
                acc
            }
            Node::Pow(b, q) => {
                if q.is_integer() {
                    let k = q.to_integer().to_i64()?;
                    self.convert_memo(b, memo).and_then(|x| x.powi(k))
                } else {
                    self.atom_power(b, q)
                }
            }
            Node::Fun(..) => self.atom_power(e, &Rat::one()),
        };
        memo.insert(e.ptr_id(), out.clone());
        out
    }

    fn poly_to_expr(&self, p: &Poly) -> Expr {
        Expr::sum(p.terms().map(|(m, c)| {
            let mut f = vec![Expr::num(c.clone())];
            for (i, &k) in m.iter().enumerate() {
                if k > 0 {
                    let a = &self.atoms[i];
                    f.push(Expr::pow(
                        &a.base,
                        &Rat::new(BigInt::from(k), BigInt::from(a.root)),
                    ));
                }
            }
            Expr::product(f)
        }))
    }

    pub fn to_expr(&self, r: &RatFun) -> Expr {
        let num = self.poly_to_expr(&r.num);
        if r.den.is_constant() {
            let c = r.den.constant_value().unwrap_or_else(Rat::one);
            return num * Expr::num(c.recip());
        }
        num * self.poly_to_expr(&r.den).recip()
    }
}

fn collect(
    e: &Expr,
    roots: &mut HashMap<Expr, u32>,
    order: &mut Vec<Expr>,
    seen: &mut std::collections::HashSet<usize>,
) {
    if !seen.insert(e.ptr_id()) {
        return;
    }
    let mut note = |b: &Expr, d: u32| match roots.get_mut(b) {
        Some(r) => *r = r.lcm(&d),
        None => {
            roots.insert(b.clone(), d);
            order.push(b.clone());
        }
    };
    match e.node() {
        Node::Num(_) => {}
        Node::Var(_) => note(e, 1),
        Node::Add(cs) | Node::Mul(cs) => {
            for c in cs {
                collect(c, roots, order, seen);
            }
        }
        Node::Pow(b, q) => {
            if q.is_integer() {
                collect(b, roots, order, seen);
            } else {
                let d = q.denom().to_u32().unwrap_or(1);
                note(b, d);
            }
        }
        Node::Fun(..) => note(e, 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression as p;

    #[test]
    fn spec_examples() {
        let n = normalize_rational(&p("(p^2 - p^2)/r").unwrap());
        assert!(n.expr.is_zero() && n.exact);
        let n = normalize_rational(&p("(p*r + p)/p").unwrap());
        assert_eq!(n.expr, p("r + 1").unwrap());
        let n = normalize_rational(&p("1/(x-1) - 1/(x+1) - 2/(x^2-1)").unwrap());
        assert!(n.expr.is_zero());
    }

    #[test]
    fn fractional_powers_of_variables() {
        let n = normalize_rational(&p("p^(3/2)*p^(-1/2) - p").unwrap());
        assert!(n.expr.is_zero());
        let n = normalize_rational(&p("(p^(1/2) + 1)*(p^(1/2) - 1) - p + 1").unwrap());
        assert!(n.expr.is_zero() && n.exact);
    }

    #[test]
    fn opaque_atoms() {
        let e = p("exp(u)*(1+u) - exp(u) - u*exp(u)").unwrap();
        assert!(!normalize_rational(&e).converted);
        let n = normalize_with_atoms(&e);
        assert!(n.expr.is_zero());
        let n = normalize_with_atoms(&p("exp(u) + 1").unwrap());
        assert!(!n.exact);
    }

    #[test]
    fn idempotent() {
        let e = p("(x^2 - y^2)/(x - y) + 1/(x*y)").unwrap();
        let a = normalize_rational(&e).expr;
        let b = normalize_rational(&a).expr;
        assert_eq!(a, b);
    }
}

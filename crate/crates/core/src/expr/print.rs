//! Text output in the same grammar the parser accepts.

use std::fmt::{self, Display, Formatter, Write};

use num_traits::{One, Signed};

use super::{Expr, Node, Rat};

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_expr(self, f)
    }
}

fn write_rat(c: &Rat, f: &mut Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_expr(e: &Expr, f: &mut Formatter<'_>) -> fmt::Result {
    match e.node() {
        Node::Num(c) => write_rat(c, f),
        Node::Var(v) => f.write_str(v),
        Node::Add(ts) => {
            for (i, t) in ts.iter().enumerate() {
                let (c, _) = t.split_coeff();
                if i == 0 {
                    write_expr(t, f)?;
                } else if c.is_negative() {
                    f.write_str(" - ")?;
                    write_expr(&-t, f)?;
                } else {
                    f.write_str(" + ")?;
                    write_expr(t, f)?;
                }
            }
            Ok(())
        }
        Node::Mul(_) => write_product(e, f),
        Node::Pow(b, q) => {
            if q.is_negative() {
                f.write_str("1/")?;
                write_factor(&Expr::pow(b, &-q), f, true)
            } else {
                write_power(b, q, f)
            }
        }
        Node::Fun(func, a) => write!(f, "{}({})", func.name(), a),
    }
}

fn write_power(b: &Expr, q: &Rat, f: &mut Formatter<'_>) -> fmt::Result {
    let atomic = match b.node() {
        Node::Var(_) | Node::Fun(..) => true,
        Node::Num(c) => c.is_integer() && !c.is_negative(),
        _ => false,
    };
    if atomic {
        write_expr(b, f)?;
    } else {
        write!(f, "({b})")?;
    }
    if q.is_integer() && !q.is_negative() {
        write!(f, "^{}", q.numer())
    } else {
        f.write_str("^(")?;
        write_rat(q, f)?;
        f.write_char(')')
    }
}

/// Write a factor; `strict` parenthesizes products too (right side of `/`).
fn write_factor(e: &Expr, f: &mut Formatter<'_>, strict: bool) -> fmt::Result {
    let paren = match e.node() {
        Node::Add(_) => true,
        Node::Mul(_) => strict,
        Node::Num(c) => c.is_negative() || (!c.is_integer() && strict),
        _ => false,
    };
    if paren {
        write!(f, "({e})")
    } else {
        write_expr(e, f)
    }
}

fn write_product(e: &Expr, f: &mut Formatter<'_>) -> fmt::Result {
    let (c, rest) = e.split_coeff();
    let factors: Vec<Expr> = match rest.node() {
        Node::Mul(fs) => fs.clone(),
        _ => vec![rest.clone()],
    };
    let mut num: Vec<Expr> = Vec::new();
    let mut den: Vec<Expr> = Vec::new();
    for x in factors {
        match x.node() {
            Node::Pow(b, q) if q.is_negative() => den.push(Expr::pow(b, &-q)),
            _ => num.push(x),
        }
    }
    let cn = c.numer().abs();
    let cd = c.denom().clone();
    if c.is_negative() {
        f.write_char('-')?;
    }
    let mut first = true;
    if !cn.is_one() || num.is_empty() {
        write!(f, "{cn}")?;
        first = false;
    }
    for x in &num {
        if !first {
            f.write_char('*')?;
        }
        write_factor(x, f, false)?;
        first = false;
    }
    let mut dparts: Vec<String> = Vec::new();
    if !cd.is_one() {
        dparts.push(cd.to_string());
    }
    for x in &den {
        let mut s = String::new();
        let _ = write!(s, "{}", Paren(x));
        dparts.push(s);
    }
    match dparts.len() {
        0 => Ok(()),
        1 => write!(f, "/{}", dparts[0]),
        _ => write!(f, "/({})", dparts.join("*")),
    }
}

struct Paren<'a>(&'a Expr);

impl Display for Paren<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_factor(self.0, f, false)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_expression;
    use super::*;

    #[test]
    fn prints_readably() {
        let p = Expr::var("p");
        let r = Expr::var("r");
        assert_eq!((p.powi(2) / Expr::int(4)).to_string(), "p^2/4");
        assert_eq!((Expr::int(2) * &r).to_string(), "2*r");
        assert_eq!((&p - &r).to_string(), "p - r");
        assert_eq!((Expr::int(-3) * &r / &p).to_string(), "-3*r/p");
        assert_eq!(p.sqrt().recip().to_string(), "1/p^(1/2)");
    }

    #[test]
    fn round_trips() {
        for s in [
            "p^2/4",
            "(2-b)*r^2/p",
            "exp(b*arctan(u))/sqrt(1+u^2)",
            "-(x+y)*z/(3*w)",
            "(-5/2)^(1/3)*x^(2/3)",
            "1/(1+x)^(3/2) - 2*y",
            "sgn(r)*log(1+p^2)",
        ] {
            let e = parse_expression(s).unwrap();
            let back = parse_expression(&e.to_string()).unwrap();
            assert_eq!(e, back, "{s} -> {e}");
        }
    }
}

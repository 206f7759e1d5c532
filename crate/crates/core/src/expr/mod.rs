//! Immutable symbolic expressions over named real variables.
//!
//! Every constructor returns an automatically simplified tree: sums and
//! products are flattened, constants folded, like terms and like powers
//! collected and children sorted by a fixed total order.

mod diff;
mod eval;
pub(crate) mod modp;
mod parse;
mod poly;
mod print;
pub(crate) mod rational;
mod zero;

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use diff::DiffError;
pub use eval::{EvalError, Evaluated, EvaluationPoint, RationalPoint};
pub use parse::{parse_expression, parse_with_constants, ParseError};
pub use poly::Poly;
pub use rational::{normalize_rational, normalize_with_atoms, Normalized};
pub use zero::{
    is_identically_zero, numeric_zero_test, Certificate, SampleBox, ZeroTestError, ZeroTestProtocol, ZeroVerdict,
};

pub type Rat = BigRational;

/// Build a rational `n/d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Best rational approximation with bounded denominator, used where a float
/// has to become an exact parameter value (CLI `--b 1.5`).
pub fn rat_from_f64(v: f64) -> Option<Rat> {
    if !v.is_finite() {
        return None;
    }
    // Continued fractions, stop once the convergent reproduces v.
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut x = v;
    for _ in 0..40 {
        let a = x.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let approx = h1.to_f64()? / k1.to_f64()?;
        if (approx - v).abs() <= 1e-15 * v.abs().max(1.0) {
            break;
        }
        let frac = x - a;
        if frac.abs() < 1e-300 {
            break;
        }
        x = 1.0 / frac;
    }
    Some(Rat::new(h1, k1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Exp,
    Log,
    Arctan,
    Sin,
    Cos,
    Sign,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Arctan => "arctan",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sign => "sgn",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "arctan" | "atan" => Func::Arctan,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sgn" | "sign" => Func::Sign,
            _ => return None,
        })
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum Node {
    Num(Rat),
    Var(Arc<str>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, Rat),
    Fun(Func, Expr),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    hash: u64,
    size: usize,
    free: OnceLock<Arc<[Arc<str>]>>,
}

/// Shared, immutable expression handle. Cloning is cheap.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl std::fmt::Debug for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Expr({self})")
    }
}

fn node_hash(node: &Node) -> u64 {
    let mut h = DefaultHasher::new();
    match node {
        Node::Num(c) => {
            0u8.hash(&mut h);
            c.hash(&mut h);
        }
        Node::Var(v) => {
            1u8.hash(&mut h);
            v.hash(&mut h);
        }
        Node::Add(ts) => {
            2u8.hash(&mut h);
            for t in ts {
                t.0.hash.hash(&mut h);
            }
        }
        Node::Mul(fs) => {
            3u8.hash(&mut h);
            for f in fs {
                f.0.hash.hash(&mut h);
            }
        }
        Node::Pow(b, e) => {
            4u8.hash(&mut h);
            b.0.hash.hash(&mut h);
            e.hash(&mut h);
        }
        Node::Fun(f, a) => {
            5u8.hash(&mut h);
            f.hash(&mut h);
            a.0.hash.hash(&mut h);
        }
    }
    h.finish()
}

fn node_size(node: &Node) -> usize {
    match node {
        Node::Num(_) | Node::Var(_) => 1,
        Node::Add(cs) | Node::Mul(cs) => 1 + cs.iter().map(|c| c.0.size).sum::<usize>(),
        Node::Pow(b, _) | Node::Fun(_, b) => 1 + b.0.size,
    }
}

impl Expr {
    fn raw(node: Node) -> Expr {
        let hash = node_hash(&node);
        let size = node_size(&node);
        Expr(Arc::new(Inner {
            node,
            hash,
            size,
            free: OnceLock::new(),
        }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Number of nodes in the tree (shared subtrees counted repeatedly).
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub(crate) fn ptr_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn num(c: Rat) -> Expr {
        Expr::raw(Node::Num(c))
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(Rat::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::num(rat(n, d))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn var(name: &str) -> Expr {
        Expr::raw(Node::Var(Arc::from(name)))
    }

    pub fn as_num(&self) -> Option<&Rat> {
        match self.node() {
            Node::Num(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self.node() {
            Node::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node(), Node::Num(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self.node(), Node::Num(c) if c.is_one())
    }

    /// Sorted list of the variable names occurring in the tree.
    pub fn free_symbols(&self) -> Arc<[Arc<str>]> {
        self.0
            .free
            .get_or_init(|| {
                let mut out: Vec<Arc<str>> = Vec::new();
                match self.node() {
                    Node::Num(_) => {}
                    Node::Var(v) => out.push(v.clone()),
                    Node::Add(cs) | Node::Mul(cs) => {
                        for c in cs {
                            out.extend(c.free_symbols().iter().cloned());
                        }
                        out.sort();
                        out.dedup();
                    }
                    Node::Pow(b, _) | Node::Fun(_, b) => out.extend(b.free_symbols().iter().cloned()),
                }
                out.into()
            })
            .clone()
    }

    pub fn depends_on(&self, v: &str) -> bool {
        self.free_symbols().binary_search_by(|s| (**s).cmp(v)).is_ok()
    }

    pub fn is_constant(&self) -> bool {
        self.free_symbols().is_empty()
    }

    /// True when the tree contains exp/log/arctan/sin/cos/sgn.
    pub fn has_functions(&self) -> bool {
        match self.node() {
            Node::Num(_) | Node::Var(_) => false,
            Node::Fun(..) => true,
            Node::Add(cs) | Node::Mul(cs) => cs.iter().any(|c| c.has_functions()),
            Node::Pow(b, _) => b.has_functions(),
        }
    }

    // ---- canonical constructors ----------------------------------------

    pub fn sum<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        let mut constant = Rat::zero();
        let mut coeffs: HashMap<Expr, Rat> = HashMap::new();
        let mut order: Vec<Expr> = Vec::new();
        let mut add_term = |t: &Expr, constant: &mut Rat| {
            if let Node::Num(c) = t.node() {
                *constant += c;
                return;
            }
            let (c, rest) = t.split_coeff();
            match coeffs.get_mut(&rest) {
                Some(acc) => *acc += c,
                None => {
                    order.push(rest.clone());
                    coeffs.insert(rest, c);
                }
            }
        };
        for t in terms {
            match t.node() {
                Node::Add(children) => {
                    for c in children {
                        add_term(c, &mut constant);
                    }
                }
                _ => add_term(&t, &mut constant),
            }
        }
        let mut out: Vec<Expr> = order
            .into_iter()
            .filter_map(|rest| {
                let c = coeffs.remove(&rest).unwrap();
                if c.is_zero() {
                    None
                } else {
                    Some(Expr::with_coeff(c, rest))
                }
            })
            .collect();
        out.sort_by(Expr::total_cmp);
        if !constant.is_zero() {
            out.insert(0, Expr::num(constant));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::raw(Node::Add(out)),
        }
    }

    pub fn product<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        let mut coeff = Rat::one();
        let mut powers: HashMap<Expr, Rat> = HashMap::new();
        let mut order: Vec<Expr> = Vec::new();
        let mut add_power = |base: &Expr, e: &Rat| match powers.get_mut(base) {
            Some(acc) => *acc += e,
            None => {
                order.push(base.clone());
                powers.insert(base.clone(), e.clone());
            }
        };
        fn visit(
            f: &Expr,
            coeff: &mut Rat,
            add_power: &mut dyn FnMut(&Expr, &Rat),
        ) {
            match f.node() {
                Node::Num(c) => *coeff *= c,
                Node::Mul(cs) => {
                    for c in cs {
                        visit(c, coeff, add_power);
                    }
                }
                Node::Pow(b, e) => add_power(b, e),
                _ => add_power(f, &Rat::one()),
            }
        }
        for f in factors {
            visit(&f, &mut coeff, &mut add_power);
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        let mut out: Vec<Expr> = Vec::with_capacity(order.len());
        let mut again = false;
        for base in order {
            let e = powers.remove(&base).unwrap();
            if e.is_zero() {
                continue;
            }
            let p = Expr::pow(&base, &e);
            match p.node() {
                Node::Num(c) => coeff *= c,
                Node::Mul(_) => {
                    again = true;
                    out.push(p);
                }
                _ => out.push(p),
            }
        }
        if again {
            out.push(Expr::num(coeff));
            return Expr::product(out);
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        out.sort_by(Expr::total_cmp);
        if out.is_empty() {
            return Expr::num(coeff);
        }
        if coeff.is_one() && out.len() == 1 {
            return out.pop().unwrap();
        }
        if !coeff.is_one() {
            out.insert(0, Expr::num(coeff));
        }
        Expr::raw(Node::Mul(out))
    }

    /// `base^e` with rational exponent, real branch for odd denominators.
    pub fn pow(base: &Expr, e: &Rat) -> Expr {
        if e.is_zero() {
            return Expr::one();
        }
        if e.is_one() {
            return base.clone();
        }
        match base.node() {
            Node::Num(c) => match fold_num_pow(c, e) {
                Some(v) => Expr::num(v),
                None => Expr::raw(Node::Pow(base.clone(), e.clone())),
            },
            Node::Pow(b, e2) if e.is_integer() => Expr::pow(b, &(e2 * e)),
            Node::Mul(fs) => {
                if e.is_integer() || e.denom().is_odd() {
                    Expr::product(fs.iter().map(|f| Expr::pow(f, e)))
                } else if let Node::Num(c) = fs[0].node() {
                    // even root: only a positive numeric factor may be pulled out
                    let abs = c.abs();
                    if abs.is_one() {
                        return Expr::raw(Node::Pow(base.clone(), e.clone()));
                    }
                    let mut rest: Vec<Expr> = fs[1..].to_vec();
                    if c.is_negative() {
                        rest.push(Expr::int(-1));
                    }
                    let rest = Expr::product(rest);
                    Expr::product([Expr::pow(&Expr::num(abs), e), Expr::pow(&rest, e)])
                } else {
                    Expr::raw(Node::Pow(base.clone(), e.clone()))
                }
            }
            Node::Fun(Func::Exp, a) => Expr::exp(&Expr::product([Expr::num(e.clone()), a.clone()])),
            _ => Expr::raw(Node::Pow(base.clone(), e.clone())),
        }
    }

    pub fn powi(&self, n: i64) -> Expr {
        Expr::pow(self, &Rat::from_integer(BigInt::from(n)))
    }

    pub fn powq(&self, n: i64, d: i64) -> Expr {
        Expr::pow(self, &rat(n, d))
    }

    pub fn sqrt(&self) -> Expr {
        self.powq(1, 2)
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn apply(f: Func, a: &Expr) -> Expr {
        match f {
            Func::Exp => Expr::exp(a),
            Func::Log => Expr::log(a),
            Func::Arctan => Expr::atan(a),
            Func::Sin => Expr::sin(a),
            Func::Cos => Expr::cos(a),
            Func::Sign => Expr::sign(a),
        }
    }

    pub fn exp(a: &Expr) -> Expr {
        if a.is_zero() {
            return Expr::one();
        }
        if let Node::Fun(Func::Log, inner) = a.node() {
            if let Node::Num(c) = inner.node() {
                if c.is_positive() {
                    return inner.clone();
                }
            }
        }
        Expr::raw(Node::Fun(Func::Exp, a.clone()))
    }

    pub fn log(a: &Expr) -> Expr {
        if a.is_one() {
            return Expr::zero();
        }
        if let Node::Fun(Func::Exp, inner) = a.node() {
            return inner.clone();
        }
        Expr::raw(Node::Fun(Func::Log, a.clone()))
    }

    pub fn atan(a: &Expr) -> Expr {
        if a.is_zero() {
            return Expr::zero();
        }
        Expr::raw(Node::Fun(Func::Arctan, a.clone()))
    }

    pub fn sin(a: &Expr) -> Expr {
        if a.is_zero() {
            return Expr::zero();
        }
        Expr::raw(Node::Fun(Func::Sin, a.clone()))
    }

    pub fn cos(a: &Expr) -> Expr {
        if a.is_zero() {
            return Expr::one();
        }
        Expr::raw(Node::Fun(Func::Cos, a.clone()))
    }

    pub fn sign(a: &Expr) -> Expr {
        if let Node::Num(c) = a.node() {
            return Expr::int(if c.is_positive() {
                1
            } else if c.is_negative() {
                -1
            } else {
                0
            });
        }
        Expr::raw(Node::Fun(Func::Sign, a.clone()))
    }

    // ---- helpers --------------------------------------------------------

    /// Split off the rational coefficient of a term: `3*x*y -> (3, x*y)`.
    pub fn split_coeff(&self) -> (Rat, Expr) {
        match self.node() {
            Node::Num(c) => (c.clone(), Expr::one()),
            Node::Mul(fs) => {
                if let Node::Num(c) = fs[0].node() {
                    let rest = if fs.len() == 2 {
                        fs[1].clone()
                    } else {
                        Expr::raw(Node::Mul(fs[1..].to_vec()))
                    };
                    (c.clone(), rest)
                } else {
                    (Rat::one(), self.clone())
                }
            }
            _ => (Rat::one(), self.clone()),
        }
    }

    fn with_coeff(c: Rat, rest: Expr) -> Expr {
        if c.is_one() {
            return rest;
        }
        if rest.is_one() {
            return Expr::num(c);
        }
        match rest.node() {
            Node::Mul(fs) => {
                let mut v = Vec::with_capacity(fs.len() + 1);
                v.push(Expr::num(c));
                v.extend(fs.iter().cloned());
                Expr::raw(Node::Mul(v))
            }
            _ => Expr::raw(Node::Mul(vec![Expr::num(c), rest])),
        }
    }

    /// Sort key used for grouping powers: `x^2` sorts next to `x`.
    fn base_exp(&self) -> (&Expr, Option<&Rat>) {
        match self.node() {
            Node::Pow(b, e) => (b, Some(e)),
            _ => (self, None),
        }
    }

    fn rank(&self) -> u8 {
        match self.node() {
            Node::Num(_) => 0,
            Node::Var(_) => 1,
            Node::Pow(..) => 2,
            Node::Mul(_) => 3,
            Node::Add(_) => 4,
            Node::Fun(..) => 5,
        }
    }

    /// Total order on canonical trees.
    pub fn total_cmp(&self, other: &Expr) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let a_num = matches!(self.node(), Node::Num(_));
        let b_num = matches!(other.node(), Node::Num(_));
        match (a_num, b_num) {
            (true, true) => return self.as_num().unwrap().cmp(other.as_num().unwrap()),
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ba, ea) = self.base_exp();
        let (bb, eb) = other.base_exp();
        if ea.is_some() || eb.is_some() {
            let one = Rat::one();
            return ba
                .total_cmp(bb)
                .then_with(|| ea.unwrap_or(&one).cmp(eb.unwrap_or(&one)));
        }
        self.rank().cmp(&other.rank()).then_with(|| match (self.node(), other.node()) {
            (Node::Var(a), Node::Var(b)) => a.cmp(b),
            (Node::Add(a), Node::Add(b)) | (Node::Mul(a), Node::Mul(b)) => {
                for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                    let o = x.total_cmp(y);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                a.len().cmp(&b.len())
            }
            (Node::Fun(f, a), Node::Fun(g, b)) => f.cmp(g).then_with(|| a.total_cmp(b)),
            _ => Ordering::Equal,
        })
    }

    /// Simultaneous substitution followed by re-canonicalization.
    pub fn substitute(&self, bindings: &HashMap<String, Expr>) -> Expr {
        let mut memo = HashMap::new();
        self.subst_memo(bindings, &mut memo)
    }

    pub fn substitute_one(&self, var: &str, value: &Expr) -> Expr {
        let mut m = HashMap::new();
        m.insert(var.to_string(), value.clone());
        self.substitute(&m)
    }

    fn subst_memo(&self, b: &HashMap<String, Expr>, memo: &mut HashMap<usize, Expr>) -> Expr {
        if !self.free_symbols().iter().any(|s| b.contains_key(&**s)) {
            return self.clone();
        }
        if let Some(v) = memo.get(&self.ptr_id()) {
            return v.clone();
        }
        let out = match self.node() {
            Node::Num(_) => self.clone(),
            Node::Var(v) => b.get(&**v).cloned().unwrap_or_else(|| self.clone()),
            Node::Add(ts) => Expr::sum(ts.iter().map(|t| t.subst_memo(b, memo))),
            Node::Mul(fs) => Expr::product(fs.iter().map(|f| f.subst_memo(b, memo))),
            Node::Pow(base, e) => Expr::pow(&base.subst_memo(b, memo), e),
            Node::Fun(f, a) => Expr::apply(*f, &a.subst_memo(b, memo)),
        };
        memo.insert(self.ptr_id(), out.clone());
        out
    }

    /// Rebuild bottom-up through the canonical constructors. Idempotent on
    /// trees produced by this module.
    pub fn canonicalize(&self) -> Expr {
        match self.node() {
            Node::Num(_) | Node::Var(_) => self.clone(),
            Node::Add(ts) => Expr::sum(ts.iter().map(|t| t.canonicalize())),
            Node::Mul(fs) => Expr::product(fs.iter().map(|f| f.canonicalize())),
            Node::Pow(b, e) => Expr::pow(&b.canonicalize(), e),
            Node::Fun(f, a) => Expr::apply(*f, &a.canonicalize()),
        }
    }
}

/// Exact value of `c^e` when it is rational.
fn fold_num_pow(c: &Rat, e: &Rat) -> Option<Rat> {
    if c.is_zero() {
        return if e.is_positive() { Some(Rat::zero()) } else { None };
    }
    if c.is_one() {
        return Some(Rat::one());
    }
    let n = e.numer().to_i64()?;
    let d = e.denom().to_u32()?;
    if n.unsigned_abs() > 4096 {
        return None;
    }
    let base = if d == 1 {
        c.clone()
    } else {
        let neg = c.is_negative();
        if neg && d % 2 == 0 {
            return None;
        }
        let a = c.abs();
        let rn = a.numer().nth_root(d);
        let rd = a.denom().nth_root(d);
        if num_traits::pow(rn.clone(), d as usize) != *a.numer()
            || num_traits::pow(rd.clone(), d as usize) != *a.denom()
        {
            return None;
        }
        let r = Rat::new(rn, rd);
        if neg {
            -r
        } else {
            r
        }
    };
    let p = num_traits::pow(base, n.unsigned_abs() as usize);
    Some(if n < 0 { p.recip() } else { p })
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(&self, &rhs)
            }
        }
        impl std::ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(&self, rhs)
            }
        }
        impl std::ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, &rhs)
            }
        }
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Expr::sum([a.clone(), b.clone()]));
binop!(Sub, sub, |a, b| Expr::sum([a.clone(), -b]));
binop!(Mul, mul, |a, b| Expr::product([a.clone(), b.clone()]));
binop!(Div, div, |a, b| Expr::product([a.clone(), b.recip()]));

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product([Expr::int(-1), self.clone()])
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Expr, D::Error> {
        let text = String::deserialize(d)?;
        parse_expression(&text).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<Rat> for Expr {
    fn from(c: Rat) -> Expr {
        Expr::num(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Expr {
        Expr::var(s)
    }

    #[test]
    fn like_terms_collect() {
        let p = v("p");
        let e = &p + &p - Expr::int(2) * &p;
        assert!(e.is_zero());
        let q = &p * &p * Expr::frac(1, 4);
        assert_eq!(q, p.powi(2) / Expr::int(4));
    }

    #[test]
    fn powers_merge() {
        let x = v("x");
        assert_eq!(x.sqrt() * x.sqrt(), x);
        assert_eq!(x.powq(1, 3) * x.powq(2, 3) / x, Expr::one());
        assert_eq!(Expr::int(4).sqrt(), Expr::int(2));
        assert_eq!(Expr::frac(-8, 27).powq(1, 3), Expr::frac(-2, 3));
        assert_eq!(Expr::int(1).powq(3, 2), Expr::one());
        assert!(matches!(Expr::int(2).powq(1, 3).node(), Node::Pow(..)));
    }

    #[test]
    fn product_distributes_integer_powers() {
        let (x, y) = (v("x"), v("y"));
        let e = (&x * &y).powi(2);
        assert_eq!(e, x.powi(2) * y.powi(2));
        let r = (Expr::int(4) * &x).sqrt();
        assert_eq!(r, Expr::int(2) * x.sqrt());
    }

    #[test]
    fn exp_log_fold() {
        let x = v("x");
        assert_eq!(Expr::log(&Expr::exp(&x)), x);
        assert_eq!(Expr::exp(&x).powi(2), Expr::exp(&(Expr::int(2) * &x)));
        assert_eq!(Expr::sign(&Expr::int(-3)), Expr::int(-1));
    }

    #[test]
    fn substitution() {
        let p = v("p");
        let e = p.powi(2) / Expr::int(4);
        assert_eq!(e.substitute_one("p", &Expr::int(2)), Expr::one());
    }

    #[test]
    fn rat_from_float() {
        assert_eq!(rat_from_f64(1.5).unwrap(), rat(3, 2));
        assert_eq!(rat_from_f64(0.1).unwrap(), rat(1, 10));
    }
}

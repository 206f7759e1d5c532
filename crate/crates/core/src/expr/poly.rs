//! Sparse multivariate polynomials over Q with a recursive gcd.

use std::cell::Cell;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{modp, Rat};

type Mono = Vec<u32>;

/// Polynomial in `nvars` variables, terms keyed by exponent vectors in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::one())
    }

    /// The monomial `x_i^k`.
    pub fn var_pow(nvars: usize, i: usize, k: u32) -> Poly {
        let mut m = vec![0; nvars];
        m[i] = k;
        let mut p = Poly::zero(nvars);
        p.terms.insert(m, Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    fn leading(&self) -> (&Mono, &Rat) {
        self.terms.iter().next_back().expect("leading term of zero polynomial")
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().1.clone()
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn mul_term(&self, m: &[u32], c: &Rat) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lmd, lcd) = {
            let (m, c) = d.leading();
            (m.clone(), c.clone())
        };
        let mut q = Poly::zero(self.nvars);
        let mut r = self.clone();
        while !r.is_zero() {
            let (lmr, lcr) = r.leading();
            if lmr.iter().zip(&lmd).any(|(a, b)| a < b) {
                return None;
            }
            let m: Mono = lmr.iter().zip(&lmd).map(|(a, b)| a - b).collect();
            let c = lcr / &lcd;
            r = r.sub(&d.mul_term(&m, &c));
            q.add_term(m, c);
        }
        Some(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Scaled to integer coefficients with no common factor.
    pub fn numeric_primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        self.scale(&Rat::new(den, num))
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn vars_present(&self) -> Vec<bool> {
        let mut out = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    out[i] = true;
                }
            }
        }
        out
    }

    /// Coefficient of `x_v^k`, as a polynomial free of `x_v`.
    fn coeff_of(&self, v: usize, k: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[v] == k {
                let mut m2 = m.clone();
                m2[v] = 0;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in(v);
        let mut out = vec![Poly::zero(self.nvars); d as usize + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = m2[v] as usize;
            m2[v] = 0;
            out[k].terms.insert(m2, c.clone());
        }
        out
    }

    fn content_in(&self, v: usize, budget: &mut Budget) -> Option<Poly> {
        let mut g = Poly::zero(self.nvars);
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd_with(&g, &c, budget)?;
            if g.is_constant() {
                return Some(Poly::one(self.nvars));
            }
        }
        Some(g)
    }

    fn primitive_in(&self, v: usize, budget: &mut Budget) -> Option<Poly> {
        let c = self.content_in(v, budget)?;
        Some(self.div_exact(&c).expect("content divides"))
    }

    /// Pseudo-remainder of `self` by `g` in variable `v`.
    fn prem(&self, g: &Poly, v: usize, budget: &mut Budget) -> Option<Poly> {
        let dg = g.degree_in(v);
        let lcg = g.coeff_of(v, dg);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let lcr = r.coeff_of(v, dr);
            let words = 1 + r.max_bits().max(g.max_bits()) / 64;
            budget.spend((r.len() * lcg.len() + lcr.len() * g.len()) as u64 * words * words)?;
            let shift = Poly::var_pow(self.nvars, v, dr - dg);
            r = r.mul(&lcg).sub(&lcr.mul(&shift).mul(g));
        }
        Some(r)
    }

    /// Bit length of the largest numerator or denominator.
    fn max_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
            .max(1)
    }

    /// Image in `F_p[x_v]` after substituting small integers for the other
    /// variables; `None` when a denominator or the leading coefficient
    /// vanishes there.
    fn image_in(&self, v: usize, shift: u64) -> Option<Vec<u64>> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![0u64; d + 1];
        for (m, c) in &self.terms {
            let mut t = modp::reduce(c)?;
            for (i, &e) in m.iter().enumerate() {
                if i != v && e > 0 {
                    let pt = 2 + 3 * i as u64 + 7 * shift;
                    for _ in 0..e {
                        t = modp::mul(t, pt);
                    }
                }
            }
            let k = m[v] as usize;
            out[k] = (out[k] + t) % modp::P;
        }
        (out[d] != 0).then_some(out)
    }

    /// Multiplicity-free monomial content: componentwise minimum exponent.
    fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let mut m = it.next().cloned().unwrap_or_else(|| vec![0; self.nvars]);
        for k in it {
            for (a, b) in m.iter_mut().zip(k) {
                *a = (*a).min(*b);
            }
        }
        m
    }
}

/// Work allowance for a gcd computation, in coefficient-bit operations.
#[derive(Clone, Debug)]
pub struct Budget {
    left: u64,
}

impl Budget {
    pub const DEFAULT: u64 = 20_000_000;

    pub fn new(work: u64) -> Budget {
        Budget { left: work }
    }

    fn spend(&mut self, w: u64) -> Option<()> {
        match self.left.checked_sub(w) {
            Some(l) => {
                self.left = l;
                Some(())
            }
            None => {
                self.left = 0;
                None
            }
        }
    }
}

thread_local! {
    static SHARED: Cell<Option<u64>> = const { Cell::new(None) };
}

/// Run `f` with one budget shared by every [`try_gcd`] call inside it.
pub fn with_budget<T>(work: u64, f: impl FnOnce() -> T) -> T {
    let prev = SHARED.replace(Some(work));
    let out = f();
    SHARED.set(prev);
    out
}

/// Monic greatest common divisor.
#[cfg(test)]
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_with(a, b, &mut Budget::new(u64::MAX)).expect("unbounded budget")
}

/// Monic greatest common divisor, or `None` once the budget is spent: the
/// enclosing [`with_budget`] allowance, else [`Budget::DEFAULT`] for this call.
pub fn try_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    match SHARED.get() {
        Some(left) => {
            let mut budget = Budget::new(left);
            let out = gcd_with(a, b, &mut budget);
            SHARED.set(Some(budget.left));
            out
        }
        None => gcd_with(a, b, &mut Budget::new(Budget::DEFAULT)),
    }
}

/// True when a good modular image proves that `a` and `b` share no factor
/// involving `x_v`. Substitution and reduction cannot lower the degree of
/// the gcd while both leading coefficients survive.
fn coprime_in(a: &Poly, b: &Poly, v: usize) -> bool {
    for shift in 0..3 {
        if let (Some(ia), Some(ib)) = (a.image_in(v, shift), b.image_in(v, shift)) {
            return modp::gcd_degree(&ia, &ib) == Some(0);
        }
    }
    false
}

fn gcd_with(a: &Poly, b: &Poly, budget: &mut Budget) -> Option<Poly> {
    let n = a.nvars;
    if a.is_zero() {
        return Some(b.monic());
    }
    if b.is_zero() {
        return Some(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Some(Poly::one(n));
    }
    if a.len() == 1 || b.len() == 1 {
        let ma = a.monomial_content();
        let mb = b.monomial_content();
        let m: Mono = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
        let mut out = Poly::zero(n);
        out.terms.insert(m, Rat::one());
        return Some(out);
    }
    let va = a.vars_present();
    let vb = b.vars_present();
    for v in 0..n {
        if va[v] && !vb[v] {
            return gcd_with(&a.content_in(v, budget)?, b, budget);
        }
        if vb[v] && !va[v] {
            return gcd_with(a, &b.content_in(v, budget)?, budget);
        }
    }
    let x = (0..n).find(|&v| va[v]).expect("nonconstant");
    let ca = a.content_in(x, budget)?;
    let cb = b.content_in(x, budget)?;
    let c = gcd_with(&ca, &cb, budget)?;
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    if coprime_in(&pa, &pb, x) {
        return Some(c.monic());
    }
    let (mut f, mut g) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = f.prem(&g, x, budget)?.numeric_primitive();
        if r.is_zero() {
            break;
        }
        if r.degree_in(x) == 0 {
            g = Poly::one(n);
            break;
        }
        f = g;
        g = r.primitive_in(x, budget)?.numeric_primitive();
    }
    Some(c.mul(&g.primitive_in(x, budget)?).monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat;

    fn p(nv: usize, terms: &[(&[u32], i64)]) -> Poly {
        let mut out = Poly::zero(nv);
        for (m, c) in terms {
            out.add_term(m.to_vec(), rat(*c, 1));
        }
        out
    }

    #[test]
    fn gcd_univariate() {
        // (x+1)(x-2) and (x+1)(x+3)
        let a = p(1, &[(&[2], 1), (&[1], -1), (&[0], -2)]);
        let b = p(1, &[(&[2], 1), (&[1], 4), (&[0], 3)]);
        assert_eq!(gcd(&a, &b), p(1, &[(&[1], 1), (&[0], 1)]));
    }

    #[test]
    fn gcd_bivariate() {
        // g = x*y + 1, a = g*(x - y), b = g*(x + 2)
        let g = p(2, &[(&[1, 1], 1), (&[0, 0], 1)]);
        let a = g.mul(&p(2, &[(&[1, 0], 1), (&[0, 1], -1)]));
        let b = g.mul(&p(2, &[(&[1, 0], 1), (&[0, 0], 2)]));
        assert_eq!(gcd(&a, &b), g);
        assert_eq!(a.div_exact(&g).unwrap(), p(2, &[(&[1, 0], 1), (&[0, 1], -1)]));
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn gcd_coprime_and_monomial() {
        let a = p(2, &[(&[2, 0], 1), (&[0, 1], 1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        assert!(gcd(&a, &b).is_constant());
        let m = p(2, &[(&[2, 1], 3)]);
        let c = p(2, &[(&[1, 3], 1), (&[3, 2], 1)]);
        assert_eq!(gcd(&m, &c), p(2, &[(&[1, 1], 1)]));
    }

    #[test]
    fn gcd_trivariate_shared_factor() {
        // g = x + y*z + 1 against cofactors coprime modulo the image point
        let g = p(3, &[(&[1, 0, 0], 1), (&[0, 1, 1], 1), (&[0, 0, 0], 1)]);
        let u = p(3, &[(&[2, 0, 0], 1), (&[0, 0, 1], -1)]);
        let v = p(3, &[(&[0, 1, 0], 1), (&[1, 0, 3], 1)]);
        let a = g.mul(&u).mul(&u);
        let b = g.mul(&v);
        assert_eq!(gcd(&a, &b), g);
        assert!(coprime_in(&u, &v, 0));
        assert!(!coprime_in(&a, &b, 0));
    }

    #[test]
    fn shared_budget_runs_out() {
        let big = p(2, &[(&[9, 0], 1), (&[0, 7], 3), (&[4, 4], -5), (&[0, 0], 1)]).pow(4);
        let other = p(2, &[(&[8, 1], 2), (&[1, 8], 1), (&[0, 0], 7)]).pow(4);
        assert!(with_budget(1, || try_gcd(&big, &other.add(&big))).is_none());
        assert!(try_gcd(&big, &big.mul(&other)).is_some());
    }
}

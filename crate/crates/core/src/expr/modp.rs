//! Arithmetic modulo the Mersenne prime 2^61 - 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Rat;

pub(crate) const P: u64 = (1 << 61) - 1;

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn big_mod(x: &BigInt) -> u64 {
    let m = x.mod_floor(&BigInt::from(P));
    m.to_u64().expect("reduced below modulus")
}

/// `None` when the denominator vanishes modulo the prime.
pub(crate) fn reduce(r: &Rat) -> Option<u64> {
    let d = big_mod(r.denom());
    (d != 0).then(|| mul(big_mod(r.numer()), inv(d)))
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the gcd of two dense univariate polynomials, low order first.
/// `None` when either is zero.
pub(crate) fn gcd_degree(a: &[u64], b: &[u64]) -> Option<usize> {
    let (mut f, mut g) = (a.to_vec(), b.to_vec());
    trim(&mut f);
    trim(&mut g);
    if f.is_empty() || g.is_empty() {
        return None;
    }
    while !g.is_empty() {
        // f <- f mod g
        let lg = inv(*g.last().expect("nonempty"));
        while f.len() >= g.len() {
            let k = mul(*f.last().expect("nonempty"), lg);
            let s = f.len() - g.len();
            for (i, c) in g.iter().enumerate() {
                f[s + i] = (f[s + i] + P - mul(k, *c)) % P;
            }
            trim(&mut f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    Some(f.len() - 1)
}

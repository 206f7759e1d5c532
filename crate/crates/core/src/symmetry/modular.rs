//! Elimination over a prime field with rational reconstruction.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::expr::modp::{inv, mul, reduce, P};
use crate::expr::Rat;

/// Smallest `a/b` congruent to `x` with `|a|, b` below `sqrt(P/2)`.
pub(super) fn reconstruct(x: u64) -> Option<Rat> {
    let bound = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(Rat::new(BigInt::from(n), BigInt::from(d)))
}

/// Kernel basis of `m` over the prime field, in the same normal form as the
/// exact `kernel`.
pub(super) fn kernel_mod(m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut a = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(p, r);
        let iv = inv(a[r][c]);
        for v in a[r].iter_mut() {
            *v = mul(*v, iv);
        }
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pr) {
                    *v = (*v + P - mul(f, pv)) % P;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = (P - row[f]) % P;
            }
            v
        })
        .collect()
}

/// Kernel dimension over the prime field; `None` if some denominator
/// vanishes there.
pub(super) fn kernel_dim(m: &[Vec<Rat>], cols: usize) -> Option<usize> {
    let red: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(reduce).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    Some(kernel_mod(&red, cols).len())
}

/// Exact kernel via the prime field, or `None` if reduction or lifting fails
/// or a lifted vector misses some row.
pub(super) fn kernel_via_prime(m: &[Vec<Rat>], cols: usize) -> Option<Vec<Vec<Rat>>> {
    let red: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(reduce).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let ker = kernel_mod(&red, cols);
    let lifted: Vec<Vec<Rat>> = ker
        .iter()
        .map(|v| v.iter().map(|&x| reconstruct(x)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let ok = lifted.iter().all(|v| {
        m.iter().all(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    });
    ok.then_some(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat;

    #[test]
    fn round_trip() {
        for (n, d) in [(1, 2), (-3, 7), (0, 1), (12345, 678)] {
            assert_eq!(reconstruct(reduce(&rat(n, d)).unwrap()).unwrap(), rat(n, d));
        }
    }

    #[test]
    fn small_kernel() {
        let m = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![rat(2, 3), rat(4, 3), rat(2, 1)]];
        let k = kernel_via_prime(&m, 3).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k, super::super::kernel(&m, 3));
    }
}

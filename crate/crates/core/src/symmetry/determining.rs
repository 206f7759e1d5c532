//! Polynomial solutions of the symmetry conditions, as an independent check
//! on the generator catalogs.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::expr::{Expr, Rat, ZeroTestProtocol};
use crate::exterior::VectorField;
use crate::paracr::PdePair;

use super::{expand_in_basis, kernel, modular, prolong, symmetry_residuals, SymmetryError};

#[derive(Clone, Debug, Serialize)]
pub struct DeterminingReport {
    pub degree: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub kernel_dimension: usize,
    /// Some kernel element uses a monomial of the maximal degree, so a
    /// larger bound may reveal more solutions.
    pub possibly_incomplete: bool,
    #[serde(skip)]
    pub kernel: Vec<VectorField>,
}

impl DeterminingReport {
    /// Whether each field lies in the span of the kernel.
    pub fn contains(&self, fields: &[VectorField], proto: &ZeroTestProtocol) -> Result<Vec<bool>, SymmetryError> {
        fields
            .iter()
            .map(|f| Ok(expand_in_basis(f, &self.kernel, proto)?.is_some()))
            .collect()
    }
}

fn monomials(degree: usize) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for d in 0..=degree as u32 {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a, b, d - a - b]);
            }
        }
    }
    out
}

fn monomial_expr(m: &[u32; 3]) -> Expr {
    Expr::product(
        ["x", "y", "z"]
            .iter()
            .zip(m)
            .map(|(v, &k)| Expr::var(v).powi(k as i64)),
    )
}

/// Kernel of the linearized conditions for `A^1, A^2, A^3` polynomial of
/// total degree at most `degree` in `(x, y, z)`, prolonged to `p, r`.
pub fn solve_determining_equations(
    pair: &PdePair,
    degree: usize,
    proto: &ZeroTestProtocol,
) -> Result<DeterminingReport, SymmetryError> {
    if degree > 4 {
        return Err(SymmetryError::DegreeBound(degree));
    }
    let proto = pair.protocol(proto);
    let monos = monomials(degree);
    let zero = Expr::zero();
    let fields: Vec<VectorField> = (0..3)
        .flat_map(|c| monos.iter().map(move |m| (c, m)))
        .map(|(c, m)| {
            let e = monomial_expr(m);
            let comp = |i: usize| if i == c { e.clone() } else { zero.clone() };
            prolong(pair, &comp(0), &comp(1), &comp(2))
        })
        .collect();
    let n = fields.len();
    let residuals: Vec<Vec<crate::exterior::Form>> = fields
        .par_iter()
        .map(|f| {
            let r = symmetry_residuals(f, pair);
            r.conditions.into_iter().chain(r.contact).collect()
        })
        .collect();
    // every (condition, coefficient key) pair that occurs
    let mut keys: BTreeSet<(usize, Vec<u8>)> = BTreeSet::new();
    for rs in &residuals {
        for (ci, f) in rs.iter().enumerate() {
            for (k, _) in f.terms() {
                keys.insert((ci, k.to_vec()));
            }
        }
    }
    let vars: Vec<String> = pair.chart().names().to_vec();
    // Coefficients are indexed once; rows are added in batches of points
    // until the kernel stops shrinking.
    let coeffs: Vec<Vec<Option<Expr>>> = keys
        .iter()
        .map(|(ci, key)| {
            residuals
                .iter()
                .map(|rs| rs[*ci].terms().find(|(k, _)| *k == key.as_slice()).map(|(_, e)| e.clone()))
                .collect()
        })
        .collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let batch = 4 + (2 * n) / keys.len().max(1);
    let mut seed = 1000u64;
    let mut last = usize::MAX;
    let mut stable = 0;
    let mut rounds = 0;
    let ker = loop {
        let pts: Vec<_> = (0..batch)
            .map(|i| proto.sample_box.sample_rational(&vars, &mut proto.rng(seed + i as u64)))
            .collect();
        seed += batch as u64;
        rounds += 1;
        let new_rows: Vec<Vec<Rat>> = coeffs
            .par_iter()
            .flat_map_iter(|cs| {
                pts.iter().map(move |pt| {
                    cs.iter()
                        .map(|c| match c {
                            Some(e) => e.eval_rational(pt),
                            None => Some(Rat::zero()),
                        })
                        .collect::<Option<Vec<Rat>>>()
                })
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(SymmetryError::NotPolynomial)?;
        rows.extend(new_rows.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())));
        let dim = modular::kernel_dim(&rows, n);
        stable = if dim == Some(last) { stable + 1 } else { 0 };
        last = dim.unwrap_or(usize::MAX);
        if stable >= 2 || rounds >= 12 {
            if let Some(k) = modular::kernel_via_prime(&rows, n) {
                break k;
            }
            if rounds >= 12 {
                break kernel(&rows, n);
            }
        }
    };
    let top: Vec<usize> = (0..n)
        .filter(|i| monos[i % monos.len()].iter().sum::<u32>() as usize == degree)
        .collect();
    let possibly_incomplete = ker.iter().any(|v| top.iter().any(|&i| !v[i].is_zero()));
    let kernel_fields: Vec<VectorField> = ker
        .iter()
        .map(|v| {
            let mut acc = VectorField::zero(&pair.chart());
            for (c, f) in v.iter().zip(&fields) {
                if !c.is_zero() {
                    acc = acc.add(&f.scale(&Expr::num(c.clone())));
                }
            }
            acc.simplify()
        })
        .collect();
    Ok(DeterminingReport {
        degree,
        unknowns: n,
        equations: rows.len(),
        kernel_dimension: kernel_fields.len(),
        possibly_incomplete,
        kernel: kernel_fields,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(2).len(), 10);
        assert_eq!(monomials(3).len(), 20);
    }

    #[test]
    fn too_large() {
        let pair = PdePair::parse("p^2/4", "0").unwrap();
        assert!(solve_determining_equations(&pair, 5, &ZeroTestProtocol::default()).is_err());
    }
}

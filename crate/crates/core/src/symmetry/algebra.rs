//! Bracket tables in a generator basis and their structure.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::expr::{Expr, Rat, ZeroTestProtocol};
use crate::exterior::{invert_numeric, VectorField};

use super::SymmetryError;

/// Nearest rational with denominator at most `max_den`, if within `tol`.
pub fn approx_rational(v: f64, tol: f64, max_den: i64) -> Option<Rat> {
    if !v.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - v).abs() <= tol * v.abs().max(1.0) {
            return Some(Rat::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = x - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

/// Rank by elimination with relative pivot threshold.
pub fn numeric_rank(m: &[Vec<f64>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let scale = a.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs())).max(1e-300);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())) else {
            break;
        };
        if a[p][c].abs() <= 1e-9 * scale {
            continue;
        }
        a.swap(p, rank);
        for r in rank + 1..rows {
            let f = a[r][c] / a[rank][c];
            for j in c..cols {
                a[r][j] -= f * a[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// A basis of `{v : m v = 0}`.
pub fn kernel(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Coefficients `c` with `target = sum c_k basis_k`, found by least squares at
/// sample points, rationalized, then verified identically. `None` when
/// the target is not in the span.
pub fn expand_in_basis(
    target: &VectorField,
    basis: &[VectorField],
    proto: &ZeroTestProtocol,
) -> Result<Option<Vec<Rat>>, SymmetryError> {
    let k = basis.len();
    let names = target.chart().names().to_vec();
    let pts = proto.clone().with_samples(6).points(&names);
    let mut a: Vec<Vec<f64>> = Vec::new();
    let mut rhs = Vec::new();
    for pt in &pts {
        let cols: Vec<Vec<f64>> = basis.iter().map(|b| b.eval_at(pt)).collect::<Result<_, _>>()?;
        let t = target.eval_at(pt)?;
        for (c, tv) in t.iter().enumerate() {
            a.push((0..k).map(|j| cols[j][c]).collect());
            rhs.push(*tv);
        }
    }
    let ata: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| a.iter().map(|r| r[i] * r[j]).sum()).collect())
        .collect();
    let atb: Vec<f64> = (0..k).map(|i| a.iter().zip(&rhs).map(|(r, b)| r[i] * b).sum()).collect();
    let inv = invert_numeric(&ata).ok_or(SymmetryError::Dependent)?;
    let sol: Vec<f64> = (0..k).map(|i| (0..k).map(|j| inv[i][j] * atb[j]).sum()).collect();
    let Some(coeffs) = sol
        .iter()
        .map(|v| approx_rational(*v, 1e-7, 100_000))
        .collect::<Option<Vec<Rat>>>()
    else {
        return Ok(None);
    };
    let mut acc = target.clone();
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            acc = acc.sub(&b.scale(&Expr::num(c.clone())));
        }
    }
    let check = acc.simplify().check_zero(proto)?;
    Ok(check.zero.then_some(coeffs))
}

/// `[X_i, X_j] = sum_k c[i][j][k] X_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    pub c: Vec<Vec<Vec<Rat>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    /// One-based indices.
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableMismatch {
    pub i: usize,
    pub j: usize,
    pub computed: String,
    pub expected: String,
}

fn fmt_combo(v: &[Rat]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&format!("{a}"));
        }
        out.push_str(&format!("X{}", k + 1));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for BracketTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.entries() {
            writeln!(f, "[X{},X{}] = {}", e.i, e.j, e.value)?;
        }
        Ok(())
    }
}

impl BracketTable {
    pub fn zero(n: usize) -> BracketTable {
        BracketTable {
            c: vec![vec![vec![Rat::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// Set `[X_i, X_j]` (zero-based) and its antisymmetric partner.
    pub fn set(&mut self, i: usize, j: usize, v: Vec<Rat>) {
        self.c[j][i] = v.iter().map(|x| -x).collect();
        self.c[i][j] = v;
    }

    /// Nonzero brackets with `i < j`.
    pub fn entries(&self) -> Vec<TableEntry> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.c[i][j].iter().any(|x| !x.is_zero()) {
                    out.push(TableEntry {
                        i: i + 1,
                        j: j + 1,
                        value: fmt_combo(&self.c[i][j]),
                    });
                }
            }
        }
        out
    }

    pub fn compare(&self, expected: &BracketTable) -> Vec<TableMismatch> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.c[i][j] != expected.c[i][j] {
                    out.push(TableMismatch {
                        i: i + 1,
                        j: j + 1,
                        computed: fmt_combo(&self.c[i][j]),
                        expected: fmt_combo(&expected.c[i][j]),
                    });
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += &f * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::one();
        v
    }

    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&self.bracket(&a, &b), &c);
                    let t2 = self.bracket(&self.bracket(&b, &c), &a);
                    let t3 = self.bracket(&self.bracket(&c, &a), &b);
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dimensions of `g, [g,g], [[g,g],[g,g]], ...` until they stabilize.
    pub fn derived_series(&self) -> Vec<usize> {
        let n = self.dim();
        let mut basis: Vec<Vec<Rat>> = (0..n).map(|i| self.unit(i)).collect();
        let mut dims = vec![n];
        loop {
            let mut next = Vec::new();
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    next.push(self.bracket(&basis[a], &basis[b]));
                }
            }
            let _ = rref(&mut next);
            next.retain(|r| r.iter().any(|x| !x.is_zero()));
            let d = next.len();
            if d == *dims.last().expect("nonempty") {
                break;
            }
            dims.push(d);
            basis = next;
            if d == 0 {
                break;
            }
        }
        dims
    }

    /// Whether the span of the given generators is an ideal and abelian.
    pub fn ideal_witness(&self, idx: &[usize]) -> IdealWitness {
        let n = self.dim();
        let in_span = |v: &[Rat]| v.iter().enumerate().all(|(k, x)| x.is_zero() || idx.contains(&k));
        let is_ideal = (0..n).all(|i| idx.iter().all(|&j| in_span(&self.c[i][j])));
        let is_abelian = idx
            .iter()
            .all(|&i| idx.iter().all(|&j| self.c[i][j].iter().all(|x| x.is_zero())));
        IdealWitness {
            generators: idx.iter().map(|i| i + 1).collect(),
            is_ideal,
            is_abelian,
        }
    }

    pub fn analyze(&self, ideal: Option<&[usize]>) -> AlgebraReport {
        let derived = self.derived_series();
        AlgebraReport {
            dimension: self.dim(),
            jacobi: self.jacobi_holds(),
            solvable: derived.last() == Some(&0),
            derived_dimension: derived.get(1).copied().unwrap_or(self.dim()),
            derived_series: derived,
            abelian_ideal: ideal.map(|i| self.ideal_witness(i)),
        }
    }

    /// Entries as floats, for reports.
    pub fn to_f64(&self) -> Vec<Vec<Vec<f64>>> {
        self.c
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealWitness {
    /// One-based generator indices.
    pub generators: Vec<usize>,
    pub is_ideal: bool,
    pub is_abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub dimension: usize,
    pub jacobi: bool,
    pub derived_series: Vec<usize>,
    pub derived_dimension: usize,
    pub solvable: bool,
    pub abelian_ideal: Option<IdealWitness>,
}

/// Expand every bracket `[X_i, X_j]` in the generator basis.
pub fn commutator_table(gens: &[VectorField], proto: &ZeroTestProtocol) -> Result<BracketTable, SymmetryError> {
    use rayon::prelude::*;
    let n = gens.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results: Vec<Result<(usize, usize, Vec<Rat>), SymmetryError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let br = gens[i].bracket(&gens[j]).simplify();
            match expand_in_basis(&br, gens, proto)? {
                Some(c) => Ok((i, j, c)),
                None => Err(SymmetryError::NotClosed { i: i + 1, j: j + 1 }),
            }
        })
        .collect();
    let mut t = BracketTable::zero(n);
    for r in results {
        let (i, j, c) = r?;
        t.set(i, j, c);
    }
    Ok(t)
}

/// Pointwise rank of the generators stacked over a few samples.
pub fn generator_rank(gens: &[VectorField], proto: &ZeroTestProtocol) -> Result<usize, SymmetryError> {
    let Some(first) = gens.first() else { return Ok(0) };
    let names = first.chart().names().to_vec();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for pt in proto.clone().with_samples(4).points(&names) {
        let cols: Vec<Vec<f64>> = gens.iter().map(|g| g.eval_at(&pt)).collect::<Result<_, _>>()?;
        for c in 0..names.len() {
            rows.push(cols.iter().map(|v| v[c]).collect());
        }
    }
    Ok(numeric_rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat;

    #[test]
    fn rationalize() {
        assert_eq!(approx_rational(-1.5, 1e-9, 100), Some(rat(-3, 2)));
        assert_eq!(approx_rational(0.333333333333, 1e-9, 100), Some(rat(1, 3)));
        assert_eq!(approx_rational(std::f64::consts::PI, 1e-12, 100), None);
    }

    #[test]
    fn kernel_basis() {
        let m = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![rat(2, 1), rat(4, 1), rat(6, 1)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rat = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn heisenberg() {
        let mut t = BracketTable::zero(3);
        t.set(0, 1, vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert!(t.jacobi_holds());
        assert_eq!(t.derived_series(), vec![3, 1, 0]);
        let r = t.analyze(Some(&[1, 2]));
        assert!(r.solvable);
        assert!(r.abelian_ideal.unwrap().is_ideal);
        assert_eq!(t.entries()[0].value, "X3");
    }
}

//! Infinitesimal point symmetries of the PDE pairs and the Lie algebras they span.

mod algebra;
mod determining;
pub(crate) mod modular;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{parse_with_constants, rat, Expr, ParseError, Rat, ZeroTestError, ZeroTestProtocol};
use crate::exterior::{ExteriorError, Form, FormCheck, VectorField};
use crate::models::{ModelError, ModelId, ModelSpec};
use crate::paracr::PdePair;

pub use algebra::{
    approx_rational, commutator_table, expand_in_basis, generator_rank, kernel, numeric_rank, rank, rref,
    AlgebraReport, BracketTable, IdealWitness, TableEntry, TableMismatch,
};
pub use determining::{solve_determining_equations, DeterminingReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error("generators are linearly dependent at the sample points")]
    Dependent,
    #[error("[X{i},X{j}] is not in the span of the generators")]
    NotClosed { i: usize, j: usize },
    #[error("coefficients are not rational at sample points; the pair must be polynomial")]
    NotPolynomial,
    #[error("degree bound {0} outside 0..=4")]
    DegreeBound(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Eval(#[from] crate::expr::EvalError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The five wedge conditions and the two contact-ideal residuals.
#[derive(Clone, Debug)]
pub struct SymmetryResiduals {
    pub conditions: [Form; 5],
    /// `L_X omega^1 ^ omega^1 ^ omega^2` and `L_X omega^2 ^ omega^1 ^ omega^2`.
    pub contact: [Form; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryVerdict {
    pub conditions: Vec<FormCheck>,
    pub contact: Vec<FormCheck>,
    pub is_symmetry: bool,
}

impl SymmetryResiduals {
    pub fn check(&self, proto: &ZeroTestProtocol) -> Result<SymmetryVerdict, SymmetryError> {
        let conditions = self
            .conditions
            .iter()
            .map(|f| f.check_zero(proto))
            .collect::<Result<Vec<_>, _>>()?;
        let contact = self
            .contact
            .iter()
            .map(|f| f.check_zero(proto))
            .collect::<Result<Vec<_>, _>>()?;
        let is_symmetry = conditions.iter().chain(&contact).all(|c| c.zero);
        Ok(SymmetryVerdict {
            conditions,
            contact,
            is_symmetry,
        })
    }
}

/// Residuals of `X` against the initial coframe of the pair.
pub fn symmetry_residuals(x: &VectorField, pair: &PdePair) -> SymmetryResiduals {
    symmetry_residuals_for(x, &pair.initial_forms())
}

pub fn symmetry_residuals_for(x: &VectorField, w: &[Form]) -> SymmetryResiduals {
    let l: Vec<Form> = w.iter().map(|f| f.lie(x)).collect();
    let w123 = Form::wedge_all(&[&w[0], &w[1], &w[2]]);
    let w145 = Form::wedge_all(&[&w[0], &w[3], &w[4]]);
    let w12 = w[0].wedge(&w[1]);
    SymmetryResiduals {
        conditions: [
            l[0].wedge(&w[0]).simplify(),
            l[1].wedge(&w123).simplify(),
            l[2].wedge(&w123).simplify(),
            l[3].wedge(&w145).simplify(),
            l[4].wedge(&w145).simplify(),
        ],
        contact: [l[0].wedge(&w12).simplify(), l[1].wedge(&w12).simplify()],
    }
}

/// `(xi, eta, zeta)` on `(x, y, z)` prolonged to `p` and `r` on the pair's chart.
pub fn prolong(pair: &PdePair, xi: &Expr, eta: &Expr, zeta: &Expr) -> VectorField {
    let p = pair.p();
    let dx = |f: &Expr| f.diff("x") + &p * f.diff("z");
    let phi_x = dx(zeta) - &p * dx(xi) - pair.f() * dx(eta);
    let dff = pair.total_d(pair.f());
    let phi_xx = pair.total_d(&phi_x) - Expr::var("r") * dx(xi) - dff * dx(eta);
    VectorField::new(
        &pair.chart(),
        vec![
            xi.clone(),
            eta.clone(),
            zeta.clone(),
            p_component(pair, &phi_x),
            phi_xx,
        ],
    )
    .simplify()
}

/// The chart component of a `d/dp` coefficient.
fn p_component(pair: &PdePair, a: &Expr) -> Expr {
    match pair.p_chart() {
        Some(c) => a / c.p_of.diff(&c.var),
        None => a.clone(),
    }
}

/// A vector field from component strings in `(x, y, z, p, r)`; `p`, `F` and
/// `DF` are bound to the pair's values.
fn generator(pair: &PdePair, comps: [&str; 5], extra: &HashMap<String, Expr>) -> Result<VectorField, SymmetryError> {
    let mut b = extra.clone();
    b.insert("p".into(), pair.p());
    b.insert("F".into(), pair.f().clone());
    b.insert("DF".into(), pair.total_d(pair.f()));
    let mut v: Vec<Expr> = comps
        .iter()
        .map(|c| parse_with_constants(c, &b))
        .collect::<Result<_, _>>()?;
    v[3] = p_component(pair, &v[3]);
    Ok(VectorField::new(&pair.chart(), v).simplify())
}

type TableSpec = &'static [(usize, usize, &'static [(usize, &'static str)])];

const FLAT_GENS: [[&str; 5]; 10] = [
    ["x*y", "y^2", "-x^2", "-(p*y+2*x)", "-(2*r*y+2)"],
    ["-(x^2-y*z)", "-2*x*y", "-2*x*z", "-(p^2*y/2+2*z)", "-(p*r*y-2*r*x+2*p)"],
    ["y", "0", "-2*x", "-2", "0"],
    ["x*z", "-x^2", "z^2", "-(p^2*x/2-p*z)", "p^2/2-p*r*x"],
    ["z", "-2*x", "0", "-p^2/2", "-p*r"],
    ["x", "0", "2*z", "p", "0"],
    ["1", "0", "0", "0", "0"],
    ["0", "y", "-z", "-p", "-r"],
    ["0", "1", "0", "0", "0"],
    ["0", "0", "1", "0", "0"],
];

const FLAT_TABLE: TableSpec = &[
    (1, 5, &[(2, "-1")]),
    (1, 7, &[(3, "-1")]),
    (1, 8, &[(1, "-1")]),
    (1, 9, &[(6, "-1"), (8, "-2")]),
    (2, 3, &[(1, "2")]),
    (2, 5, &[(4, "2")]),
    (2, 6, &[(2, "-1")]),
    (2, 7, &[(6, "2"), (8, "2")]),
    (2, 9, &[(5, "-1")]),
    (2, 10, &[(3, "-1")]),
    (3, 4, &[(2, "1")]),
    (3, 5, &[(8, "-2")]),
    (3, 6, &[(3, "1")]),
    (3, 7, &[(10, "2")]),
    (3, 8, &[(3, "-1")]),
    (3, 9, &[(7, "-1")]),
    (4, 6, &[(4, "-2")]),
    (4, 7, &[(5, "-1")]),
    (4, 8, &[(4, "1")]),
    (4, 10, &[(6, "-1")]),
    (5, 6, &[(5, "-1")]),
    (5, 7, &[(9, "2")]),
    (5, 8, &[(5, "1")]),
    (5, 10, &[(7, "-1")]),
    (6, 7, &[(7, "-1")]),
    (6, 10, &[(10, "-2")]),
    (8, 9, &[(9, "-1")]),
    (8, 10, &[(10, "1")]),
];

const TRANSLATIONS: [[&str; 5]; 3] = [
    ["1", "0", "0", "0", "0"],
    ["0", "1", "0", "0", "0"],
    ["0", "0", "1", "0", "0"],
];

const II_GENS: [[&str; 5]; 2] = [["x", "y/2", "3*z/2", "p/2", "-r/2"], ["y", "0", "-2*x", "-2", "0"]];

const II_TABLE: TableSpec = &[
    (1, 2, &[(2, "-1/2")]),
    (1, 3, &[(3, "-1")]),
    (1, 4, &[(4, "-1/2")]),
    (1, 5, &[(5, "-3/2")]),
    (2, 3, &[(5, "2")]),
    (2, 4, &[(3, "-1")]),
];

const IIIA_GENS: [[&str; 5]; 2] = [
    ["x", "0", "b*z/(b-1)", "p/(b-1)", "-r*(b-2)/(b-1)"],
    ["0", "y", "-z/(b-1)", "-p/(b-1)", "-r/(b-1)"],
];

/// The uncorrected second generator, with the `r` term attached to `d/dz`.
const IIIA_X2_UNCORRECTED: [&str; 5] = ["0", "y", "-(z+r)/(b-1)", "-p/(b-1)", "0"];

const IIIA_TABLE: TableSpec = &[
    (1, 3, &[(3, "-1")]),
    (1, 5, &[(5, "-b/(b-1)")]),
    (2, 4, &[(4, "-1")]),
    (2, 5, &[(5, "1/(b-1)")]),
];

const IIIB_GENS: [[&str; 5]; 2] = [["x", "y", "z", "0", "-r"], ["-y", "x", "w*z", "-F+w*p", "-2*DF+w*r"]];

const IIIB_TABLE: TableSpec = &[
    (1, 3, &[(3, "-1")]),
    (1, 4, &[(4, "-1")]),
    (1, 5, &[(5, "-1")]),
    (2, 3, &[(4, "-1")]),
    (2, 4, &[(3, "1")]),
    (2, 5, &[(5, "-w")]),
];

/// A model's generators with the expected bracket table.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub model: ModelId,
    pub b: Option<Rat>,
    /// The free scalar of the second `iiib` generator.
    pub omega: Option<Rat>,
    pub pair: PdePair,
    pub gens: Vec<VectorField>,
    pub expected: BracketTable,
    /// Zero-based indices of the candidate abelian ideal.
    pub ideal: Option<Vec<usize>>,
}

fn table(n: usize, spec: TableSpec, bind: &HashMap<String, Expr>) -> Result<BracketTable, SymmetryError> {
    let mut t = BracketTable::zero(n);
    for (i, j, terms) in spec {
        let mut v = vec![rat(0, 1); n];
        for (k, c) in *terms {
            let e = parse_with_constants(c, bind)?;
            v[k - 1] = e.as_num().cloned().ok_or(SymmetryError::NotPolynomial)?;
        }
        t.set(i - 1, j - 1, v);
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorVerdict {
    /// One-based.
    pub index: usize,
    pub verdict: SymmetryVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub model: ModelId,
    pub b: Option<f64>,
    pub omega: Option<f64>,
    pub samples: usize,
    pub tolerance: f64,
    pub generators: Vec<GeneratorVerdict>,
    pub rank: usize,
    pub table: Vec<TableEntry>,
    pub mismatches: Vec<TableMismatch>,
    pub closure_error: Option<String>,
    pub algebra: Option<AlgebraReport>,
    pub passed: bool,
}

impl GeneratorSet {
    /// The catalog generators; for `iiib` the free scalar is set to `b`.
    pub fn catalog(id: ModelId, b: Option<Rat>) -> Result<GeneratorSet, SymmetryError> {
        GeneratorSet::catalog_with_omega(id, b, None)
    }

    pub fn catalog_with_omega(id: ModelId, b: Option<Rat>, omega: Option<Rat>) -> Result<GeneratorSet, SymmetryError> {
        let spec = ModelSpec::load(id, b)?;
        let pair = spec.pair.clone().expect("catalog models carry a pair");
        let mut bind = HashMap::new();
        if let Some(b) = &spec.b {
            bind.insert("b".to_string(), Expr::num(b.clone()));
        }
        let omega = match id {
            ModelId::Iiib => Some(omega.unwrap_or_else(|| spec.b.clone().expect("iiib has b"))),
            _ => None,
        };
        if let Some(w) = &omega {
            bind.insert("w".to_string(), Expr::num(w.clone()));
        }
        let (specs, tab, ideal): (Vec<[&str; 5]>, TableSpec, Option<Vec<usize>>) = match id {
            ModelId::Flat => (FLAT_GENS.to_vec(), FLAT_TABLE, None),
            ModelId::Ii => (II_GENS.iter().chain(&TRANSLATIONS).copied().collect(), II_TABLE, Some(vec![2, 3, 4])),
            ModelId::Iiia => (IIIA_GENS.iter().chain(&TRANSLATIONS).copied().collect(), IIIA_TABLE, Some(vec![2, 3, 4])),
            ModelId::Iiib => (IIIB_GENS.iter().chain(&TRANSLATIONS).copied().collect(), IIIB_TABLE, Some(vec![2, 3, 4])),
        };
        let gens = specs
            .iter()
            .map(|c| generator(&pair, *c, &bind))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = table(gens.len(), tab, &bind)?;
        Ok(GeneratorSet {
            model: id,
            b: spec.b,
            omega,
            pair,
            gens,
            expected,
            ideal,
        })
    }

    /// The `iiia` set with its uncorrected second generator.
    pub fn iiia_uncorrected(b: Option<Rat>) -> Result<GeneratorSet, SymmetryError> {
        let mut set = GeneratorSet::catalog(ModelId::Iiia, b)?;
        let mut bind = HashMap::new();
        bind.insert("b".to_string(), Expr::num(set.b.clone().expect("iiia has b")));
        set.gens[1] = generator(&set.pair, IIIA_X2_UNCORRECTED, &bind)?;
        Ok(set)
    }

    pub fn protocol(&self, base: &ZeroTestProtocol) -> ZeroTestProtocol {
        self.pair.protocol(base)
    }

    /// Residuals for every generator.
    pub fn verdicts(&self, proto: &ZeroTestProtocol) -> Result<Vec<GeneratorVerdict>, SymmetryError> {
        let proto = self.protocol(proto);
        let w = self.pair.initial_forms();
        self.gens
            .par_iter()
            .enumerate()
            .map(|(i, g)| {
                Ok(GeneratorVerdict {
                    index: i + 1,
                    verdict: symmetry_residuals_for(g, &w).check(&proto)?,
                })
            })
            .collect()
    }

    pub fn commutator_table(&self, proto: &ZeroTestProtocol) -> Result<BracketTable, SymmetryError> {
        commutator_table(&self.gens, &self.protocol(proto))
    }

    /// Residuals, rank, bracket table against the expected one, and the
    /// structure of the resulting algebra.
    pub fn verify(&self, proto: &ZeroTestProtocol) -> Result<CatalogReport, SymmetryError> {
        let p = self.protocol(proto);
        let generators = self.verdicts(proto)?;
        let rank = generator_rank(&self.gens, &p)?;
        let (table, mismatches, closure_error, algebra) = match self.commutator_table(proto) {
            Ok(t) => {
                let m = t.compare(&self.expected);
                let a = t.analyze(self.ideal.as_deref());
                (t.entries(), m, None, Some(a))
            }
            Err(e @ SymmetryError::NotClosed { .. }) => (Vec::new(), Vec::new(), Some(e.to_string()), None),
            Err(e) => return Err(e),
        };
        let passed = generators.iter().all(|g| g.verdict.is_symmetry)
            && rank == self.gens.len()
            && closure_error.is_none()
            && mismatches.is_empty()
            && algebra.as_ref().is_some_and(|a| a.jacobi);
        let f = |r: &Option<Rat>| r.as_ref().and_then(num_traits::ToPrimitive::to_f64);
        Ok(CatalogReport {
            model: self.model,
            b: f(&self.b),
            omega: f(&self.omega),
            samples: p.samples,
            tolerance: p.tolerance,
            generators,
            rank,
            table,
            mismatches,
            closure_error,
            algebra,
            passed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translations_and_non_symmetries() {
        let pair = PdePair::parse("p^2/4", "0").unwrap();
        let proto = pair.protocol(&ZeroTestProtocol::default());
        let ch = pair.chart();
        let dx = VectorField::coordinate(&ch, 0);
        assert!(symmetry_residuals(&dx, &pair).check(&proto).unwrap().is_symmetry);
        let dp = VectorField::coordinate(&ch, 3);
        let v = symmetry_residuals(&dp, &pair).check(&proto).unwrap();
        assert!(!v.conditions[0].zero);
    }

    #[test]
    fn prolongation_matches_catalog() {
        let pair = PdePair::parse("p^2/4", "r^3").unwrap();
        let x = prolong(&pair, &Expr::var("y"), &Expr::zero(), &(Expr::int(-2) * Expr::var("x")));
        let set = GeneratorSet::catalog(ModelId::Ii, None).unwrap();
        let d = x.sub(&set.gens[1]).simplify();
        assert!(d.comps().iter().all(|c| c.is_zero()), "{d}");
    }
}

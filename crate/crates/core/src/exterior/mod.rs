//! Differential forms and vector fields on coordinate charts.

mod linalg;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::expr::{
    is_identically_zero, EvalError, EvaluationPoint, Expr, ZeroTestError,
    ZeroTestProtocol,
};

pub use linalg::{det_numeric, invert_numeric, invert_symbolic, SymbolicInverse};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExteriorError {
    #[error("duplicate coordinate `{0}`")]
    DuplicateCoordinate(String),
    #[error("a chart needs at least one coordinate")]
    EmptyChart,
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("expected {expected} one-forms, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("form {0} is not a one-form")]
    NotOneForm(usize),
    #[error("coefficient matrix is singular")]
    Singular,
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Ordered coordinate names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChart {
    names: Arc<Vec<String>>,
}

impl CoordChart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<CoordChart, ExteriorError> {
        if names.is_empty() {
            return Err(ExteriorError::EmptyChart);
        }
        let mut v: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().to_string();
            if v.contains(&n) {
                return Err(ExteriorError::DuplicateCoordinate(n));
            }
            v.push(n);
        }
        Ok(CoordChart { names: Arc::new(v) })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coord(&self, i: usize) -> Expr {
        Expr::var(&self.names[i])
    }
}

type Index = Vec<u8>;

/// A k-form: coefficients keyed by strictly increasing index tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    chart: CoordChart,
    degree: usize,
    terms: BTreeMap<Index, Expr>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for &i in idx {
                write!(f, " d{}", self.chart.name(i as usize))?;
            }
        }
        Ok(())
    }
}

/// Sort `idx` in place, returning the permutation sign, or `None` on repeats.
fn sort_sign(idx: &mut [u8]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(sign)
}

struct Accum(BTreeMap<Index, Vec<Expr>>);

impl Accum {
    fn new() -> Self {
        Accum(BTreeMap::new())
    }
    fn push(&mut self, idx: Index, e: Expr) {
        if !e.is_zero() {
            self.0.entry(idx).or_default().push(e);
        }
    }
    fn finish(self, chart: &CoordChart, degree: usize) -> Form {
        let mut terms = BTreeMap::new();
        for (k, v) in self.0 {
            let s = Expr::sum(v);
            if !s.is_zero() {
                terms.insert(k, s);
            }
        }
        Form {
            chart: chart.clone(),
            degree,
            terms,
        }
    }
}

impl Form {
    pub fn zero(chart: &CoordChart, degree: usize) -> Form {
        Form {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(chart: &CoordChart, f: Expr) -> Form {
        let mut out = Form::zero(chart, 0);
        if !f.is_zero() {
            out.terms.insert(vec![], f);
        }
        out
    }

    /// The differential of coordinate `i`.
    pub fn dx(chart: &CoordChart, i: usize) -> Form {
        Form::one_form(chart, (0..chart.dim()).map(|j| Expr::int((i == j) as i64)).collect())
    }

    /// The differential of the named coordinate.
    pub fn d_coord(chart: &CoordChart, name: &str) -> Option<Form> {
        chart.index_of(name).map(|i| Form::dx(chart, i))
    }

    /// The one-form `sum_i coeffs[i] dx^i`.
    pub fn one_form(chart: &CoordChart, coeffs: Vec<Expr>) -> Form {
        assert_eq!(coeffs.len(), chart.dim(), "one coefficient per coordinate");
        let mut out = Form::zero(chart, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(vec![i as u8], c);
            }
        }
        out
    }

    /// The one-form `df`.
    pub fn differential(chart: &CoordChart, f: &Expr) -> Form {
        Form::function(chart, f.clone()).d()
    }

    pub fn chart(&self) -> &CoordChart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Expr)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, idx: &[usize]) -> Expr {
        let mut k: Index = idx.iter().map(|&i| i as u8).collect();
        match sort_sign(&mut k) {
            None => Expr::zero(),
            Some(s) => {
                let c = self.terms.get(&k).cloned().unwrap_or_else(Expr::zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Coefficients of a one-form as a dense row.
    pub fn one_form_row(&self) -> Vec<Expr> {
        (0..self.chart.dim()).map(|i| self.coeff(&[i])).collect()
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_chart(&self, o: &Form) {
        assert!(self.chart == o.chart, "forms on different charts");
    }

    pub fn add(&self, o: &Form) -> Form {
        self.same_chart(o);
        assert_eq!(self.degree, o.degree, "degree mismatch in sum");
        let mut acc = Accum::new();
        for (k, v) in self.terms.iter().chain(o.terms.iter()) {
            acc.push(k.clone(), v.clone());
        }
        acc.finish(&self.chart, self.degree)
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Form {
        self.map(|c| -c)
    }

    pub fn scale(&self, f: &Expr) -> Form {
        if f.is_zero() {
            return Form::zero(&self.chart, self.degree);
        }
        self.map(|c| c * f)
    }

    /// Apply `f` to every coefficient, pruning zeros.
    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Form {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let c = f(v);
            if !c.is_zero() {
                terms.insert(k.clone(), c);
            }
        }
        Form {
            chart: self.chart.clone(),
            degree: self.degree,
            terms,
        }
    }

    /// Coefficients brought to rational normal form where possible.
    pub fn simplify(&self) -> Form {
        self.map(simplify_expr)
    }

    /// Sum of forms of the same degree.
    pub fn sum<'a, I: IntoIterator<Item = &'a Form>>(chart: &CoordChart, degree: usize, forms: I) -> Form {
        let mut acc = Accum::new();
        for f in forms {
            assert_eq!(f.degree, degree);
            for (k, v) in &f.terms {
                acc.push(k.clone(), v.clone());
            }
        }
        acc.finish(chart, degree)
    }

    pub fn wedge(&self, o: &Form) -> Form {
        self.same_chart(o);
        let degree = self.degree + o.degree;
        if degree > self.chart.dim() {
            return Form::zero(&self.chart, degree);
        }
        let mut acc = Accum::new();
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                let mut k: Index = i.iter().chain(j.iter()).copied().collect();
                if let Some(s) = sort_sign(&mut k) {
                    let c = a * b;
                    acc.push(k, if s < 0 { -c } else { c });
                }
            }
        }
        acc.finish(&self.chart, degree)
    }

    /// Wedge of a list of forms, left to right.
    pub fn wedge_all(forms: &[&Form]) -> Form {
        let mut it = forms.iter();
        let first = (*it.next().expect("nonempty")).clone();
        it.fold(first, |acc, f| acc.wedge(f))
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut acc = Accum::new();
        for (idx, a) in &self.terms {
            for j in 0..self.chart.dim() {
                let jj = j as u8;
                if idx.contains(&jj) || !a.depends_on(self.chart.name(j)) {
                    continue;
                }
                let da = a.diff(self.chart.name(j));
                let before = idx.iter().filter(|&&i| i < jj).count();
                let mut k = idx.clone();
                k.insert(before, jj);
                acc.push(k, if before % 2 == 1 { -da } else { da });
            }
        }
        acc.finish(&self.chart, self.degree + 1)
    }

    /// Interior product with `X`.
    pub fn interior(&self, x: &VectorField) -> Form {
        assert!(self.chart == x.chart, "chart mismatch");
        if self.degree == 0 {
            return Form::zero(&self.chart, 0);
        }
        let mut acc = Accum::new();
        for (idx, a) in &self.terms {
            for (m, &i) in idx.iter().enumerate() {
                let xi = &x.comps[i as usize];
                if xi.is_zero() {
                    continue;
                }
                let mut k = idx.clone();
                k.remove(m);
                let c = a * xi;
                acc.push(k, if m % 2 == 1 { -c } else { c });
            }
        }
        acc.finish(&self.chart, self.degree - 1)
    }

    /// Lie derivative by Cartan's formula.
    pub fn lie(&self, x: &VectorField) -> Form {
        let a = self.interior(x).d();
        let b = self.d().interior(x);
        if self.degree == 0 {
            return b;
        }
        a.add(&b)
    }

    /// Value of a one-form on a vector field.
    pub fn pair(&self, x: &VectorField) -> Expr {
        assert_eq!(self.degree, 1);
        self.interior(x).terms.get(&vec![]).cloned().unwrap_or_else(Expr::zero)
    }

    /// Substitute coordinates in the coefficients.
    pub fn substitute(&self, bindings: &std::collections::HashMap<String, Expr>) -> Form {
        self.map(|c| c.substitute(bindings))
    }

    /// Restriction to the section where the listed coordinates are fixed:
    /// their differentials vanish and their values are substituted.
    pub fn restrict(&self, fixed: &[(&str, Expr)]) -> Form {
        let bind: std::collections::HashMap<String, Expr> =
            fixed.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        let drop: Vec<u8> = fixed
            .iter()
            .filter_map(|(k, _)| self.chart.index_of(k).map(|i| i as u8))
            .collect();
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            if idx.iter().any(|i| drop.contains(i)) {
                continue;
            }
            let c = c.substitute(&bind);
            if !c.is_zero() {
                terms.insert(idx.clone(), c);
            }
        }
        Form {
            chart: self.chart.clone(),
            degree: self.degree,
            terms,
        }
    }

    /// Numeric coefficients at a point.
    pub fn eval_at(&self, pt: &EvaluationPoint) -> Result<BTreeMap<Vec<u8>, f64>, EvalError> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.eval_f64(pt)?);
        }
        Ok(out)
    }

    /// Zero test of every coefficient.
    pub fn check_zero(&self, proto: &ZeroTestProtocol) -> Result<FormCheck, ZeroTestError> {
        let mut worst = 0.0f64;
        let mut exact = true;
        let mut failing = None;
        for (k, c) in &self.terms {
            let v = is_identically_zero(c, proto)?;
            exact &= v.is_exact();
            let r = v.residual();
            if r > worst || (!v.zero && failing.is_none()) {
                worst = worst.max(r);
            }
            if !v.zero && failing.is_none() {
                let names: Vec<&str> = k.iter().map(|&i| self.chart.name(i as usize)).collect();
                failing = Some(format!("d{} : {}", names.join("^d"), c));
            }
        }
        Ok(FormCheck {
            zero: failing.is_none(),
            exact,
            worst,
            failing,
        })
    }
}

/// Outcome of a coefficient-wise zero test.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FormCheck {
    pub zero: bool,
    /// All coefficients decided by the exact path.
    pub exact: bool,
    /// Largest scaled residual (0 for exact zeros, inf for exact nonzeros).
    pub worst: f64,
    pub failing: Option<String>,
}

impl FormCheck {
    pub fn merge(self, o: FormCheck) -> FormCheck {
        FormCheck {
            zero: self.zero && o.zero,
            exact: self.exact && o.exact,
            worst: self.worst.max(o.worst),
            failing: self.failing.or(o.failing),
        }
    }

    pub fn ok() -> FormCheck {
        FormCheck {
            zero: true,
            exact: true,
            worst: 0.0,
            failing: None,
        }
    }
}

/// Rational normal form when conversion succeeds, else the input.
pub fn simplify_expr(e: &Expr) -> Expr {
    e.simplify()
}

/// A vector field `sum_i comps[i] d/dx^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: CoordChart,
    comps: Vec<Expr>,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}) d/d{}", self.chart.name(i))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl VectorField {
    pub fn new(chart: &CoordChart, comps: Vec<Expr>) -> VectorField {
        assert_eq!(comps.len(), chart.dim(), "one component per coordinate");
        VectorField {
            chart: chart.clone(),
            comps,
        }
    }

    pub fn zero(chart: &CoordChart) -> VectorField {
        VectorField::new(chart, vec![Expr::zero(); chart.dim()])
    }

    /// The coordinate field `d/dx^i`.
    pub fn coordinate(chart: &CoordChart, i: usize) -> VectorField {
        VectorField::new(chart, (0..chart.dim()).map(|j| Expr::int((i == j) as i64)).collect())
    }

    pub fn chart(&self) -> &CoordChart {
        &self.chart
    }

    pub fn comps(&self) -> &[Expr] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Expr {
        &self.comps[i]
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Expr) -> Expr {
        Expr::sum(self.comps.iter().enumerate().filter_map(|(i, c)| {
            let name = self.chart.name(i);
            if c.is_zero() || !f.depends_on(name) {
                None
            } else {
                Some(c * f.diff(name))
            }
        }))
    }

    pub fn bracket(&self, o: &VectorField) -> VectorField {
        assert!(self.chart == o.chart, "chart mismatch");
        let comps = (0..self.chart.dim())
            .map(|i| self.apply(&o.comps[i]) - o.apply(&self.comps[i]))
            .collect();
        VectorField::new(&self.chart, comps)
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        VectorField::new(
            &self.chart,
            self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, o: &VectorField) -> VectorField {
        VectorField::new(
            &self.chart,
            self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn scale(&self, f: &Expr) -> VectorField {
        VectorField::new(&self.chart, self.comps.iter().map(|c| c * f).collect())
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> VectorField {
        VectorField::new(&self.chart, self.comps.iter().map(f).collect())
    }

    pub fn simplify(&self) -> VectorField {
        self.map(simplify_expr)
    }

    pub fn check_zero(&self, proto: &ZeroTestProtocol) -> Result<FormCheck, ZeroTestError> {
        let f = Form::one_form(&self.chart, self.comps.clone());
        f.check_zero(proto)
    }

    pub fn eval_at(&self, pt: &EvaluationPoint) -> Result<Vec<f64>, EvalError> {
        self.comps.iter().map(|c| c.eval_f64(pt)).collect()
    }
}

/// A basis of one-forms with its cached inverse coefficient matrix.
#[derive(Clone, Debug)]
pub struct CoframeSet {
    chart: CoordChart,
    forms: Vec<Form>,
    matrix: Vec<Vec<Expr>>,
    inverse: Vec<Vec<Expr>>,
    det: Expr,
}

impl CoframeSet {
    /// Build from `dim` one-forms; fails when the coefficient matrix is
    /// singular on the protocol's box.
    pub fn new(forms: Vec<Form>, proto: &ZeroTestProtocol) -> Result<CoframeSet, ExteriorError> {
        let chart = forms.first().ok_or(ExteriorError::EmptyChart)?.chart.clone();
        let n = chart.dim();
        if forms.len() != n {
            return Err(ExteriorError::WrongCount {
                expected: n,
                got: forms.len(),
            });
        }
        for (i, f) in forms.iter().enumerate() {
            if f.chart != chart {
                return Err(ExteriorError::ChartMismatch);
            }
            if f.degree != 1 {
                return Err(ExteriorError::NotOneForm(i));
            }
        }
        let matrix: Vec<Vec<Expr>> = forms.iter().map(|f| f.one_form_row()).collect();
        let inv = invert_symbolic(&matrix, proto)?;
        let det_check = is_identically_zero(&inv.det, proto)?;
        if det_check.zero {
            return Err(ExteriorError::Singular);
        }
        Ok(CoframeSet {
            chart,
            forms,
            matrix,
            inverse: inv.inverse,
            det: inv.det,
        })
    }

    pub fn chart(&self) -> &CoordChart {
        &self.chart
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &Form {
        &self.forms[i]
    }

    pub fn matrix(&self) -> &[Vec<Expr>] {
        &self.matrix
    }

    pub fn determinant(&self) -> &Expr {
        &self.det
    }

    /// Vector fields `X_j` with `theta^i(X_j) = delta^i_j`.
    pub fn dual_frame(&self) -> Vec<VectorField> {
        let n = self.chart.dim();
        (0..n)
            .map(|j| VectorField::new(&self.chart, (0..n).map(|k| self.inverse[k][j].clone()).collect()))
            .collect()
    }

    /// `f_mu = X_mu(f)`, so that `df = sum f_mu theta^mu`.
    pub fn coframe_derivatives(&self, f: &Expr) -> Vec<Expr> {
        self.dual_frame().iter().map(|x| simplify_expr(&x.apply(f))).collect()
    }

    /// Expand a form of any degree in the coframe basis: returns coefficients
    /// keyed by increasing coframe index tuples.
    pub fn expand(&self, f: &Form) -> BTreeMap<Vec<u8>, Expr> {
        let duals = self.dual_frame();
        let k = f.degree;
        let n = self.chart.dim();
        let mut out = BTreeMap::new();
        for idx in combinations(n, k) {
            // coefficient = f(X_{i1}, ..., X_{ik})
            let mut g = f.clone();
            for &i in idx.iter().rev() {
                g = g.interior(&duals[i as usize]);
            }
            // interior in reverse order evaluates f(X_i1,...,X_ik)
            let c = g.terms.get(&vec![]).cloned().unwrap_or_else(Expr::zero);
            let c = simplify_expr(&c);
            if !c.is_zero() {
                out.insert(idx, c);
            }
        }
        out
    }
}

/// All strictly increasing k-tuples from 0..n.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression as p;

    fn chart5() -> CoordChart {
        CoordChart::new(&["x", "y", "z", "p", "r"]).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let c = chart5();
        let dx = Form::dx(&c, 0);
        let dy = Form::dx(&c, 1);
        assert!(dx.wedge(&dx).is_structurally_zero());
        assert!(dx.wedge(&dy).add(&dy.wedge(&dx)).is_structurally_zero());
        assert_eq!(dy.wedge(&dx).coeff(&[0, 1]), Expr::int(-1));
        assert_eq!(dy.wedge(&dx).coeff(&[1, 0]), Expr::int(1));
        let top = Form::wedge_all(&[&dx, &dy, &Form::dx(&c, 2), &Form::dx(&c, 3), &Form::dx(&c, 4)]);
        assert!(top.wedge(&dx).is_structurally_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        let c = chart5();
        let w = Form::one_form(
            &c,
            vec![p("x*y*r^3").unwrap(), p("exp(z)*p").unwrap(), Expr::zero(), p("1/(1+r^2)").unwrap(), Expr::var("x")],
        );
        assert!(w.d().d().simplify().is_structurally_zero());
        assert!(Form::dx(&c, 0).d().is_structurally_zero());
    }

    #[test]
    fn lie_and_interior() {
        let c = chart5();
        let dx = Form::dx(&c, 0);
        let ddx = VectorField::coordinate(&c, 0);
        assert!(dx.lie(&ddx).is_structurally_zero());
        assert_eq!(dx.pair(&ddx), Expr::one());
        // L_{d/dp}(dz - p dx - p^2/4 dy) = -dx - p/2 dy
        let w1 = Form::one_form(&c, vec![-Expr::var("p"), p("-p^2/4").unwrap(), Expr::one(), Expr::zero(), Expr::zero()]);
        let l = w1.lie(&VectorField::coordinate(&c, 3));
        assert_eq!(l.coeff(&[0]), Expr::int(-1));
        assert_eq!(l.coeff(&[1]), p("-p/2").unwrap());
    }

    #[test]
    fn brackets() {
        let c = chart5();
        let dx = VectorField::coordinate(&c, 0);
        let dy = VectorField::coordinate(&c, 1);
        assert!(dx.bracket(&dy).comps().iter().all(|e| e.is_zero()));
        let x = VectorField::new(&c, vec![Expr::var("y"), Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero()]);
        let b = dy.bracket(&x);
        assert_eq!(b.comp(0), &Expr::one());
    }

    #[test]
    fn coordinate_dual_frame() {
        let c = chart5();
        let forms: Vec<Form> = (0..5).map(|i| Form::dx(&c, i)).collect();
        let cf = CoframeSet::new(forms, &ZeroTestProtocol::default()).unwrap();
        for (j, x) in cf.dual_frame().iter().enumerate() {
            assert_eq!(x, &VectorField::coordinate(&c, j));
        }
        assert_eq!(cf.coframe_derivatives(&Expr::var("x"))[0], Expr::one());
    }

    #[test]
    fn singular_coframe_rejected() {
        let c = chart5();
        let mut forms: Vec<Form> = (0..4).map(|i| Form::dx(&c, i)).collect();
        forms.push(Form::dx(&c, 0).scale(&Expr::var("y")));
        assert!(matches!(
            CoframeSet::new(forms, &ZeroTestProtocol::default()),
            Err(ExteriorError::Singular)
        ));
    }

    #[test]
    fn chart_validation() {
        assert!(CoordChart::new(&["x", "x"]).is_err());
        assert!(CoordChart::new::<&str>(&[]).is_err());
    }
}

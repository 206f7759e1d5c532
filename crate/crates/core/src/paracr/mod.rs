//! PDE pairs `z_y = F`, `z_xxx = H` and the para-CR structures they define.

mod levi;
mod pairfile;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{
    is_identically_zero, parse_expression, Certificate, Expr, ParseError, SampleBox, ZeroTestError,
    ZeroTestProtocol,
};
use crate::exterior::{CoframeSet, CoordChart, ExteriorError, Form};

pub use levi::{levi_matrix, two_nondegeneracy, LeviReport, LeviSide, SolutionManifold, TwoNondegeneracy};
pub use pairfile::{parse_pair_file, PairFile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParacrError {
    #[error("F depends on r")]
    FDependsOnR,
    #[error("F_pp vanishes identically")]
    DegenerateFpp,
    #[error("pair is not admissible: {0}")]
    Inadmissible(String),
    #[error("{0} vanishes identically")]
    DegenerateSolution(&'static str),
    #[error("flat branch with nonvanishing I1")]
    InconsistentFlat,
    #[error("line {line}: {message}")]
    PairFile { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// Reparametrization of the `p` coordinate: `p = P(t)` for a chart
/// variable `t`, so that `d/dp = (1/P'(t)) d/dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct PChart {
    pub var: String,
    pub p_of: Expr,
    dp_dvar: Expr,
}

impl PChart {
    pub fn new(var: &str, p_of: Expr) -> PChart {
        let dp_dvar = p_of.diff(var);
        PChart {
            var: var.to_string(),
            p_of,
            dp_dvar,
        }
    }
}

/// A free parameter and its open domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamDomain {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

/// The defining data `(F, H)` over the jet chart `(x, y, z, p, r)`.
#[derive(Clone, Debug)]
pub struct PdePair {
    f: Expr,
    h: Expr,
    p_chart: Option<PChart>,
    params: Vec<ParamDomain>,
    sample_box: SampleBox,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub certificate: Certificate,
}

impl Check {
    fn zero(e: &Expr, proto: &ZeroTestProtocol) -> Result<Check, ZeroTestError> {
        let v = is_identically_zero(e, proto)?;
        Ok(Check {
            holds: v.zero,
            certificate: v.certificate,
        })
    }

    fn nonzero(e: &Expr, proto: &ZeroTestProtocol) -> Result<Check, ZeroTestError> {
        let v = is_identically_zero(e, proto)?;
        Ok(Check {
            holds: !v.zero,
            certificate: v.certificate,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub f_r_zero: Check,
    pub f_pp_nonzero: Check,
    pub integrable: Check,
    /// `D^3 F - Delta H`, simplified.
    pub residual: Expr,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.f_r_zero.holds && self.f_pp_nonzero.holds && self.integrable.holds
    }

    fn failure(&self) -> String {
        let mut v = Vec::new();
        if !self.f_r_zero.holds {
            v.push("F_r != 0");
        }
        if !self.f_pp_nonzero.holds {
            v.push("F_pp = 0");
        }
        if !self.integrable.holds {
            v.push("D^3 F != Delta H");
        }
        v.join(", ")
    }
}

/// Relative invariants of an admissible pair.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantBundle {
    pub a: Expr,
    pub b: Expr,
    pub c: Expr,
    pub c4: Expr,
    pub c5: Expr,
    pub c_tilde: Expr,
    pub i1: Expr,
    pub i2: Expr,
    pub i3: Expr,
}

impl InvariantBundle {
    /// `A - 27 I1`, `B - 27 I2`, `C - 3 I3`.
    pub fn cross_relations(&self) -> [Expr; 3] {
        [
            (&self.a - Expr::int(27) * &self.i1).simplify(),
            (&self.b - Expr::int(27) * &self.i2).simplify(),
            (&self.c - Expr::int(3) * &self.i3).simplify(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "branch")]
pub enum BranchLabel {
    Flat,
    NonflatI3 { eps: Option<i8> },
    NonflatI2 { eps: Option<i8> },
    Inadmissible,
}

impl BranchLabel {
    pub fn name(&self) -> &'static str {
        match self {
            BranchLabel::Flat => "Flat",
            BranchLabel::NonflatI3 { .. } => "NonflatI3",
            BranchLabel::NonflatI2 { .. } => "NonflatI2",
            BranchLabel::Inadmissible => "Inadmissible",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub branch: BranchLabel,
    /// Zero-test outcomes of the decisive invariants, keyed by name.
    pub witnesses: BTreeMap<String, Check>,
}

const BASE: [&str; 5] = ["x", "y", "z", "p", "r"];

impl PdePair {
    /// Construct and check `F_r = 0`, `F_pp != 0` on the default box.
    pub fn new(f: Expr, h: Expr) -> Result<PdePair, ParacrError> {
        let pair = PdePair::unchecked(f, h);
        pair.check_structure(&ZeroTestProtocol::default().with_box(pair.sample_box.clone()))?;
        Ok(pair)
    }

    /// Construct without any checks.
    pub fn unchecked(f: Expr, h: Expr) -> PdePair {
        PdePair {
            f,
            h,
            p_chart: None,
            params: Vec::new(),
            sample_box: PdePair::default_box(),
        }
    }

    pub fn parse(f: &str, h: &str) -> Result<PdePair, ParacrError> {
        PdePair::new(parse_expression(f)?, parse_expression(h)?)
    }

    /// A pair whose `p` coordinate is replaced by `P(var)`; `f` and `h` are
    /// written in terms of `var`.
    pub fn with_p_chart(f: Expr, h: Expr, chart: PChart) -> PdePair {
        let mut pair = PdePair::unchecked(f, h);
        pair.p_chart = Some(chart);
        pair
    }

    /// `x, y, z` in [-1, 1]; `p, r` in [1/2, 2].
    pub fn default_box() -> SampleBox {
        SampleBox::default().with("p", 0.5, 2.0).with("r", 0.5, 2.0)
    }

    pub fn with_box(mut self, b: SampleBox) -> PdePair {
        self.sample_box = b;
        self
    }

    pub fn with_param(mut self, name: &str, lo: f64, hi: f64) -> PdePair {
        self.sample_box.set(name, lo, hi);
        self.params.push(ParamDomain {
            name: name.to_string(),
            lo,
            hi,
        });
        self
    }

    pub fn sample_box(&self) -> &SampleBox {
        &self.sample_box
    }

    pub fn params(&self) -> &[ParamDomain] {
        &self.params
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn h(&self) -> &Expr {
        &self.h
    }

    pub fn p_chart(&self) -> Option<&PChart> {
        self.p_chart.as_ref()
    }

    /// The given protocol restricted to this pair's sampling box.
    pub fn protocol(&self, base: &ZeroTestProtocol) -> ZeroTestProtocol {
        let mut b = base.sample_box.clone();
        for (k, v) in &self.sample_box.ranges {
            b.ranges.insert(k.clone(), *v);
        }
        base.clone().with_box(b)
    }

    /// Name of the fourth chart coordinate.
    pub fn p_name(&self) -> &str {
        self.p_chart.as_ref().map_or("p", |c| c.var.as_str())
    }

    pub fn chart(&self) -> CoordChart {
        let mut names: Vec<&str> = BASE.to_vec();
        names[3] = self.p_name();
        CoordChart::new(&names).expect("distinct names")
    }

    /// `p` as a function on the chart.
    pub fn p(&self) -> Expr {
        match &self.p_chart {
            Some(c) => c.p_of.clone(),
            None => Expr::var("p"),
        }
    }

    pub fn dp(&self, e: &Expr) -> Expr {
        match &self.p_chart {
            Some(c) => {
                if e.depends_on(&c.var) {
                    e.diff(&c.var) / &c.dp_dvar
                } else {
                    Expr::zero()
                }
            }
            None => e.diff("p"),
        }
    }

    /// `D = d/dx + p d/dz + r d/dp + H d/dr`.
    pub fn total_d(&self, e: &Expr) -> Expr {
        Expr::sum([
            e.diff("x"),
            self.p() * e.diff("z"),
            Expr::var("r") * self.dp(e),
            &self.h * e.diff("r"),
        ])
    }

    /// `Delta = d/dy + F d/dz + DF d/dp + D^2F d/dr`.
    pub fn total_delta(&self, e: &Expr) -> Expr {
        let df = self.total_d(&self.f);
        let ddf = self.total_d(&df);
        Expr::sum([e.diff("y"), &self.f * e.diff("z"), df * self.dp(e), ddf * e.diff("r")])
    }

    pub fn integrability_residual(&self) -> Expr {
        let d3 = self.total_d(&self.total_d(&self.total_d(&self.f)));
        (d3 - self.total_delta(&self.h)).simplify()
    }

    fn check_structure(&self, proto: &ZeroTestProtocol) -> Result<(), ParacrError> {
        if !is_identically_zero(&self.f.diff("r"), proto)?.zero {
            return Err(ParacrError::FDependsOnR);
        }
        if is_identically_zero(&self.dp(&self.dp(&self.f)).simplify(), proto)?.zero {
            return Err(ParacrError::DegenerateFpp);
        }
        Ok(())
    }

    pub fn check_admissibility(&self, proto: &ZeroTestProtocol) -> Result<AdmissibilityReport, ParacrError> {
        let proto = self.protocol(proto);
        let residual = self.integrability_residual();
        Ok(AdmissibilityReport {
            f_r_zero: Check::zero(&self.f.diff("r"), &proto)?,
            f_pp_nonzero: Check::nonzero(&self.dp(&self.dp(&self.f)).simplify(), &proto)?,
            integrable: Check::zero(&residual, &proto)?,
            residual,
        })
    }

    fn require_admissible(&self, proto: &ZeroTestProtocol) -> Result<(), ParacrError> {
        let rep = self.check_admissibility(proto)?;
        if rep.admissible() {
            Ok(())
        } else {
            Err(ParacrError::Inadmissible(rep.failure()))
        }
    }

    /// The five one-forms `dz - p dx - F dy`, `dp - r dx - DF dy`,
    /// `dr - H dx - D^2F dy`, `dx`, `dy`.
    pub fn initial_forms(&self) -> Vec<Form> {
        let ch = self.chart();
        let df = self.total_d(&self.f);
        let ddf = self.total_d(&df);
        let dp = Form::differential(&ch, &self.p());
        let mk = |lead: Form, cx: Expr, cy: Expr| {
            lead.sub(&Form::one_form(&ch, vec![cx, cy, Expr::zero(), Expr::zero(), Expr::zero()]))
        };
        vec![
            mk(Form::dx(&ch, 2), self.p(), self.f.clone()),
            mk(dp, Expr::var("r"), df),
            mk(Form::dx(&ch, 4), self.h.clone(), ddf),
            Form::dx(&ch, 0),
            Form::dx(&ch, 1),
        ]
    }

    pub fn initial_coframe(&self, proto: &ZeroTestProtocol) -> Result<CoframeSet, ParacrError> {
        Ok(CoframeSet::new(self.initial_forms(), &self.protocol(proto))?)
    }

    /// The differentials of the initial coframe expressed through the
    /// coframe itself, as predicted by the structure equations.
    pub fn expected_initial_differentials(&self) -> Vec<Form> {
        let w = self.initial_forms();
        let ww = |i: usize, j: usize| w[i].wedge(&w[j]);
        let d = |e: &Expr| self.total_d(e);
        let f_z = self.f.diff("z");
        let f_p = self.dp(&self.f);
        let h_z = self.h.diff("z");
        let h_p = self.dp(&self.h);
        let h_r = self.h.diff("r");
        let df_p = d(&f_p);
        let df_z = d(&f_z);
        let ch = self.chart();
        let lin = |terms: Vec<(Expr, Form)>| {
            let scaled: Vec<Form> = terms.iter().map(|(c, f)| f.scale(c)).collect();
            Form::sum(&ch, 2, scaled.iter())
        };
        let m1 = -Expr::one();
        let w3_25 = Expr::frac(1, 3)
            * Expr::sum([
                &df_p * &h_r,
                Expr::int(-3) * &df_z,
                -self.total_delta(&h_r),
                d(&h_r) * &f_p,
                Expr::int(-3) * &f_p * &h_p,
            ]);
        vec![
            lin(vec![(-&f_z, ww(0, 4)), (m1.clone(), ww(1, 3)), (-&f_p, ww(1, 4))]),
            lin(vec![
                (-&df_z, ww(0, 4)),
                (-(&df_p + &f_z), ww(1, 4)),
                (m1.clone(), ww(2, 3)),
                (-&f_p, ww(2, 4)),
            ]),
            lin(vec![
                (-&h_z, ww(0, 3)),
                (-(d(&df_z) + &f_p * &h_z), ww(0, 4)),
                (-&h_p, ww(1, 3)),
                (w3_25, ww(1, 4)),
                (-&h_r, ww(2, 3)),
                (-(Expr::int(2) * &df_p + &f_z + &f_p * &h_r), ww(2, 4)),
            ]),
            Form::zero(&ch, 2),
            Form::zero(&ch, 2),
        ]
    }

    /// The invariants `A, B, C, C~` and `I1, I2, I3`.
    pub fn invariants(&self, proto: &ZeroTestProtocol) -> Result<InvariantBundle, ParacrError> {
        self.require_admissible(proto)?;
        let proto = self.protocol(proto);
        let d = |e: &Expr| self.total_d(e);
        let h = &self.h;
        let h_r = h.diff("r");
        let h_p = self.dp(h);
        let h_z = h.diff("z");
        let dh_r = d(&h_r);
        let a_core = Expr::sum([
            Expr::int(9) * d(&dh_r),
            Expr::int(-27) * d(&h_p),
            Expr::int(-18) * &dh_r * &h_r,
            Expr::int(18) * &h_p * &h_r,
            Expr::int(4) * h_r.powi(3),
            Expr::int(54) * &h_z,
        ]);
        let fp = self.dp(&self.f).simplify();
        let fpp = self.dp(&fp).simplify();
        let fppp = self.dp(&fpp).simplify();
        let fpppp = self.dp(&fppp).simplify();
        let fppppp = self.dp(&fpppp).simplify();
        let b_core = Expr::sum([
            Expr::int(40) * fppp.powi(3),
            Expr::int(-45) * &fpp * &fppp * &fpppp,
            Expr::int(9) * fpp.powi(2) * &fppppp,
        ]);
        let fpp3 = fpp.powi(3);
        let c = ((Expr::int(2) * &fppp + &fpp * h_r.diff("r")) / &fpp).simplify();
        let cf = self.initial_coframe(&proto)?;
        let derivs = cf.coframe_derivatives(&c);
        let c4 = derivs[3].clone();
        let c5 = derivs[4].clone();
        let c_tilde = (((d(&fp) + self.f.diff("z")) * &c - &fp * &c4 + &c5) / (Expr::int(2) * &fpp)).simplify();
        Ok(InvariantBundle {
            a: (Expr::frac(-1, 2) * &a_core).simplify(),
            b: (&b_core / (Expr::int(2) * &fpp3)).simplify(),
            i1: (Expr::frac(-1, 54) * &a_core).simplify(),
            i2: (&b_core / (Expr::int(54) * &fpp3)).simplify(),
            i3: (&c / Expr::int(3)).simplify(),
            c,
            c4,
            c5,
            c_tilde,
        })
    }

    /// `eps = -sgn(r)` when `r` has constant sign on the box.
    pub fn epsilon(&self, proto: &ZeroTestProtocol) -> Option<i8> {
        let proto = self.protocol(proto);
        let mut sign = None;
        for pt in proto.points(&["r"]) {
            let r = pt.get("r").unwrap_or(0.0);
            if r == 0.0 {
                return None;
            }
            let s = if r > 0.0 { -1 } else { 1 };
            match sign {
                None => sign = Some(s),
                Some(t) if t != s => return None,
                _ => {}
            }
        }
        sign
    }

    pub fn classify(&self, proto: &ZeroTestProtocol) -> Result<Classification, ParacrError> {
        let adm = self.check_admissibility(proto)?;
        if !adm.admissible() {
            return Ok(Classification {
                branch: BranchLabel::Inadmissible,
                witnesses: BTreeMap::new(),
            });
        }
        let inv = self.invariants(proto)?;
        let p = self.protocol(proto);
        let mut witnesses = BTreeMap::new();
        let eps = self.epsilon(proto);
        let i3 = Check::zero(&inv.i3, &p)?;
        let i3_zero = i3.holds;
        witnesses.insert("I3".to_string(), i3);
        if !i3_zero {
            return Ok(Classification {
                branch: BranchLabel::NonflatI3 { eps },
                witnesses,
            });
        }
        let i2 = Check::zero(&inv.i2, &p)?;
        let i2_zero = i2.holds;
        witnesses.insert("I2".to_string(), i2);
        if !i2_zero {
            return Ok(Classification {
                branch: BranchLabel::NonflatI2 { eps },
                witnesses,
            });
        }
        let i1 = Check::zero(&inv.i1, &p)?;
        if !i1.holds {
            return Err(ParacrError::InconsistentFlat);
        }
        witnesses.insert("I1".to_string(), i1);
        Ok(Classification {
            branch: BranchLabel::Flat,
            witnesses,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression as p;

    fn proto() -> ZeroTestProtocol {
        ZeroTestProtocol::default()
    }

    #[test]
    fn total_derivatives() {
        let pair = PdePair::parse("p^2/4", "r^3").unwrap();
        assert_eq!(pair.total_d(&Expr::var("z")), Expr::var("p"));
        assert_eq!(pair.total_d(&Expr::var("r")), p("r^3").unwrap());
        assert_eq!(pair.total_d(pair.f()), p("p*r/2").unwrap());
        let dd = pair.total_d(&pair.total_d(pair.f())).simplify();
        assert_eq!(dd, p("r^2/2 + p*r^3/2").unwrap().simplify());
        assert_eq!(pair.total_delta(&Expr::var("z")), p("p^2/4").unwrap());
    }

    #[test]
    fn construction_checks() {
        assert_eq!(PdePair::parse("r*p^2", "0").unwrap_err(), ParacrError::FDependsOnR);
        assert_eq!(PdePair::parse("p/4", "0").unwrap_err(), ParacrError::DegenerateFpp);
    }

    #[test]
    fn admissibility() {
        let flat = PdePair::parse("p^2/4", "0").unwrap();
        assert!(flat.check_admissibility(&proto()).unwrap().admissible());
        let bad = PdePair::parse("p^2/4", "r").unwrap();
        let rep = bad.check_admissibility(&proto()).unwrap();
        assert!(!rep.integrable.holds && rep.f_pp_nonzero.holds);
    }

    #[test]
    fn flat_invariants_vanish() {
        let flat = PdePair::parse("p^2/4", "0").unwrap();
        let inv = flat.invariants(&proto()).unwrap();
        assert!(inv.i1.is_zero() && inv.i2.is_zero() && inv.i3.is_zero());
        assert_eq!(flat.classify(&proto()).unwrap().branch, BranchLabel::Flat);
    }
}

//! The homogeneous models: charts, coframes, transformation matrices and
//! their target structure equations.

mod implicit;
mod smap;
mod structure;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{
    is_identically_zero, parse_with_constants, rat_from_f64, Expr, ParseError, Rat, SampleBox, ZeroTestError,
    ZeroTestProtocol,
};
use crate::exterior::{det_numeric, CoframeSet, CoordChart, ExteriorError, Form, FormCheck};
use crate::paracr::{PChart, ParacrError, PdePair};

pub use implicit::{iiib_implicit_check, ImplicitReport};
pub use smap::{s_expr, s_of_b, s_threshold, SValue};
pub use structure::{JacobiFailure, JacobiReport, StructureConstants};

const CATALOG_TEXT: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("unknown model '{0}' (expected flat, ii, iiia or iiib)")]
    UnknownModel(String),
    #[error("model {model}: b = {b} outside {expected}")]
    Domain {
        model: ModelId,
        b: f64,
        expected: &'static str,
    },
    #[error("model {0} has no parameter")]
    NoParameter(ModelId),
    #[error("model {0} has no s(b) map")]
    NoSMap(ModelId),
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i64),
    #[error("cannot determine epsilon: r changes sign on the box")]
    UndeterminedEpsilon,
    #[error("catalog: {0}")]
    Catalog(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Paracr(#[from] ParacrError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Flat,
    Ii,
    Iiia,
    Iiib,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [ModelId::Flat, ModelId::Ii, ModelId::Iiia, ModelId::Iiib];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Flat => "flat",
            ModelId::Ii => "ii",
            ModelId::Iiia => "iiia",
            ModelId::Iiib => "iiib",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<ModelId, ModelError> {
        match s.to_ascii_lowercase().as_str() {
            "flat" | "i" => Ok(ModelId::Flat),
            "ii" => Ok(ModelId::Ii),
            "iiia" => Ok(ModelId::Iiia),
            "iiib" => Ok(ModelId::Iiib),
            _ => Err(ModelError::UnknownModel(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Flat,
    Homo1,
    Homo2,
}

#[derive(Debug, Deserialize)]
struct RawCatalog {
    version: u32,
    models: Vec<RawModel>,
}

#[derive(Debug, Deserialize)]
struct RawParam {
    name: String,
    lo: f64,
    hi: Option<f64>,
    default: String,
}

#[derive(Debug, Deserialize)]
struct RawPChart {
    var: String,
    p: String,
    #[serde(rename = "box")]
    range: (f64, f64),
}

#[derive(Debug, Deserialize)]
struct RawPair {
    #[serde(default)]
    defs: Vec<(String, String)>,
    p_chart: Option<RawPChart>,
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "H")]
    h: String,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawCoframe {
    Named(String),
    Rows(Vec<Vec<String>>),
}

#[derive(Debug, Deserialize)]
struct RawModel {
    id: ModelId,
    description: String,
    chart: Vec<String>,
    #[serde(rename = "box")]
    sample_box: std::collections::BTreeMap<String, (f64, f64)>,
    param: Option<RawParam>,
    #[serde(default)]
    defs: Vec<(String, String)>,
    pair: Option<RawPair>,
    coframe: RawCoframe,
    s_matrix: Option<Vec<Vec<String>>>,
    s11_uncorrected: Option<String>,
    eps: Option<i8>,
    target: Target,
}

fn raw_catalog() -> Result<&'static RawCatalog, ModelError> {
    static CATALOG: OnceLock<Result<RawCatalog, String>> = OnceLock::new();
    CATALOG
        .get_or_init(|| {
            let c: RawCatalog = serde_json::from_str(CATALOG_TEXT).map_err(|e| e.to_string())?;
            if c.version != 1 {
                return Err(format!("unsupported catalog version {}", c.version));
            }
            Ok(c)
        })
        .as_ref()
        .map_err(|e| ModelError::Catalog(e.clone()))
}

/// The catalog file as shipped.
pub fn catalog_text() -> &'static str {
    CATALOG_TEXT
}

/// A catalog entry instantiated at a parameter value.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub id: ModelId,
    pub description: String,
    pub b: Option<Rat>,
    pub chart: CoordChart,
    pub sample_box: SampleBox,
    pub pair: Option<PdePair>,
    /// The coframe `omega` on `chart`.
    pub coframe: Vec<Form>,
    /// `S` with the symbol `eps` left free; `None` is the identity.
    pub s_matrix: Option<Vec<Vec<Expr>>>,
    /// The uncorrected `(1,1)` entry for `iiib`, kept as a negative control.
    pub s11_uncorrected: Option<Expr>,
    pub target: Target,
    fixed_eps: Option<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub check: FormCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub model: ModelId,
    pub b: Option<f64>,
    pub eps: Option<i8>,
    pub s: Option<f64>,
    pub samples: usize,
    pub tolerance: f64,
    /// `d theta^k - sum c^k_ij theta^i ^ theta^j`, per `k`.
    pub residuals: Vec<FormCheck>,
    /// `d d theta^k`, per `k`.
    pub dd: Vec<FormCheck>,
    /// Smallest `|det|` of the coefficient matrix of `theta` over the samples.
    pub min_abs_det: f64,
    pub g0_pattern: bool,
    /// `S22 * S44 > 0` at every sample.
    pub rho_positive: bool,
    pub extras: Vec<NamedCheck>,
    pub passed: bool,
}

/// Zero positions of the structure group block pattern.
pub const G0_ZEROS: [(usize, usize); 12] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 1),
    (3, 2),
    (4, 1),
    (4, 2),
];

impl ModelSpec {
    /// Instantiate a catalog entry; `b` defaults to the catalog value.
    pub fn load(id: ModelId, b: Option<Rat>) -> Result<ModelSpec, ModelError> {
        let cat = raw_catalog()?;
        let raw = cat
            .models
            .iter()
            .find(|m| m.id == id)
            .ok_or_else(|| ModelError::Catalog(format!("missing entry {id}")))?;
        let mut bindings: HashMap<String, Expr> = HashMap::new();
        let b = match (&raw.param, b) {
            (None, Some(_)) => return Err(ModelError::NoParameter(id)),
            (None, None) => None,
            (Some(p), b) => {
                let b = match b {
                    Some(b) => b,
                    None => parse_with_constants(&p.default, &bindings)?
                        .as_num()
                        .cloned()
                        .ok_or_else(|| ModelError::Catalog("non-numeric default".into()))?,
                };
                let bf = b.to_f64().unwrap_or(f64::NAN);
                if !(bf > p.lo && p.hi.map_or(true, |h| bf < h)) {
                    return Err(ModelError::Domain {
                        model: id,
                        b: bf,
                        expected: smap::domain_text(id, false),
                    });
                }
                bindings.insert(p.name.clone(), Expr::num(b.clone()));
                Some(b)
            }
        };
        let chart = CoordChart::new(&raw.chart)?;
        let mut sample_box = SampleBox::default();
        for (k, (lo, hi)) in &raw.sample_box {
            sample_box.set(k, *lo, *hi);
        }
        let pair = match &raw.pair {
            None => None,
            Some(rp) => {
                let mut pb = bindings.clone();
                for (name, text) in &rp.defs {
                    let e = parse_with_constants(text, &pb)?;
                    pb.insert(name.clone(), e);
                }
                let f = parse_with_constants(&rp.f, &pb)?;
                let h = parse_with_constants(&rp.h, &pb)?;
                let pair = match &rp.p_chart {
                    Some(c) => {
                        let p_of = parse_with_constants(&c.p, &pb)?;
                        let mut bx = PdePair::default_box();
                        bx.set(&c.var, c.range.0, c.range.1);
                        PdePair::with_p_chart(f, h, PChart::new(&c.var, p_of)).with_box(bx)
                    }
                    None => PdePair::new(f, h)?,
                };
                Some(pair)
            }
        };
        for (name, text) in &raw.defs {
            let e = parse_with_constants(text, &bindings)?;
            bindings.insert(name.clone(), e);
        }
        let rows = |m: &Vec<Vec<String>>| -> Result<Vec<Vec<Expr>>, ModelError> {
            m.iter()
                .map(|row| row.iter().map(|t| Ok(parse_with_constants(t, &bindings)?)).collect())
                .collect()
        };
        let coframe = match &raw.coframe {
            RawCoframe::Named(n) if n == "initial" => {
                let pair = pair
                    .as_ref()
                    .ok_or_else(|| ModelError::Catalog(format!("{id}: initial coframe without a pair")))?;
                pair.initial_forms()
            }
            RawCoframe::Named(n) => return Err(ModelError::Catalog(format!("unknown coframe '{n}'"))),
            RawCoframe::Rows(r) => rows(r)?
                .into_iter()
                .map(|row| Form::one_form(&chart, row))
                .collect(),
        };
        let s_matrix = raw.s_matrix.as_ref().map(rows).transpose()?;
        let s11_uncorrected = raw
            .s11_uncorrected
            .as_ref()
            .map(|t| parse_with_constants(t, &bindings))
            .transpose()?;
        Ok(ModelSpec {
            id,
            description: raw.description.clone(),
            b,
            chart,
            sample_box,
            pair,
            coframe,
            s_matrix,
            s11_uncorrected,
            target: raw.target,
            fixed_eps: raw.eps,
        })
    }

    /// Load with a floating-point `b`, converted to the nearest short rational.
    pub fn load_f64(id: ModelId, b: Option<f64>) -> Result<ModelSpec, ModelError> {
        let b = match b {
            Some(v) => Some(rat_from_f64(v).ok_or(ModelError::Domain {
                model: id,
                b: v,
                expected: smap::domain_text(id, false),
            })?),
            None => None,
        };
        ModelSpec::load(id, b)
    }

    pub fn b_f64(&self) -> Option<f64> {
        self.b.as_ref().and_then(|b| b.to_f64())
    }

    /// The protocol restricted to this model's box.
    pub fn protocol(&self, base: &ZeroTestProtocol) -> ZeroTestProtocol {
        let mut b = base.sample_box.clone();
        for (k, v) in &self.sample_box.ranges {
            b.ranges.insert(k.clone(), *v);
        }
        base.clone().with_box(b)
    }

    /// The coframe with its independence checked.
    pub fn model_coframe(&self, proto: &ZeroTestProtocol) -> Result<CoframeSet, ModelError> {
        Ok(CoframeSet::new(self.coframe.clone(), &self.protocol(proto))?)
    }

    /// `eps = -sgn(r)` on the box, or the catalog's fixed value.
    pub fn default_eps(&self, proto: &ZeroTestProtocol) -> Result<Option<i8>, ModelError> {
        if self.target == Target::Flat {
            return Ok(None);
        }
        if let Some(e) = self.fixed_eps {
            return Ok(Some(e));
        }
        let r = self.sample_box.range("r");
        let e = if r.0 > 0.0 {
            -1
        } else if r.1 < 0.0 {
            1
        } else {
            return Err(ModelError::UndeterminedEpsilon);
        };
        if let Some(pair) = &self.pair {
            debug_assert_eq!(pair.epsilon(&self.protocol(proto)), Some(e));
        }
        Ok(Some(e))
    }

    pub fn s_value(&self) -> Result<Option<Expr>, ModelError> {
        match (self.target, &self.b) {
            (Target::Homo2, Some(b)) => Ok(Some(s_expr(self.id, b)?)),
            _ => Ok(None),
        }
    }

    pub fn target_structure(&self, eps: Option<i8>) -> Result<StructureConstants, ModelError> {
        target_structure(self.target, eps, self.s_value()?.as_ref())
    }

    /// `S` with `eps` substituted.
    pub fn s_at(&self, eps: Option<i8>) -> Option<Vec<Vec<Expr>>> {
        let e = Expr::int(eps.unwrap_or(1) as i64);
        self.s_matrix.as_ref().map(|m| {
            m.iter()
                .map(|row| row.iter().map(|x| x.substitute_one("eps", &e)).collect())
                .collect()
        })
    }

    /// `theta = S omega` for the given `S`.
    pub fn theta_with(&self, s: Option<&[Vec<Expr>]>) -> Vec<Form> {
        match s {
            None => self.coframe.clone(),
            Some(s) => s
                .iter()
                .map(|row| {
                    let mut acc = Form::zero(&self.chart, 1);
                    for (c, w) in row.iter().zip(&self.coframe) {
                        if !c.is_zero() {
                            acc = acc.add(&w.scale(c));
                        }
                    }
                    acc.simplify()
                })
                .collect(),
        }
    }

    pub fn theta(&self, eps: Option<i8>) -> Vec<Form> {
        self.theta_with(self.s_at(eps).as_deref())
    }

    /// Realization check with `eps` defaulting to the model's rule.
    pub fn verify_realization(
        &self,
        eps: Option<i8>,
        proto: &ZeroTestProtocol,
    ) -> Result<RealizationReport, ModelError> {
        let eps = match eps {
            Some(e) if e != 1 && e != -1 => return Err(ModelError::BadEpsilon(e as i64)),
            Some(e) if self.target != Target::Flat => Some(e),
            _ => self.default_eps(proto)?,
        };
        self.verify_with(eps, self.s_at(eps), proto)
    }

    /// The realization check with the uncorrected `(1,1)` entry of `S` in place;
    /// `None` when the model has no uncorrected variant.
    pub fn verify_uncorrected_s11(
        &self,
        eps: Option<i8>,
        proto: &ZeroTestProtocol,
    ) -> Result<Option<RealizationReport>, ModelError> {
        let Some(p) = &self.s11_uncorrected else { return Ok(None) };
        let eps = match eps {
            Some(e) => Some(e),
            None => self.default_eps(proto)?,
        };
        let mut s = self.s_at(eps).expect("uncorrected entry implies S");
        s[0][0] = p.substitute_one("eps", &Expr::int(eps.unwrap_or(1) as i64));
        self.verify_with(eps, Some(s), proto).map(Some)
    }

    fn verify_with(
        &self,
        eps: Option<i8>,
        s: Option<Vec<Vec<Expr>>>,
        proto: &ZeroTestProtocol,
    ) -> Result<RealizationReport, ModelError> {
        let proto = self.protocol(proto);
        let sc = self.target_structure(eps)?;
        let theta = self.theta_with(s.as_deref());
        let results: Vec<Result<(FormCheck, FormCheck), ZeroTestError>> = (0..5)
            .into_par_iter()
            .map(|k| {
                let dt = theta[k].d();
                let res = dt.sub(&sc.rhs(k, &theta)).simplify();
                Ok((res.check_zero(&proto)?, dt.d().check_zero(&proto)?))
            })
            .collect();
        let mut residuals = Vec::new();
        let mut dd = Vec::new();
        for r in results {
            let (a, b) = r?;
            residuals.push(a);
            dd.push(b);
        }
        let (min_abs_det, rho_positive) = self.sample_det(&theta, s.as_deref(), &proto)?;
        let g0_pattern = match &s {
            None => true,
            Some(s) => G0_ZEROS.iter().all(|&(i, j)| s[i][j].is_zero()),
        };
        let mut extras = Vec::new();
        if self.target == Target::Flat {
            extras = self.flat_extras(&proto)?;
        }
        let passed = residuals.iter().chain(&dd).all(|c| c.zero)
            && min_abs_det > 0.0
            && g0_pattern
            && rho_positive
            && extras.iter().all(|c| c.check.zero);
        let s_val = self
            .s_value()?
            .and_then(|e| e.eval_f64(&Default::default()).ok());
        Ok(RealizationReport {
            model: self.id,
            b: self.b_f64(),
            eps,
            s: s_val,
            samples: proto.samples,
            tolerance: proto.tolerance,
            residuals,
            dd,
            min_abs_det,
            g0_pattern,
            rho_positive,
            extras,
            passed,
        })
    }

    fn sample_det(
        &self,
        theta: &[Form],
        s: Option<&[Vec<Expr>]>,
        proto: &ZeroTestProtocol,
    ) -> Result<(f64, bool), ModelError> {
        let rows: Vec<Vec<Expr>> = theta.iter().map(|t| t.one_form_row()).collect();
        let mut min_det = f64::INFINITY;
        let mut rho = true;
        for pt in proto.points(self.chart.names()) {
            let m: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| r.iter().map(|e| e.eval_f64(&pt)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()
                .map_err(|e| ModelError::Exterior(ExteriorError::Eval(e)))?;
            let scale: f64 = m
                .iter()
                .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
                .product();
            let d = det_numeric(&m);
            min_det = min_det.min(if d.abs() <= 1e-12 * scale { 0.0 } else { d.abs() });
            if let Some(s) = s {
                let v = (&s[1][1] * &s[3][3])
                    .eval_f64(&pt)
                    .map_err(|e| ModelError::Exterior(ExteriorError::Eval(e)))?;
                rho &= v > 0.0;
            }
        }
        Ok((min_det, rho))
    }

    /// `d(r omega^5) = -omega^3 ^ omega^5` and the Levi-degenerate normal form.
    fn flat_extras(&self, proto: &ZeroTestProtocol) -> Result<Vec<NamedCheck>, ModelError> {
        let w = &self.coframe;
        let r = Expr::var("r");
        let varpi = w[4].scale(&r).d().add(&w[2].wedge(&w[4]));
        let levi = w[0].d().wedge(&w[0]).sub(&Form::wedge_all(&[&w[1], &w[3], &w[0]]));
        let nondeg = w[3].d().wedge(&w[0]).wedge(&w[3]);
        let nondeg_check = nondeg.check_zero(proto)?;
        Ok(vec![
            NamedCheck {
                name: "d(varpi2) + omega3^omega5".into(),
                check: varpi.simplify().check_zero(proto)?,
            },
            NamedCheck {
                name: "domega1^omega1 - omega2^omega4^omega1".into(),
                check: levi.simplify().check_zero(proto)?,
            },
            NamedCheck {
                name: "domega4^omega1^omega4 != 0".into(),
                check: FormCheck {
                    zero: !nondeg_check.zero,
                    failing: nondeg_check.zero.then(|| "vanishes identically".to_string()),
                    ..nondeg_check
                },
            },
        ])
    }
}

/// Target constants for a branch. `s` is required for `Homo2`; a missing
/// value leaves the symbol `s` free.
pub fn target_structure(target: Target, eps: Option<i8>, s: Option<&Expr>) -> Result<StructureConstants, ModelError> {
    let e = match eps {
        Some(e) if e == 1 || e == -1 => Expr::int(e as i64),
        Some(e) => return Err(ModelError::BadEpsilon(e as i64)),
        None => Expr::var("eps"),
    };
    Ok(match target {
        Target::Flat => StructureConstants::flat(&Expr::var("r")),
        Target::Homo1 => StructureConstants::homo1(&e),
        Target::Homo2 => StructureConstants::homo2(&e, &s.cloned().unwrap_or_else(|| Expr::var("s"))),
    })
}

/// Sign test on an expression over a box; helper for callers outside the module.
pub fn sign_on_box(e: &Expr, proto: &ZeroTestProtocol) -> Result<Option<i8>, ModelError> {
    if is_identically_zero(e, proto)?.zero {
        return Ok(Some(0));
    }
    let vars: Vec<String> = e.free_symbols().iter().map(|s| s.to_string()).collect();
    let mut sign = None;
    for pt in proto.points(&vars) {
        let v = e.eval_f64(&pt).map_err(|x| ModelError::Exterior(ExteriorError::Eval(x)))?;
        let s = if v > 0.0 { 1 } else if v < 0.0 { -1 } else { 0 };
        match sign {
            None => sign = Some(s),
            Some(t) if t != s => return Ok(None),
            _ => {}
        }
    }
    Ok(sign)
}

/// `true` when `b` is a valid parameter for the model.
pub fn b_in_domain(id: ModelId, b: &Rat) -> bool {
    match id {
        ModelId::Iiia => b > &crate::expr::rat(1, 1) && b < &crate::expr::rat(2, 1),
        ModelId::Iiib => b.is_positive() && !b.is_zero(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat;

    #[test]
    fn catalog_loads() {
        for id in ModelId::ALL {
            let m = ModelSpec::load(id, None).unwrap();
            assert_eq!(m.coframe.len(), 5);
        }
        assert!(matches!(
            ModelSpec::load(ModelId::Iiia, Some(rat(5, 2))),
            Err(ModelError::Domain { .. })
        ));
        assert!(matches!(ModelSpec::load(ModelId::Iiib, Some(rat(0, 1))), Err(ModelError::Domain { .. })));
        assert!(matches!(ModelSpec::load(ModelId::Ii, Some(rat(1, 1))), Err(ModelError::NoParameter(_))));
        assert_eq!("IIIA".parse::<ModelId>().unwrap(), ModelId::Iiia);
        assert!("iv".parse::<ModelId>().is_err());
    }

    #[test]
    fn flat_realization() {
        let m = ModelSpec::load(ModelId::Flat, None).unwrap();
        let r = m.verify_realization(None, &ZeroTestProtocol::default()).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.residuals.iter().all(|c| c.exact));
    }

    #[test]
    fn ii_realization() {
        let m = ModelSpec::load(ModelId::Ii, None).unwrap();
        let r = m.verify_realization(None, &ZeroTestProtocol::default()).unwrap();
        assert_eq!(r.eps, Some(-1));
        assert!(r.passed, "{r:?}");
        let r = m.verify_realization(Some(1), &ZeroTestProtocol::default()).unwrap();
        assert!(!r.passed);
    }
}

//! The so(3,2)-valued Cartan connection of the flat model on the
//! ten-dimensional bundle with coordinates
//! `(x, y, z, p, rj, lam, phi, sig, sigb, u)`.
//!
//! `rj` is the jet coordinate `z_xx`; `lam, sig, sigb` are the fiber
//! coordinates usually written `r, s, s-bar`, renamed to avoid the clash.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{parse_with_constants, EvaluationPoint, Expr, ParseError, SampleBox, ZeroTestError, ZeroTestProtocol};
use crate::exterior::{det_numeric, invert_numeric, CoordChart, ExteriorError, Form, FormCheck};

pub const BUNDLE_COORDS: [&str; 10] = ["x", "y", "z", "p", "rj", "lam", "phi", "sig", "sigb", "u"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CartanError {
    #[error("U is singular at the sample point")]
    SingularGauge,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

pub type Matrix<T> = [[T; 5]; 5];

/// `x, y, z, phi, sig, sigb, u` in [-1, 1]; `p, rj, lam` in [1/2, 2].
pub fn bundle_box() -> SampleBox {
    SampleBox::default()
        .with("p", 0.5, 2.0)
        .with("rj", 0.5, 2.0)
        .with("lam", 0.5, 2.0)
}

/// Numeric protocol on the bundle box with `samples` points.
pub fn bundle_protocol(base: &ZeroTestProtocol, samples: usize) -> ZeroTestProtocol {
    let mut b = base.sample_box.clone();
    for (k, v) in bundle_box().ranges {
        b.ranges.insert(k, v);
    }
    base.clone().with_box(b).with_samples(samples).numeric_only()
}

fn parse(text: &str) -> Expr {
    parse_with_constants(text, &HashMap::new()).expect("built-in expression")
}

/// The lifted coframe `theta^1..theta^5` and connection forms `Omega_1..Omega_5`.
#[derive(Clone, Debug)]
pub struct LiftedForms {
    chart: CoordChart,
    /// The flat coframe pulled back to the bundle.
    pub omega: [Form; 5],
    pub theta: [Form; 5],
    pub conn: [Form; 5],
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryCheck {
    pub label: String,
    pub check: FormCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanReport {
    pub name: String,
    pub samples: usize,
    pub tolerance: f64,
    pub entries: Vec<EntryCheck>,
    pub passed: bool,
}

impl CartanReport {
    fn new(name: &str, proto: &ZeroTestProtocol, entries: Vec<EntryCheck>) -> CartanReport {
        CartanReport {
            name: name.to_string(),
            samples: proto.samples,
            tolerance: proto.tolerance,
            passed: entries.iter().all(|e| e.check.zero),
            entries,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &EntryCheck> {
        self.entries.iter().filter(|e| !e.check.zero)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeReport {
    pub samples: usize,
    pub tolerance: f64,
    pub worst: f64,
    /// `U` has the expected block zeros.
    pub zero_pattern: bool,
    /// At the identity fiber point `U = id` and `omega = B`.
    pub identity_exact: bool,
    pub passed: bool,
}

const U_ZEROS: [(usize, usize); 12] = [
    (0, 3),
    (1, 0),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 0),
    (2, 3),
    (3, 0),
    (4, 0),
    (4, 1),
    (4, 2),
    (4, 3),
];

const IDENTITY_SECTION: [(&str, i64); 5] = [("lam", 1), ("phi", 0), ("sig", 0), ("sigb", 0), ("u", 0)];

impl Default for LiftedForms {
    fn default() -> Self {
        LiftedForms::new()
    }
}

impl LiftedForms {
    pub fn new() -> LiftedForms {
        let chart = CoordChart::new(&BUNDLE_COORDS).expect("distinct names");
        let row = |cs: &[&str]| {
            let mut v: Vec<Expr> = cs.iter().map(|c| parse(c)).collect();
            v.resize(10, Expr::zero());
            Form::one_form(&chart, v)
        };
        let omega = [
            row(&["p", "p^2/4", "-1"]),
            row(&["-rj", "-p*rj/2", "0", "1"]),
            row(&["0", "rj^2/2", "0", "0", "-1"]),
            row(&["1", "p/2"]),
            row(&["0", "-1/2"]),
        ];
        let m = [
            ["lam^2", "0", "0", "0", "0"],
            ["sig", "lam*exp(phi)", "0", "0", "0"],
            ["sig^2/(2*lam^2)", "sig*exp(phi)/lam", "exp(2*phi)", "0", "0"],
            ["sigb", "0", "0", "lam*exp(-phi)", "0"],
            ["-sigb^2/(2*lam^2)", "0", "0", "-sigb*exp(-phi)/lam", "exp(-2*phi)"],
        ];
        let theta: [Form; 5] = std::array::from_fn(|i| {
            let terms: Vec<Form> = (0..5).map(|j| omega[j].scale(&parse(m[i][j]))).collect();
            Form::sum(&chart, 1, &terms).simplify()
        });
        let dv = |n: &str| Form::d_coord(&chart, n).expect("bundle coordinate");
        let lin = |terms: &[(&str, Form)]| {
            let parts: Vec<Form> = terms.iter().map(|(c, f)| f.scale(&parse(c))).collect();
            Form::sum(&chart, 1, &parts).simplify()
        };
        let w = |i: usize| omega[i].clone();
        let conn = [
            lin(&[
                ("2/lam", dv("lam")),
                ("-u*lam^2", w(0)),
                ("-sigb*exp(phi)/lam", w(1)),
                ("sig*exp(-phi)/lam", w(3)),
            ]),
            lin(&[
                ("-1", dv("phi")),
                ("sig*sigb/(2*lam^2)", w(0)),
                ("sigb*exp(phi)/(2*lam)", w(1)),
                ("sig*exp(-phi)/(2*lam)", w(3)),
                ("rj", w(4)),
            ]),
            lin(&[
                ("1/lam^2", dv("sig")),
                ("-sig/lam^2", dv("phi")),
                ("-sig/lam^3", dv("lam")),
                ("-sig*u/2", w(0)),
                ("-exp(phi)*(sig*sigb+lam^4*u)/(2*lam^3)", w(1)),
                ("-sigb*exp(2*phi)/lam^2", w(2)),
                ("sig^2*exp(-phi)/(2*lam^3)", w(3)),
                ("sig*rj/lam^2", w(4)),
            ]),
            lin(&[
                ("1/lam^2", dv("sigb")),
                ("sigb/lam^2", dv("phi")),
                ("-sigb/lam^3", dv("lam")),
                ("-sigb*u/2", w(0)),
                ("-sigb^2*exp(phi)/(2*lam^3)", w(1)),
                ("(sig*sigb-lam^4*u)*exp(-phi)/(2*lam^3)", w(3)),
                ("-(sig+exp(2*phi)*sigb*rj)*exp(-2*phi)/lam^2", w(4)),
            ]),
            lin(&[
                ("-1", dv("u")),
                ("-2*u/lam", dv("lam")),
                ("2*sig*sigb/lam^4", dv("phi")),
                ("sig/lam^4", dv("sigb")),
                ("-sigb/lam^4", dv("sig")),
                ("lam^2*u^2/2", w(0)),
                ("sigb*exp(phi)*u/lam", w(1)),
                ("exp(2*phi)*sigb^2/lam^4", w(2)),
                ("-sig*u*exp(-phi)/lam", w(3)),
                ("-sig*(sig+2*exp(2*phi)*sigb*rj)*exp(-2*phi)/lam^4", w(4)),
            ]),
        ];
        LiftedForms {
            chart,
            omega,
            theta,
            conn,
        }
    }

    pub fn chart(&self) -> &CoordChart {
        &self.chart
    }

    /// The ten forms `theta^1..theta^5, Omega_1..Omega_5`.
    pub fn all(&self) -> Vec<&Form> {
        self.theta.iter().chain(&self.conn).collect()
    }

    /// The connection matrix assembled from `theta` and `Omega`.
    pub fn connection_matrix(&self) -> Matrix<Form> {
        connection_matrix(&self.theta, &self.conn)
    }

    /// Identity-section matrix `B` built from the flat coframe with
    /// `Omega_2 = rj omega^5` and the other connection forms zero.
    pub fn base_matrix(&self) -> Matrix<Form> {
        let z = Form::zero(&self.chart, 1);
        let pi = [
            z.clone(),
            self.omega[4].scale(&Expr::var("rj")),
            z.clone(),
            z.clone(),
            z,
        ];
        connection_matrix(&self.omega, &pi)
    }

    /// All 25 entries of `d omega + omega ^ omega`.
    pub fn verify_flatness(&self, proto: &ZeroTestProtocol) -> Result<CartanReport, CartanError> {
        let m = self.connection_matrix();
        let cells: Vec<(usize, usize)> = (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).collect();
        let entries = cells
            .par_iter()
            .map(|&(i, j)| {
                let mut acc = m[i][j].d();
                for k in 0..5 {
                    acc = acc.add(&m[i][k].wedge(&m[k][j]));
                }
                Ok(EntryCheck {
                    label: format!("({},{})", i + 1, j + 1),
                    check: acc.check_zero(proto)?,
                })
            })
            .collect::<Result<Vec<_>, CartanError>>()?;
        Ok(CartanReport::new("flatness", proto, entries))
    }

    /// The ten structure equations of the lifted forms.
    pub fn verify_structure_equations(&self, proto: &ZeroTestProtocol) -> Result<CartanReport, CartanError> {
        let (t, o) = (&self.theta, &self.conn);
        let w = |a: &Form, b: &Form| a.wedge(b);
        let h = Expr::frac(1, 2);
        let eqs: Vec<(Form, Form)> = vec![
            (t[0].d(), w(&t[1], &t[3]).sub(&w(&t[0], &o[0]))),
            (
                t[1].d(),
                w(&t[2], &t[3])
                    .add(&w(&t[1], &o[1]))
                    .sub(&w(&t[1], &o[0]).scale(&h))
                    .sub(&w(&t[0], &o[2])),
            ),
            (t[2].d(), w(&t[2], &o[1]).scale(&Expr::int(2)).sub(&w(&t[1], &o[2]))),
            (
                t[3].d(),
                w(&t[1], &t[4])
                    .neg()
                    .sub(&w(&t[3], &o[0]).scale(&h))
                    .sub(&w(&t[3], &o[1]))
                    .sub(&w(&t[0], &o[3])),
            ),
            (t[4].d(), w(&t[4], &o[1]).scale(&Expr::int(-2)).add(&w(&t[3], &o[3]))),
            (
                o[0].d(),
                w(&t[3], &o[2]).neg().add(&w(&t[1], &o[3])).sub(&w(&t[0], &o[4])),
            ),
            (
                o[1].d(),
                w(&t[2], &t[4])
                    .neg()
                    .sub(&w(&t[3], &o[2]).scale(&h))
                    .sub(&w(&t[1], &o[3]).scale(&h)),
            ),
            (
                o[2].d(),
                w(&o[0], &o[2])
                    .scale(&-&h)
                    .sub(&w(&o[1], &o[2]))
                    .add(&w(&t[2], &o[3]))
                    .sub(&w(&t[1], &o[4]).scale(&h)),
            ),
            (
                o[3].d(),
                w(&o[1], &o[3])
                    .sub(&w(&o[0], &o[3]).scale(&h))
                    .add(&w(&t[4], &o[2]))
                    .sub(&w(&t[3], &o[4]).scale(&h)),
            ),
            (o[4].d(), w(&o[0], &o[4]).neg().add(&w(&o[2], &o[3]).scale(&Expr::int(2)))),
        ];
        let labels = [
            "dtheta1", "dtheta2", "dtheta3", "dtheta4", "dtheta5", "dOmega1", "dOmega2", "dOmega3", "dOmega4",
            "dOmega5",
        ];
        let entries = eqs
            .par_iter()
            .zip(labels.par_iter())
            .map(|((l, r), name)| {
                Ok(EntryCheck {
                    label: name.to_string(),
                    check: l.sub(r).check_zero(proto)?,
                })
            })
            .collect::<Result<Vec<_>, CartanError>>()?;
        Ok(CartanReport::new("structure equations", proto, entries))
    }

    /// `(1,1) = -(5,5)`, `(2,2) = -(4,4)`, `(3,3) = 0` and zero trace.
    pub fn verify_entry_relations(&self, proto: &ZeroTestProtocol) -> Result<CartanReport, CartanError> {
        let m = self.connection_matrix();
        let trace = Form::sum(&self.chart, 1, (0..5).map(|i| &m[i][i]));
        let checks = [
            ("(1,1)+(5,5)", m[0][0].add(&m[4][4])),
            ("(2,2)+(4,4)", m[1][1].add(&m[3][3])),
            ("(3,3)", m[2][2].clone()),
            ("trace", trace),
        ];
        let entries = checks
            .into_iter()
            .map(|(l, f)| {
                Ok(EntryCheck {
                    label: l.to_string(),
                    check: f.check_zero(proto)?,
                })
            })
            .collect::<Result<Vec<_>, CartanError>>()?;
        Ok(CartanReport::new("entry relations", proto, entries))
    }

    /// `d d` of each of the ten forms.
    pub fn verify_dd(&self, proto: &ZeroTestProtocol) -> Result<CartanReport, CartanError> {
        let names = ["theta1", "theta2", "theta3", "theta4", "theta5", "Omega1", "Omega2", "Omega3", "Omega4", "Omega5"];
        let entries = self
            .all()
            .par_iter()
            .zip(names.par_iter())
            .map(|(f, n)| {
                Ok(EntryCheck {
                    label: format!("dd {n}"),
                    check: f.d().d().check_zero(proto)?,
                })
            })
            .collect::<Result<Vec<_>, CartanError>>()?;
        Ok(CartanReport::new("d∘d", proto, entries))
    }

    /// Restriction to `lam = 1, phi = sig = sigb = u = 0` compared with the
    /// flat coframe and `Omega_2 = rj omega^5`, others zero.
    pub fn verify_identity_section(&self) -> Result<CartanReport, CartanError> {
        let fixed: Vec<(&str, Expr)> = IDENTITY_SECTION.iter().map(|&(n, v)| (n, Expr::int(v))).collect();
        let proto = ZeroTestProtocol::default().with_box(bundle_box());
        let z = Form::zero(&self.chart, 1);
        let expected: Vec<Form> = self
            .omega
            .iter()
            .cloned()
            .chain([
                z.clone(),
                self.omega[4].scale(&Expr::var("rj")),
                z.clone(),
                z.clone(),
                z,
            ])
            .collect();
        let names = ["theta1", "theta2", "theta3", "theta4", "theta5", "Omega1", "Omega2", "Omega3", "Omega4", "Omega5"];
        let mut entries = Vec::new();
        for ((f, e), n) in self.all().into_iter().zip(&expected).zip(names) {
            let diff = f.restrict(&fixed).sub(&e.restrict(&fixed)).simplify();
            entries.push(EntryCheck {
                label: n.to_string(),
                check: diff.check_zero(&proto)?,
            });
        }
        Ok(CartanReport::new("identity section", &proto, entries))
    }

    /// Numerical independence of the ten forms: smallest `|det|` over the samples.
    pub fn min_abs_det(&self, proto: &ZeroTestProtocol) -> Result<f64, CartanError> {
        let rows: Vec<Vec<Expr>> = self.all().iter().map(|f| f.one_form_row()).collect();
        let mut worst = f64::INFINITY;
        for pt in proto.points(&BUNDLE_COORDS) {
            let m = eval_matrix(&rows, &pt)?;
            worst = worst.min(det_numeric(&m).abs());
        }
        Ok(worst)
    }

    /// The gauge matrix `U` on the fiber.
    pub fn gauge_matrix() -> Matrix<Expr> {
        let u = [
            [
                "exp(-phi)/lam",
                "-exp(-phi)*(sig*sigb+lam^4*u)/(2*lam^3)",
                "-sigb/lam^2",
                "0",
                "-exp(phi)*sigb^2/(2*lam^3)",
            ],
            ["0", "lam*exp(-phi)", "0", "0", "0"],
            ["0", "sig*exp(-phi)/lam", "1", "0", "sigb*exp(phi)/lam"],
            [
                "0",
                "sig^2*exp(-phi)/(2*lam^3)",
                "sig/lam^2",
                "exp(phi)/lam",
                "exp(phi)*(sig*sigb-lam^4*u)/(2*lam^3)",
            ],
            ["0", "0", "0", "0", "lam*exp(phi)"],
        ];
        std::array::from_fn(|i| std::array::from_fn(|j| parse(u[i][j])))
    }

    /// `omega = U B U^-1 - dU U^-1` at random bundle points.
    pub fn verify_gauge_relation(&self, proto: &ZeroTestProtocol) -> Result<GaugeReport, CartanError> {
        let u = LiftedForms::gauge_matrix();
        let du: Matrix<Vec<Expr>> =
            std::array::from_fn(|i| std::array::from_fn(|j| BUNDLE_COORDS.iter().map(|v| u[i][j].diff(v)).collect()));
        let b = self.base_matrix();
        let w = self.connection_matrix();
        let rows = |m: &Matrix<Form>| -> Matrix<Vec<Expr>> {
            std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].one_form_row()))
        };
        let (b, w) = (rows(&b), rows(&w));
        let zero_pattern = U_ZEROS.iter().all(|&(i, j)| u[i][j].is_zero());
        let mut pts = proto.points(&BUNDLE_COORDS);
        let mut id_pt = pts[0].clone();
        for (n, v) in IDENTITY_SECTION {
            id_pt.set(n, v as f64);
        }
        let identity_u = {
            let m = eval_matrix(&u.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), &id_pt)?;
            (0..5).all(|i| (0..5).all(|j| m[i][j] == if i == j { 1.0 } else { 0.0 }))
        };
        let identity_forms = {
            let fixed: Vec<(&str, Expr)> = IDENTITY_SECTION.iter().map(|&(n, v)| (n, Expr::int(v))).collect();
            let wm = self.connection_matrix();
            let bm = self.base_matrix();
            let exact = ZeroTestProtocol::default().with_box(bundle_box());
            let mut ok = true;
            for i in 0..5 {
                for j in 0..5 {
                    let d = wm[i][j].restrict(&fixed).sub(&bm[i][j].restrict(&fixed)).simplify();
                    ok &= d.check_zero(&exact)?.zero;
                }
            }
            ok
        };
        pts.push(id_pt);
        let mut worst = 0.0f64;
        for pt in &pts {
            let un = eval_matrix(&u.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), pt)?;
            let ui = invert_numeric(&un).ok_or(CartanError::SingularGauge)?;
            for c in 0..10 {
                let comp = |m: &Matrix<Vec<Expr>>| -> Result<Vec<Vec<f64>>, CartanError> {
                    (0..5)
                        .map(|i| (0..5).map(|j| ev(&m[i][j][c], pt)).collect())
                        .collect()
                };
                let bc = comp(&b)?;
                let wc = comp(&w)?;
                let dc = comp(&du)?;
                let lhs = sub(&mul(&mul(&un, &bc), &ui), &mul(&dc, &ui));
                for i in 0..5 {
                    for j in 0..5 {
                        worst = worst.max((lhs[i][j] - wc[i][j]).abs());
                    }
                }
            }
        }
        Ok(GaugeReport {
            samples: pts.len(),
            tolerance: proto.tolerance,
            worst,
            zero_pattern,
            identity_exact: identity_u && identity_forms,
            passed: worst <= proto.tolerance && zero_pattern && identity_u && identity_forms,
        })
    }

    /// Replace `Omega_k` (zero-based) by `Omega_k + f`; used to check that
    /// the verifications detect perturbations.
    pub fn perturbed(&self, k: usize, f: &Form) -> LiftedForms {
        let mut out = self.clone();
        out.conn[k] = out.conn[k].add(f);
        out
    }
}

/// The so(3,2) matrix in the standard basis.
pub fn connection_matrix(t: &[Form; 5], o: &[Form; 5]) -> Matrix<Form> {
    let chart = t[0].chart();
    let z = Form::zero(chart, 1);
    let h = Expr::frac(1, 2);
    let m1 = Expr::int(-1);
    let half = |f: &Form| f.scale(&h);
    [
        [half(&o[0]).sub(&o[1]), o[4].scale(&-&h), o[3].clone(), t[4].clone(), z.clone()],
        [t[0].clone(), half(&o[0]).neg().sub(&o[1]), t[3].clone(), z.clone(), t[4].clone()],
        [t[1].clone(), o[2].scale(&m1), z.clone(), t[3].clone(), o[3].scale(&m1)],
        [t[2].clone(), z.clone(), o[2].scale(&m1), half(&o[0]).add(&o[1]), o[4].scale(&-&h)],
        [z, t[2].clone(), t[1].scale(&m1), t[0].clone(), half(&o[0]).neg().add(&o[1])],
    ]
}

fn ev(e: &Expr, pt: &EvaluationPoint) -> Result<f64, CartanError> {
    e.eval_f64(pt).map_err(|e| CartanError::Exterior(ExteriorError::Eval(e)))
}

fn eval_matrix(m: &[Vec<Expr>], pt: &EvaluationPoint) -> Result<Vec<Vec<f64>>, CartanError> {
    m.iter().map(|r| r.iter().map(|e| ev(e, pt)).collect()).collect()
}

fn mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn sub(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_section() {
        let l = LiftedForms::new();
        let r = l.verify_identity_section().unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.entries.iter().all(|e| e.check.exact));
    }

    #[test]
    fn entry_relations() {
        let l = LiftedForms::new();
        let p = bundle_protocol(&ZeroTestProtocol::default(), 10);
        assert!(l.verify_entry_relations(&p).unwrap().passed);
    }
}

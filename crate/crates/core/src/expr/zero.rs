//! Hybrid identity testing: exact normalization first, seeded sampling after.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rational::normalize_with_atoms;
use super::{EvalError, EvaluationPoint, Expr};

/// Trees larger than this skip the exact path.
const EXACT_SIZE_LIMIT: usize = 40_000;
const RESAMPLES: usize = 5;

/// Per-variable sampling intervals; unlisted variables use `default`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub default: (f64, f64),
    pub ranges: BTreeMap<String, (f64, f64)>,
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox {
            default: (-1.0, 1.0),
            ranges: BTreeMap::new(),
        }
    }
}

impl SampleBox {
    pub fn with(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ranges.insert(name.to_string(), (lo, hi));
        self
    }

    pub fn set(&mut self, name: &str, lo: f64, hi: f64) {
        self.ranges.insert(name.to_string(), (lo, hi));
    }

    pub fn range(&self, name: &str) -> (f64, f64) {
        self.ranges.get(name).copied().unwrap_or(self.default)
    }

    pub fn sample<S: AsRef<str>>(&self, vars: &[S], rng: &mut impl Rng) -> EvaluationPoint {
        let mut pt = EvaluationPoint::new();
        for v in vars {
            let (lo, hi) = self.range(v.as_ref());
            pt.set(v.as_ref(), if lo == hi { lo } else { rng.gen_range(lo..hi) });
        }
        pt
    }

    /// Random rational point with small denominators strictly inside the box.
    pub fn sample_rational<S: AsRef<str>>(
        &self,
        vars: &[S],
        rng: &mut impl Rng,
    ) -> super::RationalPoint {
        let mut pt = super::RationalPoint::new();
        for v in vars {
            let (lo, hi) = self.range(v.as_ref());
            let den: i64 = rng.gen_range(7..61);
            let a = (lo * den as f64).ceil() as i64;
            let b = (hi * den as f64).floor() as i64;
            let num = if b > a { rng.gen_range(a..=b) } else { a };
            pt.insert(v.as_ref().to_string(), super::rat(num, den));
        }
        pt
    }
}

/// Parameters of the hybrid zero test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroTestProtocol {
    pub samples: usize,
    pub tolerance: f64,
    pub seed: u64,
    /// Try exact rational normalization before sampling.
    pub exact: bool,
    pub sample_box: SampleBox,
}

impl Default for ZeroTestProtocol {
    fn default() -> Self {
        ZeroTestProtocol {
            samples: 64,
            tolerance: 1e-9,
            seed: 0x5eed_2024,
            exact: true,
            sample_box: SampleBox::default(),
        }
    }
}

impl ZeroTestProtocol {
    pub fn with_box(mut self, b: SampleBox) -> Self {
        self.sample_box = b;
        self
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = n.max(1);
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn numeric_only(mut self) -> Self {
        self.exact = false;
        self
    }

    /// Deterministic per-sample generator.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// The sample points used for the given variables.
    pub fn points<S: AsRef<str> + Sync>(&self, vars: &[S]) -> Vec<EvaluationPoint> {
        (0..self.samples)
            .map(|i| self.sample_box.sample(vars, &mut self.rng(i as u64)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "path", rename_all = "snake_case")]
pub enum Certificate {
    /// Decided by the rational normal form.
    Exact { nonzero: bool },
    /// Decided by sampling; `worst_ratio` is max |e| / (1 + magnitude).
    Numeric {
        samples: usize,
        worst_ratio: f64,
        worst_value: f64,
        worst_point: BTreeMap<String, f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroVerdict {
    pub zero: bool,
    pub certificate: Certificate,
}

impl ZeroVerdict {
    pub fn is_exact(&self) -> bool {
        matches!(self.certificate, Certificate::Exact { .. })
    }

    /// Scaled residual (0 for exact zero).
    pub fn residual(&self) -> f64 {
        match &self.certificate {
            Certificate::Exact { nonzero } => {
                if *nonzero {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            Certificate::Numeric { worst_ratio, .. } => *worst_ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZeroTestError {
    #[error("evaluation failed at sample {sample} after {attempts} attempts: {source}")]
    Evaluation {
        sample: usize,
        attempts: usize,
        source: EvalError,
    },
}

/// Decide whether `e` vanishes identically on the protocol's box.
pub fn is_identically_zero(e: &Expr, proto: &ZeroTestProtocol) -> Result<ZeroVerdict, ZeroTestError> {
    if e.is_zero() {
        return Ok(ZeroVerdict {
            zero: true,
            certificate: Certificate::Exact { nonzero: false },
        });
    }
    if e.as_num().is_some() {
        return Ok(ZeroVerdict {
            zero: false,
            certificate: Certificate::Exact { nonzero: true },
        });
    }
    if proto.exact && e.size() <= EXACT_SIZE_LIMIT {
        let n = normalize_with_atoms(e);
        if n.converted {
            if n.expr.is_zero() {
                return Ok(ZeroVerdict {
                    zero: true,
                    certificate: Certificate::Exact { nonzero: false },
                });
            }
            if n.exact {
                return Ok(ZeroVerdict {
                    zero: false,
                    certificate: Certificate::Exact { nonzero: true },
                });
            }
        }
    }
    numeric_zero_test(e, proto)
}

/// Sampling-only decision.
pub fn numeric_zero_test(e: &Expr, proto: &ZeroTestProtocol) -> Result<ZeroVerdict, ZeroTestError> {
    let vars: Vec<String> = e.free_symbols().iter().map(|s| s.to_string()).collect();
    let tol = proto.tolerance;
    let results: Vec<Result<(f64, f64, EvaluationPoint), ZeroTestError>> = (0..proto.samples.max(1))
        .into_par_iter()
        .map(|i| {
            let mut rng = proto.rng(i as u64);
            let mut last = None;
            for _ in 0..=RESAMPLES {
                let pt = proto.sample_box.sample(&vars, &mut rng);
                match e.evaluate(&pt) {
                    Ok(ev) => {
                        let scale = 1.0 + ev.magnitude;
                        let ratio = ev.value.abs().max(ev.compensated.abs()) / scale;
                        return Ok((ratio, ev.value, pt));
                    }
                    Err(err) => last = Some(err),
                }
            }
            Err(ZeroTestError::Evaluation {
                sample: i,
                attempts: RESAMPLES + 1,
                source: last.unwrap(),
            })
        })
        .collect();
    let mut worst: Option<(f64, f64, EvaluationPoint)> = None;
    for r in results {
        let r = r?;
        if worst.as_ref().map_or(true, |w| r.0 > w.0) {
            worst = Some(r);
        }
    }
    let (ratio, value, pt) = worst.expect("at least one sample");
    Ok(ZeroVerdict {
        zero: ratio <= tol,
        certificate: Certificate::Numeric {
            samples: proto.samples.max(1),
            worst_ratio: ratio,
            worst_value: value,
            worst_point: pt.iter().map(|(k, v)| (k.to_string(), v)).collect(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression as p;

    fn proto() -> ZeroTestProtocol {
        ZeroTestProtocol::default().with_box(SampleBox::default().with("r", 0.5, 2.0).with("p", 0.5, 2.0))
    }

    #[test]
    fn exact_paths() {
        let v = is_identically_zero(&Expr::zero(), &proto()).unwrap();
        assert!(v.zero && v.is_exact());
        let v = is_identically_zero(&p("2*r").unwrap(), &proto()).unwrap();
        assert!(!v.zero && v.is_exact());
    }

    #[test]
    fn numeric_path() {
        let e = p("sin(x)^2 + cos(x)^2 - 1").unwrap();
        let v = is_identically_zero(&e, &proto()).unwrap();
        assert!(v.zero && !v.is_exact(), "{v:?}");
        let e = p("exp(x) - 1 - x").unwrap();
        assert!(!is_identically_zero(&e, &proto()).unwrap().zero);
        let e = p("arctan(p) + arctan(1/p) - 2*arctan(1)").unwrap();
        assert!(is_identically_zero(&e, &proto()).unwrap().zero);
    }

    #[test]
    fn poles_fail_after_resampling() {
        let e = p("exp(x)/(y - y)").unwrap();
        assert!(is_identically_zero(&e, &proto()).is_err());
        let e = p("log(-1 - x^2) + exp(x)").unwrap();
        assert!(is_identically_zero(&e, &proto()).is_err());
    }
}

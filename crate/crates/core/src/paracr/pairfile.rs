//! The pair input format:
//!
//! ```text
//! # comment
//! F = p^2/4
//! H = r^3
//! param b in (1, 2)
//! param c = 3/2
//! box p in [0.5, 2]
//! ```

use std::collections::HashMap;

use crate::expr::{parse_expression, parse_with_constants, Expr, Rat};

use super::{ParacrError, PdePair};

#[derive(Clone, Debug)]
pub struct PairFile {
    pub pair: PdePair,
    /// Parameters bound to constants, in file order.
    pub bindings: Vec<(String, Expr)>,
}

fn err(line: usize, message: impl Into<String>) -> ParacrError {
    ParacrError::PairFile {
        line,
        message: message.into(),
    }
}

fn number(text: &str, line: usize) -> Result<f64, ParacrError> {
    let e = parse_expression(text.trim()).map_err(|e| err(line, e.to_string()))?;
    e.eval_f64(&Default::default())
        .map_err(|_| err(line, format!("`{}` is not a constant", text.trim())))
}

/// `(lo, hi)` or `[lo, hi]`.
fn interval(text: &str, line: usize) -> Result<(f64, f64), ParacrError> {
    let t = text.trim();
    let open = t.chars().next();
    let close = t.chars().last();
    if !matches!(open, Some('(' | '[')) || !matches!(close, Some(')' | ']')) || t.len() < 2 {
        return Err(err(line, "expected an interval like [a, b] or (a, b)"));
    }
    let inner = &t[1..t.len() - 1];
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| err(line, "interval needs two endpoints"))?;
    let (lo, hi) = (number(a, line)?, number(b, line)?);
    if lo > hi {
        return Err(err(line, "empty interval"));
    }
    Ok((lo, hi))
}

pub fn parse_pair_file(text: &str) -> Result<PairFile, ParacrError> {
    let mut f_src = None;
    let mut h_src = None;
    let mut consts: HashMap<String, Expr> = HashMap::new();
    let mut bindings = Vec::new();
    let mut params = Vec::new();
    let mut boxes = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix("param ").or_else(|| s.strip_prefix("box ")) {
            let is_param = s.starts_with("param");
            let rest = rest.trim();
            let name_end = rest
                .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                .unwrap_or(rest.len());
            let name = &rest[..name_end];
            if name.is_empty() {
                return Err(err(line, "missing variable name"));
            }
            let tail = rest[name_end..].trim();
            if let Some(iv) = tail.strip_prefix("in ").or_else(|| tail.strip_prefix("in")) {
                let (lo, hi) = interval(iv, line)?;
                if is_param {
                    params.push((name.to_string(), lo, hi));
                } else {
                    boxes.push((name.to_string(), lo, hi));
                }
            } else if let (true, Some(v)) = (is_param, tail.strip_prefix('=')) {
                let e = parse_with_constants(v.trim(), &consts).map_err(|e| err(line, e.to_string()))?;
                if !e.is_constant() {
                    return Err(err(line, "parameter value must be constant"));
                }
                consts.insert(name.to_string(), e.clone());
                bindings.push((name.to_string(), e));
            } else {
                return Err(err(line, "expected `in <interval>` or `= <value>`"));
            }
            continue;
        }
        let (lhs, rhs) = s.split_once('=').ok_or_else(|| err(line, "expected `F = ...` or `H = ...`"))?;
        let slot = match lhs.trim() {
            "F" | "f" => &mut f_src,
            "H" | "h" => &mut h_src,
            other => return Err(err(line, format!("unknown key `{other}`"))),
        };
        if slot.is_some() {
            return Err(err(line, format!("duplicate `{}`", lhs.trim())));
        }
        *slot = Some((line, rhs.trim().to_string()));
    }
    let (fl, fs) = f_src.ok_or_else(|| err(0, "missing `F = ...`"))?;
    let (hl, hs) = h_src.ok_or_else(|| err(0, "missing `H = ...`"))?;
    let f = parse_with_constants(&fs, &consts).map_err(|e| err(fl, e.to_string()))?;
    let h = parse_with_constants(&hs, &consts).map_err(|e| err(hl, e.to_string()))?;
    let mut pair = PdePair::unchecked(f, h);
    for (n, lo, hi) in params {
        pair = pair.with_param(&n, lo, hi);
    }
    let mut b = pair.sample_box().clone();
    for (n, lo, hi) in boxes {
        b.set(&n, lo, hi);
    }
    let pair = pair.with_box(b);
    Ok(PairFile { pair, bindings })
}

impl PairFile {
    /// Rational value of a bound parameter, when it has one.
    pub fn binding(&self, name: &str) -> Option<Rat> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .and_then(|(_, e)| e.as_num().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let f = parse_pair_file("# model\nF = p^b/4\nH = (2-b)*r^2/p\nparam b = 3/2\n").unwrap();
        assert_eq!(f.pair.f(), &crate::expr::parse_expression("p^(3/2)/4").unwrap());
        let e = parse_pair_file("F = p^b/4\nH = 0\n").unwrap_err();
        assert!(matches!(e, ParacrError::PairFile { line: 1, .. }));
        let pf = parse_pair_file("param b = 3/2\nF = p^b/4  # comment\nH = (2-b)*r^2/p\nbox p in [0.5, 2]\n").unwrap();
        assert_eq!(pf.bindings.len(), 1);
        assert_eq!(pf.binding("b"), Some(crate::expr::rat(3, 2)));
        assert_eq!(pf.pair.sample_box().range("p"), (0.5, 2.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_pair_file("F = p^2/4\n").is_err());
        assert!(parse_pair_file("F = p^2/4\nH = (r\n").is_err());
        assert!(parse_pair_file("G = 1\n").is_err());
        assert!(parse_pair_file("F = 1\nH = 0\nbox p in [2, 1]\n").is_err());
    }
}

//! Levi matrices and 2-nondegeneracy determinants of a solution manifold.

use serde::Serialize;

use crate::expr::{is_identically_zero, Certificate, Expr, SampleBox, ZeroTestProtocol};

use super::ParacrError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeviSide {
    /// Graph `z = Q(x, y, a, b, c)`.
    Parameters,
    /// Graph `c = P(a, b, x, y, z)`.
    Variables,
}

impl LeviSide {
    /// (row variables, column variables, distinguished variable)
    fn layout(self) -> ([&'static str; 2], [&'static str; 2], &'static str) {
        match self {
            LeviSide::Parameters => (["x", "y"], ["a", "b"], "c"),
            LeviSide::Variables => (["a", "b"], ["x", "y"], "z"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolutionManifold {
    pub side: LeviSide,
    pub function: Expr,
    pub sample_box: SampleBox,
}

impl SolutionManifold {
    pub fn parameters(q: Expr) -> SolutionManifold {
        SolutionManifold {
            side: LeviSide::Parameters,
            function: q,
            sample_box: SampleBox::default(),
        }
    }

    pub fn variables(p: Expr) -> SolutionManifold {
        SolutionManifold {
            side: LeviSide::Variables,
            function: p,
            sample_box: SampleBox::default(),
        }
    }

    pub fn with_box(mut self, b: SampleBox) -> SolutionManifold {
        self.sample_box = b;
        self
    }

    fn protocol(&self, base: &ZeroTestProtocol) -> ZeroTestProtocol {
        let mut b = base.sample_box.clone();
        for (k, v) in &self.sample_box.ranges {
            b.ranges.insert(k.clone(), *v);
        }
        base.clone().with_box(b)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviReport {
    pub matrix: [[Expr; 2]; 2],
    pub determinant: Expr,
    /// Generic rank on the sampling box.
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoNondegeneracy {
    pub determinant: Expr,
    pub nondegenerate: bool,
    pub certificate: Certificate,
}

fn check_distinguished(m: &SolutionManifold, proto: &ZeroTestProtocol) -> Result<Expr, ParacrError> {
    let (_, _, s) = m.side.layout();
    let gs = m.function.diff(s);
    if is_identically_zero(&gs, proto)?.zero {
        return Err(ParacrError::DegenerateSolution(match m.side {
            LeviSide::Parameters => "Q_c",
            LeviSide::Variables => "P_z",
        }));
    }
    Ok(gs)
}

pub fn levi_matrix(m: &SolutionManifold, proto: &ZeroTestProtocol) -> Result<LeviReport, ParacrError> {
    let proto = m.protocol(proto);
    let gs = check_distinguished(m, &proto)?;
    let (rows, cols, s) = m.side.layout();
    let g = &m.function;
    let entry = |r: &str, c: &str| {
        let gr = g.diff(r);
        ((-&gs * gr.diff(c) + g.diff(c) * gr.diff(s)) / gs.powi(2)).simplify()
    };
    let matrix = [
        [entry(rows[0], cols[0]), entry(rows[0], cols[1])],
        [entry(rows[1], cols[0]), entry(rows[1], cols[1])],
    ];
    let det = (&matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0]).simplify();
    let rank = if !is_identically_zero(&det, &proto)?.zero {
        2
    } else {
        let mut any = false;
        for e in matrix.iter().flatten() {
            if !is_identically_zero(e, &proto)?.zero {
                any = true;
                break;
            }
        }
        usize::from(any)
    };
    Ok(LeviReport {
        matrix,
        determinant: det,
        rank,
    })
}

/// The 3x3 determinant whose non-vanishing is 2-nondegeneracy.
pub fn two_nondegeneracy(m: &SolutionManifold, proto: &ZeroTestProtocol) -> Result<TwoNondegeneracy, ParacrError> {
    let proto = m.protocol(proto);
    check_distinguished(m, &proto)?;
    let (rows, cols, s) = m.side.layout();
    let v = rows[0];
    let r0: Vec<Expr> = [cols[0], cols[1], s].iter().map(|c| m.function.diff(c)).collect();
    let r1: Vec<Expr> = r0.iter().map(|e| e.diff(v)).collect();
    let r2: Vec<Expr> = r1.iter().map(|e| e.diff(v)).collect();
    let det = Expr::sum([
        &r0[0] * (&r1[1] * &r2[2] - &r1[2] * &r2[1]),
        -&r0[1] * (&r1[0] * &r2[2] - &r1[2] * &r2[0]),
        &r0[2] * (&r1[0] * &r2[1] - &r1[1] * &r2[0]),
    ])
    .simplify();
    let verdict = is_identically_zero(&det, &proto)?;
    Ok(TwoNondegeneracy {
        determinant: det,
        nondegenerate: !verdict.zero,
        certificate: verdict.certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression as p;

    fn bx() -> SampleBox {
        SampleBox::default().with("y", -0.5, 0.5).with("b", -0.5, 0.5)
    }

    #[test]
    fn ranks() {
        let proto = ZeroTestProtocol::default();
        let m = SolutionManifold::parameters(p("x*a + y*b + c").unwrap());
        let l = levi_matrix(&m, &proto).unwrap();
        assert_eq!(l.rank, 2);
        assert_eq!(l.matrix[0][0], Expr::int(-1));
        let m = SolutionManifold::parameters(p("(2*x*a + x^2*b + a^2*y)/(1 - y*b) - c").unwrap()).with_box(bx());
        assert_eq!(levi_matrix(&m, &proto).unwrap().rank, 1);
        assert!(two_nondegeneracy(&m, &proto).unwrap().nondegenerate);
        let m = SolutionManifold::parameters(p("c").unwrap());
        assert_eq!(levi_matrix(&m, &proto).unwrap().rank, 0);
        assert!(!two_nondegeneracy(&m, &proto).unwrap().nondegenerate);
        let m = SolutionManifold::parameters(p("x*a").unwrap());
        assert!(levi_matrix(&m, &proto).is_err());
    }
}

//! Formal correspondences on `F x F`.

use std::fmt;

use num_traits::One;

use crate::algebra::rational::fmt_rational;
use crate::algebra::{GradedPoly, Rational, Variable};

use super::CorrError;

/// Variable table for coefficients of correspondences: the parameter `a`
/// (degree 0) and the pullbacks `g1, g2` (degree 1), `c1, c2` (degree 2).
pub fn corr_vars() -> Vec<Variable> {
    vec![
        Variable::new("a", 0),
        Variable::new("g1", 1),
        Variable::new("g2", 1),
        Variable::new("c1", 2),
        Variable::new("c2", 2),
    ]
}

/// Polynomial in the correspondence variables.
pub fn cpoly(name: &str) -> GradedPoly {
    GradedPoly::var(&corr_vars(), None, name)
}

pub fn cconst(c: Rational) -> GradedPoly {
    GradedPoly::constant(&corr_vars(), None, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CorrAtom {
    /// the diagonal
    Diag,
    /// incidence correspondence of meeting lines
    I,
    Gh,
    Gh2,
    /// closure of the graph of `phi`
    Gphi,
    I1,
    I2,
    /// `[F x o]`
    FxO,
    /// `[o x F]`
    OxF,
    /// `[F x F]`
    FxF,
}

impl CorrAtom {
    pub const ALL: [CorrAtom; 10] = [
        CorrAtom::Diag,
        CorrAtom::I,
        CorrAtom::Gh,
        CorrAtom::Gh2,
        CorrAtom::Gphi,
        CorrAtom::I1,
        CorrAtom::I2,
        CorrAtom::FxO,
        CorrAtom::OxF,
        CorrAtom::FxF,
    ];

    pub fn codim(self) -> i64 {
        match self {
            CorrAtom::Diag | CorrAtom::Gphi | CorrAtom::I1 | CorrAtom::I2 | CorrAtom::Gh2 => 4,
            CorrAtom::FxO | CorrAtom::OxF => 4,
            CorrAtom::I => 2,
            CorrAtom::Gh => 3,
            CorrAtom::FxF => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CorrAtom::Diag => "D",
            CorrAtom::I => "I",
            CorrAtom::Gh => "Gh",
            CorrAtom::Gh2 => "Gh2",
            CorrAtom::Gphi => "Gphi",
            CorrAtom::I1 => "I1",
            CorrAtom::I2 => "I2",
            CorrAtom::FxO => "FxO",
            CorrAtom::OxF => "OxF",
            CorrAtom::FxF => "FxF",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    /// Transpose when it is again an atom.
    pub fn transpose(self) -> Option<Self> {
        match self {
            CorrAtom::Diag | CorrAtom::I | CorrAtom::Gh | CorrAtom::Gh2 | CorrAtom::FxF => {
                Some(self)
            }
            CorrAtom::FxO => Some(CorrAtom::OxF),
            CorrAtom::OxF => Some(CorrAtom::FxO),
            CorrAtom::Gphi | CorrAtom::I1 | CorrAtom::I2 => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Push,
    Pull,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Push => Direction::Pull,
            Direction::Pull => Direction::Push,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorrExpr {
    Atom(CorrAtom),
    /// polynomial in `a, g1, g2, c1, c2` times a correspondence
    Poly(GradedPoly, Box<CorrExpr>),
    Sum(Vec<CorrExpr>),
    Scale(Rational, Box<CorrExpr>),
    /// `Compose(A, B)` is `A o B`: apply `B` first
    Compose(Box<CorrExpr>, Box<CorrExpr>),
    Transpose(Box<CorrExpr>),
}

impl CorrExpr {
    pub fn atom(a: CorrAtom) -> Self {
        CorrExpr::Atom(a)
    }

    pub fn times_poly(p: GradedPoly, e: CorrExpr) -> Self {
        CorrExpr::Poly(p, Box::new(e))
    }

    pub fn scale(c: Rational, e: CorrExpr) -> Self {
        CorrExpr::Scale(c, Box::new(e))
    }

    pub fn compose(a: CorrExpr, b: CorrExpr) -> Self {
        CorrExpr::Compose(Box::new(a), Box::new(b))
    }

    pub fn transpose(e: CorrExpr) -> Self {
        CorrExpr::Transpose(Box::new(e))
    }

    pub fn sum(terms: Vec<CorrExpr>) -> Self {
        CorrExpr::Sum(terms)
    }

    /// Codimension in `F x F`; summands must agree.
    pub fn codim(&self) -> Result<i64, CorrError> {
        match self {
            CorrExpr::Atom(a) => Ok(a.codim()),
            CorrExpr::Poly(p, e) => {
                let inner = e.codim()?;
                if p.is_zero() {
                    return Ok(inner);
                }
                let d = p.homogeneous_degree().ok_or_else(|| {
                    CorrError::Grading(format!("coefficient {p} is not weighted homogeneous"))
                })?;
                Ok(inner + d as i64)
            }
            CorrExpr::Sum(ts) => {
                let Some(head) = ts.first() else {
                    return Ok(4);
                };
                let first = head.codim()?;
                for t in &ts[1..] {
                    let c = t.codim()?;
                    if c != first {
                        return Err(CorrError::Grading(format!(
                            "summand {t} has codimension {c}, expected {first}"
                        )));
                    }
                }
                Ok(first)
            }
            CorrExpr::Scale(_, e) | CorrExpr::Transpose(e) => e.codim(),
            CorrExpr::Compose(a, b) => Ok(a.codim()? + b.codim()? - 4),
        }
    }

    /// Transpose pushed down to atoms where possible; `g1 <-> g2`,
    /// `c1 <-> c2` in coefficients.
    pub fn transposed(&self) -> CorrExpr {
        match self {
            CorrExpr::Atom(a) => match a.transpose() {
                Some(t) => CorrExpr::Atom(t),
                None => CorrExpr::transpose(self.clone()),
            },
            CorrExpr::Poly(p, e) => CorrExpr::Poly(swap_factors(p), Box::new(e.transposed())),
            CorrExpr::Sum(ts) => CorrExpr::Sum(ts.iter().map(|t| t.transposed()).collect()),
            CorrExpr::Scale(c, e) => CorrExpr::Scale(c.clone(), Box::new(e.transposed())),
            CorrExpr::Compose(a, b) => CorrExpr::compose(b.transposed(), a.transposed()),
            CorrExpr::Transpose(e) => (**e).clone(),
        }
    }

    /// Substitutes a value for the parameter `a` in every coefficient.
    pub fn with_parameter(&self, a: &Rational) -> CorrExpr {
        match self {
            CorrExpr::Atom(_) => self.clone(),
            CorrExpr::Poly(p, e) => CorrExpr::Poly(
                p.substitute("a", a).expect("corr table has a"),
                Box::new(e.with_parameter(a)),
            ),
            CorrExpr::Sum(ts) => CorrExpr::Sum(ts.iter().map(|t| t.with_parameter(a)).collect()),
            CorrExpr::Scale(c, e) => CorrExpr::Scale(c.clone(), Box::new(e.with_parameter(a))),
            CorrExpr::Compose(x, y) => CorrExpr::compose(x.with_parameter(a), y.with_parameter(a)),
            CorrExpr::Transpose(e) => CorrExpr::transpose(e.with_parameter(a)),
        }
    }

    /// Flattens sums, scalars and polynomial factors into
    /// `(coefficient, atom)` pairs. `None` when a composition or an opaque
    /// transpose occurs.
    pub fn simple_terms(&self) -> Option<Vec<(GradedPoly, CorrAtom)>> {
        match self {
            CorrExpr::Atom(a) => Some(vec![(cconst(Rational::one()), *a)]),
            CorrExpr::Poly(p, e) => Some(
                e.simple_terms()?
                    .into_iter()
                    .map(|(q, a)| (p * &q, a))
                    .filter(|(q, _)| !q.is_zero())
                    .collect(),
            ),
            CorrExpr::Sum(ts) => {
                let mut out = Vec::new();
                for t in ts {
                    out.extend(t.simple_terms()?);
                }
                Some(out)
            }
            CorrExpr::Scale(c, e) => Some(
                e.simple_terms()?
                    .into_iter()
                    .map(|(q, a)| (q.scale(c), a))
                    .filter(|(q, _)| !q.is_zero())
                    .collect(),
            ),
            CorrExpr::Compose(..) | CorrExpr::Transpose(_) => None,
        }
    }
}

/// Coefficient of a term with the roles of the two factors exchanged.
pub fn swap_factors(p: &GradedPoly) -> GradedPoly {
    let vars = corr_vars();
    let mut out = GradedPoly::zero(&vars, None);
    for (e, c) in p.terms() {
        // table order: a, g1, g2, c1, c2
        let swapped = [e[0], e[2], e[1], e[4], e[3]];
        let mono = GradedPoly::monomial(
            &vars,
            None,
            c.clone(),
            &[
                ("a", swapped[0]),
                ("g1", swapped[1]),
                ("g2", swapped[2]),
                ("c1", swapped[3]),
                ("c2", swapped[4]),
            ],
        )
        .expect("corr table");
        out = &out + &mono;
    }
    out
}

fn needs_parens(p: &GradedPoly) -> bool {
    p.num_terms() > 1 || p.to_string().starts_with('-')
}

impl fmt::Display for CorrExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrExpr::Atom(a) => write!(f, "{}", a.name()),
            CorrExpr::Poly(p, e) => {
                if needs_parens(p) {
                    write!(f, "({p})*")?;
                } else {
                    write!(f, "{p}*")?;
                }
                write_operand(f, e)
            }
            CorrExpr::Sum(ts) => {
                if ts.is_empty() {
                    return write!(f, "0");
                }
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            CorrExpr::Scale(c, e) => {
                write!(f, "({})*", fmt_rational(c))?;
                write_operand(f, e)
            }
            CorrExpr::Compose(a, b) => {
                write_operand(f, a)?;
                write!(f, " @ ")?;
                write_operand(f, b)
            }
            CorrExpr::Transpose(e) => write!(f, "tr({e})"),
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &CorrExpr) -> fmt::Result {
    match e {
        CorrExpr::Atom(_) | CorrExpr::Transpose(_) => write!(f, "{e}"),
        _ => write!(f, "({e})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn codimensions() {
        let quad = &(&cpoly("g1") * &cpoly("g1")) + &(&cpoly("g2") * &cpoly("g2"));
        let e = CorrExpr::times_poly(quad, CorrExpr::atom(CorrAtom::I));
        assert_eq!(e.codim().unwrap(), 4);
        let bad = CorrExpr::sum(vec![
            CorrExpr::atom(CorrAtom::Diag),
            CorrExpr::atom(CorrAtom::I),
        ]);
        assert!(matches!(bad.codim(), Err(CorrError::Grading(_))));
        let comp = CorrExpr::compose(CorrExpr::atom(CorrAtom::I), CorrExpr::atom(CorrAtom::I));
        assert_eq!(comp.codim().unwrap(), 0);
    }

    #[test]
    fn transpose_swaps_factors() {
        let p = &cpoly("g1") * &cpoly("c2");
        let e = CorrExpr::times_poly(p, CorrExpr::atom(CorrAtom::FxO));
        let t = e.transposed();
        assert_eq!(t.to_string(), "g2*c1*OxF");
        assert_eq!(t.transposed(), e);
    }

    #[test]
    fn simple_terms_flatten() {
        let e = CorrExpr::sum(vec![
            CorrExpr::scale(int(4), CorrExpr::atom(CorrAtom::Diag)),
            CorrExpr::times_poly(&cpoly("a") * &cpoly("g1"), CorrExpr::atom(CorrAtom::Gh)),
        ]);
        let t = e.simple_terms().unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].0, cconst(int(4)));
        assert!(CorrExpr::compose(e.clone(), e).simple_terms().is_none());
    }
}

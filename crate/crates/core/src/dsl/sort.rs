//! Grading of expressions.

use std::fmt;

use crate::corr::CorrAtom;

use super::ast::{Atom, Expr, ExprKind, Func, Indexed};
use super::{DslError, ErrorKind};

/// Kind and grading of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Scalar,
    /// class on `F` of a codimension
    ClassF(i64),
    /// class on `X` of a codimension
    ClassX(i64),
    /// coefficient polynomial of a degree
    Coef(u32),
    /// correspondence on `F x F` of a codimension
    Corr(i64),
    /// operator on `CH_2 hom` built from `phi^*`, `phi_*`, `T`
    Op,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Scalar => write!(f, "scalar"),
            Sort::ClassF(k) => write!(f, "class on F of codimension {k}"),
            Sort::ClassX(k) => write!(f, "class on X of codimension {k}"),
            Sort::Coef(d) => write!(f, "coefficient of degree {d}"),
            Sort::Corr(k) => write!(f, "correspondence of codimension {k}"),
            Sort::Op => write!(f, "operator"),
        }
    }
}

pub fn atom_sort(a: Atom) -> Sort {
    match a {
        Atom::Fund => Sort::ClassF(0),
        Atom::G => Sort::ClassF(1),
        Atom::C => Sort::ClassF(2),
        Atom::Cx => Sort::ClassF(3),
        Atom::O => Sort::ClassF(4),
        Atom::XFund => Sort::ClassX(0),
        Atom::H => Sort::ClassX(1),
        Atom::XPt => Sort::ClassX(4),
        Atom::Corr(c) => Sort::Corr(c.codim()),
        Atom::Coef(v) => Sort::Coef(v.degree()),
        Atom::PhiPull | Atom::PhiPush | Atom::T => Sort::Op,
    }
}

fn indexed_sort(i: Indexed) -> Sort {
    match i {
        Indexed::S => Sort::ClassF(2),
        Indexed::Pt | Indexed::PhiPt => Sort::ClassF(4),
        Indexed::Line => Sort::ClassX(3),
    }
}

/// Sort of `e`, or a grading error located in `src`.
pub fn check(e: &Expr, src: &str) -> Result<Sort, DslError> {
    use Sort::*;
    let bad = |msg: String| DslError::at(src, e.span, ErrorKind::Grading, &msg);
    Ok(match &e.kind {
        ExprKind::Num(_) => Scalar,
        ExprKind::Atom(a) => atom_sort(*a),
        ExprKind::Indexed(i, _) => indexed_sort(*i),
        ExprKind::Neg(x) => check(x, src)?,
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let (sa, sb) = (check(a, src)?, check(b, src)?);
            match (sa, sb) {
                _ if sa == sb => sa,
                (Scalar, Op) | (Op, Scalar) => Op,
                (Scalar, Coef(0)) | (Coef(0), Scalar) => Coef(0),
                _ => return Err(bad(format!("cannot add {sa} and {sb}"))),
            }
        }
        ExprKind::Mul(a, b) => {
            let (sa, sb) = (check(a, src)?, check(b, src)?);
            match (sa, sb) {
                (Scalar, s) | (s, Scalar) => s,
                (ClassF(i), ClassF(j)) => ClassF(i + j),
                (ClassX(i), ClassX(j)) => ClassX(i + j),
                (Coef(i), Coef(j)) => Coef(i + j),
                (Coef(d), Corr(k)) | (Corr(k), Coef(d)) => Corr(k + d as i64),
                (Op, Op) => Op,
                _ => return Err(bad(format!("cannot multiply {sa} by {sb}"))),
            }
        }
        ExprKind::Pow(a, n) => match check(a, src)? {
            Scalar => Scalar,
            ClassF(i) => ClassF(if *n == 0 { 0 } else { i * *n as i64 }),
            ClassX(i) => ClassX(if *n == 0 { 0 } else { i * *n as i64 }),
            Coef(d) => Coef(d * n),
            Op => Op,
            s => return Err(bad(format!("cannot raise a {s} to a power"))),
        },
        ExprKind::Compose(a, b) => match (check(a, src)?, check(b, src)?) {
            (Corr(i), Corr(j)) => Corr(i + j - 4),
            (Op, Op) => Op,
            (sa, sb) => return Err(bad(format!("cannot compose {sa} with {sb}"))),
        },
        ExprKind::Transpose(a) => match check(a, src)? {
            Corr(k) => Corr(k),
            s => return Err(bad(format!("cannot transpose a {s}"))),
        },
        ExprKind::Call(f, args) => {
            let sorts = args
                .iter()
                .map(|a| check(a, src))
                .collect::<Result<Vec<_>, _>>()?;
            match (f, sorts.as_slice()) {
                (Func::Push | Func::Pull, [Corr(k), ClassF(j)]) => ClassF(j + k - 4),
                (Func::Psi, [ClassF(j)]) => ClassX(j - 1),
                (Func::Phi, [ClassX(j)]) => ClassF(j - 1),
                (Func::Deg, [ClassF(_)]) => Scalar,
                _ => {
                    let list = sorts
                        .iter()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                        .join(", ");
                    return Err(bad(format!("{} does not apply to ({list})", f.name())));
                }
            }
        }
    })
}

/// Correspondence atoms with their sort, used by generators.
pub fn corr_atoms() -> Vec<(CorrAtom, Sort)> {
    CorrAtom::ALL
        .iter()
        .map(|a| (*a, Sort::Corr(a.codim())))
        .collect()
}

//! Evaluation of checked expressions.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::rational::fmt_rational;
use crate::algebra::{nc_normalize, Alphabet, GradedPoly, NCPoly, Rational, RewriteSystem};
use crate::corr::expr::{cconst, cpoly, CorrExpr, Direction};
use crate::corr::{act_taut, operator_rules};
use crate::taut::{
    c, cx, degree, f_class, g, line, o, phi, phi_pt, psi, pt, s_line, taut_mul, taut_pow, x_fund,
    x_mul, x_pow, x_pt, ClassX, TautClassF,
};

use super::ast::{Atom, Expr, ExprKind, Func, Indexed};
use super::parser::parse;
use super::sort::check;
use super::{DslError, ErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    ClassF(TautClassF),
    ClassX(ClassX),
    Coef(GradedPoly),
    Corr(CorrExpr),
    /// normal form on `CH_2 hom` under the derived operator relations
    Op(NCPoly),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(r) => write!(f, "{}", fmt_rational(r)),
            Value::ClassF(u) => write!(f, "{u}"),
            Value::ClassX(u) => write!(f, "{u}"),
            Value::Coef(p) => write!(f, "{p}"),
            Value::Corr(e) => write!(f, "{e}"),
            Value::Op(p) => write!(f, "{}", op_to_string(p)),
        }
    }
}

/// Operator normal form in the input syntax.
pub fn op_to_string(p: &NCPoly) -> String {
    let alpha = p.alphabet();
    let name = |i: usize| match alpha.name(i) {
        "P" => "phi^*",
        "Q" => "phi_*",
        other => other,
    };
    let mut terms: Vec<(String, Rational)> = p
        .terms()
        .map(|(w, c)| {
            (
                w.iter().map(|&s| name(s)).collect::<Vec<_>>().join(" * "),
                c.clone(),
            )
        })
        .collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    let mut out = String::new();
    for (i, (word, coef)) in terms.iter().enumerate() {
        let neg = coef < &Rational::zero();
        let abs = if neg { -coef.clone() } else { coef.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let k = fmt_rational(&abs);
        let k = if abs.is_integer() {
            k
        } else {
            format!("({k})")
        };
        match (word.is_empty(), abs.is_one()) {
            (true, _) => out.push_str(&k),
            (false, true) => out.push_str(word),
            (false, false) => out.push_str(&format!("{k} * {word}")),
        }
    }
    out
}

/// Evaluation context: the operator rewrite system.
pub struct Evaluator {
    alphabet: Arc<Alphabet>,
    rules: RewriteSystem,
}

impl Evaluator {
    pub fn new() -> Result<Self, DslError> {
        let (alphabet, rules) = operator_rules().map_err(|e| DslError::eval(&e.to_string()))?;
        Ok(Evaluator { alphabet, rules })
    }

    /// Parses, checks and evaluates `src`.
    pub fn eval_str(&self, src: &str) -> Result<Value, DslError> {
        let e = parse(src)?;
        self.eval(&e, src)
    }

    pub fn eval(&self, e: &Expr, src: &str) -> Result<Value, DslError> {
        check(e, src)?;
        let v = self.value(e, src)?;
        Ok(match v {
            Value::Op(p) => Value::Op(self.normalize(&p, e, src)?),
            v => v,
        })
    }

    /// Equality with scalars read as constant operators.
    pub fn values_equal(&self, a: &Value, b: &Value) -> bool {
        match (a, b) {
            (Value::Op(p), Value::Scalar(r)) | (Value::Scalar(r), Value::Op(p)) => {
                *p == NCPoly::constant(&self.alphabet, r.clone())
            }
            (Value::Coef(p), Value::Scalar(r)) | (Value::Scalar(r), Value::Coef(p)) => {
                *p == cconst(r.clone())
            }
            _ => a == b,
        }
    }

    fn normalize(&self, p: &NCPoly, e: &Expr, src: &str) -> Result<NCPoly, DslError> {
        nc_normalize(p, &self.rules)
            .map_err(|err| DslError::at(src, e.span, ErrorKind::Eval, &err.to_string()))
    }

    fn op_sym(&self, name: &str) -> NCPoly {
        NCPoly::sym(&self.alphabet, name)
    }

    fn value(&self, e: &Expr, src: &str) -> Result<Value, DslError> {
        let fail = |msg: String| DslError::at(src, e.span, ErrorKind::Eval, &msg);
        Ok(match &e.kind {
            ExprKind::Num(r) => Value::Scalar(r.clone()),
            ExprKind::Atom(a) => match a {
                Atom::Fund => Value::ClassF(f_class()),
                Atom::G => Value::ClassF(g()),
                Atom::C => Value::ClassF(c()),
                Atom::Cx => Value::ClassF(cx()),
                Atom::O => Value::ClassF(o()),
                Atom::XFund => Value::ClassX(x_fund()),
                Atom::H => Value::ClassX(crate::taut::h()),
                Atom::XPt => Value::ClassX(x_pt()),
                Atom::Corr(c) => Value::Corr(CorrExpr::atom(*c)),
                Atom::Coef(v) => Value::Coef(cpoly(v.name())),
                Atom::PhiPull => Value::Op(self.op_sym("P")),
                Atom::PhiPush => Value::Op(self.op_sym("Q")),
                Atom::T => Value::Op(self.op_sym("T")),
            },
            ExprKind::Indexed(i, l) => match i {
                Indexed::S => Value::ClassF(s_line(l)),
                Indexed::Pt => Value::ClassF(pt(l)),
                Indexed::PhiPt => Value::ClassF(phi_pt(l)),
                Indexed::Line => Value::ClassX(line(l)),
            },
            ExprKind::Neg(x) => self.scale(self.value(x, src)?, &-Rational::one()),
            ExprKind::Add(a, b) => self
                .add(self.value(a, src)?, self.value(b, src)?, false)
                .map_err(fail)?,
            ExprKind::Sub(a, b) => self
                .add(self.value(a, src)?, self.value(b, src)?, true)
                .map_err(fail)?,
            ExprKind::Mul(a, b) => self
                .mul(self.value(a, src)?, self.value(b, src)?)
                .map_err(fail)?,
            ExprKind::Pow(a, n) => match self.value(a, src)? {
                Value::Scalar(r) => Value::Scalar((0..*n).fold(Rational::one(), |acc, _| acc * &r)),
                Value::ClassF(u) => {
                    Value::ClassF(taut_pow(&u, *n).map_err(|x| fail(x.to_string()))?)
                }
                Value::ClassX(u) => Value::ClassX(x_pow(&u, *n)),
                Value::Coef(p) => Value::Coef(p.pow(*n)),
                Value::Op(p) => Value::Op(p.pow(*n)),
                Value::Corr(_) => {
                    return Err(fail("cannot raise a correspondence to a power".into()))
                }
            },
            ExprKind::Compose(a, b) => match (self.value(a, src)?, self.value(b, src)?) {
                (Value::Corr(x), Value::Corr(y)) => Value::Corr(CorrExpr::compose(x, y)),
                (Value::Op(x), Value::Op(y)) => Value::Op(&x * &y),
                _ => return Err(fail("cannot compose these values".into())),
            },
            ExprKind::Transpose(a) => match self.value(a, src)? {
                Value::Corr(x) => Value::Corr(CorrExpr::transpose(x)),
                _ => return Err(fail("only correspondences have transposes".into())),
            },
            ExprKind::Call(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.value(a, src))
                    .collect::<Result<Vec<_>, _>>()?;
                match (f, vals.as_slice()) {
                    (Func::Push | Func::Pull, [Value::Corr(k), Value::ClassF(u)]) => {
                        let dir = if *f == Func::Push {
                            Direction::Push
                        } else {
                            Direction::Pull
                        };
                        Value::ClassF(act_taut(k, dir, u).map_err(|x| fail(x.to_string()))?)
                    }
                    (Func::Psi, [Value::ClassF(u)]) => {
                        Value::ClassX(psi(u).map_err(|x| fail(x.to_string()))?)
                    }
                    (Func::Phi, [Value::ClassX(v)]) => {
                        Value::ClassF(phi(v).map_err(|x| fail(x.to_string()))?)
                    }
                    (Func::Deg, [Value::ClassF(u)]) => Value::Scalar(degree(u)),
                    _ => return Err(fail(format!("bad arguments to {}", f.name()))),
                }
            }
        })
    }

    fn scale(&self, v: Value, k: &Rational) -> Value {
        match v {
            Value::Scalar(r) => Value::Scalar(r * k),
            Value::ClassF(u) => Value::ClassF(u.scale(k)),
            Value::ClassX(u) => Value::ClassX(u.scale(k)),
            Value::Coef(p) => Value::Coef(p.scale(k)),
            Value::Corr(e) => Value::Corr(CorrExpr::scale(k.clone(), e)),
            Value::Op(p) => Value::Op(p.scale(k)),
        }
    }

    fn add(&self, a: Value, b: Value, subtract: bool) -> Result<Value, String> {
        let b = if subtract {
            self.scale(b, &-Rational::one())
        } else {
            b
        };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
            (Value::ClassF(x), Value::ClassF(y)) => Value::ClassF(&x + &y),
            (Value::ClassX(x), Value::ClassX(y)) => Value::ClassX(&x + &y),
            (Value::Coef(x), Value::Coef(y)) => Value::Coef(&x + &y),
            (Value::Coef(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Coef(x)) => {
                Value::Coef(&x + &cconst(y))
            }
            (Value::Corr(x), Value::Corr(y)) => Value::Corr(CorrExpr::sum(vec![x, y])),
            (Value::Op(x), Value::Op(y)) => Value::Op(&x + &y),
            (Value::Op(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Op(x)) => {
                Value::Op(&x + &NCPoly::constant(&self.alphabet, y))
            }
            (a, b) => return Err(format!("cannot add {a} and {b}")),
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value, String> {
        Ok(match (a, b) {
            (Value::Scalar(x), v) | (v, Value::Scalar(x)) => self.scale(v, &x),
            (Value::ClassF(x), Value::ClassF(y)) => {
                Value::ClassF(taut_mul(&x, &y).map_err(|e| e.to_string())?)
            }
            (Value::ClassX(x), Value::ClassX(y)) => Value::ClassX(x_mul(&x, &y)),
            (Value::Coef(x), Value::Coef(y)) => Value::Coef(&x * &y),
            (Value::Coef(p), Value::Corr(e)) | (Value::Corr(e), Value::Coef(p)) => {
                Value::Corr(CorrExpr::times_poly(p, e))
            }
            (Value::Op(x), Value::Op(y)) => Value::Op(&x * &y),
            (a, b) => return Err(format!("cannot multiply {a} by {b}")),
        })
    }
}

/// Evaluates `src` with a fresh [`Evaluator`].
pub fn eval_str(src: &str) -> Result<Value, DslError> {
    Evaluator::new()?.eval_str(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> String {
        eval_str(s).unwrap().to_string()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(ev("g^2 * g^2"), "108*o");
        assert_eq!(ev("push(D, pt[l])"), "pt[l]");
        assert_eq!(ev("((1/3)*(g^2 - c))^2"), "5*o");
    }

    #[test]
    fn operators_normalize() {
        assert_eq!(ev("(phi^* - 4)*(phi^* + 2)"), "0");
        assert_eq!(ev("phi_* * phi^*"), "16");
        assert_eq!(ev("phi_* - phi^*"), "T");
    }

    #[test]
    fn mixed_terms() {
        assert_eq!(ev("deg(g^4)"), "108");
        assert_eq!(ev("Psi(g^2)"), "21*h");
        assert_eq!(ev("push(Gphi, o)"), "o");
        assert_eq!(ev("pull(Gphi, o)"), "16*o");
        assert_eq!(ev("g^2 * S[l]"), "24*o - 4*pt[l] + phi_[l]");
    }
}

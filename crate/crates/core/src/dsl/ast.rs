//! Syntax tree and printer.

use std::fmt;

use num_traits::Signed;

use crate::algebra::Rational;
use crate::corr::CorrAtom;

use super::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// classes on `F`: `F`, `g`, `c`, `Cx`, `o`
    Fund,
    G,
    C,
    Cx,
    O,
    /// classes on `X`: `X`, `h`, `x`
    XFund,
    H,
    XPt,
    Corr(CorrAtom),
    /// `g1`, `g2`, `c1`, `c2`, `a`
    Coef(CoefVar),
    PhiPull,
    PhiPush,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefVar {
    G1,
    G2,
    C1,
    C2,
    A,
}

impl CoefVar {
    pub const ALL: [CoefVar; 5] = [
        CoefVar::G1,
        CoefVar::G2,
        CoefVar::C1,
        CoefVar::C2,
        CoefVar::A,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoefVar::G1 => "g1",
            CoefVar::G2 => "g2",
            CoefVar::C1 => "c1",
            CoefVar::C2 => "c2",
            CoefVar::A => "a",
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            CoefVar::G1 | CoefVar::G2 => 1,
            CoefVar::C1 | CoefVar::C2 => 2,
            CoefVar::A => 0,
        }
    }
}

impl Atom {
    pub fn all() -> Vec<Atom> {
        let mut v = vec![
            Atom::Fund,
            Atom::G,
            Atom::C,
            Atom::Cx,
            Atom::O,
            Atom::XFund,
            Atom::H,
            Atom::XPt,
        ];
        v.extend(CorrAtom::ALL.iter().map(|a| Atom::Corr(*a)));
        v.extend(CoefVar::ALL.iter().map(|c| Atom::Coef(*c)));
        v.extend([Atom::PhiPull, Atom::PhiPush, Atom::T]);
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            Atom::Fund => "F",
            Atom::G => "g",
            Atom::C => "c",
            Atom::Cx => "Cx",
            Atom::O => "o",
            Atom::XFund => "X",
            Atom::H => "h",
            Atom::XPt => "x",
            Atom::Corr(a) => a.name(),
            Atom::Coef(c) => c.name(),
            Atom::PhiPull => "phi^*",
            Atom::PhiPush => "phi_*",
            Atom::T => "T",
        }
    }

    pub fn from_name(s: &str) -> Option<Atom> {
        Atom::all().into_iter().find(|a| a.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Indexed {
    /// `S[l]`
    S,
    /// `pt[l]`
    Pt,
    /// `phi_[l]`
    PhiPt,
    /// `line[l]`, the line as a curve on `X`
    Line,
}

impl Indexed {
    pub const ALL: [Indexed; 4] = [Indexed::S, Indexed::Pt, Indexed::PhiPt, Indexed::Line];

    pub fn name(self) -> &'static str {
        match self {
            Indexed::S => "S",
            Indexed::Pt => "pt",
            Indexed::PhiPt => "phi_",
            Indexed::Line => "line",
        }
    }

    pub fn from_name(s: &str) -> Option<Indexed> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    /// `push(C, u)`
    Push,
    /// `pull(C, u)`
    Pull,
    /// `Psi(u)`
    Psi,
    /// `Phi(v)`
    Phi,
    /// `deg(u)`
    Deg,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Push, Func::Pull, Func::Psi, Func::Phi, Func::Deg];

    pub fn name(self) -> &'static str {
        match self {
            Func::Push => "push",
            Func::Pull => "pull",
            Func::Psi => "Psi",
            Func::Phi => "Phi",
            Func::Deg => "deg",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Push | Func::Pull => 2,
            _ => 1,
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Num(Rational),
    Atom(Atom),
    Indexed(Indexed, String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `A @ B`: `B` first
    Compose(Box<Expr>, Box<Expr>),
    Transpose(Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// Node with its source span. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Num(a), Num(b)) => a == b,
            (Atom(a), Atom(b)) => a == b,
            (Indexed(a, l), Indexed(b, m)) => a == b && l == m,
            (Neg(a), Neg(b)) | (Transpose(a), Transpose(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) => {
                a == c && b == d
            }
            (Compose(a, b), Compose(c, d)) => a == c && b == d,
            (Pow(a, n), Pow(b, m)) => a == b && n == m,
            (Call(f, xs), Call(g, ys)) => f == g && xs == ys,
            _ => false,
        }
    }
}

impl Eq for Expr {}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    pub fn num(r: Rational) -> Self {
        Self::new(ExprKind::Num(r))
    }

    pub fn atom(a: Atom) -> Self {
        Self::new(ExprKind::Atom(a))
    }

    pub fn indexed(i: Indexed, label: &str) -> Self {
        Self::new(ExprKind::Indexed(i, label.to_string()))
    }

    pub fn neg(e: Expr) -> Self {
        Self::new(ExprKind::Neg(Box::new(e)))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Add(Box::new(a), Box::new(b)))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Sub(Box::new(a), Box::new(b)))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Mul(Box::new(a), Box::new(b)))
    }

    pub fn pow(a: Expr, n: u32) -> Self {
        Self::new(ExprKind::Pow(Box::new(a), n))
    }

    pub fn compose(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Compose(Box::new(a), Box::new(b)))
    }

    pub fn transpose(a: Expr) -> Self {
        Self::new(ExprKind::Transpose(Box::new(a)))
    }

    pub fn call(f: Func, args: Vec<Expr>) -> Self {
        Self::new(ExprKind::Call(f, args))
    }

    /// Binding strength: sums 1, products 2, compositions 3, postfix 4,
    /// primaries 5.
    fn prec(&self) -> u8 {
        match &self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) | ExprKind::Neg(_) => 1,
            ExprKind::Mul(..) => 2,
            ExprKind::Compose(..) => 3,
            ExprKind::Pow(..) => 4,
            ExprKind::Num(r) if r.is_negative() => 1,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match &self.kind {
            ExprKind::Num(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "({}/{})", r.numer(), r.denom())
                }
            }
            ExprKind::Atom(a) => write!(f, "{}", a.name()),
            ExprKind::Indexed(i, l) => write!(f, "{}[{l}]", i.name()),
            ExprKind::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 2)
            }
            ExprKind::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            ExprKind::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            ExprKind::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, " * ")?;
                b.write_at(f, 3)
            }
            ExprKind::Compose(a, b) => {
                a.write_at(f, 3)?;
                write!(f, " @ ")?;
                b.write_at(f, 4)
            }
            ExprKind::Pow(a, n) => {
                a.write_at(f, 4)?;
                write!(f, "^{n}")
            }
            ExprKind::Transpose(a) => {
                write!(f, "tr(")?;
                a.write_at(f, 0)?;
                write!(f, ")")
            }
            ExprKind::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.write_at(f, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Canonical text of an expression.
pub fn print(e: &Expr) -> String {
    e.to_string()
}

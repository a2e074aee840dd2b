//! Tautological cycles on `F` and `X`, the cylinder maps `Psi`, `Phi` and
//! the operators `I_*`, `(Gamma_h)^*`, `(Gamma_{h^2})^*` built from them.
//!
//! Classes on `F` are rational combinations of the basis
//! `[F]; g; g^2, c; g^3, g*c, C_x; [o]` together with formal symbols for a
//! line `l`: the surface `S_l` (codim 2) and the points `[l]`, `phi_*[l]`
//! (codim 4).

use std::fmt;

use thiserror::Error;

use crate::algebra::{int, rat, LinComb, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TautBasis {
    Fund,
    G,
    G2,
    C,
    G3,
    GC,
    Cx,
    /// surface of lines meeting `l`
    S(String),
    O,
    /// the point `[l]` of `F`
    Pt(String),
    /// `phi_*[l]`
    PhiPt(String),
}

impl TautBasis {
    pub fn codim(&self) -> u32 {
        match self {
            TautBasis::Fund => 0,
            TautBasis::G => 1,
            TautBasis::G2 | TautBasis::C | TautBasis::S(_) => 2,
            TautBasis::G3 | TautBasis::GC | TautBasis::Cx => 3,
            TautBasis::O | TautBasis::Pt(_) | TautBasis::PhiPt(_) => 4,
        }
    }

    /// Exponents `(i, j)` when the symbol is the monomial `g^i c^j`.
    fn gc_exponents(&self) -> Option<(u32, u32)> {
        match self {
            TautBasis::Fund => Some((0, 0)),
            TautBasis::G => Some((1, 0)),
            TautBasis::G2 => Some((2, 0)),
            TautBasis::C => Some((0, 1)),
            TautBasis::G3 => Some((3, 0)),
            TautBasis::GC => Some((1, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for TautBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TautBasis::Fund => write!(f, "F"),
            TautBasis::G => write!(f, "g"),
            TautBasis::G2 => write!(f, "g^2"),
            TautBasis::C => write!(f, "c"),
            TautBasis::G3 => write!(f, "g^3"),
            TautBasis::GC => write!(f, "g*c"),
            TautBasis::Cx => write!(f, "Cx"),
            TautBasis::S(l) => write!(f, "S[{l}]"),
            TautBasis::O => write!(f, "o"),
            TautBasis::Pt(l) => write!(f, "pt[{l}]"),
            TautBasis::PhiPt(l) => write!(f, "phi_[{l}]"),
        }
    }
}

/// Element of the modelled cycle ring of `F`.
pub type TautClassF = LinComb<TautBasis>;

/// Codimension-4 classes: `[o]`, `[l]`, `phi_*[l]`.
pub type FormalZeroCycle = LinComb<TautBasis>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XBasis {
    X,
    H,
    H2,
    H3,
    /// the line `l` as a curve on `X`
    Line(String),
    /// class of a point
    Pt,
}

impl XBasis {
    pub fn codim(&self) -> u32 {
        match self {
            XBasis::X => 0,
            XBasis::H => 1,
            XBasis::H2 => 2,
            XBasis::H3 | XBasis::Line(_) => 3,
            XBasis::Pt => 4,
        }
    }
}

impl fmt::Display for XBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XBasis::X => write!(f, "X"),
            XBasis::H => write!(f, "h"),
            XBasis::H2 => write!(f, "h^2"),
            XBasis::H3 => write!(f, "h^3"),
            XBasis::Line(l) => write!(f, "line[{l}]"),
            XBasis::Pt => write!(f, "x"),
        }
    }
}

/// Element of the modelled cycle ring of the cubic fourfold `X`.
pub type ClassX = LinComb<XBasis>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TautError {
    #[error("unspecified product {left} * {right}")]
    UnspecifiedProduct { left: String, right: String },
    #[error("{map} is not tabulated on {class}")]
    OutsideTable { map: &'static str, class: String },
    #[error("({0}, {1}, {2}) is not a declared triangle")]
    NotTriangle(String, String, String),
}

pub fn f_class() -> TautClassF {
    TautClassF::basis(TautBasis::Fund)
}
pub fn g() -> TautClassF {
    TautClassF::basis(TautBasis::G)
}
pub fn c() -> TautClassF {
    TautClassF::basis(TautBasis::C)
}
pub fn cx() -> TautClassF {
    TautClassF::basis(TautBasis::Cx)
}
pub fn o() -> TautClassF {
    TautClassF::basis(TautBasis::O)
}
pub fn s_line(l: &str) -> TautClassF {
    TautClassF::basis(TautBasis::S(l.to_string()))
}
pub fn pt(l: &str) -> TautClassF {
    TautClassF::basis(TautBasis::Pt(l.to_string()))
}
pub fn phi_pt(l: &str) -> TautClassF {
    TautClassF::basis(TautBasis::PhiPt(l.to_string()))
}

pub fn x_fund() -> ClassX {
    ClassX::basis(XBasis::X)
}
pub fn h() -> ClassX {
    ClassX::basis(XBasis::H)
}
pub fn x_pt() -> ClassX {
    ClassX::basis(XBasis::Pt)
}
pub fn line(l: &str) -> ClassX {
    ClassX::basis(XBasis::Line(l.to_string()))
}

/// `g^i c^j` for `i + 2j <= 4`, resolving top degree by the table
/// `g^4 = 108[o]`, `g^2 c = 45[o]`, `c^2 = 27[o]`.
pub fn gc_monomial(i: u32, j: u32) -> TautClassF {
    use TautBasis::*;
    let b = match (i, j) {
        (0, 0) => Fund,
        (1, 0) => G,
        (2, 0) => G2,
        (0, 1) => C,
        (3, 0) => G3,
        (1, 1) => GC,
        (4, 0) => return TautClassF::term(O, int(108)),
        (2, 1) => return TautClassF::term(O, int(45)),
        (0, 2) => return TautClassF::term(O, int(27)),
        _ => return TautClassF::zero(),
    };
    TautClassF::basis(b)
}

fn basis_mul(a: &TautBasis, b: &TautBasis) -> Result<TautClassF, TautError> {
    use TautBasis::*;
    if a.codim() + b.codim() > 4 {
        return Ok(TautClassF::zero());
    }
    if *a == Fund {
        return Ok(TautClassF::basis(b.clone()));
    }
    if *b == Fund {
        return Ok(TautClassF::basis(a.clone()));
    }
    if let (Some((i, j)), Some((k, l))) = (a.gc_exponents(), b.gc_exponents()) {
        return Ok(gc_monomial(i + k, j + l));
    }
    match (a, b) {
        (G, Cx) | (Cx, G) => Ok(TautClassF::term(O, int(6))),
        (S(_), C) | (C, S(_)) => Ok(TautClassF::term(O, int(6))),
        (S(l), G2) | (G2, S(l)) => Ok(&(&phi_pt(l) - &pt(l).scale(&int(4))) + &o().scale(&int(24))),
        _ => Err(TautError::UnspecifiedProduct {
            left: a.to_string(),
            right: b.to_string(),
        }),
    }
}

/// Product in the modelled ring of `F`. Classes of codimension above 4
/// vanish; products the tables do not determine are errors.
pub fn taut_mul(u: &TautClassF, v: &TautClassF) -> Result<TautClassF, TautError> {
    let mut out = TautClassF::zero();
    for (a, x) in u.iter() {
        for (b, y) in v.iter() {
            out = &out + &basis_mul(a, b)?.scale(&(x * y));
        }
    }
    Ok(out)
}

pub fn taut_pow(u: &TautClassF, n: u32) -> Result<TautClassF, TautError> {
    let mut out = f_class();
    for _ in 0..n {
        out = taut_mul(&out, u)?;
    }
    Ok(out)
}

/// Degree of the codimension-4 part.
pub fn degree(u: &TautClassF) -> Rational {
    u.filter(|b| b.codim() == 4).total()
}

/// Codimension-`k` part of a class.
pub fn graded_part(u: &TautClassF, k: u32) -> TautClassF {
    u.filter(|b| b.codim() == k)
}

/// Class of the surface of lines of second type: `5(g^2 - c)`.
pub fn sigma2_class() -> TautClassF {
    &gc_monomial(2, 0).scale(&int(5)) - &c().scale(&int(5))
}

fn xbasis_mul(a: &XBasis, b: &XBasis) -> ClassX {
    use XBasis::*;
    if a.codim() + b.codim() > 4 {
        return ClassX::zero();
    }
    let power = |b: &XBasis| match b {
        X => Some(0),
        H => Some(1),
        H2 => Some(2),
        H3 => Some(3),
        _ => None,
    };
    match (a, b) {
        (X, other) | (other, X) => ClassX::basis(other.clone()),
        (Line(_), H) | (H, Line(_)) => x_pt(),
        _ => match (power(a), power(b)) {
            (Some(i), Some(j)) => match i + j {
                2 => ClassX::basis(H2),
                3 => ClassX::basis(H3),
                4 => ClassX::term(Pt, int(3)),
                _ => unreachable!("codimension checked above"),
            },
            _ => ClassX::zero(),
        },
    }
}

/// Product in the modelled ring of `X`; `h^4 = 3x`.
pub fn x_mul(u: &ClassX, v: &ClassX) -> ClassX {
    let mut out = ClassX::zero();
    for (a, x) in u.iter() {
        for (b, y) in v.iter() {
            out = &out + &xbasis_mul(a, b).scale(&(x * y));
        }
    }
    out
}

pub fn x_pow(u: &ClassX, n: u32) -> ClassX {
    (0..n).fold(x_fund(), |acc, _| x_mul(&acc, u))
}

/// Cylinder map `Psi: CH^i(F) -> CH^{i-1}(X)`.
pub fn psi(u: &TautClassF) -> Result<ClassX, TautError> {
    use TautBasis::*;
    u.try_map(|b| match b {
        Fund => Ok(ClassX::zero()),
        G => Ok(ClassX::term(XBasis::X, int(6))),
        G2 => Ok(ClassX::term(XBasis::H, int(21))),
        G3 => Ok(ClassX::term(XBasis::H2, int(36))),
        O => Ok(ClassX::term(XBasis::H3, rat(1, 3))),
        Pt(l) => Ok(line(l)),
        other => Err(TautError::OutsideTable {
            map: "Psi",
            class: other.to_string(),
        }),
    })
}

/// Cylinder map `Phi: CH^i(X) -> CH^{i-1}(F)`.
pub fn phi(v: &ClassX) -> Result<TautClassF, TautError> {
    use XBasis::*;
    v.try_map(|b| {
        Ok(match b {
            X => TautClassF::zero(),
            H => f_class(),
            H2 => g(),
            H3 => &gc_monomial(2, 0) - &c(),
            Pt => cx(),
            Line(l) => s_line(l),
        })
    })
}

/// `I_* = Phi o Psi`.
pub fn i_star(u: &TautClassF) -> Result<TautClassF, TautError> {
    phi(&psi(u)?)
}

/// `(Gamma_h)^* u = Phi(h . Psi(u))`.
pub fn gamma_h_pull(u: &TautClassF) -> Result<TautClassF, TautError> {
    phi(&x_mul(&h(), &psi(u)?))
}

/// `(Gamma_{h^2})^* u = Phi(h^2 . Psi(u))`.
pub fn gamma_h2_pull(u: &TautClassF) -> Result<TautClassF, TautError> {
    phi(&x_mul(&x_pow(&h(), 2), &psi(u)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CylinderValue {
    OnF(TautClassF),
    OnX(ClassX),
}

impl fmt::Display for CylinderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylinderValue::OnF(u) => u.fmt(f),
            CylinderValue::OnX(v) => v.fmt(f),
        }
    }
}

/// One line of the cylinder table: the value computed through `Psi`/`Phi`
/// next to the tabulated value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderEntry {
    pub label: String,
    pub computed: CylinderValue,
    pub expected: CylinderValue,
}

impl CylinderEntry {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

/// The sixteen cylinder identities on powers of `g` (`g^4` is taken as
/// `108[o]`).
pub fn cylinder_table() -> Result<Vec<CylinderEntry>, TautError> {
    use CylinderValue::{OnF, OnX};
    let powers: Vec<TautClassF> = (1..=4).map(|k| gc_monomial(k, 0)).collect();
    let phi_h3 = &gc_monomial(2, 0) - &c();
    let n = |k: i64| int(k);
    let mut out = Vec::new();
    let mut push = |label: String, computed: CylinderValue, expected: CylinderValue| {
        out.push(CylinderEntry {
            label,
            computed,
            expected,
        });
    };

    let psi_expected = [
        ClassX::term(XBasis::X, n(6)),
        ClassX::term(XBasis::H, n(21)),
        ClassX::term(XBasis::H2, n(36)),
        ClassX::term(XBasis::H3, n(36)),
    ];
    for (k, (p, e)) in powers.iter().zip(psi_expected).enumerate() {
        push(format!("Psi(g^{})", k + 1), OnX(psi(p)?), OnX(e));
    }

    let i_expected = [
        TautClassF::zero(),
        f_class().scale(&n(21)),
        g().scale(&n(36)),
        phi_h3.scale(&n(36)),
    ];
    for (k, (p, e)) in powers.iter().zip(i_expected).enumerate() {
        push(format!("I_*(g^{})", k + 1), OnF(i_star(p)?), OnF(e));
    }

    let gh_expected = [
        f_class().scale(&n(6)),
        g().scale(&n(21)),
        phi_h3.scale(&n(36)),
        cx().scale(&n(108)),
    ];
    for (k, (p, e)) in powers.iter().zip(gh_expected).enumerate() {
        push(
            format!("(Gamma_h)^*(g^{})", k + 1),
            OnF(gamma_h_pull(p)?),
            OnF(e),
        );
    }

    let gh2_expected = [
        g().scale(&n(6)),
        phi_h3.scale(&n(21)),
        cx().scale(&n(108)),
        TautClassF::zero(),
    ];
    for (k, (p, e)) in powers.iter().zip(gh2_expected).enumerate() {
        push(
            format!("(Gamma_h^2)^*(g^{})", k + 1),
            OnF(gamma_h2_pull(p)?),
            OnF(e),
        );
    }
    Ok(out)
}

/// Edges of a triangle of lines, possibly with repeated edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleEdges {
    /// three distinct lines `(l1, l2, l3)`, product `S_{l1} . S_{l2}`
    Distinct(String, String, String),
    /// `(l, l, l')` for a line of first type, product `(S_l)^2`
    FirstType(String),
    /// `(l, l, l)`, product `(S_l)^2`
    Triple(String),
}

impl TriangleEdges {
    /// Classifies the edge list `[e1, e2, e3]`, the product being
    /// `S_{e1} . S_{e2}`.
    pub fn from_edges(e: [&str; 3]) -> Result<Self, TautError> {
        let bad = || TautError::NotTriangle(e[0].to_string(), e[1].to_string(), e[2].to_string());
        if e.iter().any(|s| s.is_empty()) {
            return Err(bad());
        }
        match (e[0] == e[1], e[1] == e[2], e[0] == e[2]) {
            (false, false, false) => Ok(TriangleEdges::Distinct(
                e[0].to_string(),
                e[1].to_string(),
                e[2].to_string(),
            )),
            (true, true, _) => Ok(TriangleEdges::Triple(e[0].to_string())),
            (true, false, _) => Ok(TriangleEdges::FirstType(e[0].to_string())),
            _ => Err(bad()),
        }
    }
}

/// Intersection of the surfaces attached to two edges of a triangle.
pub fn s_product(t: &TriangleEdges) -> FormalZeroCycle {
    let six_o = o().scale(&int(6));
    match t {
        TriangleEdges::Distinct(l1, l2, l3) => &(&(&six_o + &pt(l3)) - &pt(l1)) - &pt(l2),
        TriangleEdges::FirstType(l) => &(&six_o + &phi_pt(l)) - &pt(l).scale(&int(2)),
        TriangleEdges::Triple(l) => &six_o - &pt(l),
    }
}

/// `I_*[o] = Phi(Psi[o]) = (1/3)(g^2 - c)`.
pub fn i_star_o() -> Result<TautClassF, TautError> {
    i_star(&o())
}

/// True when `u` involves no formal line symbols.
pub fn is_tautological(u: &TautClassF) -> bool {
    u.iter()
        .all(|(b, _)| !matches!(b, TautBasis::S(_) | TautBasis::Pt(_) | TautBasis::PhiPt(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> TautClassF {
        gc_monomial(2, 0)
    }

    #[test]
    fn top_degree_table() {
        assert_eq!(taut_mul(&g2(), &g2()).unwrap(), o().scale(&int(108)));
        assert_eq!(taut_mul(&c(), &c()).unwrap(), o().scale(&int(27)));
        assert_eq!(taut_mul(&g2(), &c()).unwrap(), o().scale(&int(45)));
        assert_eq!(taut_mul(&g(), &cx()).unwrap(), o().scale(&int(6)));
        assert_eq!(taut_mul(&f_class(), &c()).unwrap(), c());
    }

    #[test]
    fn beyond_top_degree_vanishes() {
        assert!(taut_mul(&c(), &cx()).unwrap().is_zero());
        assert!(taut_mul(&gc_monomial(3, 0), &g2()).unwrap().is_zero());
    }

    #[test]
    fn formal_products() {
        let e = taut_mul(&s_line("l"), &g()).unwrap_err();
        assert!(matches!(e, TautError::UnspecifiedProduct { .. }));
        assert_eq!(taut_mul(&c(), &s_line("l")).unwrap(), o().scale(&int(6)));
        let z = taut_mul(&g2(), &s_line("l")).unwrap();
        assert_eq!(z.to_string(), "24*o - 4*pt[l] + phi_[l]");
        assert_eq!(degree(&z), int(21));
    }

    #[test]
    fn one_third_difference_squared() {
        let u = (&g2() - &c()).scale(&rat(1, 3));
        assert_eq!(taut_mul(&u, &u).unwrap(), o().scale(&int(5)));
        assert_eq!(i_star_o().unwrap(), u);
    }

    #[test]
    fn sigma2_products() {
        assert_eq!(sigma2_class().to_string(), "5*g^2 - 5*c");
        assert_eq!(
            taut_mul(&sigma2_class(), &g2()).unwrap(),
            o().scale(&int(315))
        );
        assert_eq!(
            taut_mul(&sigma2_class(), &c()).unwrap(),
            o().scale(&int(90))
        );
    }

    #[test]
    fn x_ring() {
        assert_eq!(x_pow(&h(), 4), x_pt().scale(&int(3)));
        assert!(x_pow(&h(), 5).is_zero());
        assert_eq!(x_mul(&h(), &line("l")), x_pt());
    }

    #[test]
    fn cylinder_entries() {
        let table = cylinder_table().unwrap();
        assert_eq!(table.len(), 16);
        for e in &table {
            assert!(e.holds(), "{}: {} vs {}", e.label, e.computed, e.expected);
        }
        assert_eq!(
            psi(&c()),
            Err(TautError::OutsideTable {
                map: "Psi",
                class: "c".into()
            })
        );
    }

    #[test]
    fn s_products_have_degree_five() {
        for t in [
            TriangleEdges::from_edges(["a", "b", "c"]).unwrap(),
            TriangleEdges::from_edges(["l", "l", "m"]).unwrap(),
            TriangleEdges::from_edges(["l", "l", "l"]).unwrap(),
        ] {
            assert_eq!(degree(&s_product(&t)), int(5));
        }
        assert!(TriangleEdges::from_edges(["l", "m", "l"]).is_err());
        assert_eq!(
            s_product(&TriangleEdges::Triple("l".into())).to_string(),
            "6*o - pt[l]"
        );
    }
}

//! Action of correspondences on tautological classes and on formal
//! zero-cycles of `F`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{int, GradedPoly, Rational};
use crate::taut::{
    c, degree, f_class, g, gamma_h2_pull, gamma_h_pull, i_star, i_star_o, o, phi_pt, taut_mul,
    taut_pow, TautBasis, TautClassF,
};

use super::expr::{corr_vars, CorrAtom, CorrExpr, Direction};
use super::CorrError;

fn atom_on_taut(atom: CorrAtom, dir: Direction, u: &TautClassF) -> Result<TautClassF, CorrError> {
    let deg = degree(u);
    let fund = u.coeff(&TautBasis::Fund);
    Ok(match (atom, dir) {
        (CorrAtom::Diag, _) => u.clone(),
        (CorrAtom::I, _) => i_star(u)?,
        (CorrAtom::Gh, _) => gamma_h_pull(u)?,
        (CorrAtom::Gh2, _) => gamma_h2_pull(u)?,
        (CorrAtom::FxF, _) => f_class().scale(&deg),
        (CorrAtom::FxO, Direction::Push) | (CorrAtom::OxF, Direction::Pull) => o().scale(&deg),
        (CorrAtom::FxO, Direction::Pull) | (CorrAtom::OxF, Direction::Push) => {
            f_class().scale(&fund)
        }
        (CorrAtom::Gphi, _) => phi_on_points(dir, u)?,
        (CorrAtom::I1 | CorrAtom::I2, _) => {
            return Err(CorrError::Unsupported {
                atom: atom.name(),
                context: "tautological classes",
            })
        }
    })
}

/// `phi_*` and `phi^*` on `[F]`, `[o]` and the points `[l]`:
/// `phi_*[o] = (I_*[o])^2 - 4[o]` and `phi^* phi_* = 16`.
fn phi_on_points(dir: Direction, u: &TautClassF) -> Result<TautClassF, CorrError> {
    let i_o = i_star_o()?;
    let push_o = &taut_mul(&i_o, &i_o)? - &o().scale(&int(4));
    let unsupported = || CorrError::Unsupported {
        atom: CorrAtom::Gphi.name(),
        context: "classes other than [F], [o], [l]",
    };
    u.try_map(|b| match (b, dir) {
        (TautBasis::Fund, Direction::Push) => Ok(f_class().scale(&int(16))),
        (TautBasis::Fund, Direction::Pull) => Ok(f_class()),
        (TautBasis::O, Direction::Push) => Ok(push_o.clone()),
        (TautBasis::O, Direction::Pull) => {
            let k = push_o.coeff(&TautBasis::O);
            if k.is_zero() || push_o.len() != 1 {
                return Err(unsupported());
            }
            Ok(o().scale(&(int(16) / k)))
        }
        (TautBasis::Pt(l), Direction::Push) => Ok(phi_pt(l)),
        _ => Err(unsupported()),
    })
}

/// `g^i c^j` as a class.
fn gc_factor(i: u32, j: u32) -> Result<TautClassF, CorrError> {
    Ok(taut_mul(&taut_pow(&g(), i)?, &taut_pow(&c(), j)?)?)
}

/// Exponents `(g1, g2, c1, c2)` and coefficient of each term of a
/// correspondence coefficient with the parameter already substituted.
fn numeric_terms(p: &GradedPoly) -> Result<Vec<([u32; 4], Rational)>, CorrError> {
    p.terms()
        .map(|(e, coef)| {
            if e[0] != 0 {
                return Err(CorrError::SymbolicParameter(p.to_string()));
            }
            Ok(([e[1], e[2], e[3], e[4]], coef.clone()))
        })
        .collect()
}

/// `Gamma_* u` or `Gamma^* u` for `Gamma = P(g1,g2,c1,c2) . atom`:
/// pushing multiplies by the first factor before and the second factor
/// after the atom, pulling the other way round.
fn poly_atom_on_taut(
    p: &GradedPoly,
    atom_action: &dyn Fn(Direction, &TautClassF) -> Result<TautClassF, CorrError>,
    dir: Direction,
    u: &TautClassF,
) -> Result<TautClassF, CorrError> {
    let mut out = TautClassF::zero();
    for ([g1, g2, c1, c2], coef) in numeric_terms(p)? {
        let (before, after) = match dir {
            Direction::Push => (gc_factor(g1, c1)?, gc_factor(g2, c2)?),
            Direction::Pull => (gc_factor(g2, c2)?, gc_factor(g1, c1)?),
        };
        let inner = atom_action(dir, &taut_mul(&before, u)?)?;
        out = &out + &taut_mul(&after, &inner)?.scale(&coef);
    }
    Ok(out)
}

/// Pushforward or pullback of a class of `F` along a correspondence.
/// Coefficients must not involve the parameter `a`.
pub fn act_taut(corr: &CorrExpr, dir: Direction, u: &TautClassF) -> Result<TautClassF, CorrError> {
    match corr {
        CorrExpr::Atom(a) => atom_on_taut(*a, dir, u),
        CorrExpr::Poly(p, e) => poly_atom_on_taut(p, &|d, v| act_taut(e, d, v), dir, u),
        CorrExpr::Sum(ts) => {
            let mut out = TautClassF::zero();
            for t in ts {
                out = &out + &act_taut(t, dir, u)?;
            }
            Ok(out)
        }
        CorrExpr::Scale(k, e) => Ok(act_taut(e, dir, u)?.scale(k)),
        CorrExpr::Compose(a, b) => match dir {
            Direction::Push => act_taut(a, dir, &act_taut(b, dir, u)?),
            Direction::Pull => act_taut(b, dir, &act_taut(a, dir, u)?),
        },
        CorrExpr::Transpose(e) => act_taut(e, dir.flip(), u),
    }
}

/// Action on a formal zero-cycle `sum r_i [l_i] + s[o] + ...`.
pub fn act_corr_on_point(
    corr: &CorrExpr,
    dir: Direction,
    cycle: &TautClassF,
) -> Result<TautClassF, CorrError> {
    if let Some((b, _)) = cycle.iter().find(|(b, _)| b.codim() != 4) {
        return Err(CorrError::NotZeroCycle(b.to_string()));
    }
    act_taut(corr, dir, cycle)
}

/// Like [`act_taut`] but with coefficients kept as polynomials in the
/// parameter `a`. Only sums of simple terms are accepted.
pub fn act_taut_symbolic(
    corr: &CorrExpr,
    dir: Direction,
    u: &TautClassF,
) -> Result<BTreeMap<TautBasis, GradedPoly>, CorrError> {
    let terms = corr.simple_terms().ok_or(CorrError::NotSimple)?;
    let vars = corr_vars();
    let mut out: BTreeMap<TautBasis, GradedPoly> = BTreeMap::new();
    for (p, atom) in terms {
        let groups = p.collect(&["g1", "g2", "c1", "c2"])?;
        for (exps, coef_in_a) in groups {
            let mono = GradedPoly::monomial(
                &vars,
                None,
                Rational::from_integer(1.into()),
                &[
                    ("g1", exps[0]),
                    ("g2", exps[1]),
                    ("c1", exps[2]),
                    ("c2", exps[3]),
                ],
            )?;
            let r = poly_atom_on_taut(&mono, &|d, v| atom_on_taut(atom, d, v), dir, u)?;
            for (b, k) in r.iter() {
                let entry = out
                    .entry(b.clone())
                    .or_insert_with(|| GradedPoly::zero(&vars, None));
                *entry = &*entry + &coef_in_a.scale(k);
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

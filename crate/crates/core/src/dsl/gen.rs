//! Random well-graded expressions.

use rand::rngs::StdRng;
use rand::RngExt;

use crate::algebra::{int, rat};
use crate::corr::CorrAtom;

use super::ast::{Atom, CoefVar, Expr, Func, Indexed};
use super::sort::Sort;

const LABELS: [&str; 4] = ["l", "m", "E1", "L12"];

fn pick<'a, T>(rng: &mut StdRng, xs: &'a [T]) -> &'a T {
    &xs[rng.random_range(0..xs.len())]
}

fn label(rng: &mut StdRng) -> &'static str {
    pick(rng, &LABELS)
}

fn leaf(rng: &mut StdRng, sort: Sort) -> Expr {
    match sort {
        Sort::Scalar => {
            if rng.random_range(0..3) == 0 {
                Expr::num(rat(rng.random_range(1..10), rng.random_range(2..7)))
            } else {
                Expr::num(int(rng.random_range(0..20)))
            }
        }
        Sort::ClassF(k) => {
            let l = label(rng);
            let options: Vec<Expr> = match k {
                0 => vec![Expr::atom(Atom::Fund)],
                1 => vec![Expr::atom(Atom::G)],
                2 => vec![
                    Expr::atom(Atom::C),
                    Expr::indexed(Indexed::S, l),
                    Expr::pow(Expr::atom(Atom::G), 2),
                ],
                3 => vec![Expr::atom(Atom::Cx)],
                4 => vec![
                    Expr::atom(Atom::O),
                    Expr::indexed(Indexed::Pt, l),
                    Expr::indexed(Indexed::PhiPt, l),
                ],
                _ => vec![Expr::pow(Expr::atom(Atom::G), k.max(0) as u32)],
            };
            pick(rng, &options).clone()
        }
        Sort::ClassX(k) => match k {
            0 => Expr::atom(Atom::XFund),
            1 => Expr::atom(Atom::H),
            3 => Expr::indexed(Indexed::Line, label(rng)),
            4 => Expr::atom(Atom::XPt),
            _ => Expr::pow(Expr::atom(Atom::H), k.max(0) as u32),
        },
        Sort::Coef(d) => {
            let options: Vec<CoefVar> = CoefVar::ALL
                .iter()
                .copied()
                .filter(|v| v.degree() == d)
                .collect();
            if options.is_empty() {
                Expr::pow(Expr::atom(Atom::Coef(CoefVar::G1)), d)
            } else {
                Expr::atom(Atom::Coef(*pick(rng, &options)))
            }
        }
        Sort::Corr(k) => {
            let options: Vec<CorrAtom> = CorrAtom::ALL
                .iter()
                .copied()
                .filter(|a| a.codim() == k)
                .collect();
            if options.is_empty() {
                // raise the codimension with a coefficient
                let d = if k >= 2 { (k - 2).min(2) } else { k.max(0) } as u32;
                Expr::mul(
                    leaf(rng, Sort::Coef(d)),
                    leaf(rng, Sort::Corr(k - d as i64)),
                )
            } else {
                Expr::atom(Atom::Corr(*pick(rng, &options)))
            }
        }
        Sort::Op => Expr::atom(*pick(rng, &[Atom::PhiPull, Atom::PhiPush, Atom::T])),
    }
}

/// A random expression of the given sort with nesting at most `depth`.
pub fn random_expr(rng: &mut StdRng, sort: Sort, depth: u32) -> Expr {
    if depth == 0 || rng.random_range(0..4) == 0 {
        return leaf(rng, sort);
    }
    let d = depth - 1;
    let choice = rng.random_range(0..8);
    match (choice, sort) {
        (0, _) => Expr::add(random_expr(rng, sort, d), random_expr(rng, sort, d)),
        (1, _) => Expr::sub(random_expr(rng, sort, d), random_expr(rng, sort, d)),
        (2, _) => Expr::neg(random_expr(rng, sort, d)),
        (3, _) => Expr::mul(random_expr(rng, Sort::Scalar, d), random_expr(rng, sort, d)),
        (4, Sort::ClassF(k)) if (0..=4).contains(&k) => {
            let i = rng.random_range(0..=k);
            Expr::mul(
                random_expr(rng, Sort::ClassF(i), d),
                random_expr(rng, Sort::ClassF(k - i), d),
            )
        }
        (4, Sort::ClassX(k)) if (0..=4).contains(&k) => {
            let i = rng.random_range(0..=k);
            Expr::mul(
                random_expr(rng, Sort::ClassX(i), d),
                random_expr(rng, Sort::ClassX(k - i), d),
            )
        }
        (4, Sort::Corr(4)) => Expr::mul(
            random_expr(rng, Sort::Coef(2), d),
            random_expr(rng, Sort::Corr(2), d),
        ),
        (4, Sort::Op) | (4, Sort::Scalar) => {
            Expr::mul(random_expr(rng, sort, d), random_expr(rng, sort, d))
        }
        (5, Sort::ClassF(k)) if (0..=3).contains(&k) => Expr::call(
            Func::Push,
            vec![
                random_expr(rng, Sort::Corr(4), d),
                random_expr(rng, Sort::ClassF(k), d),
            ],
        ),
        (5, Sort::ClassF(4)) => Expr::call(Func::Phi, vec![random_expr(rng, Sort::ClassX(5), d)]),
        (5, Sort::ClassX(k)) if (0..=3).contains(&k) => {
            Expr::call(Func::Psi, vec![random_expr(rng, Sort::ClassF(k + 1), d)])
        }
        (5, Sort::Scalar) => Expr::call(Func::Deg, vec![random_expr(rng, Sort::ClassF(4), d)]),
        (5, Sort::Corr(k)) => Expr::compose(
            random_expr(rng, Sort::Corr(4), d),
            random_expr(rng, Sort::Corr(k), d),
        ),
        (5, Sort::Op) => {
            Expr::compose(random_expr(rng, Sort::Op, d), random_expr(rng, Sort::Op, d))
        }
        (6, Sort::Corr(k)) => Expr::transpose(random_expr(rng, Sort::Corr(k), d)),
        (6, Sort::ClassF(2)) => Expr::pow(random_expr(rng, Sort::ClassF(1), d), 2),
        (6, Sort::ClassF(4)) => Expr::pow(random_expr(rng, Sort::ClassF(2), d), 2),
        (6, Sort::Op) | (6, Sort::Scalar) => {
            Expr::pow(random_expr(rng, sort, d), rng.random_range(0..4))
        }
        (7, Sort::ClassF(k)) if (0..=3).contains(&k) => Expr::call(
            Func::Pull,
            vec![
                random_expr(rng, Sort::Corr(4), d),
                random_expr(rng, Sort::ClassF(k), d),
            ],
        ),
        (7, Sort::Coef(k)) if k >= 1 => Expr::mul(
            random_expr(rng, Sort::Coef(1), d),
            random_expr(rng, Sort::Coef(k - 1), d),
        ),
        _ => leaf(rng, sort),
    }
}

/// A random sort among those the generator covers.
pub fn random_sort(rng: &mut StdRng) -> Sort {
    match rng.random_range(0..6) {
        0 => Sort::Scalar,
        1 => Sort::ClassF(rng.random_range(0..=4)),
        2 => Sort::ClassX(rng.random_range(0..=4)),
        3 => Sort::Coef(rng.random_range(0..=3)),
        4 => Sort::Corr(*pick(rng, &[2, 3, 4, 5, 6])),
        _ => Sort::Op,
    }
}

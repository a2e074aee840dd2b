//! Block model of the homologically trivial Chow groups of `F`.
//!
//! With ranks `(m, n, p, q)`:
//!
//! * `CH_2 hom = A(m) + B(n)`
//! * `CH_1 hom (x) Q = gA(m) + C(p)`
//! * `CH_0 = Q[o] + V0(m) + D(q)` where `V0 = g^2 A`
//!
//! The only structural maps are `I_*: CH_0 hom -> CH_2 hom` (`x_k -> a_k`,
//! `D -> 0`) and intersection with `g` (`a_k -> y_k`, `y_k -> -6 x_k`, zero
//! on `B` and `C`). Every `N_i` is a composite of these, and `phi^*`,
//! `phi_*` are affine in `N_i`.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{int, ExactMatrix, GradedPoly, Rational};

use super::expr::{CorrAtom, CorrExpr, Direction};
use super::CorrError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ranks {
    /// `A = V_2^{-2}`, also the rank of `gA` and `V_0^{-8}`
    pub m: usize,
    /// `B = V_2^4`
    pub n: usize,
    /// `C = V_1^4` modulo torsion
    pub p: usize,
    /// `D = V_0^4`
    pub q: usize,
}

impl Ranks {
    pub fn new(m: usize, n: usize, p: usize, q: usize) -> Self {
        Ranks { m, n, p, q }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowModel {
    pub ranks: Ranks,
    /// parameter of the key identity
    pub a: Rational,
}

/// Dimension argument `k` of `CH_k`; values outside `0..=4` denote zero
/// spaces.
pub type Dim = i64;

pub fn build_model(ranks: Ranks) -> ChowModel {
    ChowModel { ranks, a: int(-2) }
}

impl ChowModel {
    pub fn with_parameter(mut self, a: Rational) -> Self {
        self.a = a;
        self
    }

    /// Dimension of `CH_k(F)_hom` in the model.
    pub fn hom_dim(&self, k: Dim) -> usize {
        let Ranks { m, n, p, q } = self.ranks;
        match k {
            0 => m + q,
            1 => m + p,
            2 => m + n,
            _ => 0,
        }
    }

    /// `I_*: CH_k hom -> CH_{k+2} hom`.
    pub fn i_star(&self, k: Dim) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.hom_dim(k + 2), self.hom_dim(k));
        if k == 0 {
            for i in 0..self.ranks.m {
                out.set(i, i, int(1));
            }
        }
        out
    }

    /// Intersection with `g`: `CH_k hom -> CH_{k-1} hom`.
    pub fn g(&self, k: Dim) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.hom_dim(k - 1), self.hom_dim(k));
        let m = self.ranks.m;
        match k {
            2 => (0..m).for_each(|i| out.set(i, i, int(1))),
            1 => (0..m).for_each(|i| out.set(i, i, int(-6))),
            _ => {}
        }
        out
    }

    /// Intersection with `g^j` as a composite.
    pub fn g_pow(&self, k: Dim, j: u32) -> ExactMatrix {
        let mut out = ExactMatrix::identity(self.hom_dim(k));
        for s in 0..j as Dim {
            out = &self.g(k - s) * &out;
        }
        out
    }

    /// `N_k` on `CH_k hom`: `g^2 I_*` on `CH_0`, `g I_* g` on `CH_1`,
    /// `I_* g^2` on `CH_2`.
    pub fn n(&self, k: Dim) -> ExactMatrix {
        match k {
            0 => &self.g_pow(2, 2) * &self.i_star(0),
            1 => &(&self.g(2) * &self.i_star(0)) * &self.g(1),
            2 => &self.i_star(0) * &self.g_pow(2, 2),
            _ => ExactMatrix::zeros(0, 0),
        }
    }

    /// `phi^*` on `CH_k hom`.
    pub fn phi_pull(&self, k: Dim) -> ExactMatrix {
        let n = self.n(k);
        match k {
            0 => n.scale(&int(2)).shift(&int(4)),
            1 => n.scale(&(int(1) - &self.a)).shift(&int(4)),
            2 => n.shift(&int(4)),
            _ => n,
        }
    }

    /// `phi_*` on `CH_k hom`.
    pub fn phi_push(&self, k: Dim) -> ExactMatrix {
        let n = self.n(k);
        match k {
            0 => n.shift(&int(4)),
            1 => n.scale(&(int(1) - &self.a)).shift(&int(4)),
            2 => n.scale(&int(2)).shift(&int(4)),
            _ => n,
        }
    }

    /// Dimension of the full `CH_0` model, `[o]` first.
    pub fn ch0_dim(&self) -> usize {
        1 + self.hom_dim(0)
    }

    /// `phi^*` on all of `CH_0`: `16` on `[o]`.
    pub fn phi_pull_ch0(&self) -> ExactMatrix {
        ExactMatrix::block_diag(&[&ExactMatrix::scalar(1, &int(16)), &self.phi_pull(0)])
    }

    /// `phi_*` on all of `CH_0`: `1` on `[o]`.
    pub fn phi_push_ch0(&self) -> ExactMatrix {
        ExactMatrix::block_diag(&[&ExactMatrix::scalar(1, &int(1)), &self.phi_push(0)])
    }

    /// `a^2 - a - 1`.
    pub fn i2_factor(&self) -> Rational {
        &self.a * &self.a - &self.a - int(1)
    }

    fn atom_action(&self, atom: CorrAtom, dir: Direction, k: Dim) -> ExactMatrix {
        let target = k + 4 - atom.codim();
        let zero = ExactMatrix::zeros(self.hom_dim(target), self.hom_dim(k));
        match atom {
            CorrAtom::Diag => ExactMatrix::identity(self.hom_dim(k)),
            CorrAtom::I => self.i_star(k),
            CorrAtom::Gphi => match dir {
                Direction::Pull => self.phi_pull(k),
                Direction::Push => self.phi_push(k),
            },
            CorrAtom::I2 => match (dir, k) {
                (Direction::Push, 2) | (Direction::Pull, 0) => self.n(k).scale(&self.i2_factor()),
                _ => zero,
            },
            CorrAtom::Gh
            | CorrAtom::Gh2
            | CorrAtom::I1
            | CorrAtom::FxO
            | CorrAtom::OxF
            | CorrAtom::FxF => zero,
        }
    }

    fn poly_action(
        &self,
        p: &GradedPoly,
        inner: &CorrExpr,
        dir: Direction,
        k: Dim,
    ) -> Result<(Dim, ExactMatrix), CorrError> {
        let p = p.substitute("a", &self.a)?;
        let codim = inner.codim()?;
        let shift = 4 - codim - p.homogeneous_degree().unwrap_or(0) as i64;
        let target = k + shift;
        let mut out = ExactMatrix::zeros(self.hom_dim(target), self.hom_dim(k));
        for (e, coef) in p.terms() {
            // c kills homologically trivial classes in the model
            if e[3] > 0 || e[4] > 0 {
                continue;
            }
            let (before, after) = match dir {
                Direction::Push => (e[1], e[2]),
                Direction::Pull => (e[2], e[1]),
            };
            let pre = self.g_pow(k, before);
            let (mid_dim, mid) = self.hom_action(inner, dir, k - before as Dim)?;
            let post = self.g_pow(mid_dim, after);
            let term = &(&post * &mid) * &pre;
            out = &out + &term.scale(coef);
        }
        Ok((target, out))
    }

    /// Matrix of `Gamma_*` or `Gamma^*` from `CH_k hom` to
    /// `CH_{k + 4 - codim} hom`.
    pub fn hom_action(
        &self,
        corr: &CorrExpr,
        dir: Direction,
        k: Dim,
    ) -> Result<(Dim, ExactMatrix), CorrError> {
        match corr {
            CorrExpr::Atom(a) => Ok((k + 4 - a.codim(), self.atom_action(*a, dir, k))),
            CorrExpr::Poly(p, e) => self.poly_action(p, e, dir, k),
            CorrExpr::Sum(ts) => {
                let target = k + 4 - corr.codim()?;
                let mut out = ExactMatrix::zeros(self.hom_dim(target), self.hom_dim(k));
                for t in ts {
                    let (_, m) = self.hom_action(t, dir, k)?;
                    out = &out + &m;
                }
                Ok((target, out))
            }
            CorrExpr::Scale(c, e) => {
                let (t, m) = self.hom_action(e, dir, k)?;
                Ok((
                    t,
                    if c.is_zero() {
                        ExactMatrix::zeros(m.rows(), m.cols())
                    } else {
                        m.scale(c)
                    },
                ))
            }
            CorrExpr::Compose(a, b) => match dir {
                Direction::Push => {
                    let (mid, mb) = self.hom_action(b, dir, k)?;
                    let (t, ma) = self.hom_action(a, dir, mid)?;
                    Ok((t, &ma * &mb))
                }
                Direction::Pull => {
                    let (mid, ma) = self.hom_action(a, dir, k)?;
                    let (t, mb) = self.hom_action(b, dir, mid)?;
                    Ok((t, &mb * &ma))
                }
            },
            CorrExpr::Transpose(e) => self.hom_action(e, dir.flip(), k),
        }
    }

    /// Coordinates of the `A`-chain block in `CH_k hom` (`A`, `gA` or `V0`).
    pub fn chain_block(&self, k: Dim) -> std::ops::Range<usize> {
        if (0..=2).contains(&k) {
            0..self.ranks.m
        } else {
            0..0
        }
    }

    /// Coordinates of the `N`-kernel block in `CH_k hom` (`D`, `C` or `B`).
    pub fn kernel_block(&self, k: Dim) -> std::ops::Range<usize> {
        self.ranks.m..self.hom_dim(k)
    }
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> ExactMatrix {
    let mut v = ExactMatrix::zeros(n, 1);
    v.set(i, 0, int(1));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::minimal_polynomial;

    #[test]
    fn n_squares_to_minus_six_n() {
        let model = build_model(Ranks::new(2, 1, 1, 2));
        for k in 0..=2 {
            let n = model.n(k);
            assert_eq!(&n * &n, n.scale(&int(-6)), "grade {k}");
        }
    }

    #[test]
    fn small_model_minimal_polynomial() {
        let model = build_model(Ranks::new(1, 1, 1, 1));
        assert_eq!(model.n(2), ExactMatrix::from_i64(&[&[-6, 0], &[0, 0]]));
        assert_eq!(
            minimal_polynomial(&model.n(2)).unwrap().to_string(),
            "x^2 + 6*x"
        );
    }

    #[test]
    fn empty_model() {
        let model = build_model(Ranks::new(0, 0, 0, 0));
        assert_eq!(model.phi_pull_ch0(), ExactMatrix::from_i64(&[&[16]]));
        assert_eq!(model.hom_dim(2), 0);
    }
}

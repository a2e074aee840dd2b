//! Verification of the operator identities on the block model and in the
//! free algebra over `phi^*`, `phi_*`, `N`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{
    int, minimal_polynomial, nc_normalize, rat, Alphabet, ExactMatrix, GradedPoly, NCPoly,
    Rational, RewriteSystem, Variable,
};
use crate::check::Report;
use crate::chern::{chern_input, key_identity};
use crate::taut::{degree, i_star_o, o, s_product, taut_mul, TautBasis, TautClassF, TriangleEdges};

use super::expr::{cpoly, CorrAtom, CorrExpr, Direction};
use super::model::{unit, ChowModel, Dim};
use super::CorrError;

/// Operator whose minimal polynomial is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MinpolyTarget {
    /// `phi^*` on `CH_2 hom`
    PullCh2,
    /// `phi^*` on `CH_1 hom (x) Q`
    PullCh1,
    /// `phi^*` on all of `CH_0`
    PullCh0,
    /// `phi_*` on `CH_2 hom`
    PushCh2,
}

impl MinpolyTarget {
    pub const ALL: [MinpolyTarget; 4] = [
        MinpolyTarget::PullCh0,
        MinpolyTarget::PullCh1,
        MinpolyTarget::PullCh2,
        MinpolyTarget::PushCh2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MinpolyTarget::PullCh2 => "ch2",
            MinpolyTarget::PullCh1 => "ch1",
            MinpolyTarget::PullCh0 => "ch0",
            MinpolyTarget::PushCh2 => "ch2-push",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn matrix(self, model: &ChowModel) -> ExactMatrix {
        match self {
            MinpolyTarget::PullCh2 => model.phi_pull(2),
            MinpolyTarget::PullCh1 => model.phi_pull(1),
            MinpolyTarget::PullCh0 => model.phi_pull_ch0(),
            MinpolyTarget::PushCh2 => model.phi_push(2),
        }
    }

    /// Expected eigenvalues with the rank of their block.
    pub fn expected_blocks(self, model: &ChowModel) -> Vec<(Rational, usize)> {
        let r = model.ranks;
        match self {
            MinpolyTarget::PullCh2 => vec![(int(4), r.n), (int(-2), r.m)],
            MinpolyTarget::PullCh1 => vec![(int(4), r.p), (int(6) * &model.a - int(2), r.m)],
            MinpolyTarget::PullCh0 => vec![(int(16), 1), (int(-8), r.m), (int(4), r.q)],
            MinpolyTarget::PushCh2 => vec![(int(4), r.n), (int(-8), r.m)],
        }
    }

    /// True when every expected eigenvalue block is nonempty.
    pub fn all_blocks_present(self, model: &ChowModel) -> bool {
        self.expected_blocks(model).iter().all(|(_, k)| *k > 0)
    }
}

impl fmt::Display for MinpolyTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Minimal polynomial of one target operator, compared with the product of
/// `x - lambda` over the nonempty eigenvalue blocks.
pub fn verify_minpoly(model: &ChowModel, target: MinpolyTarget) -> Result<Report, CorrError> {
    let mut report = Report::new();
    let found = minimal_polynomial(&target.matrix(model))?;
    let roots: Vec<Rational> = target
        .expected_blocks(model)
        .into_iter()
        .filter(|(_, k)| *k > 0)
        .map(|(l, _)| l)
        .collect();
    let expected = GradedPoly::from_roots("x", &roots);
    report.check_eq(format!("minpoly {target}"), &found, &expected);
    Ok(report)
}

pub fn verify_minpolys(model: &ChowModel) -> Result<Report, CorrError> {
    let mut report = Report::new();
    for t in MinpolyTarget::ALL {
        report.extend(verify_minpoly(model, t)?);
    }
    Ok(report)
}

/// Rational roots of a univariate polynomial, with multiplicity.
/// Fails when the polynomial does not split into linear factors over `Q`.
pub fn rational_roots(p: &GradedPoly) -> Result<Vec<Rational>, CorrError> {
    let mut coeffs = p.univariate_coeffs();
    let mut roots = Vec::new();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        roots.push(Rational::zero());
        coeffs.remove(0);
    }
    while coeffs.len() > 1 {
        let root = find_rational_root(&coeffs).ok_or_else(|| CorrError::NotSplit(p.to_string()))?;
        coeffs = deflate(&coeffs, &root);
        roots.push(root);
    }
    Ok(roots)
}

fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides by `x - r` (synthetic division); ascending coefficients.
fn deflate(coeffs: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (1..=n).rev() {
        carry = &coeffs[i] + &carry * r;
        out[i - 1] = carry.clone();
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn find_rational_root(coeffs: &[Rational]) -> Option<Rational> {
    // clear denominators
    let lcm = coeffs.iter().fold(num_bigint::BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let ints: Vec<Rational> = coeffs
        .iter()
        .map(|c| c * Rational::from_integer(lcm.clone()))
        .collect();
    let c0 = ints.first()?.abs().to_integer().to_u64()?;
    let lead = ints.last()?.abs().to_integer().to_u64()?;
    for num in divisors(c0) {
        for den in divisors(lead) {
            for sign in [1i64, -1] {
                let cand = Rational::new((sign * num as i64).into(), (den as i64).into());
                if eval_poly(coeffs, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenprojector {
    pub eigenvalue: Rational,
    pub matrix: ExactMatrix,
}

/// `phi^*` on the space used for grade `k`: all of `CH_0` for `k = 0`,
/// `CH_k hom` otherwise.
pub fn phi_pull_on_grade(model: &ChowModel, k: Dim) -> Result<ExactMatrix, CorrError> {
    match k {
        0 => Ok(model.phi_pull_ch0()),
        1 | 2 => Ok(model.phi_pull(k)),
        _ => Err(CorrError::BadGrade(k)),
    }
}

/// Spectral projectors of `phi^*` by Lagrange interpolation over the roots
/// of its minimal polynomial, sorted by eigenvalue.
pub fn eigenprojectors(model: &ChowModel, k: Dim) -> Result<Vec<Eigenprojector>, CorrError> {
    let m = phi_pull_on_grade(model, k)?;
    let mut roots = rational_roots(&minimal_polynomial(&m)?)?;
    roots.sort();
    let n = m.rows();
    let mut out = Vec::new();
    for (i, lambda) in roots.iter().enumerate() {
        let mut e = ExactMatrix::identity(n);
        for (j, mu) in roots.iter().enumerate() {
            if i != j {
                let factor = m.shift(&-mu).scale(&(Rational::one() / (lambda - mu)));
                e = &e * &factor;
            }
        }
        out.push(Eigenprojector {
            eigenvalue: lambda.clone(),
            matrix: e,
        });
    }
    Ok(out)
}

/// Declared eigenvalue blocks of grade `k` as coordinate ranges in the
/// space of [`phi_pull_on_grade`].
fn declared_blocks(model: &ChowModel, k: Dim) -> Vec<(Rational, std::ops::Range<usize>)> {
    let m = model.ranks.m;
    let hom = model.hom_dim(k);
    match k {
        0 => vec![
            (int(16), 0..1),
            (int(-8), 1..1 + m),
            (int(4), 1 + m..1 + hom),
        ],
        1 => vec![(int(6) * &model.a - int(2), 0..m), (int(4), m..hom)],
        _ => vec![(int(-2), 0..m), (int(4), m..hom)],
    }
}

/// Idempotence, orthogonality, completeness and images of the spectral
/// projectors in grades 0, 1, 2.
pub fn verify_eigenprojectors(model: &ChowModel) -> Result<Report, CorrError> {
    let mut report = Report::new();
    for k in 0..=2 {
        let projs = eigenprojectors(model, k)?;
        let n = phi_pull_on_grade(model, k)?.rows();
        let mut total = ExactMatrix::zeros(n, n);
        for (i, p) in projs.iter().enumerate() {
            let e = &p.matrix;
            report.check(
                format!("ch{k} e[{}] idempotent", p.eigenvalue),
                &(e * e) == e,
                "",
            );
            for q in &projs[i + 1..] {
                report.check(
                    format!("ch{k} e[{}] e[{}] = 0", p.eigenvalue, q.eigenvalue),
                    (e * &q.matrix).is_zero() && (&q.matrix * e).is_zero(),
                    "",
                );
            }
            total = &total + e;
        }
        report.check(
            format!("ch{k} projectors sum to identity"),
            total == ExactMatrix::identity(n),
            "",
        );
        for (lambda, range) in declared_blocks(model, k) {
            if range.is_empty() {
                continue;
            }
            let Some(p) = projs.iter().find(|p| p.eigenvalue == lambda) else {
                report.check(
                    format!("ch{k} block {lambda} has a projector"),
                    false,
                    "eigenvalue missing",
                );
                continue;
            };
            let fixes = range.clone().all(|i| {
                let v = unit(n, i);
                &p.matrix * &v == v
            });
            let rank_ok = p.matrix.rank() == range.len();
            report.check(
                format!("ch{k} image of e[{lambda}] is its declared block"),
                fixes && rank_ok,
                format!("rank {}", p.matrix.rank()),
            );
        }
    }
    // closed forms on CH_2 hom
    let n2 = model.n(2);
    let e4 = n2.scale(&rat(1, 6)).shift(&int(1));
    let em2 = n2.scale(&rat(-1, 6));
    let projs = eigenprojectors(model, 2)?;
    for p in &projs {
        let closed = if p.eigenvalue == int(4) { &e4 } else { &em2 };
        report.check(
            format!("ch2 e[{}] matches closed form", p.eigenvalue),
            &p.matrix == closed,
            "",
        );
    }
    Ok(report)
}

/// `I_* phi_* = phi^* I_*` from `CH_0 hom` to `CH_2 hom`.
pub fn verify_fourier(model: &ChowModel) -> Report {
    let mut report = Report::new();
    let i = model.i_star(0);
    let left = &i * &model.phi_push(0);
    let right = &model.phi_pull(2) * &i;
    report.check(
        "I_* phi_* = phi^* I_*",
        left == right,
        format!("{}x{}", left.rows(), left.cols()),
    );
    let d = model.kernel_block(0);
    let zero_on_d = d.clone().all(|c| {
        let v = unit(model.hom_dim(0), c);
        (&left * &v).is_zero() && (&right * &v).is_zero()
    });
    report.check(
        "both sides vanish on V_0^4",
        zero_on_d,
        format!("{} columns", d.len()),
    );
    report
}

/// `phi_* phi^* = phi^* phi_* = 16` on `CH_0` and `CH_2 hom`.
pub fn verify_action16(model: &ChowModel) -> Report {
    let mut report = Report::new();
    let pairs = [
        ("ch0", model.phi_push_ch0(), model.phi_pull_ch0()),
        ("ch2", model.phi_push(2), model.phi_pull(2)),
    ];
    for (name, push, pull) in pairs {
        let sixteen = ExactMatrix::scalar(push.rows(), &int(16));
        report.check(
            format!("phi_* phi^* = 16 on {name}"),
            &push * &pull == sixteen,
            "",
        );
        report.check(
            format!("phi^* phi_* = 16 on {name}"),
            &pull * &push == sixteen,
            "",
        );
    }
    let n1 = model.n(1);
    let on_ch1 = &model.phi_push(1) * &model.phi_pull(1);
    let coefficient = (int(1) - &model.a) * (int(2) + int(6) * &model.a);
    report.check(
        "phi_* phi^* on ch1 is 16 + (1-a)(2+6a) N",
        on_ch1 == n1.scale(&coefficient).shift(&int(16)),
        format!("coefficient {coefficient}"),
    );
    report
}

/// Intertwining by `g` and transport of eigenvalues `-2 -> 6a-2 -> -8`.
pub fn verify_intertwining(model: &ChowModel) -> Report {
    let mut report = Report::new();
    let (g2, g1) = (model.g(2), model.g(1));
    report.check("g N_2 = N_1 g", &g2 * &model.n(2) == &model.n(1) * &g2, "");
    report.check("g N_1 = N_0 g", &g1 * &model.n(1) == &model.n(0) * &g1, "");

    let kernel = g2.kernel();
    let b = model.kernel_block(2);
    let kernel_is_b = kernel.len() == b.len()
        && kernel
            .iter()
            .all(|v| model.chain_block(2).all(|i| v.get(i, 0).is_zero()));
    report.check(
        "ker(g on CH_2 hom) = V_2^4",
        kernel_is_b,
        format!("dim {}", kernel.len()),
    );

    let g_sq = &g1 * &g2;
    let m = model.ranks.m;
    let restricted = g_sq.block(0, 0, m, m);
    report.check(
        "g^2: V_2^-2 -> V_0^-8 is bijective",
        restricted.rank() == m,
        format!("rank {}", restricted.rank()),
    );
    let n_dim0 = model.hom_dim(0);
    let minus_six = (0..m).all(|k| {
        let x = unit(n_dim0, k);
        &g_sq * &(&model.i_star(0) * &x) == x.scale(&int(-6))
    });
    report.check("g^2 I_* x = -6x on V_0^-8", minus_six, "");

    let lambda1 = int(6) * &model.a - int(2);
    let transport = (0..m).all(|k| {
        let sigma = unit(model.hom_dim(2), k);
        let g_sigma = &g2 * &sigma;
        let g2_sigma = &g1 * &g_sigma;
        &model.phi_pull(2) * &sigma == sigma.scale(&int(-2))
            && &model.phi_pull(1) * &g_sigma == g_sigma.scale(&lambda1)
            && &model.phi_pull(0) * &g2_sigma == g2_sigma.scale(&int(-8))
    });
    report.check(
        format!("eigenvalues transport -2 -> {lambda1} -> -8"),
        transport,
        format!("{m} vectors"),
    );
    let b_killed = b
        .clone()
        .all(|k| (&g2 * &unit(model.hom_dim(2), k)).is_zero());
    report.check("g kills V_2^4", b_killed, "");
    report
}

/// Actions of `(a11 g1^2 + a12 g1 g2 + a22 g2^2) I` and of pure polynomial
/// terms on the model.
pub fn verify_simple_terms(model: &ChowModel) -> Result<Report, CorrError> {
    let mut report = Report::new();
    let (a11, a12, a22) = (int(2), int(3), int(5));
    let quad = &(&(&cpoly("g1") * &cpoly("g1")).scale(&a11)
        + &(&cpoly("g1") * &cpoly("g2")).scale(&a12))
        + &(&cpoly("g2") * &cpoly("g2")).scale(&a22);
    let gamma = CorrExpr::times_poly(quad, CorrExpr::atom(CorrAtom::I));
    let expected = [
        (0, Direction::Push, &a22),
        (0, Direction::Pull, &a11),
        (1, Direction::Push, &a12),
        (1, Direction::Pull, &a12),
        (2, Direction::Push, &a11),
        (2, Direction::Pull, &a22),
    ];
    for (k, dir, coef) in expected {
        let (_, m) = model.hom_action(&gamma, dir, k)?;
        report.check_eq(
            format!("{dir:?} of quadratic I-term on ch{k}"),
            &m,
            &model.n(k).scale(coef),
        );
    }
    report.note(
        "pullback on CH_2 hom uses a22 I_*(g^2 . a); the form a22 I_*(g . a) would not preserve dimension",
    );
    let g1 = cpoly("g1");
    let g2 = cpoly("g2");
    let c1 = cpoly("c1");
    let pure = &(&(&g1 * &g1) * &c1) + &(&(&g1 * &g2) * &(&g1 * &g2));
    let gamma2 = CorrExpr::times_poly(pure, CorrExpr::atom(CorrAtom::FxF));
    for k in 0..=2 {
        for dir in [Direction::Push, Direction::Pull] {
            let (_, m) = model.hom_action(&gamma2, dir, k)?;
            report.check(
                format!("{dir:?} of a pure polynomial on ch{k} is 0"),
                m.is_zero(),
                "",
            );
        }
    }
    Ok(report)
}

/// Checks the key identity `Gphi + I1 + I2 = RHS` on every grade and in
/// both directions of the model.
pub fn verify_key_identity_on_model(model: &ChowModel) -> Result<Report, CorrError> {
    let mut report = Report::new();
    let key = key_identity();
    let lhs = key.lhs.with_parameter(&model.a);
    let rhs = key.rhs.with_parameter(&model.a);
    for k in 0..=2 {
        for dir in [Direction::Push, Direction::Pull] {
            let (_, l) = model.hom_action(&lhs, dir, k)?;
            let (_, r) = model.hom_action(&rhs, dir, k)?;
            report.check_eq(format!("key identity {dir:?} on ch{k}"), &l, &r);
        }
    }
    Ok(report)
}

/// `(I_2)_*` on `CH_2 hom`, solved from the key identity and
/// `phi_* = phi^* + N_2`: the result is `(a^2 - a - 1) N_2`.
pub fn derive_i2_action(model: &ChowModel) -> Result<(Rational, Report), CorrError> {
    let mut report = Report::new();
    let key = key_identity();
    let rhs = key.rhs.with_parameter(&model.a);
    let (_, r) = model.hom_action(&rhs, Direction::Push, 2)?;
    let phi_push = &model.phi_pull(2) + &model.n(2);
    let (_, i1) = model.hom_action(&CorrExpr::atom(CorrAtom::I1), Direction::Push, 2)?;
    let i2 = &(&r - &phi_push) - &i1;
    let coefficient = model.i2_factor();
    report.check_eq(
        "(I_2)_* = (a^2-a-1) N_2",
        &i2,
        &model.n(2).scale(&coefficient),
    );
    report.check_eq(
        "phi_* = phi^* + N_2 matches the model",
        &phi_push,
        &model.phi_push(2),
    );
    Ok((coefficient, report))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiOfO {
    pub i_star_o: TautClassF,
    pub square: TautClassF,
    pub phi_push_o: TautClassF,
    pub phi_pull_o: TautClassF,
}

/// `I_*[o] = (1/3)(g^2 - c)`, its square `5[o] = phi_*[o] + 4[o]`, hence
/// `phi_*[o] = [o]` and `phi^*[o] = 16[o]`.
pub fn verify_phi_of_o() -> Result<(PhiOfO, Report), CorrError> {
    let mut report = Report::new();
    let u = i_star_o()?;
    let square = taut_mul(&u, &u)?;
    let phi_push_o = &square - &o().scale(&int(4));
    // phi^*[o] = lambda [o] with phi_*(lambda [o]) = 16[o]
    let push_coefficient = phi_push_o.coeff(&TautBasis::O);
    let phi_pull_o = o().scale(&(int(16) / push_coefficient));
    report.check_eq(
        "I_*[o] = (1/3)(g^2 - c)",
        &u.to_string(),
        &"(1/3)*g^2 - (1/3)*c".to_string(),
    );
    report.check_eq("(I_*[o])^2 = 5[o]", &square, &o().scale(&int(5)));
    report.check_eq("phi_*[o] = [o]", &phi_push_o, &o());
    report.check_eq("phi^*[o] = 16[o]", &phi_pull_o, &o().scale(&int(16)));
    Ok((
        PhiOfO {
            i_star_o: u,
            square,
            phi_push_o,
            phi_pull_o,
        },
        report,
    ))
}

/// Scalar actions on the holomorphic forms `omega`, `omega^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub phi_pull_omega: i64,
    pub phi_pull_omega2: i64,
    pub i_g2_omega: i64,
}

impl Default for CharacterTable {
    fn default() -> Self {
        CharacterTable {
            phi_pull_omega: -2,
            phi_pull_omega2: 4,
            i_g2_omega: -6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoisinAlpha {
    pub alpha: Rational,
    pub character: Rational,
    pub gamma1: GradedPoly,
}

/// `alpha` from `(I^2)_*[l] = (S_l)^2 = 6[o] + phi_*[l] - 2[l]`: on
/// `omega^2` a point `[l]` contributes `1`, `phi_*[l]` contributes the
/// `phi^*` character and `[o]` contributes nothing. `Gamma_1` is the part
/// of `c_2(N)` free of `h`.
pub fn voisin_alpha(table: &CharacterTable) -> Result<VoisinAlpha, CorrError> {
    let sq = s_product(&TriangleEdges::FirstType("l".into()));
    debug_assert_eq!(degree(&sq), int(5));
    let mut character = Rational::zero();
    for (b, c) in sq.iter() {
        let weight = match b {
            TautBasis::Pt(_) => int(1),
            TautBasis::PhiPt(_) => int(table.phi_pull_omega2),
            _ => Rational::zero(),
        };
        character += c * weight;
    }
    let input = chern_input();
    let groups = input.c2_n.collect(&["h"])?;
    let h_free = groups
        .get(&vec![0])
        .cloned()
        .unwrap_or_else(|| GradedPoly::zero(input.c2_n.vars(), None));
    let gamma1 = rename_tilde(&h_free)?;
    Ok(VoisinAlpha {
        alpha: character.clone(),
        character,
        gamma1,
    })
}

/// Rewrites a polynomial in `gt1, gt2` as one in `g1, g2`.
fn rename_tilde(p: &GradedPoly) -> Result<GradedPoly, CorrError> {
    let vars = vec![Variable::new("g1", 1), Variable::new("g2", 1)];
    let mut out = GradedPoly::zero(&vars, None);
    for (e, c) in p.terms() {
        let names: Vec<&str> = p.vars().iter().map(|v| v.name.as_str()).collect();
        let mut powers = Vec::new();
        for (name, k) in names.iter().zip(e) {
            match (*name, *k) {
                (_, 0) => {}
                ("gt1", k) => powers.push(("g1", k)),
                ("gt2", k) => powers.push(("g2", k)),
                (other, _) => {
                    return Err(CorrError::Grading(format!("unexpected variable {other}")))
                }
            }
        }
        out = &out + &GradedPoly::monomial(&vars, None, c.clone(), &powers)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub claim: String,
    pub input: String,
    pub normal_form: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
    pub rules: Vec<String>,
    pub alphabet: Arc<Alphabet>,
    /// final rules over `P`, `Q`, `T`
    pub system: RewriteSystem,
    /// `(I_2)_* = k T` with `k` a polynomial in `a`
    pub i2_coefficient: GradedPoly,
    pub i2_at_minus_two: Rational,
}

impl Derivation {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        for s in &self.steps {
            r.check(
                s.claim.clone(),
                s.holds,
                format!("{} -> {}", s.input, s.normal_form),
            );
        }
        r
    }
}

fn rule_string(lhs: &[usize], rhs: &NCPoly) -> String {
    format!("{} -> {}", rhs.word_to_string(lhs), rhs)
}

/// Derives the operator relations on `CH_2 hom` in the free algebra over
/// `P = phi^*`, `Q = phi_*`, `T = I_*(g^2 . -)` from the axioms
/// `P = 4 + T`, `QT = -8T`, `QP = 16`.
pub fn derive_operator_relations() -> Result<Derivation, CorrError> {
    let alpha = Alphabet::new(&["P", "Q", "T"], &[("P", "Q")])?;
    let sym = |s: &str| NCPoly::sym(&alpha, s);
    let k = |c: i64| NCPoly::constant(&alpha, int(c));
    let (p, q, t) = (sym("P"), sym("Q"), sym("T"));
    let mut steps = Vec::new();
    let axioms = RewriteSystem::new(&alpha, 64)
        .with_rule(&["P"], &k(4) + &t)?
        .with_rule(&["Q", "T"], t.scale(&int(-8)))?;

    // QP = 16 becomes a linear relation for Q
    let rel = &(&q * &p) - &k(16);
    let nf = nc_normalize(&rel, &axioms)?;
    let q_rhs = nf
        .solve_for(&alpha.parse_word(&["Q"])?)
        .ok_or(CorrError::NotSimple)?;
    steps.push(DerivationStep {
        claim: "phi_* = 4 + 2T".into(),
        input: rel.to_string(),
        normal_form: format!("{nf}  =>  Q = {q_rhs}"),
        holds: q_rhs == &k(4) + &t.scale(&int(2)),
    });
    let mut rules = RewriteSystem::new(&alpha, 64).with_rule(&["P"], &k(4) + &t)?;
    rules.add_rule(alpha.parse_word(&["Q"])?, q_rhs)?;

    let rel = &(&q * &t) + &t.scale(&int(8));
    let nf = nc_normalize(&rel, &rules)?;
    let (lead, rhs) = nf.orient().ok_or(CorrError::NotSimple)?;
    steps.push(DerivationStep {
        claim: "T^2 = -6T".into(),
        input: rel.to_string(),
        normal_form: format!("{nf}  =>  {}", rule_string(&lead, &rhs)),
        holds: lead == alpha.parse_word(&["T", "T"])? && rhs == t.scale(&int(-6)),
    });
    rules.add_rule(lead, rhs)?;

    let claims: Vec<(&str, NCPoly)> = vec![
        ("T = phi_* - phi^*", &(&q - &p) - &t),
        ("(phi^* - 4)(phi^* + 2) = 0", &(&p - &k(4)) * &(&p + &k(2))),
        ("(phi_* - 4)(phi_* + 8) = 0", &(&q - &k(4)) * &(&q + &k(8))),
        ("phi_* phi^* = 16", &(&q * &p) - &k(16)),
        ("phi^* phi_* = 16", &(&p * &q) - &k(16)),
        ("T^2 + 6T = 0", &(&t * &t) + &t.scale(&int(6))),
        ("phi_* T = -8T", &(&q * &t) + &t.scale(&int(8))),
    ];
    for (claim, poly) in claims {
        let nf = nc_normalize(&poly, &rules)?;
        steps.push(DerivationStep {
            claim: claim.into(),
            input: poly.to_string(),
            normal_form: nf.to_string(),
            holds: nf.is_zero(),
        });
    }

    // phi_* = 4 + (a^2 - a + 1) T - (I_2)_*, so (I_2)_* = (a^2 - a + 1) T - (phi_* - 4)
    let avars = [Variable::new("a", 0)];
    let a = GradedPoly::var(&avars, None, "a");
    let one = GradedPoly::one(&avars, None);
    let push_coeff = &(&(&a * &a) - &a) + &one;
    let q_minus_4 = nc_normalize(&(&q - &k(4)), &rules)?;
    let t_coeff_of_q = q_minus_4.coeff(&alpha.parse_word(&["T"])?);
    let i2_coefficient = &push_coeff - &GradedPoly::constant(&avars, None, t_coeff_of_q);
    let i2_at_minus_two = i2_coefficient.substitute("a", &int(-2))?.coeff(&[]);
    let i2 = &t.scale(&int(7)) - &q_minus_4;
    let i2_nf = nc_normalize(&i2, &rules)?;
    steps.push(DerivationStep {
        claim: "(I_2)_* = 5T at a = -2".into(),
        input: i2.to_string(),
        normal_form: i2_nf.to_string(),
        holds: i2_nf == t.scale(&i2_at_minus_two) && i2_at_minus_two == int(5),
    });

    let rule_strings = rules
        .rules()
        .iter()
        .map(|r| rule_string(&r.lhs, &r.rhs))
        .collect();
    Ok(Derivation {
        steps,
        rules: rule_strings,
        alphabet: alpha,
        system: rules,
        i2_coefficient,
        i2_at_minus_two,
    })
}

/// The derived rewrite system on `P = phi^*`, `Q = phi_*`, `T`.
pub fn operator_rules() -> Result<(Arc<Alphabet>, RewriteSystem), CorrError> {
    let d = derive_operator_relations()?;
    Ok((d.alphabet, d.system))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::model::{build_model, Ranks};

    #[test]
    fn roots_of_split_polynomial() {
        let p = GradedPoly::from_roots("x", &[int(16), int(-8), int(4)]);
        let mut r = rational_roots(&p).unwrap();
        r.sort();
        assert_eq!(r, vec![int(-8), int(4), int(16)]);
        let q = GradedPoly::from_roots("x", &[rat(1, 2), int(0)]);
        assert_eq!(rational_roots(&q).unwrap().len(), 2);
        let irreducible = GradedPoly::univariate("x", &[int(-2), int(0), int(1)]);
        assert!(rational_roots(&irreducible).is_err());
    }

    #[test]
    fn model_checks_hold() {
        let model = build_model(Ranks::new(2, 1, 2, 1));
        for r in [
            verify_minpolys(&model).unwrap(),
            verify_eigenprojectors(&model).unwrap(),
            verify_fourier(&model),
            verify_action16(&model),
            verify_intertwining(&model),
            verify_simple_terms(&model).unwrap(),
            verify_key_identity_on_model(&model).unwrap(),
            derive_i2_action(&model).unwrap().1,
        ] {
            assert!(r.all_hold(), "{r}");
        }
    }

    #[test]
    fn derivation_closes() {
        let d = derive_operator_relations().unwrap();
        assert!(d.all_hold(), "{:?}", d.steps);
        assert_eq!(d.i2_at_minus_two, int(5));
        assert_eq!(d.i2_coefficient.to_string(), "a^2 - a - 1");
    }

    #[test]
    fn alpha_is_two() {
        let v = voisin_alpha(&CharacterTable::default()).unwrap();
        assert_eq!(v.alpha, int(2));
        assert_eq!(v.gamma1.to_string(), "g1^2 + g1*g2 + g2^2");
    }
}

//! Chow-Kunneth projectors: Beilinson lifting, the transcendental
//! projectors in the free algebra, and a full projector set on the block
//! model.

use std::ops::Range;
use std::sync::Arc;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    int, nc_normalize, rat, AlgebraError, Alphabet, ExactMatrix, NCPoly, Rational, RewriteSystem,
};
use crate::check::Report;
use crate::corr::model::{unit, ChowModel, Dim};
use crate::corr::verify::eigenprojectors;
use crate::corr::CorrError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotiveError {
    #[error("p^2 - p is not nilpotent: f^{power} v != 0 for v = e_{column}")]
    NotNilpotent { power: usize, column: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Corr(#[from] CorrError),
}

/// Symbols of the correspondence algebra used for projectors.
pub fn motive_alphabet() -> Arc<Alphabet> {
    Alphabet::new(
        &["q", "qt", "p", "pt", "f", "r", "I", "It", "G"],
        &[("q", "qt"), ("p", "pt"), ("I", "It")],
    )
    .expect("valid alphabet")
}

/// `p = -(1/6) r It G r`.
pub fn p_expression(alpha: &Arc<Alphabet>) -> NCPoly {
    let s = |n: &str| NCPoly::sym(alpha, n);
    (&(&(&s("r") * &s("It")) * &s("G")) * &s("r")).scale(&rat(-1, 6))
}

/// `q^2 -> q`, `qt^2 -> qt`, `q qt -> 0`.
pub fn projector_rules(alpha: &Arc<Alphabet>) -> Result<RewriteSystem, AlgebraError> {
    let q = NCPoly::sym(alpha, "q");
    let qt = NCPoly::sym(alpha, "qt");
    RewriteSystem::new(alpha, 64)
        .with_rule(&["q", "q"], q)?
        .with_rule(&["qt", "qt"], qt)?
        .with_rule(&["q", "qt"], NCPoly::zero(alpha))
}

/// `pi^{2,tr} = qt (1 - q/2)`.
pub fn pi2_tr(alpha: &Arc<Alphabet>) -> NCPoly {
    let q = NCPoly::sym(alpha, "q");
    let qt = NCPoly::sym(alpha, "qt");
    &qt * &(&NCPoly::one(alpha) - &q.scale(&rat(1, 2)))
}

/// `pi^{6,tr} = (1 - qt/2) q`.
pub fn pi6_tr(alpha: &Arc<Alphabet>) -> NCPoly {
    let q = NCPoly::sym(alpha, "q");
    let qt = NCPoly::sym(alpha, "qt");
    &(&NCPoly::one(alpha) - &qt.scale(&rat(1, 2))) * &q
}

/// Idempotence and orthogonality of `pi^{2,tr}`, `pi^{6,tr}` modulo the
/// three projector relations, under every ordering of the rules.
pub fn verify_pi_tr_relations() -> Result<Report, MotiveError> {
    let alpha = motive_alphabet();
    let base = projector_rules(&alpha)?;
    let (p2, p6) = (pi2_tr(&alpha), pi6_tr(&alpha));
    let claims = [
        ("pi2^2 = pi2", &(&p2 * &p2) - &p2),
        ("pi6^2 = pi6", &(&p6 * &p6) - &p6),
        ("pi2 pi6 = 0", &p2 * &p6),
        ("pi6 pi2 = 0", &p6 * &p2),
    ];
    let mut report = Report::new();
    for order in permutations3() {
        let rules = base.permuted(&order);
        for (name, poly) in &claims {
            let nf = nc_normalize(poly, &rules)?;
            report.check(
                format!("{name} (rule order {order:?})"),
                nf.is_zero(),
                nf.to_string(),
            );
        }
    }
    report.check_eq("pi2^t = pi6", &p2.transpose(), &p6);
    let p = p_expression(&alpha);
    let s = |n: &str| NCPoly::sym(&alpha, n);
    let expected_pt = (&(&(&s("r") * &s("G")) * &s("I")) * &s("r")).scale(&rat(-1, 6));
    report.check_eq("p^t = -(1/6) r G I r", &p.transpose(), &expected_pt);
    Ok(report)
}

fn permutations3() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub q: ExactMatrix,
    /// number of updates that changed the matrix
    pub iterations: usize,
    /// least `k` with `(p^2 - p)^k = 0`
    pub nilpotency_index: usize,
}

impl Lift {
    /// `ceil(log2 index) + 1`.
    pub fn iteration_bound(&self) -> usize {
        let mut bound = 0;
        while (1usize << bound) < self.nilpotency_index {
            bound += 1;
        }
        bound + 1
    }
}

/// Least `k <= n` with `f^k = 0`, or a witness column of `f^n`.
pub fn nilpotency_index(f: &ExactMatrix) -> Result<usize, MotiveError> {
    let n = f.rows();
    if f.is_zero() {
        return Ok(if n == 0 { 0 } else { 1 });
    }
    let mut power = f.clone();
    for k in 2..=n {
        power = &power * f;
        if power.is_zero() {
            return Ok(k);
        }
    }
    let column = (0..n)
        .find(|&j| (0..n).any(|i| !power.get(i, j).is_zero()))
        .unwrap_or(0);
    Err(MotiveError::NotNilpotent { power: n, column })
}

/// `p <- p + (1 - 2p)(p^2 - p)` until `p^2 = p`.
pub fn beilinson_lift(p: &ExactMatrix) -> Result<Lift, MotiveError> {
    if !p.is_square() {
        return Err(MotiveError::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    let n = p.rows();
    let f = &(p * p) - p;
    let index = nilpotency_index(&f)?;
    let mut q = p.clone();
    let mut iterations = 0;
    loop {
        let defect = &(&q * &q) - &q;
        if defect.is_zero() {
            break;
        }
        let one_minus_2q = q.scale(&int(-2)).shift(&int(1));
        q = &q + &(&one_minus_2q * &defect);
        iterations += 1;
        if iterations > n + 1 {
            break;
        }
    }
    Ok(Lift {
        q,
        iterations,
        nilpotency_index: index,
    })
}

/// A `n x n` integer matrix with eigenvalues in `{0, 1}` whose defect
/// `p^2 - p` has nilpotency index exactly `index` (`1 <= index <= n`),
/// conjugated by a random unimodular matrix.
pub fn random_defective_idempotent(rng: &mut StdRng, n: usize, index: usize) -> ExactMatrix {
    assert!(index >= 1 && index <= n, "index out of range");
    let mut j = ExactMatrix::zeros(n, n);
    let one_block = rng.random_range(0..2) == 0;
    // one Jordan block of size `index`, the rest split randomly
    let mut eig = vec![if one_block { 1 } else { 0 }; index];
    eig.extend((index..n).map(|_| rng.random_range(0..2i64)));
    for (i, e) in eig.iter().enumerate() {
        j.set(i, i, int(*e));
    }
    for i in 1..index {
        j.set(i - 1, i, int(1));
    }
    let (s, s_inv) = random_unimodular(rng, n);
    &(&s * &j) * &s_inv
}

/// Product of random elementary matrices and its inverse.
fn random_unimodular(rng: &mut StdRng, n: usize) -> (ExactMatrix, ExactMatrix) {
    let mut s = ExactMatrix::identity(n);
    let mut s_inv = ExactMatrix::identity(n);
    if n < 2 {
        return (s, s_inv);
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let mut k = rng.random_range(0..n - 1);
        if k >= i {
            k += 1;
        }
        let c = rng.random_range(-2i64..=2);
        let mut e = ExactMatrix::identity(n);
        e.set(i, k, int(c));
        let mut e_inv = ExactMatrix::identity(n);
        e_inv.set(i, k, int(-c));
        s = &s * &e;
        s_inv = &e_inv * &s_inv;
    }
    (s, s_inv)
}

/// Lifts `count` random matrices of size 6 with defect index 4, and of
/// random size and index, drawn from `seed`.
pub fn verify_random_lifts(seed: u64, count: usize) -> Result<Report, MotiveError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut failures = Vec::new();
    let mut max_iter = 0;
    for case in 0..count {
        let (n, index) = if case % 2 == 0 {
            (6, 4)
        } else {
            let n = rng.random_range(1..=7usize);
            (n, rng.random_range(1..=n))
        };
        let p = random_defective_idempotent(&mut rng, n, index);
        let lift = beilinson_lift(&p)?;
        let q = &lift.q;
        let ok = &(q * q) == q
            && (q * &p) == (&p * q)
            && lift.nilpotency_index == index
            && lift.iterations <= lift.iteration_bound()
            && in_defect_ideal(&p, q);
        max_iter = max_iter.max(lift.iterations);
        if !ok {
            failures.push(format!(
                "case {case} (n={n}, index={index}, iterations={})",
                lift.iterations
            ));
        }
    }
    report.check(
        format!("{count} seeded lifts are idempotent within the iteration bound"),
        failures.is_empty(),
        if failures.is_empty() {
            format!("seed {seed}, at most {max_iter} iterations")
        } else {
            failures.join("; ")
        },
    );
    Ok(report)
}

/// `q - p` lies in the span of `p^i f^j` with `i <= 1`, `j >= 1`.
fn in_defect_ideal(p: &ExactMatrix, q: &ExactMatrix) -> bool {
    let n = p.rows();
    let f = &(p * p) - p;
    let mut gens = Vec::new();
    let mut fj = f.clone();
    for _ in 0..n.max(1) {
        gens.push(fj.clone());
        gens.push(p * &fj);
        fj = &fj * &f;
    }
    let flatten = |m: &ExactMatrix| -> Vec<Rational> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).clone())
            .collect()
    };
    let span = |ms: &[ExactMatrix]| -> usize {
        if ms.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Rational>> = ms.iter().map(flatten).collect();
        ExactMatrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
    };
    let base = span(&gens);
    gens.push(q - p);
    span(&gens) == base
}

/// Multiplicities of the algebraic classes in `CH_1`, `CH_2`, `CH_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CkParams {
    pub rho: usize,
    pub kappa: usize,
}

impl Default for CkParams {
    fn default() -> Self {
        CkParams { rho: 1, kappa: 1 }
    }
}

/// Block layout of `CH_*` of the model: for each `CH_k` the algebraic
/// classes come first, then the homologically trivial part of
/// [`ChowModel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLayout {
    /// `(offset, algebraic rank, hom rank)` for `k = 0..=4`
    pub grades: [(usize, usize, usize); 5],
    pub total: usize,
}

impl GradedLayout {
    pub fn new(model: &ChowModel, params: CkParams) -> Self {
        let alg = [1, params.rho, params.kappa, params.rho, 1];
        let mut grades = [(0, 0, 0); 5];
        let mut offset = 0;
        for k in 0..5 {
            let hom = model.hom_dim(k as Dim);
            grades[k] = (offset, alg[k], hom);
            offset += alg[k] + hom;
        }
        GradedLayout {
            grades,
            total: offset,
        }
    }

    /// Coordinates of all of `CH_k`.
    pub fn grade(&self, k: usize) -> Range<usize> {
        let (o, a, h) = self.grades[k];
        o..o + a + h
    }

    pub fn algebraic(&self, k: usize) -> Range<usize> {
        let (o, a, _) = self.grades[k];
        o..o + a
    }

    pub fn hom(&self, k: usize) -> Range<usize> {
        let (o, a, h) = self.grades[k];
        o + a..o + a + h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CKDecomposition {
    pub layout: GradedLayout,
    /// `pi^0, pi^2, pi^4, pi^6, pi^8`
    pub pi: [ExactMatrix; 5],
}

impl CKDecomposition {
    pub fn restrict(&self, i: usize, k: usize) -> ExactMatrix {
        let r = self.layout.grade(k);
        self.pi[i].block(r.start, r.start, r.len(), r.len())
    }

    pub fn restrict_hom(&self, i: usize, k: usize) -> ExactMatrix {
        let r = self.layout.hom(k);
        self.pi[i].block(r.start, r.start, r.len(), r.len())
    }
}

/// Projectors on the full model. On `CH_0`: `pi^0` onto `Q[o]`, `pi^2 = p
/// = -N_0/6` onto `V_0^-8`, `pi^4` onto `V_0^4`. On `CH_1` and `CH_2` hom:
/// `pi^2 = -N/6`, `pi^4` the rest. Algebraic classes of `CH_k` go to
/// `pi^{2k}`.
pub fn assemble_ck(model: &ChowModel, params: CkParams) -> CKDecomposition {
    let layout = GradedLayout::new(model, params);
    let n = layout.total;
    let mut pi: [ExactMatrix; 5] = std::array::from_fn(|_| ExactMatrix::zeros(n, n));
    for k in 0..5 {
        for i in layout.algebraic(k) {
            pi[k].set(i, i, int(1));
        }
        let hom = layout.hom(k);
        if hom.is_empty() {
            continue;
        }
        let p = model.n(k as Dim).scale(&rat(-1, 6));
        let rest = p.scale(&int(-1)).shift(&int(1));
        pi[1].write_block(hom.start, hom.start, &p);
        pi[2].write_block(hom.start, hom.start, &rest);
    }
    CKDecomposition { layout, pi }
}

/// Orthogonality, completeness, the images on `CH_0`, and agreement with
/// the spectral projectors of `phi^*` in grades 0, 1, 2.
pub fn verify_ck(model: &ChowModel, ck: &CKDecomposition) -> Result<Report, MotiveError> {
    let mut report = Report::new();
    let n = ck.layout.total;
    let mut sum = ExactMatrix::zeros(n, n);
    for (i, p) in ck.pi.iter().enumerate() {
        report.check(
            format!("pi^{} idempotent", 2 * i),
            &(p * p) == p,
            format!("rank {}", p.rank()),
        );
        for (j, q) in ck.pi.iter().enumerate().skip(i + 1) {
            report.check(
                format!("pi^{} pi^{} = 0", 2 * i, 2 * j),
                (p * q).is_zero() && (q * p).is_zero(),
                "",
            );
        }
        sum = &sum + p;
    }
    report.check(
        "sum of projectors is the identity",
        sum == ExactMatrix::identity(n),
        format!("dim {n}"),
    );

    // CH_0: [o] first, then V_0^-8, then V_0^4
    let m = model.ranks.m;
    let d0 = ck.layout.grade(0).len();
    let images = [(0, 0..1), (1, 1..1 + m), (2, 1 + m..d0)];
    for (i, range) in images {
        let r = ck.restrict(i, 0);
        let fixes = range.clone().all(|c| {
            let v = unit(d0, c);
            &r * &v == v
        });
        report.check(
            format!("image of pi^{} on CH_0", 2 * i),
            fixes && r.rank() == range.len(),
            format!("rank {}", r.rank()),
        );
    }
    for i in [3, 4] {
        report.check(
            format!("pi^{} acts as 0 on CH_0", 2 * i),
            ck.restrict(i, 0).is_zero(),
            "",
        );
    }
    let p_on_ch0 = {
        let mut p = ExactMatrix::zeros(d0, d0);
        p.write_block(1, 1, &model.n(0).scale(&rat(-1, 6)));
        p
    };
    report.check_eq("pi^2 on CH_0 is p = -N_0/6", &ck.restrict(1, 0), &p_on_ch0);

    for k in 0..=2usize {
        let projs = eigenprojectors(model, k as Dim)?;
        let hom_range = ck.layout.hom(k);
        for e in projs {
            // restrict the spectral projector to CH_k hom
            let hom = if k == 0 {
                e.matrix.block(1, 1, hom_range.len(), hom_range.len())
            } else {
                e.matrix
            };
            let chain_eigen = match k {
                0 => int(-8),
                1 => int(6) * &model.a - int(2),
                _ => int(-2),
            };
            let target = if e.eigenvalue == chain_eigen { 1 } else { 2 };
            if k == 0 && e.eigenvalue == int(16) {
                continue;
            }
            report.check_eq(
                format!(
                    "pi^{} on CH_{k} hom matches e[{}]",
                    2 * target,
                    e.eigenvalue
                ),
                &ck.restrict_hom(target, k),
                &hom,
            );
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MurreD {
    pub holds: bool,
    /// a class of `CH_2 hom` not killed by `pi^4`
    pub witness: Option<ExactMatrix>,
}

/// Whether `pi^4` kills `CH_2 hom`.
pub fn murre_d_check(model: &ChowModel, params: CkParams) -> MurreD {
    let ck = assemble_ck(model, params);
    let pi4 = ck.restrict_hom(2, 2);
    let dim = pi4.rows();
    let witness = (0..dim)
        .map(|i| unit(dim, i))
        .find(|v| !(&pi4 * v).is_zero());
    MurreD {
        holds: witness.is_none(),
        witness,
    }
}

/// `pi^2` on `CH_2 hom` is `p^t = -N_2/6`, the projector onto `V_2^-2`.
pub fn verify_murre(model: &ChowModel, params: CkParams) -> Report {
    let mut report = Report::new();
    let d = murre_d_check(model, params);
    report.check(
        "(D) holds iff V_2^4 = 0",
        d.holds == (model.ranks.n == 0),
        match &d.witness {
            Some(w) => format!("witness {}", w.transpose()),
            None => "no witness".into(),
        },
    );
    if let Some(w) = &d.witness {
        let in_b = model.chain_block(2).all(|i| w.get(i, 0).is_zero());
        report.check("witness lies in V_2^4", in_b, "");
    }
    let ck = assemble_ck(model, params);
    report.check_eq(
        "pi^2 on CH_2 hom is -N_2/6",
        &ck.restrict_hom(1, 2),
        &model.n(2).scale(&rat(-1, 6)),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::model::{build_model, Ranks};

    #[test]
    fn idempotent_input_is_fixed() {
        let p = ExactMatrix::from_i64(&[&[1, 1], &[0, 0]]);
        let lift = beilinson_lift(&p).unwrap();
        assert_eq!(lift.q, p);
        assert_eq!(lift.iterations, 0);
    }

    #[test]
    fn non_nilpotent_defect_is_rejected() {
        let p = ExactMatrix::from_i64(&[&[2, 0], &[0, 0]]);
        assert!(matches!(
            beilinson_lift(&p),
            Err(MotiveError::NotNilpotent { .. })
        ));
    }

    #[test]
    fn index_four_lift() {
        let mut rng = StdRng::seed_from_u64(7);
        let p = random_defective_idempotent(&mut rng, 6, 4);
        let lift = beilinson_lift(&p).unwrap();
        assert_eq!(lift.nilpotency_index, 4);
        assert!(lift.iterations <= 3);
        assert_eq!(&lift.q * &lift.q, lift.q);
    }

    #[test]
    fn pi_tr_relations() {
        let r = verify_pi_tr_relations().unwrap();
        assert!(r.all_hold(), "{r}");
    }

    #[test]
    fn ck_on_models() {
        for ranks in [
            Ranks::new(2, 0, 1, 1),
            Ranks::new(1, 2, 0, 2),
            Ranks::new(0, 0, 0, 0),
        ] {
            let model = build_model(ranks);
            let ck = assemble_ck(&model, CkParams::default());
            let r = verify_ck(&model, &ck).unwrap();
            assert!(r.all_hold(), "{r}");
            let r = verify_murre(&model, CkParams::default());
            assert!(r.all_hold(), "{r}");
        }
    }
}

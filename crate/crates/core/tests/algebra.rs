use fano_core::algebra::{
    int, minimal_polynomial, nc_normalize, rat, Alphabet, ExactMatrix, GradedPoly, NCPoly,
    RewriteSystem, Variable,
};
use proptest::prelude::*;

fn vars2() -> Vec<Variable> {
    vec![Variable::new("g1", 1), Variable::new("g2", 1)]
}

#[test]
fn difference_of_squares() {
    let v = vars2();
    let g1 = GradedPoly::var(&v, None, "g1");
    let g2 = GradedPoly::var(&v, None, "g2");
    let lhs = &(&g1 + &g2) * &(&g1 - &g2);
    let rhs = &(&g1 * &g1) - &(&g2 * &g2);
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.to_string(), "g1^2 - g2^2");
}

#[test]
fn binomial_with_weight_zero_variable() {
    let v = vec![
        Variable::new("a", 0),
        Variable::new("gt1", 1),
        Variable::new("h", 1),
    ];
    let a = GradedPoly::var(&v, None, "a");
    let gt = GradedPoly::var(&v, None, "gt1");
    let h = GradedPoly::var(&v, None, "h");
    let sq = (&(&a * &gt) + &h).pow(2);
    assert_eq!(sq.coeff(&[("a", 2), ("gt1", 2)]), int(1));
    assert_eq!(sq.coeff(&[("a", 1), ("gt1", 1), ("h", 1)]), int(2));
    assert_eq!(sq.coeff(&[("h", 2)]), int(1));
    assert_eq!(sq.num_terms(), 3);
    assert_eq!(sq.homogeneous_degree(), Some(2));
}

#[test]
fn truncation_above_top_degree() {
    let v = vec![Variable::new("g", 1), Variable::new("c", 2)];
    let g = GradedPoly::var(&v, Some(4), "g");
    assert!((&g.pow(3) * &g.pow(2)).is_zero());
    assert!(!g.pow(4).is_zero());
    let c = GradedPoly::var(&v, Some(4), "c");
    assert!((&c * &g.pow(3)).is_zero());
}

fn qq_alphabet() -> std::sync::Arc<Alphabet> {
    Alphabet::new(&["q", "qt"], &[("q", "qt")]).unwrap()
}

#[test]
fn rewriting_examples() {
    let al = qq_alphabet();
    let q = NCPoly::sym(&al, "q");
    let qt = NCPoly::sym(&al, "qt");

    let only_orth = RewriteSystem::new(&al, 100)
        .with_rule(&["q", "qt"], NCPoly::zero(&al))
        .unwrap();
    assert!(nc_normalize(&(&q * &qt), &only_orth).unwrap().is_zero());

    let only_idem = RewriteSystem::new(&al, 100)
        .with_rule(&["q", "q"], q.clone())
        .unwrap();
    assert_eq!(nc_normalize(&(&q * &q), &only_idem).unwrap(), q);

    let all = RewriteSystem::new(&al, 100)
        .with_rule(&["q", "q"], q.clone())
        .unwrap()
        .with_rule(&["qt", "qt"], qt.clone())
        .unwrap()
        .with_rule(&["q", "qt"], NCPoly::zero(&al))
        .unwrap();
    let x = &qt - &(&qt * &q).scale(&rat(1, 2));
    let sq = nc_normalize(&(&x * &x), &all).unwrap();
    assert_eq!(sq, nc_normalize(&x, &all).unwrap());
}

/// Brute-force oracle: the 4-term expansion of `(qt - qt q/2)^2`, reduced by
/// hand with `qq = q`, `qt qt = qt`, `q qt = 0`.
#[test]
fn hand_expansion_matches() {
    let al = qq_alphabet();
    let word = |w: &[&str]| NCPoly::term(&al, al.parse_word(w).unwrap(), int(1));
    // qt.qt = qt; -(1/2) qt.qt q = -(1/2) qt q; -(1/2) qt q qt = 0; (1/4) qt q qt q = 0
    let hand = &word(&["qt"]) - &word(&["qt", "q"]).scale(&rat(1, 2));
    let all = RewriteSystem::new(&al, 100)
        .with_rule(&["q", "q"], word(&["q"]))
        .unwrap()
        .with_rule(&["qt", "qt"], word(&["qt"]))
        .unwrap()
        .with_rule(&["q", "qt"], NCPoly::zero(&al))
        .unwrap();
    let x = &word(&["qt"]) - &word(&["qt", "q"]).scale(&rat(1, 2));
    assert_eq!(nc_normalize(&(&x * &x), &all).unwrap(), hand);
}

fn roots_poly(roots: &[i64]) -> GradedPoly {
    // expand prod (x - r) by hand on coefficient vectors
    let mut coeffs = vec![int(1)];
    for &r in roots {
        let mut next = vec![int(0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * int(r);
        }
        coeffs = next;
    }
    GradedPoly::univariate("x", &coeffs)
}

#[test]
fn minimal_polynomial_examples() {
    assert_eq!(
        minimal_polynomial(&ExactMatrix::identity(3)).unwrap(),
        roots_poly(&[1])
    );
    assert_eq!(
        minimal_polynomial(&ExactMatrix::diag(&[int(4), int(-2)])).unwrap(),
        roots_poly(&[4, -2])
    );
    assert_eq!(
        minimal_polynomial(&ExactMatrix::diag(&[int(16), int(-8), int(4)])).unwrap(),
        roots_poly(&[16, -8, 4])
    );
    // a Jordan block needs the repeated root
    let j = ExactMatrix::from_i64(&[&[2, 1], &[0, 2]]);
    assert_eq!(minimal_polynomial(&j).unwrap(), roots_poly(&[2, 2]));
}

fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..5).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-3i64..4, n), n).prop_map(|rows| {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            ExactMatrix::from_i64(&refs)
        })
    })
}

proptest! {
    #[test]
    fn minimal_polynomial_annihilates(m in small_matrix()) {
        let p = minimal_polynomial(&m).unwrap();
        prop_assert!(m.eval_poly(&p).is_zero());
        prop_assert!(p.degree().unwrap() as usize <= m.rows());
    }

    #[test]
    fn polynomial_ring_laws(a in -5i64..6, b in -5i64..6, c in -5i64..6) {
        let v = vars2();
        let x = &GradedPoly::var(&v, None, "g1").scale(&int(a)) + &GradedPoly::constant(&v, None, int(b));
        let y = &GradedPoly::var(&v, None, "g2").scale(&int(c)) + &GradedPoly::var(&v, None, "g1");
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
    }
}

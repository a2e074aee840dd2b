use fano_core::algebra::{int, minimal_polynomial, rat, ExactMatrix, GradedPoly};
use fano_core::corr::expr::{cpoly, CorrAtom, CorrExpr, Direction};
use fano_core::corr::model::{build_model, unit, Ranks};
use fano_core::corr::verify::{
    derive_i2_action, eigenprojectors, verify_action16, verify_fourier, verify_intertwining,
    verify_minpoly, verify_phi_of_o, MinpolyTarget,
};
use fano_core::corr::{act_taut, derive_operator_relations, voisin_alpha, CharacterTable};
use fano_core::taut::{o, phi_pt, pt};

fn roots_poly(roots: &[i64]) -> GradedPoly {
    GradedPoly::from_roots("x", &roots.iter().map(|&r| int(r)).collect::<Vec<_>>())
}

fn model(m: usize, n: usize, p: usize, q: usize) -> fano_core::corr::model::ChowModel {
    build_model(Ranks::new(m, n, p, q))
}

#[test]
fn g2_squared_incidence_on_a_point() {
    let corr = CorrExpr::times_poly(cpoly("g2").pow(2), CorrExpr::atom(CorrAtom::I));
    let got = act_taut(&corr, Direction::Push, &pt("l")).unwrap();
    let want = &(&phi_pt("l") - &pt("l").scale(&int(4))) + &o().scale(&int(24));
    assert_eq!(got, want);
}

#[test]
fn diagonal_and_first_factor_terms() {
    let d = CorrExpr::atom(CorrAtom::Diag);
    assert_eq!(act_taut(&d, Direction::Push, &pt("l")).unwrap(), pt("l"));
    let corr = CorrExpr::times_poly(cpoly("g1").pow(2), CorrExpr::atom(CorrAtom::I));
    let diff = &pt("l") - &pt("m");
    assert!(act_taut(&corr, Direction::Push, &diff).unwrap().is_zero());
}

#[test]
fn n2_on_unit_ranks() {
    let m = model(1, 1, 1, 1);
    // A then B: N_2 = I_* g^2 acts by -6 on A and kills B
    assert_eq!(m.n(2), ExactMatrix::diag(&[int(-6), int(0)]));
    assert_eq!(minimal_polynomial(&m.n(2)).unwrap(), roots_poly(&[0, -6]));
}

#[test]
fn action_by_sixteen_on_ch2() {
    for r in [model(1, 1, 1, 1), model(3, 2, 1, 2), model(0, 3, 0, 1)] {
        let dim = r.hom_dim(2);
        assert_eq!(
            &r.phi_push(2) * &r.phi_pull(2),
            ExactMatrix::scalar(dim, &int(16))
        );
        assert_eq!(
            &r.phi_pull(2) * &r.phi_push(2),
            ExactMatrix::scalar(dim, &int(16))
        );
        assert!(verify_action16(&r).all_hold());
    }
}

#[test]
fn degenerate_model() {
    let m = model(0, 0, 0, 0);
    assert_eq!(m.phi_pull_ch0(), ExactMatrix::scalar(1, &int(16)));
    assert_eq!(m.hom_dim(2), 0);
}

#[test]
fn minimal_polynomials_on_a_full_model() {
    let m = model(2, 1, 2, 1);
    let cases = [
        (MinpolyTarget::PullCh2, vec![4, -2]),
        // 6a - 2 at a = -2
        (MinpolyTarget::PullCh1, vec![4, 6 * -2 - 2]),
        (MinpolyTarget::PullCh0, vec![16, -8, 4]),
        (MinpolyTarget::PushCh2, vec![4, -8]),
    ];
    for (t, roots) in cases {
        assert_eq!(
            minimal_polynomial(&t.matrix(&m)).unwrap(),
            roots_poly(&roots),
            "{t}"
        );
        assert!(verify_minpoly(&m, t).unwrap().all_hold());
    }
}

#[test]
fn missing_blocks_drop_roots() {
    // no B block: phi^* on CH_2 hom is -2 alone
    let m = model(2, 0, 1, 1);
    assert_eq!(
        minimal_polynomial(&MinpolyTarget::PullCh2.matrix(&m)).unwrap(),
        roots_poly(&[-2])
    );
    assert!(verify_minpoly(&m, MinpolyTarget::PullCh2)
        .unwrap()
        .all_hold());
}

#[test]
fn eigenprojectors_on_ch2() {
    let m = model(2, 2, 1, 1);
    let ps = eigenprojectors(&m, 2).unwrap();
    assert_eq!(ps.len(), 2);
    let e_minus2 = &ps.iter().find(|p| p.eigenvalue == int(-2)).unwrap().matrix;
    let e4 = &ps.iter().find(|p| p.eigenvalue == int(4)).unwrap().matrix;
    assert_eq!(e_minus2, &m.n(2).scale(&rat(-1, 6)));
    assert_eq!(&(e_minus2 * e_minus2), e_minus2);
    assert_eq!(e_minus2 + e4, ExactMatrix::identity(4));
    // image of e_-2 is the A block
    assert_eq!(e_minus2.rank(), 2);
    for i in 0..2 {
        assert_eq!(e_minus2 * &unit(4, i), unit(4, i));
    }
}

#[test]
fn fourier_relation() {
    for m in [model(1, 0, 0, 1), model(3, 2, 1, 2)] {
        let lhs = &m.i_star(0) * &m.phi_push(0);
        let rhs = &m.phi_pull(2) * &m.i_star(0);
        assert_eq!(lhs, rhs);
        assert!(verify_fourier(&m).all_hold());
    }
    // on D = ker I_* both sides vanish
    let m = model(1, 0, 0, 2);
    let d = unit(m.hom_dim(0), 1);
    assert!((&m.i_star(0) * &d).is_zero());
}

#[test]
fn eigenvalue_transport_through_g() {
    let m = model(2, 1, 1, 1);
    for i in 0..2 {
        let sigma = unit(m.hom_dim(2), i);
        let g_sigma = &m.g(2) * &sigma;
        assert_eq!(&m.phi_pull(1) * &g_sigma, g_sigma.scale(&int(-14)));
        let g2_sigma = &m.g(1) * &g_sigma;
        assert_eq!(&m.phi_pull(0) * &g2_sigma, g2_sigma.scale(&int(-8)));
    }
    // B is killed by g
    let b = unit(m.hom_dim(2), 2);
    assert!((&m.g(2) * &b).is_zero());
    // g^2 I_* x = -6 x on V_0^-8
    let x = unit(m.hom_dim(0), 0);
    assert_eq!(&m.n(0) * &x, x.scale(&int(-6)));
    assert!(verify_intertwining(&m).all_hold());
}

#[test]
fn i2_coefficient() {
    let (k, r) = derive_i2_action(&model(2, 1, 1, 1)).unwrap();
    let a = int(-2);
    assert_eq!(k, &a * &a - &a - int(1));
    assert_eq!(k, int(5));
    assert!(r.all_hold());
}

#[test]
fn special_point_and_alpha() {
    let (_, r) = verify_phi_of_o().unwrap();
    assert!(r.all_hold(), "{r}");
    let v = voisin_alpha(&CharacterTable::default()).unwrap();
    assert_eq!(v.alpha, int(2));
    assert_eq!(v.gamma1.to_string(), "g1^2 + g1*g2 + g2^2");
    // (I^2)^* = phi^* - 2 on the (4,0) part
    let t = CharacterTable::default();
    assert_eq!(v.alpha, int(t.phi_pull_omega2 - 2));
}

#[test]
fn operator_relations() {
    let d = derive_operator_relations().unwrap();
    assert!(d.all_hold(), "{}", d.report());
    assert_eq!(d.i2_at_minus_two, int(5));
}

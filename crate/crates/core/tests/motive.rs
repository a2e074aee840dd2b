use fano_core::algebra::{int, nc_normalize, rat, ExactMatrix, NCPoly};
use fano_core::corr::model::{build_model, unit, Ranks};
use fano_core::motive::{
    assemble_ck, beilinson_lift, motive_alphabet, murre_d_check, pi2_tr, pi6_tr, projector_rules,
    random_defective_idempotent, verify_ck, verify_murre, verify_pi_tr_relations, CkParams,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn lift_of_an_idempotent_is_itself() {
    let p = ExactMatrix::from_i64(&[&[1, 1], &[0, 0]]);
    let lift = beilinson_lift(&p).unwrap();
    assert_eq!(lift.q, p);
    assert_eq!(lift.iterations, 0);
    let id = ExactMatrix::identity(3);
    assert_eq!(beilinson_lift(&id).unwrap().q, id);
}

/// Flattens matrices into the columns of one matrix.
fn stack(ms: &[ExactMatrix]) -> ExactMatrix {
    let n = ms[0].rows();
    let mut out = ExactMatrix::zeros(n * n, ms.len());
    for (c, m) in ms.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                out.set(i * n + j, c, m.get(i, j).clone());
            }
        }
    }
    out
}

#[test]
fn random_six_by_six_with_index_four() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let p = random_defective_idempotent(&mut rng, 6, 4);
        let f = &(&p * &p) - &p;
        assert!(f.pow(4).is_zero());
        assert!(!f.pow(3).is_zero());
        let lift = beilinson_lift(&p).unwrap();
        let q = &lift.q;
        assert_eq!(&(q * q), q);
        assert!(lift.iterations <= 3);
        assert_eq!(lift.nilpotency_index, 4);
        // q - p lies in the span of p^i f^j with j >= 1
        let mut span = Vec::new();
        for i in 0..6 {
            for j in 1..4 {
                span.push(&p.pow(i) * &f.pow(j));
            }
        }
        let base = stack(&span).rank();
        span.push(q - &p);
        assert_eq!(stack(&span).rank(), base);
    }
}

#[test]
fn transcendental_projectors() {
    let al = motive_alphabet();
    let rules = projector_rules(&al).unwrap();
    let nf = |x: &NCPoly| nc_normalize(x, &rules).unwrap();
    let (p2, p6) = (pi2_tr(&al), pi6_tr(&al));
    assert_eq!(nf(&(&p2 * &p2)), nf(&p2));
    assert_eq!(nf(&(&p6 * &p6)), nf(&p6));
    assert!(nf(&(&p2 * &p6)).is_zero());
    assert_eq!(p2.transpose(), p6);
    // qt q - qt q/2 - qt q/2 + qt (q qt) q/4
    let q = NCPoly::sym(&al, "q");
    let qt = NCPoly::sym(&al, "qt");
    let hand = &(&(&qt * &q) - &(&qt * &q).scale(&rat(1, 2))) - &(&qt * &q).scale(&rat(1, 2));
    assert!(nf(&hand).is_zero());
    assert!(verify_pi_tr_relations().unwrap().all_hold());
}

#[test]
fn ck_projectors_on_ch0() {
    let m = build_model(Ranks::new(2, 1, 2, 2));
    let ck = assemble_ck(&m, CkParams::default());
    let n = ck.layout.total;
    let mut sum = ExactMatrix::zeros(n, n);
    for p in &ck.pi {
        sum = &sum + p;
    }
    assert_eq!(sum, ExactMatrix::identity(n));
    for (i, a) in ck.pi.iter().enumerate() {
        for (j, b) in ck.pi.iter().enumerate() {
            let prod = a * b;
            if i == j {
                assert_eq!(&prod, a);
            } else {
                assert!(prod.is_zero());
            }
        }
    }
    // p = -N_0/6 on CH_0 hom: identity on V_0^-8, zero on V_0^4
    let p = m.n(0).scale(&rat(-1, 6));
    for i in 0..2 {
        let x = unit(m.hom_dim(0), i);
        assert_eq!(&p * &x, x);
    }
    for i in 2..4 {
        assert!((&p * &unit(m.hom_dim(0), i)).is_zero());
    }
    assert_eq!(ck.restrict_hom(1, 0), p);
    // pi^0 on CH_0 is the [o] line
    let pi0 = ck.restrict(0, 0);
    assert_eq!(pi0.rank(), 1);
    assert_eq!(pi0.get(0, 0), &int(1));
    assert!(verify_ck(&m, &ck).unwrap().all_hold());
}

#[test]
fn murre_condition() {
    let params = CkParams::default();
    let holds = murre_d_check(&build_model(Ranks::new(2, 0, 1, 1)), params);
    assert!(holds.holds);
    assert!(holds.witness.is_none());
    let m = build_model(Ranks::new(2, 2, 1, 1));
    let fails = murre_d_check(&m, params);
    assert!(!fails.holds);
    let w = fails.witness.unwrap();
    // witness in B: zero on the A coordinates
    assert!((0..2).all(|i| w.get(i, 0) == &int(0)));
    for n in [0, 2] {
        let m = build_model(Ranks::new(2, n, 1, 1));
        assert!(verify_murre(&m, params).all_hold());
        let ck = assemble_ck(&m, params);
        assert_eq!(ck.restrict_hom(1, 2), m.n(2).scale(&rat(-1, 6)));
    }
}

use fano_core::algebra::{int, GradedPoly, Rational};
use fano_core::chern::{
    chern_vars, derive_a, expand_c2_F, key_coefficients, key_coefficients_at, key_identity,
    verify_chern,
};

fn var(name: &str) -> GradedPoly {
    GradedPoly::var(&chern_vars(), None, name)
}

fn k(c: i64) -> GradedPoly {
    GradedPoly::constant(&chern_vars(), None, int(c))
}

/// The expected polynomial written out term by term.
fn target() -> GradedPoly {
    let (a, g1, g2, h) = (var("a"), var("gt1"), var("gt2"), var("h"));
    let aa = &a * &a;
    let t1 = &(&(&aa - &a) + &k(1)) * &(&g1 * &g1);
    let t2 = &(&k(1) - &a) * &(&g1 * &g2);
    let t3 = &g2 * &g2;
    let t4 = &(&(&k(3) * &a) - &k(4)) * &(&h * &g1);
    let t5 = &k(-4) * &(&h * &g2);
    let t6 = &k(8) * &(&h * &h);
    [t2, t3, t4, t5, t6].iter().fold(t1, |acc, t| &acc + t)
}

#[test]
fn expansion_matches_identically_in_a() {
    assert_eq!(expand_c2_F(), target());
}

#[test]
fn substitutions() {
    let at = |x: i64| expand_c2_F().substitute("a", &int(x)).unwrap();
    let (g1, g2, h) = (var("gt1"), var("gt2"), var("h"));
    let want = [
        (&k(7) * &(&g1 * &g1)),
        (&k(3) * &(&g1 * &g2)),
        (&g2 * &g2),
        (&k(-10) * &(&h * &g1)),
        (&k(-4) * &(&h * &g2)),
        (&k(8) * &(&h * &h)),
    ]
    .iter()
    .fold(GradedPoly::zero(&chern_vars(), None), |acc, t| &acc + t);
    assert_eq!(at(-2), want);
    assert_eq!(at(0).coeff(&[("gt1", 2)]), int(1));
}

#[test]
fn a_is_minus_two() {
    let d = derive_a().unwrap();
    assert_eq!(d.coefficient.to_string(), "-3*a + 1");
    assert_eq!(d.a, int(-2));
    // 4 + 21(1 - a) + 36 + 6(3a - 4) - 84 + 48, evaluated at a few points
    for x in -3..4 {
        let a = int(x);
        let spot: Rational =
            int(4) + int(21) * (int(1) - &a) + int(36) + int(6) * (int(3) * &a - int(4)) - int(84)
                + int(48);
        assert_eq!(spot, int(1) - int(3) * &a);
        assert_eq!(d.coefficient.substitute("a", &a).unwrap().coeff(&[]), spot);
    }
    // (1 - 3a) = 7
    assert_eq!(int(1) - int(3) * &d.a, int(7));
}

#[test]
fn key_identity_coefficients() {
    let c = key_coefficients(&key_identity()).unwrap();
    assert_eq!(c[0].coeff(&[]), int(4));
    assert_eq!(c[6].coeff(&[]), int(8));
    let at = key_coefficients_at(&int(-2)).unwrap();
    assert_eq!(at, [int(7), int(3), int(1), int(-10), int(-4), int(8)]);
}

#[test]
fn full_check() {
    let r = verify_chern().unwrap();
    assert!(r.all_hold(), "{r}");
}

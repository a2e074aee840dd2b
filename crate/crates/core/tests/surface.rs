use std::collections::BTreeSet;

use fano_core::surface::{
    augmented_secant_cycle, combination_class, disjoint_pairs, enumerate_lines,
    enumerate_triangles, find_triangle_partition, golden_certificate, secant_lines,
    verify_pair_decomposition, LineLabel, SurfaceClass, Triangle,
};
use LineLabel::{Conic, Exc, Join};

/// Intersection form diag(1, -1, ..., -1), written out independently.
fn dot(a: &[i64; 7], b: &[i64; 7]) -> i64 {
    a[0] * b[0] - (1..7).map(|i| a[i] * b[i]).sum::<i64>()
}

const H: [i64; 7] = [3, 1, 1, 1, 1, 1, 1];

fn lines() -> Vec<(LineLabel, [i64; 7])> {
    enumerate_lines()
        .into_iter()
        .map(|(l, c)| (l, c.0))
        .collect()
}

#[test]
fn twenty_seven_exceptional_classes() {
    let ls = lines();
    assert_eq!(ls.len(), 27);
    for (_, c) in &ls {
        assert_eq!(dot(c, c), -1);
        assert_eq!(dot(c, &H), 1);
    }
    assert_eq!(dot(&Exc(1).class().0, &Exc(1).class().0), -1);
    let distinct: BTreeSet<_> = ls.iter().map(|(_, c)| *c).collect();
    assert_eq!(distinct.len(), 27);
}

#[test]
fn ten_neighbours_by_exhaustive_pairing() {
    let ls = lines();
    for (x, cx) in &ls {
        let n = ls
            .iter()
            .filter(|(y, cy)| y != x && dot(cx, cy) == 1)
            .count();
        assert_eq!(n, 10, "{x}");
        for (y, cy) in &ls {
            if y != x {
                assert!(matches!(dot(cx, cy), 0 | 1));
                assert_eq!(x.meets(y), dot(cx, cy) == 1);
            }
        }
    }
}

#[test]
fn forty_five_triangles_by_brute_force() {
    let ls = lines();
    let mut count = 0;
    for i in 0..27 {
        for j in i + 1..27 {
            for k in j + 1..27 {
                let s: Vec<i64> = (0..7)
                    .map(|t| ls[i].1[t] + ls[j].1[t] + ls[k].1[t])
                    .collect();
                if s == H {
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 45);
    assert_eq!(enumerate_triangles().len(), 45);
    assert!(enumerate_triangles()
        .iter()
        .all(|t| t.class() == SurfaceClass::hyperplane()));
}

#[test]
fn triangle_examples() {
    assert!(Triangle::new(Exc(1), Join(1, 3), Conic(3))
        .unwrap()
        .is_valid());
    assert!(Triangle::new(Exc(1), Exc(2), Join(1, 2)).is_err());
}

#[test]
fn secants_of_e1_e2() {
    let s: BTreeSet<_> = secant_lines(Exc(1), Exc(2)).unwrap().into_iter().collect();
    let want: BTreeSet<_> = [Join(1, 2), Conic(3), Conic(4), Conic(5), Conic(6)]
        .into_iter()
        .collect();
    assert_eq!(s, want);
    let cyc = augmented_secant_cycle(Exc(1), Exc(2)).unwrap();
    assert_eq!(combination_class(&cyc).0, [9, 3, 3, 3, 3, 3, 3]);
}

#[test]
fn five_secants_for_every_disjoint_pair() {
    let ls = lines();
    let pairs = disjoint_pairs();
    // each line misses 16 others
    assert_eq!(pairs.len(), 27 * 16 / 2);
    for (x, y) in pairs {
        let (cx, cy) = (x.class().0, y.class().0);
        assert_eq!(dot(&cx, &cy), 0);
        let brute: Vec<_> = ls
            .iter()
            .filter(|(z, cz)| *z != x && *z != y && dot(cz, &cx) == 1 && dot(cz, &cy) == 1)
            .collect();
        assert_eq!(brute.len(), 5);
        assert_eq!(secant_lines(x, y).unwrap().len(), 5);
        let mut sum = [0i64; 7];
        for t in 0..7 {
            sum[t] = 2 * cx[t] + 2 * cy[t] + brute.iter().map(|(_, c)| c[t]).sum::<i64>();
        }
        assert_eq!(sum, [9, 3, 3, 3, 3, 3, 3]);
    }
}

#[test]
fn golden_certificate_symbol_by_symbol() {
    let cert = golden_certificate();
    assert!(cert.is_valid());
    assert_eq!(cert.terms.iter().filter(|(_, k)| *k == 1).count(), 5);
    assert_eq!(cert.terms.iter().filter(|(_, k)| *k == -1).count(), 2);
    let mut tally = std::collections::BTreeMap::new();
    for (t, k) in &cert.terms {
        for l in t.lines {
            *tally.entry(l).or_insert(0) += k;
        }
    }
    tally.retain(|_, v| *v != 0);
    let want: std::collections::BTreeMap<_, _> = [
        (Exc(1), 2),
        (Exc(2), 2),
        (Join(1, 2), 1),
        (Conic(3), 1),
        (Conic(4), 1),
        (Conic(5), 1),
        (Conic(6), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(tally, want);
}

#[test]
fn certificates_for_all_pairs() {
    for (x, y) in disjoint_pairs() {
        let cert = verify_pair_decomposition(x, y).unwrap();
        assert!(cert.is_valid());
        assert!(cert.max_coefficient() <= 2);
        let class = cert
            .terms
            .iter()
            .fold(SurfaceClass::zero(), |acc, (t, k)| acc + *k * t.class());
        assert_eq!(class, 3 * SurfaceClass::hyperplane());
    }
}

#[test]
fn perfect_partition() {
    let part = find_triangle_partition();
    assert_eq!(part.len(), 9);
    let covered: BTreeSet<_> = part.iter().flat_map(|t| t.lines).collect();
    assert_eq!(covered.len(), 27);
    let total = part
        .iter()
        .fold(SurfaceClass::zero(), |acc, t| acc + t.class());
    assert_eq!(total, 9 * SurfaceClass::hyperplane());
}

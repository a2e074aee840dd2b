//! Picard lattice of a smooth cubic surface `S = Bl_6 P^2`, its 27 lines,
//! the 45 tritangent triangles, secant lines of disjoint pairs and the
//! triangle decompositions of `2x + 2y + (secants)`.
//!
//! Coordinates `(l; e_1..e_6)` stand for `l*L - sum e_i*E_i`, so the
//! intersection form is `l*l' - sum e_i*e_i'` and the hyperplane class is
//! `H = (3; 1,1,1,1,1,1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact_cover::first_exact_cover;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceClass(pub [i64; 7]);

impl SurfaceClass {
    pub fn hyperplane() -> Self {
        SurfaceClass([3, 1, 1, 1, 1, 1, 1])
    }

    pub fn zero() -> Self {
        SurfaceClass([0; 7])
    }

    pub fn dot(&self, other: &Self) -> i64 {
        self.0[0] * other.0[0] - (1..7).map(|i| self.0[i] * other.0[i]).sum::<i64>()
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    /// Intersection with the hyperplane class.
    pub fn degree(&self) -> i64 {
        self.dot(&Self::hyperplane())
    }
}

impl Add for SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        SurfaceClass(out)
    }
}

impl Mul<SurfaceClass> for i64 {
    type Output = SurfaceClass;
    fn mul(self, rhs: SurfaceClass) -> SurfaceClass {
        SurfaceClass(rhs.0.map(|x| self * x))
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.0[1..].iter().map(i64::to_string).collect();
        write!(f, "({}; {})", self.0[0], e.join(","))
    }
}

impl Serialize for SurfaceClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// One of the 27 lines. Indices are 1-based points of the blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineLabel {
    /// exceptional curve over the i-th point
    Exc(u8),
    /// strict transform of the line through points i < j
    Join(u8, u8),
    /// strict transform of the conic through all points but i
    Conic(u8),
}

impl LineLabel {
    pub fn class(&self) -> SurfaceClass {
        let mut c = [0i64; 7];
        match *self {
            LineLabel::Exc(i) => c[i as usize] = -1,
            LineLabel::Join(i, j) => {
                c[0] = 1;
                c[i as usize] = 1;
                c[j as usize] = 1;
            }
            LineLabel::Conic(i) => {
                c = [2, 1, 1, 1, 1, 1, 1];
                c[i as usize] = 0;
            }
        }
        SurfaceClass(c)
    }

    /// Relabels the six blown-up points by `perm` (0-based images of 1..=6).
    pub fn permute(&self, perm: &[u8; 6]) -> LineLabel {
        let p = |i: u8| perm[(i - 1) as usize] + 1;
        match *self {
            LineLabel::Exc(i) => LineLabel::Exc(p(i)),
            LineLabel::Join(i, j) => {
                let (a, b) = (p(i), p(j));
                LineLabel::Join(a.min(b), a.max(b))
            }
            LineLabel::Conic(i) => LineLabel::Conic(p(i)),
        }
    }

    pub fn meets(&self, other: &LineLabel) -> bool {
        self != other && self.class().dot(&other.class()) == 1
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::Exc(i) => write!(f, "E{i}"),
            LineLabel::Join(i, j) => write!(f, "L{i}{j}"),
            LineLabel::Conic(i) => write!(f, "C{i}"),
        }
    }
}

impl Serialize for LineLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for LineLabel {
    type Err = SurfaceError;

    /// Accepts `E1`/`R1`, `L12` (either order), `C3`.
    fn from_str(s: &str) -> Result<Self, SurfaceError> {
        let bad = || SurfaceError::BadLabel(s.to_string());
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let digits: Vec<u8> = chars
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        if digits.iter().any(|&d| !(1..=6).contains(&d)) {
            return Err(bad());
        }
        match (kind, digits.as_slice()) {
            ('E' | 'R', [i]) => Ok(LineLabel::Exc(*i)),
            ('C', [i]) => Ok(LineLabel::Conic(*i)),
            ('L', [i, j]) if i != j => Ok(LineLabel::Join(*i.min(j), *i.max(j))),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("secant lines need two distinct lines, got {0} twice")]
    SameLine(LineLabel),
    #[error("lines {0} and {1} meet; a disjoint pair is required")]
    NotDisjoint(LineLabel, LineLabel),
    #[error("no triangle decomposition with |coefficient| <= {bound} for ({x}, {y})")]
    NoCertificate {
        x: LineLabel,
        y: LineLabel,
        bound: i64,
    },
    #[error("bad line label `{0}`")]
    BadLabel(String),
    #[error("lines {0}, {1}, {2} do not form a triangle")]
    NotTriangle(LineLabel, LineLabel, LineLabel),
}

/// All 27 lines with their classes, in the order exceptional, joins, conics.
pub fn enumerate_lines() -> Vec<(LineLabel, SurfaceClass)> {
    let mut out = Vec::with_capacity(27);
    for i in 1..=6 {
        out.push(LineLabel::Exc(i));
    }
    for i in 1..=6 {
        for j in (i + 1)..=6 {
            out.push(LineLabel::Join(i, j));
        }
    }
    for i in 1..=6 {
        out.push(LineLabel::Conic(i));
    }
    out.into_iter().map(|l| (l, l.class())).collect()
}

pub fn all_lines() -> Vec<LineLabel> {
    enumerate_lines().into_iter().map(|(l, _)| l).collect()
}

fn line_index(l: &LineLabel) -> usize {
    all_lines()
        .iter()
        .position(|x| x == l)
        .expect("every label is a line")
}

/// Three pairwise meeting lines whose classes sum to `H`. Stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triangle {
    pub lines: [LineLabel; 3],
}

impl Triangle {
    pub fn new(a: LineLabel, b: LineLabel, c: LineLabel) -> Result<Self, SurfaceError> {
        let mut lines = [a, b, c];
        lines.sort();
        let t = Triangle { lines };
        if t.is_valid() {
            Ok(t)
        } else {
            Err(SurfaceError::NotTriangle(a, b, c))
        }
    }

    pub fn is_valid(&self) -> bool {
        let [a, b, c] = self.lines;
        a.class() + b.class() + c.class() == SurfaceClass::hyperplane()
            && a.meets(&b)
            && b.meets(&c)
            && a.meets(&c)
    }

    pub fn class(&self) -> SurfaceClass {
        self.lines
            .iter()
            .fold(SurfaceClass::zero(), |acc, l| acc + l.class())
    }

    pub fn contains(&self, l: &LineLabel) -> bool {
        self.lines.contains(l)
    }

    pub fn permute(&self, perm: &[u8; 6]) -> Triangle {
        let [a, b, c] = self.lines.map(|l| l.permute(perm));
        Triangle::new(a, b, c).expect("permutations preserve triangles")
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.lines[0], self.lines[1], self.lines[2]
        )
    }
}

/// Brute force over all unordered triples of lines.
pub fn enumerate_triangles() -> Vec<Triangle> {
    let lines = all_lines();
    let mut out = Vec::new();
    for a in 0..lines.len() {
        for b in (a + 1)..lines.len() {
            for c in (b + 1)..lines.len() {
                let t = Triangle {
                    lines: [lines[a], lines[b], lines[c]],
                };
                if t.is_valid() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Lines other than `x`, `y` meeting both.
pub fn secant_lines(x: LineLabel, y: LineLabel) -> Result<Vec<LineLabel>, SurfaceError> {
    if x == y {
        return Err(SurfaceError::SameLine(x));
    }
    let out: Vec<LineLabel> = all_lines()
        .into_iter()
        .filter(|z| *z != x && *z != y)
        .filter(|z| z.class().dot(&x.class()) >= 1 && z.class().dot(&y.class()) >= 1)
        .collect();
    // distinct lines on a smooth cubic surface meet at most once
    debug_assert!(out
        .iter()
        .all(|z| z.class().dot(&x.class()) <= 1 && z.class().dot(&y.class()) <= 1));
    Ok(out)
}

/// Formal Z-combination of line symbols.
pub type LineCombination = BTreeMap<LineLabel, i64>;

fn add_to(comb: &mut LineCombination, l: LineLabel, k: i64) {
    let e = comb.entry(l).or_insert(0);
    *e += k;
    if *e == 0 {
        comb.remove(&l);
    }
}

/// `2x + 2y + sum(secants)` as a formal combination of line symbols.
pub fn augmented_secant_cycle(x: LineLabel, y: LineLabel) -> Result<LineCombination, SurfaceError> {
    let mut target = LineCombination::new();
    add_to(&mut target, x, 2);
    add_to(&mut target, y, 2);
    for z in secant_lines(x, y)? {
        add_to(&mut target, z, 1);
    }
    Ok(target)
}

pub fn combination_class(comb: &LineCombination) -> SurfaceClass {
    comb.iter()
        .fold(SurfaceClass::zero(), |acc, (l, &k)| acc + k * l.class())
}

/// Integer combination of triangles equal, symbol by symbol, to the
/// augmented secant cycle of a disjoint pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub x: LineLabel,
    pub y: LineLabel,
    pub target: LineCombination,
    pub terms: Vec<(Triangle, i64)>,
    /// true when the certificate is the relabelled golden fixture
    pub from_fixture: bool,
}

impl DecompositionCertificate {
    /// Sum of the triangles' line symbols with their coefficients.
    pub fn expand(&self) -> LineCombination {
        let mut out = LineCombination::new();
        for (t, k) in &self.terms {
            for l in t.lines {
                add_to(&mut out, l, *k);
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.terms.iter().all(|(t, k)| t.is_valid() && *k != 0) && self.expand() == self.target
    }

    pub fn max_coefficient(&self) -> i64 {
        self.terms.iter().map(|(_, k)| k.abs()).max().unwrap_or(0)
    }
}

/// The explicit seven-triangle decomposition for the pair `(E1, E2)`.
pub fn golden_certificate() -> DecompositionCertificate {
    use LineLabel::*;
    let t = |a, b, c| Triangle::new(a, b, c).expect("fixture triangle");
    let terms = vec![
        (t(Exc(1), Join(1, 3), Conic(3)), 1),
        (t(Exc(1), Join(1, 4), Conic(4)), 1),
        (t(Exc(2), Join(2, 5), Conic(5)), 1),
        (t(Exc(2), Join(2, 6), Conic(6)), 1),
        (t(Join(1, 2), Join(4, 6), Join(3, 5)), 1),
        (t(Join(1, 3), Join(2, 5), Join(4, 6)), -1),
        (t(Join(1, 4), Join(2, 6), Join(3, 5)), -1),
    ];
    DecompositionCertificate {
        x: Exc(1),
        y: Exc(2),
        target: augmented_secant_cycle(Exc(1), Exc(2)).expect("distinct"),
        terms,
        from_fixture: true,
    }
}

/// Coefficient bound used by the certificate search.
pub const CERTIFICATE_BOUND: i64 = 2;

/// Finds a triangle decomposition of `2x + 2y + sum(secants)`. The golden
/// fixture (relabelled by a point permutation when the pair consists of two
/// exceptional curves) is tried first, then a depth-first search over
/// coefficients in `[-bound, bound]`.
pub fn verify_pair_decomposition(
    x: LineLabel,
    y: LineLabel,
) -> Result<DecompositionCertificate, SurfaceError> {
    verify_pair_decomposition_with_bound(x, y, CERTIFICATE_BOUND)
}

pub fn verify_pair_decomposition_with_bound(
    x: LineLabel,
    y: LineLabel,
    bound: i64,
) -> Result<DecompositionCertificate, SurfaceError> {
    if x == y {
        return Err(SurfaceError::SameLine(x));
    }
    if x.class().dot(&y.class()) != 0 {
        return Err(SurfaceError::NotDisjoint(x, y));
    }
    let target = augmented_secant_cycle(x, y)?;
    if let Some(cert) = relabelled_fixture(x, y) {
        if cert.is_valid() && cert.max_coefficient() <= bound {
            return Ok(cert);
        }
    }
    let triangles = enumerate_triangles();
    let terms = search_decomposition(&triangles, &target, bound)
        .ok_or(SurfaceError::NoCertificate { x, y, bound })?;
    Ok(DecompositionCertificate {
        x,
        y,
        target,
        terms,
        from_fixture: false,
    })
}

fn relabelled_fixture(x: LineLabel, y: LineLabel) -> Option<DecompositionCertificate> {
    let (LineLabel::Exc(i), LineLabel::Exc(j)) = (x, y) else {
        return None;
    };
    // permutation sending 1 -> i, 2 -> j, remaining points in order
    let mut perm = [0u8; 6];
    perm[0] = i - 1;
    perm[1] = j - 1;
    let rest: Vec<u8> = (0..6).filter(|&k| k != i - 1 && k != j - 1).collect();
    perm[2..].copy_from_slice(&rest);
    let golden = golden_certificate();
    let terms = golden
        .terms
        .iter()
        .map(|(t, k)| (t.permute(&perm), *k))
        .collect();
    Some(DecompositionCertificate {
        x,
        y,
        target: augmented_secant_cycle(x, y).ok()?,
        terms,
        from_fixture: true,
    })
}

/// Solves `sum_T lambda_T [T] = target` over the line symbols with
/// `|lambda_T| <= bound`. Lines are processed most-constrained first; the
/// last free triangle through a line is forced by that line's equation.
fn search_decomposition(
    triangles: &[Triangle],
    target: &LineCombination,
    bound: i64,
) -> Option<Vec<(Triangle, i64)>> {
    let lines = all_lines();
    let through: Vec<Vec<usize>> = lines
        .iter()
        .map(|l| {
            (0..triangles.len())
                .filter(|&t| triangles[t].contains(l))
                .collect()
        })
        .collect();
    let rhs: Vec<i64> = lines
        .iter()
        .map(|l| target.get(l).copied().unwrap_or(0))
        .collect();
    let mut assign: Vec<Option<i64>> = vec![None; triangles.len()];
    let mut done = vec![false; lines.len()];
    if dfs(&through, &rhs, bound, &mut assign, &mut done) {
        Some(
            assign
                .iter()
                .enumerate()
                .filter_map(|(t, v)| v.filter(|&k| k != 0).map(|k| (triangles[t], k)))
                .collect(),
        )
    } else {
        None
    }
}

fn dfs(
    through: &[Vec<usize>],
    rhs: &[i64],
    bound: i64,
    assign: &mut Vec<Option<i64>>,
    done: &mut Vec<bool>,
) -> bool {
    // most constrained open line
    let next = (0..through.len()).filter(|&l| !done[l]).min_by_key(|&l| {
        (
            through[l].iter().filter(|&&t| assign[t].is_none()).count(),
            l,
        )
    });
    let Some(line) = next else {
        return true;
    };
    let free: Vec<usize> = through[line]
        .iter()
        .copied()
        .filter(|&t| assign[t].is_none())
        .collect();
    let fixed: i64 = through[line].iter().filter_map(|&t| assign[t]).sum();
    let residual = rhs[line] - fixed;
    if free.is_empty() {
        if residual != 0 {
            return false;
        }
        done[line] = true;
        let ok = dfs(through, rhs, bound, assign, done);
        if !ok {
            done[line] = false;
        }
        return ok;
    }
    if residual.abs() > bound * free.len() as i64 {
        return false;
    }
    // values tried small-magnitude first
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=bound).flat_map(|k| [k, -k]))
        .collect();
    let (last, head) = free.split_last().expect("non-empty");
    let mut choice = vec![0usize; head.len()];
    loop {
        let partial: i64 = choice.iter().map(|&c| values[c]).sum();
        let forced = residual - partial;
        if forced.abs() <= bound {
            for (slot, &c) in head.iter().zip(&choice) {
                assign[*slot] = Some(values[c]);
            }
            assign[*last] = Some(forced);
            done[line] = true;
            if consistent(through, rhs, bound, assign) && dfs(through, rhs, bound, assign, done) {
                return true;
            }
            done[line] = false;
            for slot in &free {
                assign[*slot] = None;
            }
        }
        // odometer increment over head choices
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < values.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Every line's equation must still be reachable with the free triangles.
fn consistent(through: &[Vec<usize>], rhs: &[i64], bound: i64, assign: &[Option<i64>]) -> bool {
    through.iter().zip(rhs).all(|(ts, &r)| {
        let fixed: i64 = ts.iter().filter_map(|&t| assign[t]).sum();
        let free = ts.iter().filter(|&&t| assign[t].is_none()).count() as i64;
        (r - fixed).abs() <= bound * free
    })
}

/// Nine line-disjoint triangles covering all 27 lines.
pub fn find_triangle_partition() -> Vec<Triangle> {
    let triangles = enumerate_triangles();
    let options: Vec<Vec<usize>> = triangles
        .iter()
        .map(|t| t.lines.iter().map(line_index).collect())
        .collect();
    let chosen = first_exact_cover(27, &options).expect("the 27 lines admit a triangle partition");
    let mut out: Vec<Triangle> = chosen.into_iter().map(|i| triangles[i]).collect();
    out.sort();
    out
}

/// All unordered pairs of disjoint lines.
pub fn disjoint_pairs() -> Vec<(LineLabel, LineLabel)> {
    let lines = all_lines();
    let mut out = Vec::new();
    for a in 0..lines.len() {
        for b in (a + 1)..lines.len() {
            if lines[a].class().dot(&lines[b].class()) == 0 {
                out.push((lines[a], lines[b]));
            }
        }
    }
    out
}

/// Every permutation of six points, in lexicographic order.
pub fn s6_permutations() -> Vec<[u8; 6]> {
    fn rec(prefix: &mut Vec<u8>, out: &mut Vec<[u8; 6]>) {
        if prefix.len() == 6 {
            let mut p = [0u8; 6];
            p.copy_from_slice(prefix);
            out.push(p);
            return;
        }
        for k in 0..6u8 {
            if !prefix.contains(&k) {
                prefix.push(k);
                rec(prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::with_capacity(720);
    rec(&mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use LineLabel::*;

    #[test]
    fn exceptional_curve_self_intersection() {
        assert_eq!(Exc(1).class().self_intersection(), -1);
        assert_eq!(Exc(1).class().degree(), 1);
        assert_eq!(SurfaceClass::hyperplane().self_intersection(), 3);
    }

    #[test]
    fn labels_parse_and_print() {
        for l in all_lines() {
            assert_eq!(l.to_string().parse::<LineLabel>().unwrap(), l);
        }
        assert_eq!("R2".parse::<LineLabel>().unwrap(), Exc(2));
        assert_eq!("L31".parse::<LineLabel>().unwrap(), Join(1, 3));
        assert!("L33".parse::<LineLabel>().is_err());
        assert!("E7".parse::<LineLabel>().is_err());
    }

    #[test]
    fn triangle_membership_examples() {
        assert!(Triangle::new(Exc(1), Join(1, 3), Conic(3)).is_ok());
        let bad = Exc(1).class() + Exc(2).class() + Join(1, 2).class();
        assert_eq!(bad, SurfaceClass([1, 0, 0, 0, 0, 0, 0]));
        assert_ne!(bad, SurfaceClass::hyperplane());
        assert!(Triangle::new(Exc(1), Exc(2), Join(1, 2)).is_err());
    }

    #[test]
    fn secants_of_e1_e2() {
        let s = secant_lines(Exc(1), Exc(2)).unwrap();
        assert_eq!(s, vec![Join(1, 2), Conic(3), Conic(4), Conic(5), Conic(6)]);
        assert_eq!(
            secant_lines(Exc(1), Exc(1)),
            Err(SurfaceError::SameLine(Exc(1)))
        );
    }

    #[test]
    fn golden_certificate_expands_to_target() {
        let g = golden_certificate();
        assert!(g.is_valid());
        let mut expected = LineCombination::new();
        expected.insert(Exc(1), 2);
        expected.insert(Exc(2), 2);
        for l in [Join(1, 2), Conic(3), Conic(4), Conic(5), Conic(6)] {
            expected.insert(l, 1);
        }
        assert_eq!(g.expand(), expected);
        assert_eq!(g.terms.iter().filter(|(_, k)| *k > 0).count(), 5);
        assert_eq!(g.terms.iter().filter(|(_, k)| *k < 0).count(), 2);
    }

    #[test]
    fn meeting_pair_rejected() {
        assert_eq!(
            verify_pair_decomposition(Exc(1), Join(1, 2)),
            Err(SurfaceError::NotDisjoint(Exc(1), Join(1, 2)))
        );
    }

    #[test]
    fn search_without_fixture_finds_certificate() {
        let target = augmented_secant_cycle(Exc(1), Exc(2)).unwrap();
        let terms = search_decomposition(&enumerate_triangles(), &target, 2).unwrap();
        let cert = DecompositionCertificate {
            x: Exc(1),
            y: Exc(2),
            target,
            terms,
            from_fixture: false,
        };
        assert!(cert.is_valid());
    }
}

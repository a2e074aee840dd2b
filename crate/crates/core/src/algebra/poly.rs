//! Weighted-graded commutative polynomials with exact coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{coeff_prefix, Rational};
use super::AlgebraError;

/// A polynomial variable together with its grading weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Variable {
            name: name.into(),
            degree,
        }
    }
}

/// Sparse polynomial over a fixed variable table.
///
/// Terms whose weighted degree exceeds `bound` are dropped on construction
/// and after every product, which models a ring truncated above its top
/// degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    vars: Vec<Variable>,
    terms: BTreeMap<Vec<u32>, Rational>,
    bound: Option<u32>,
}

impl GradedPoly {
    pub fn zero(vars: &[Variable], bound: Option<u32>) -> Self {
        GradedPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
            bound,
        }
    }

    pub fn constant(vars: &[Variable], bound: Option<u32>, c: Rational) -> Self {
        let mut p = Self::zero(vars, bound);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &[Variable], bound: Option<u32>) -> Self {
        Self::constant(vars, bound, Rational::one())
    }

    /// The variable `name` as a polynomial. Panics on an unknown name.
    pub fn var(vars: &[Variable], bound: Option<u32>, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v.name == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = Self::zero(vars, bound);
        p.add_term(exps, Rational::one());
        p
    }

    /// Builds `c * prod(name^e)`.
    pub fn monomial(
        vars: &[Variable],
        bound: Option<u32>,
        c: Rational,
        powers: &[(&str, u32)],
    ) -> Result<Self, AlgebraError> {
        let exps = exponent_vector(vars, powers)?;
        let mut p = Self::zero(vars, bound);
        p.add_term(exps, c);
        Ok(p)
    }

    /// Univariate polynomial in `name` (degree 1) from ascending coefficients.
    pub fn univariate(name: &str, coeffs: &[Rational]) -> Self {
        let vars = [Variable::new(name, 1)];
        let mut p = Self::zero(&vars, None);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn weight(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.vars).map(|(e, v)| e * v.degree).sum()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(b) = self.bound {
            if self.weight(&exps) > b {
                return;
            }
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars.iter().map(|v| v.name.clone()).collect(),
                right: other.vars.iter().map(|v| v.name.clone()).collect(),
            });
        }
        Ok(())
    }

    fn merged_bound(&self, other: &Self) -> Option<u32> {
        match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.bound = self.merged_bound(other);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out.retruncated())
    }

    /// Product; terms above the truncation bound are discarded.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.vars, self.merged_bound(other));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    fn retruncated(mut self) -> Self {
        if let Some(b) = self.bound {
            let vars = self.vars.clone();
            self.terms
                .retain(|e, _| e.iter().zip(&vars).map(|(x, v)| x * v.degree).sum::<u32>() <= b);
        }
        self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.vars, self.bound);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.vars, self.bound);
        for _ in 0..n {
            out = out.checked_mul(self).expect("same table");
        }
        out
    }

    /// Coefficient of the monomial `prod(name^e)`; zero when absent.
    pub fn coeff(&self, powers: &[(&str, u32)]) -> Rational {
        match exponent_vector(&self.vars, powers) {
            Ok(e) => self.terms.get(&e).cloned().unwrap_or_else(Rational::zero),
            Err(_) => Rational::zero(),
        }
    }

    /// Substitutes a rational value for one variable. The variable stays in
    /// the table with exponent zero everywhere.
    pub fn substitute(&self, name: &str, value: &Rational) -> Result<Self, AlgebraError> {
        let idx = self.index_of(name)?;
        let mut out = Self::zero(&self.vars, self.bound);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[idx], 0);
            let mut f = c.clone();
            for _ in 0..k {
                f *= value;
            }
            out.add_term(e2, f);
        }
        Ok(out)
    }

    /// Groups terms by the exponents of `names`; each group's coefficient is
    /// a polynomial in the remaining variables (same table).
    pub fn collect(&self, names: &[&str]) -> Result<BTreeMap<Vec<u32>, GradedPoly>, AlgebraError> {
        let idxs: Vec<usize> = names
            .iter()
            .map(|n| self.index_of(n))
            .collect::<Result<_, _>>()?;
        let mut out: BTreeMap<Vec<u32>, GradedPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u32> = idxs.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in &idxs {
                rest[i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Self::zero(&self.vars, None))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Weighted degree of every term, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| self.weight(e));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Degree in a univariate polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Ascending coefficient list of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Vec<Rational> {
        assert_eq!(self.vars.len(), 1, "not univariate");
        let d = self.degree().unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        out
    }

    /// Monic product of `(x - r)` over `roots`.
    pub fn from_roots(name: &str, roots: &[Rational]) -> Self {
        let x = Self::univariate(name, &[Rational::zero(), Rational::one()]);
        roots
            .iter()
            .fold(Self::univariate(name, &[Rational::one()]), |acc, r| {
                let lin = x
                    .checked_add(&Self::univariate(name, &[-r.clone()]))
                    .expect("same table");
                acc.checked_mul(&lin).expect("same table")
            })
    }
}

fn exponent_vector(vars: &[Variable], powers: &[(&str, u32)]) -> Result<Vec<u32>, AlgebraError> {
    let mut exps = vec![0; vars.len()];
    for (name, e) in powers {
        let idx = vars
            .iter()
            .position(|v| v.name == *name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        exps[idx] += e;
    }
    Ok(exps)
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest weighted degree first, then reverse-lex on exponents
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| self.weight(b.0).cmp(&self.weight(a.0)).then(b.0.cmp(a.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let negative = *c < Rational::zero();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.name.clone()
                    } else {
                        format!("{}^{}", v.name, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(
                    f,
                    "{}",
                    super::rational::fmt_rational(&num_traits::Signed::abs(c))
                )?;
            } else {
                write!(f, "{}{}", coeff_prefix(c, false), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: Self) -> GradedPoly {
        self.checked_add(rhs).expect("variable tables differ")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: Self) -> GradedPoly {
        self.checked_add(&-rhs).expect("variable tables differ")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: Self) -> GradedPoly {
        self.checked_mul(rhs).expect("variable tables differ")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Rational::one())
    }
}

/// `poly_mul` under its kernel name.
pub fn poly_mul(u: &GradedPoly, v: &GradedPoly) -> Result<GradedPoly, AlgebraError> {
    u.checked_mul(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn g12() -> Vec<Variable> {
        vec![Variable::new("g1", 1), Variable::new("g2", 1)]
    }

    #[test]
    fn difference_of_squares() {
        let v = g12();
        let g1 = GradedPoly::var(&v, None, "g1");
        let g2 = GradedPoly::var(&v, None, "g2");
        let p = &(&g1 + &g2) * &(&g1 - &g2);
        let expected = &g1.pow(2) - &g2.pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "g1^2 - g2^2");
    }

    #[test]
    fn binomial_with_degree_zero_parameter() {
        let v = vec![
            Variable::new("a", 0),
            Variable::new("gt1", 1),
            Variable::new("h", 1),
        ];
        let a = GradedPoly::var(&v, None, "a");
        let g = GradedPoly::var(&v, None, "gt1");
        let h = GradedPoly::var(&v, None, "h");
        let s = &(&a * &g) + &h;
        let sq = &s * &s;
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
        let c = GradedPoly::var(&v, Some(4), "c");
        assert!((&g.pow(3) * &g.pow(2)).is_zero());
        assert!(!(&g.pow(2) * &c).is_zero());
        assert!((&(&g * &c) * &c).is_zero());
    }

    #[test]
    fn mismatched_tables_rejected() {
        let p = GradedPoly::var(&g12(), None, "g1");
        let q = GradedPoly::var(&[Variable::new("x", 1)], None, "x");
        assert!(matches!(
            poly_mul(&p, &q),
            Err(AlgebraError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn substitution_and_collect() {
        let v = vec![Variable::new("a", 0), Variable::new("g", 1)];
        let a = GradedPoly::var(&v, None, "a");
        let g = GradedPoly::var(&v, None, "g");
        let one = GradedPoly::one(&v, None);
        let p = &(&(&a * &a) - &a) + &one;
        let p = &p * &g.pow(2);
        let at = p.substitute("a", &int(-2)).unwrap();
        assert_eq!(at.coeff(&[("g", 2)]), int(7));
        let groups = p.collect(&["g"]).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[&vec![2]].coeff(&[("a", 2)]), int(1));
        assert_eq!(p.scale(&rat(1, 2)).coeff(&[("g", 2)]), rat(1, 2));
    }

    #[test]
    fn roots_expand() {
        let p = GradedPoly::from_roots("x", &[int(4), int(-2)]);
        assert_eq!(p.univariate_coeffs(), vec![int(-8), int(-2), int(1)]);
        assert_eq!(p.to_string(), "x^2 - 2*x - 8");
    }
}

//! Finite rational combinations of basis symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rational::{coeff_prefix, fmt_rational, Rational};

/// `sum c_b * b` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::from_integer(1.into()))
    }

    pub fn term(b: B, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Keeps the terms whose basis symbol satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&B) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, v)| (b.clone(), v.clone()))
                .collect(),
        }
    }

    /// Linear extension of `f` on basis symbols.
    pub fn try_map<C: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&B) -> Result<LinComb<C>, E>,
    ) -> Result<LinComb<C>, E> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out = &out + &f(b)?.scale(c);
        }
        Ok(out)
    }
}

impl<B: Ord + Clone> FromIterator<(B, Rational)> for LinComb<B> {
    fn from_iter<T: IntoIterator<Item = (B, Rational)>>(iter: T) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: Self) -> LinComb<B> {
        self + &-rhs
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        LinComb {
            terms: self.terms.iter().map(|(b, v)| (b.clone(), -v)).collect(),
        }
    }
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let name = b.to_string();
            if name.is_empty() {
                write!(f, "{}", fmt_rational(&c.abs()))?;
            } else {
                write!(f, "{}{}", coeff_prefix(c, false), name)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let a = LinComb::term("x", int(2));
        let b = LinComb::term("x", int(-2));
        assert!((&a + &b).is_zero());
        let c = &LinComb::term("x", rat(1, 3)) - &LinComb::term("y", int(1));
        assert_eq!(c.to_string(), "(1/3)*x - y");
        assert_eq!(c.total(), rat(-2, 3));
    }
}

//! Noncommutative polynomials with a transpose involution, and string
//! rewriting to normal forms.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{coeff_prefix, fmt_rational, Rational};
use super::AlgebraError;

/// Symbols of a free algebra plus the transpose pairing on them.
#[derive(Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    involution: Vec<usize>,
}

impl Alphabet {
    /// `pairs` lists `(s, t)` with `t = s^t`; unlisted symbols are
    /// self-transpose.
    pub fn new(symbols: &[&str], pairs: &[(&str, &str)]) -> Result<Arc<Self>, AlgebraError> {
        let symbols: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| {
            symbols
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| AlgebraError::UnknownSymbol(s.to_string()))
        };
        let mut involution: Vec<usize> = (0..symbols.len()).collect();
        for (a, b) in pairs {
            let (i, j) = (index(a)?, index(b)?);
            involution[i] = j;
            involution[j] = i;
        }
        if (0..symbols.len()).any(|i| involution[involution[i]] != i) {
            return Err(AlgebraError::BadInvolution);
        }
        Ok(Arc::new(Alphabet {
            symbols,
            involution,
        }))
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn transpose_symbol(&self, i: usize) -> usize {
        self.involution[i]
    }

    pub fn parse_word(&self, names: &[&str]) -> Result<Word, AlgebraError> {
        names
            .iter()
            .map(|n| {
                self.index(n)
                    .ok_or_else(|| AlgebraError::UnknownSymbol(n.to_string()))
            })
            .collect()
    }
}

pub type Word = Vec<usize>;

/// Element of the free algebra over an [`Alphabet`] with rational
/// coefficients. The empty word is the unit.
#[derive(Clone, Debug)]
pub struct NCPoly {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, Rational>,
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl Eq for NCPoly {}

impl NCPoly {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        NCPoly {
            alphabet: Arc::clone(alphabet),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: Rational) -> Self {
        Self::term(alphabet, Vec::new(), c)
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::constant(alphabet, Rational::one())
    }

    pub fn term(alphabet: &Arc<Alphabet>, word: Word, c: Rational) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(word, c);
        p
    }

    /// A single symbol. Panics if the symbol is not in the alphabet.
    pub fn sym(alphabet: &Arc<Alphabet>, name: &str) -> Self {
        let i = alphabet
            .index(name)
            .unwrap_or_else(|| panic!("unknown symbol {name}"));
        Self::term(alphabet, vec![i], Rational::one())
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    fn check_alphabet(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.alphabet != other.alphabet {
            return Err(AlgebraError::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_alphabet(other)?;
        let mut out = Self::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.alphabet);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Anti-automorphism: reverses each word and transposes every symbol.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.alphabet);
        for (w, c) in &self.terms {
            let tw: Word = w
                .iter()
                .rev()
                .map(|&s| self.alphabet.transpose_symbol(s))
                .collect();
            out.add_term(tw, c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.alphabet), |acc, _| &acc * self)
    }

    /// Longest word, ties broken by the larger word in symbol order.
    pub fn leading_term(&self) -> Option<(&Word, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)))
    }

    /// Turns the relation `self = 0` into a rule `lead -> rest`, solving for
    /// the leading word.
    pub fn orient(&self) -> Option<(Word, NCPoly)> {
        let (lead, _) = self.leading_term()?;
        let lead = lead.clone();
        let rhs = self.solve_for(&lead)?;
        Some((lead, rhs))
    }

    /// Solves `self = 0` for the word `w`: returns `r` with `w = r`.
    pub fn solve_for(&self, w: &[usize]) -> Option<NCPoly> {
        let c = self.terms.get(w)?.clone();
        let mut rest = self.clone();
        rest.terms.remove(w);
        Some(rest.scale(&(-c.recip())))
    }

    pub fn word_to_string(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&s| self.alphabet.name(s))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            if w.is_empty() {
                write!(f, "{}", fmt_rational(&c.abs()))?;
            } else {
                write!(f, "{}{}", coeff_prefix(c, false), self.word_to_string(w))?;
            }
        }
        Ok(())
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: Self) -> NCPoly {
        self.checked_add(rhs).expect("alphabets differ")
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: Self) -> NCPoly {
        self.checked_add(&-rhs).expect("alphabets differ")
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: Self) -> NCPoly {
        self.checked_mul(rhs).expect("alphabets differ")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Rational::one())
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// Ordered string-rewriting rules over one alphabet.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Arc<Alphabet>,
    rules: Vec<Rule>,
    max_passes: usize,
}

impl RewriteSystem {
    pub fn new(alphabet: &Arc<Alphabet>, max_passes: usize) -> Self {
        assert!(max_passes > 0, "max_passes must be positive");
        RewriteSystem {
            alphabet: Arc::clone(alphabet),
            rules: Vec::new(),
            max_passes,
        }
    }

    /// Appends `lhs -> rhs`. Every word on the right must be no longer than
    /// `lhs`.
    pub fn add_rule(&mut self, lhs: Word, rhs: NCPoly) -> Result<(), AlgebraError> {
        if rhs.alphabet != self.alphabet {
            return Err(AlgebraError::AlphabetMismatch);
        }
        if lhs.is_empty() {
            return Err(AlgebraError::EmptyRuleLhs);
        }
        if let Some((w, _)) = rhs.terms().find(|(w, _)| w.len() > lhs.len()) {
            return Err(AlgebraError::DegreeIncreasingRule {
                lhs: rhs.word_to_string(&lhs),
                rhs_word: rhs.word_to_string(w),
            });
        }
        self.rules.push(Rule { lhs, rhs });
        Ok(())
    }

    /// Convenience form taking symbol names.
    pub fn with_rule(mut self, lhs: &[&str], rhs: NCPoly) -> Result<Self, AlgebraError> {
        let w = self.alphabet.parse_word(lhs)?;
        self.add_rule(w, rhs)?;
        Ok(self)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Same rules in a different order.
    pub fn permuted(&self, order: &[usize]) -> Self {
        RewriteSystem {
            alphabet: Arc::clone(&self.alphabet),
            rules: order.iter().map(|&i| self.rules[i].clone()).collect(),
            max_passes: self.max_passes,
        }
    }

    /// Leftmost redex of `word`: the earliest position, then the first rule
    /// in order matching there.
    fn find_redex(&self, word: &[usize]) -> Option<(usize, &Rule)> {
        (0..word.len()).find_map(|pos| {
            self.rules
                .iter()
                .find(|r| word[pos..].starts_with(&r.lhs))
                .map(|r| (pos, r))
        })
    }

    pub fn is_normal(&self, p: &NCPoly) -> bool {
        p.terms.keys().all(|w| self.find_redex(w).is_none())
    }
}

/// Rewrites `p` to its fixed point under `rules`. Each pass rewrites the
/// leftmost redex of every reducible word once.
pub fn nc_normalize(p: &NCPoly, rules: &RewriteSystem) -> Result<NCPoly, AlgebraError> {
    if p.alphabet != rules.alphabet {
        return Err(AlgebraError::AlphabetMismatch);
    }
    let mut current = p.clone();
    for _ in 0..rules.max_passes {
        let mut next = NCPoly::zero(&current.alphabet);
        let mut changed = false;
        for (w, c) in &current.terms {
            match rules.find_redex(w) {
                Some((pos, rule)) => {
                    changed = true;
                    let prefix = NCPoly::term(&current.alphabet, w[..pos].to_vec(), c.clone());
                    let suffix = NCPoly::term(
                        &current.alphabet,
                        w[pos + rule.lhs.len()..].to_vec(),
                        Rational::one(),
                    );
                    let replaced = &(&prefix * &rule.rhs) * &suffix;
                    for (w2, c2) in replaced.terms {
                        next.add_term(w2, c2);
                    }
                }
                None => next.add_term(w.clone(), c.clone()),
            }
        }
        current = next;
        if !changed {
            return Ok(current);
        }
    }
    if rules.is_normal(&current) {
        return Ok(current);
    }
    let term = current
        .terms
        .keys()
        .find(|w| rules.find_redex(w).is_some())
        .map(|w| current.word_to_string(w))
        .unwrap_or_default();
    Err(AlgebraError::NonTermination {
        passes: rules.max_passes,
        term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn q_alphabet() -> Arc<Alphabet> {
        Alphabet::new(&["q", "qt"], &[("q", "qt")]).unwrap()
    }

    fn projector_rules(a: &Arc<Alphabet>) -> RewriteSystem {
        let q = NCPoly::sym(a, "q");
        let qt = NCPoly::sym(a, "qt");
        RewriteSystem::new(a, 64)
            .with_rule(&["q", "q"], q)
            .unwrap()
            .with_rule(&["qt", "qt"], qt)
            .unwrap()
            .with_rule(&["q", "qt"], NCPoly::zero(a))
            .unwrap()
    }

    #[test]
    fn q_qt_vanishes() {
        let a = q_alphabet();
        let r = projector_rules(&a);
        let p = &NCPoly::sym(&a, "q") * &NCPoly::sym(&a, "qt");
        assert!(nc_normalize(&p, &r).unwrap().is_zero());
    }

    #[test]
    fn idempotent_rule() {
        let a = q_alphabet();
        let r = projector_rules(&a);
        let q = NCPoly::sym(&a, "q");
        assert_eq!(nc_normalize(&(&q * &q), &r).unwrap(), q);
    }

    #[test]
    fn four_term_square() {
        // (qt - 1/2 qt q)^2 = qt qt - 1/2 qt qt q - 1/2 qt q qt + 1/4 qt q qt q
        let a = q_alphabet();
        let r = projector_rules(&a);
        let q = NCPoly::sym(&a, "q");
        let qt = NCPoly::sym(&a, "qt");
        let x = &qt - &(&qt * &q).scale(&rat(1, 2));
        let expanded = &x * &x;
        assert_eq!(expanded.terms().count(), 4);
        assert_eq!(
            expanded.coeff(&a.parse_word(&["qt", "q", "qt", "q"]).unwrap()),
            rat(1, 4)
        );
        assert_eq!(nc_normalize(&expanded, &r).unwrap(), x);
    }

    #[test]
    fn transpose_is_anti_involution() {
        let a = q_alphabet();
        let q = NCPoly::sym(&a, "q");
        let qt = NCPoly::sym(&a, "qt");
        let p = &(&q * &qt) + &qt.scale(&int(3));
        assert_eq!(p.transpose().transpose(), p);
        assert_eq!((&q * &q).transpose(), &qt * &qt);
        assert_eq!((&q * &qt).transpose(), &q * &qt);
    }

    #[test]
    fn degree_increasing_rule_rejected() {
        let a = q_alphabet();
        let q = NCPoly::sym(&a, "q");
        let err = RewriteSystem::new(&a, 4)
            .with_rule(&["q"], &q * &q)
            .unwrap_err();
        assert!(matches!(err, AlgebraError::DegreeIncreasingRule { .. }));
    }

    #[test]
    fn non_termination_reported() {
        // q -> qt, qt -> q cycles forever
        let a = q_alphabet();
        let r = RewriteSystem::new(&a, 10)
            .with_rule(&["q"], NCPoly::sym(&a, "qt"))
            .unwrap()
            .with_rule(&["qt"], NCPoly::sym(&a, "q"))
            .unwrap();
        let err = nc_normalize(&NCPoly::sym(&a, "q"), &r).unwrap_err();
        match err {
            AlgebraError::NonTermination { passes, term } => {
                assert_eq!(passes, 10);
                assert!(term == "q" || term == "qt");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn orient_solves_for_longest_word() {
        let a = Alphabet::new(&["P", "Q", "T"], &[]).unwrap();
        let q = NCPoly::sym(&a, "Q");
        let t = NCPoly::sym(&a, "T");
        // 4Q - 8T - 16 = 0  ->  Q = 4 + 2T
        let rel = &(&q.scale(&int(4)) - &t.scale(&int(8))) - &NCPoly::constant(&a, int(16));
        let rhs = rel.solve_for(&[1]).unwrap();
        assert_eq!(rhs, &NCPoly::constant(&a, int(4)) + &t.scale(&int(2)));
        // the leading word in symbol order is T
        let (lhs, _) = rel.orient().unwrap();
        assert_eq!(lhs, vec![2]);
    }
}

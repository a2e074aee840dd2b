//! Exact arithmetic substrate: rationals, graded commutative polynomials,
//! noncommutative polynomials with rewriting, and dense rational matrices.

pub mod lincomb;
pub mod matrix;
pub mod ncpoly;
pub mod poly;
pub mod rational;

use thiserror::Error;

pub use lincomb::LinComb;
pub use matrix::{minimal_polynomial, ExactMatrix};
pub use ncpoly::{nc_normalize, Alphabet, NCPoly, RewriteSystem, Word};
pub use poly::{poly_mul, GradedPoly, Variable};
pub use rational::{int, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("variable tables differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("involution table is not an involution")]
    BadInvolution,
    #[error("operands use different alphabets")]
    AlphabetMismatch,
    #[error("rule with empty left-hand side")]
    EmptyRuleLhs,
    #[error("rule {lhs} -> ... increases degree via `{rhs_word}`")]
    DegreeIncreasingRule { lhs: String, rhs_word: String },
    #[error("no normal form after {passes} passes; `{term}` is still reducible")]
    NonTermination { passes: usize, term: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ragged matrix rows")]
    Ragged,
}

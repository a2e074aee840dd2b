//! Correspondences on `F x F`, their actions, and the block model of the
//! homologically trivial Chow groups.

pub mod expr;
pub mod model;
pub mod taut_action;
pub mod verify;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::taut::TautError;

pub use expr::{corr_vars, cpoly, CorrAtom, CorrExpr, Direction};
pub use model::{build_model, ChowModel, Ranks};
pub use taut_action::{act_corr_on_point, act_taut, act_taut_symbolic};
pub use verify::{
    derive_operator_relations, eigenprojectors, operator_rules, verify_fourier,
    verify_intertwining, verify_minpolys, verify_phi_of_o, voisin_alpha, CharacterTable,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrError {
    #[error("grading: {0}")]
    Grading(String),
    #[error("{atom} has no action on {context}")]
    Unsupported {
        atom: &'static str,
        context: &'static str,
    },
    #[error("coefficient {0} still depends on the parameter a")]
    SymbolicParameter(String),
    #[error("expression is not a sum of polynomial multiples of atoms")]
    NotSimple,
    #[error("{0} is not a zero-cycle")]
    NotZeroCycle(String),
    #[error("no grade {0} in the model")]
    BadGrade(i64),
    #[error("minimal polynomial does not split over Q: {0}")]
    NotSplit(String),
    #[error(transparent)]
    Taut(#[from] TautError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

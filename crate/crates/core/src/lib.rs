//! Exact symbolic verification of cycle identities on the Fano variety of
//! lines `F` of a smooth cubic fourfold.
//!
//! The crate models the tautological ring of `F`, the Picard lattice of a
//! cubic surface with its 27 lines, formal correspondences on `F x F`
//! acting on block models of the homologically trivial Chow groups, and
//! the projector algebra of a Chow-Kunneth decomposition. Every identity is
//! checked with exact rational arithmetic.

pub mod algebra;
pub mod check;
pub mod chern;
pub mod corr;
pub mod dsl;
pub mod exact_cover;
pub mod motive;
pub mod surface;
pub mod taut;

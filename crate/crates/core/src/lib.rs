//! Exact combinatorics of (q,t)-deformed Cartan matrices of finite type.
//!
//! The library computes, in integer-exact arithmetic throughout:
//!
//! - the deformed matrix `C(q,t)` and its inverse expanded as a truncated
//!   formal series ([`deform`]), with the quasi-periodicity, positivity and
//!   palindrome properties of the expansion coefficients checked exactly;
//! - the braid-group action on the deformed root lattice ([`braid`]), the
//!   full-twist scalar, and a second, word-combinatorial pipeline for the
//!   inverse matrix that cross-checks the first;
//! - graded dimension polynomials of generic-kernel modules, Euler-Poincare
//!   pairings and first-extension dimensions with their exceptional
//!   corrections ([`invariants`]);
//! - denominator divisors of normalized R-matrices between
//!   Kirillov-Reshetikhin pairs and the published-list evidence harness
//!   ([`rmatrix`]);
//! - an umbrella verification sweep over every finite type of bounded rank
//!   ([`verify`]).

// Index-driven loops over square matrices are clearer than iterator chains
// for the (i, j) double sweeps this crate is made of.
#![allow(clippy::needless_range_loop)]

pub mod braid;
pub mod cartan;
pub mod deform;
pub mod export;
pub mod invariants;
pub mod poly;
pub mod report;
pub mod rmatrix;
pub mod verify;
pub mod weyl;

pub use braid::WeightVector;
pub use cartan::{CartanData, Family, FiniteType};
pub use deform::{CTildeTable, DeformedCartan};
pub use invariants::{DeltaTable, DimPoly, DimRole};
pub use poly::{BiLaurent, Coeff, Exp};
pub use report::CheckReport;
pub use rmatrix::{DivisorPoly, DivisorSource, KRLabel};
pub use weyl::{RootVec, Word};

/// Crate-level error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("truncation order too small: {0}")]
    OrderTooSmall(String),
    #[error("outside the exceptional locus: {0}")]
    NotExceptional(String),
    #[error("outside the asserted domain of the denominator formula: {0}")]
    DenominatorDomain(String),
}

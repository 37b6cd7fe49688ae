//! Exact-arithmetic combinatorics of the hyperoctahedral groups: signed
//! permutations, Garfinkle domino insertion, bitableau insertion, their
//! plactic and admissible equivalence relations, Gelfand Iwahori-Hecke
//! modules with canonical bases, and the resulting W-graphs.
//!
//! Everything here is desk-scale and deterministic: iteration orders are
//! fixed so that repeated runs produce identical output.

pub mod coxeter;
pub mod equivalence;
pub mod hecke;
pub mod insertion;
pub mod laurent;
pub mod tableaux;
pub mod verify;
pub mod wgraph;

use coxeter::CoxType;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid signed permutation: {0}")]
    InvalidPerm(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("label {0} already present")]
    LabelCollision(u32),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("generator {0} is not valid for type {1:?} at rank {2}")]
    InvalidGenerator(i32, CoxType, usize),
    #[error("canonical basis failure: {0}")]
    Basis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

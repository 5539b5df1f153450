//! Independent correctness oracles: evaluation in a finite standard model
//! with exhaustive environment enumeration, random well-typed term
//! generators, and instance generators for the equational axiom schemas.

pub mod axioms;
pub mod fincbpv;
pub mod finmodel;
pub mod finpol;
pub mod gen;

use thiserror::Error;

/// Which calculus a generic entry point should interpret its input in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Calculus {
    Stlc,
    Cbpv,
    Polarized,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("domain too large: {points} points exceeds the bound {bound}")]
    DomainTooLarge { points: u128, bound: u128 },
    #[error("type error: {0}")]
    Type(String),
}

/// Outcome of a finite-model equivalence check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Equal,
    NotEqual,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("term generation exhausted its backtracking budget")]
pub struct GenerationExhausted;

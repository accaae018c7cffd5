//! Exact symbolic verification engine for split Courant algebroids given by
//! structure constants.
//!
//! A pair of anchored brackets on a rank-n module and its dual, together with
//! a 3-vector `tau` and a 3-form `phi`, determines a Dorfman bracket on the
//! double and an odd operator on the spinor module Lambda(A). This crate
//! builds that operator, decides whether its square is multiplication by a
//! function (the generating-operator property, equivalent to the
//! proto-bialgebroid axioms), computes the resulting characteristic function,
//! and cross-checks everything against an independent dense spinor-matrix
//! model over constant coefficients.
//!
//! All arithmetic is exact over the rationals; coefficients are polynomials
//! in base coordinates `q1..qm`, with `m = 0` meaning a point base.

// Sign bookkeeping is parity arithmetic throughout; `% 2` reads better than
// `is_multiple_of(2)` for that.
#![allow(clippy::manual_is_multiple_of)]

pub mod builtins;
pub mod courant;
pub mod dirac;
pub mod duality;
pub mod dull;
pub mod exterior;
pub mod io;
pub mod proto;
pub mod report;
pub mod ring;

#[cfg(test)]
pub(crate) mod testutil;

use thiserror::Error;

/// Errors surfaced by input loading and the oracle layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input document: {0}")]
    InvalidDocument(String),
    #[error("non-canonical rational: {0}")]
    NonCanonicalRational(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}: only available over a point base (base_dim = 0)")]
    RequiresPointBase(&'static str),
    #[error("unknown builtin: {0}")]
    UnknownBuiltin(String),
    #[error("parse error in {context}: {message}")]
    Parse {
        context: &'static str,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Exact machinery for the invariants of two generic 4×4 matrices under
//! simultaneous conjugation.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactalg`]: rationals, prime fields, sparse polynomials, truncated
//!   bivariate series and exact linear algebra.
//! - [`words`]: cyclic words over `{x, y}`, trace polynomials and the
//!   raising derivation.
//! - [`tableaux`]: two-row partitions, standard tableaux and the catalogue of
//!   highest weight vectors.
//! - [`schur`]: two-variable Schur polynomials and decomposition of
//!   characters.
//! - [`genmat`]: generic traceless 4×4 matrices and evaluation of trace
//!   expressions, symbolically or at random points modulo large primes.
//! - [`exprlang`]: a small text language for trace expressions and the
//!   bundled relation corpus.
//! - [`invariants`]: Hilbert series, the degree-by-degree generator search,
//!   relation discovery and the final theorem and remark checks.
//! - [`cli`]: the command-line front end used by the `trace42` binary.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod exprlang;
pub mod genmat;
pub mod invariants;
pub mod schur;
pub mod tableaux;
pub mod words;

pub use error::{Error, Result};

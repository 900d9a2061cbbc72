//! Equivariant division of bijections `f: A × C → B × C`.
//!
//! The crate is organised bottom-up:
//!
//! - [`perm`]: permutations of `0..n`, cycle notation, small permutation groups.
//! - [`bijection`]: the finite product bijection type, its symmetry action and
//!   the subtraction construction.
//! - [`fp`]: basepoint division and its parallelization.
//! - [`equivariance`]: stabilizers, pair orbits and the quotient solver with
//!   certificates.
//! - [`gallery`]: constructors for the counterexample families.
//! - [`search`]: exhaustive and sampled probes over small sizes.
//! - [`cli`] and [`corpus`]: the command line front end and its built-in
//!   reference corpus.
//!
//! Composition is written in "then" order throughout: `p.then(&q)` maps `x`
//! to `q(p(x))`.

pub mod bijection;
pub mod cli;
pub mod corpus;
pub mod equivariance;
mod error;
pub mod fp;
pub mod gallery;
pub mod perm;
pub mod search;

pub use bijection::{PartialMap, ProdBij};
pub use equivariance::{Certificate, Limits, Reason, SymTriple, Verdict};
pub use error::{Error, Result};
pub use perm::{Perm, PermGroup};

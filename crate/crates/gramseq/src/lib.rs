//! Rank structure of the Gram matrices `G_t G_t^T` built from the sliding
//! windows of a binary m-sequence, together with the coding-theoretic view of
//! the same family as punctured cyclic simplex codes.
//!
//! The crate is organized along the objects involved:
//!
//! - [`poly2`]: bit-packed arithmetic over F2\[z\], reciprocal operators and
//!   the self-reciprocal factorization.
//! - [`field`]: small finite fields F_{q^n} with log/antilog tables.
//! - [`seq`]: LFSR and trace-form sequence generation plus the classical
//!   property checkers.
//! - [`gram`]: observability matrices, Gram matrices, the lifted matrix over
//!   F_{2^n}, and ranks on both sides.
//! - [`structure`]: the Bézoutian, the canonical representation of singular
//!   points, rank distribution and dynamics, and the q-ary analogue.
//! - [`codes`]: punctured simplex codes, hull dimensions and the LCD/hull
//!   distribution.

pub mod codes;
pub mod error;
pub mod field;
pub mod gram;
pub mod poly2;
pub mod seq;
pub mod structure;

pub use error::{Error, Result};

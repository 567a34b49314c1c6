//! Exact term counts for the permanent and determinant of the generic
//! circulant matrix, with two independent routes to every determinant
//! coefficient and a numerical check of the `p`-adic dominance argument that
//! shows no cancellation happens when `n` is a prime power.

pub mod bricks;
pub mod circulant;
pub mod error;
pub mod exactmath;
pub mod partitions;
pub mod theorem;

pub use error::{Error, Result};

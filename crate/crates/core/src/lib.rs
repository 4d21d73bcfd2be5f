//! Exact arithmetic for Fibonacci-like sequences.
//!
//! A Fibonacci-like sequence G has the Fibonacci recurrence
//! G_j = G_{j-1} + G_{j-2} with arbitrary integer initial terms (G0, G1),
//! not both zero, extended to negative indices by running the recurrence
//! backwards. This crate evaluates such sequences at any signed index in
//! O(log |j|) big-integer multiplications, implements the catalog of
//! square/product identities they satisfy as residual evaluators, computes
//! weighted partial sums of squares and products in closed form (paired
//! with brute-force oracles), expands the associated generating functions
//! exactly, and evaluates the double-binomial summation identities that
//! come out of iterating the recurrence of the squares.
//!
//! All arithmetic is exact: `BigInt` values and canonical `BigRat` weights.
//! Everything is a pure function of its inputs and safe to call from any
//! number of threads.

pub mod binomial;
pub mod error;
pub mod identity;
pub mod report;
pub mod sequence;
pub mod series;
pub mod summation;
pub mod verify;

pub use error::Error;
pub use num_bigint::BigInt;
pub use sequence::{fib, lucas, SequenceSpec};
pub use summation::{BigRat, WeightedSumQuery};

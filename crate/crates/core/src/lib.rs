//! Exact Hadamard products and powers of projective linear spaces.

pub mod arith;
pub mod brackets;
pub mod cli;
pub mod error;
pub mod json;
pub mod line_powers;
pub mod products;
pub mod projective;
pub mod star;
pub mod suite;
pub mod tropical;

pub use error::{Error, Result};

//! Exact tools for palindromic characteristic polynomials of graphs:
//! graph6 I/O and canonical labels, exact characteristic polynomials,
//! matching counts, hairings, tensor products and exhaustive surveys.

pub mod cli;
pub mod error;
pub mod graph;
pub mod hairing;
pub mod matchings;
pub mod poly;
pub mod spectral;
pub mod survey;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use poly::{classify, IntPolynomial, PalindromeClass, PalindromeKind};

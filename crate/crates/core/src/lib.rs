//! Orthogonal Schubert calculus in exact arithmetic.

pub mod arakelov;
pub mod cache;
pub mod cli;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod ortho;
pub mod poly;
pub mod rational;
pub mod render;
pub mod stanley;
pub mod suites;
pub mod sym;
pub mod type_a;
pub mod weyl;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use rational::Rational;
pub use weyl::{Letter, PermutationA, SignedPermutation, Word};

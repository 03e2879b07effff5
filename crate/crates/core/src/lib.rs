//! Proportionally modular affine semigroups `S = {x ∈ ℕᵖ : f(x) mod b ≤ g(x)}`.
//!
//! Exact integer algorithms for minimal generating sets (a fast geometric
//! method in the plane and a general method in higher dimension), Frobenius
//! vectors, Apéry sets and the Cohen-Macaulay, Gorenstein and Buchsbaum
//! criteria, together with brute-force reference implementations.

pub mod arith;
pub mod cli;
pub mod dioph;
pub mod error;
pub mod frob;
pub mod gen2;
pub mod genp;
pub mod lines;
pub mod model;
pub mod oracle;
pub mod ring;

pub use arith::{mod_reduce, Rational, RationalPoint};
pub use error::{Error, Result};
pub use model::{normalize, GeneratorSet, LatticePoint, LinearForm, ModularInequality};

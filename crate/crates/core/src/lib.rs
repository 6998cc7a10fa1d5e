//! Exact cohomology of bounded double complexes over ℚ(i).
//!
//! The crate computes de Rham, Dolbeault, conjugate Dolbeault, Bott-Chern and
//! Aeppli cohomology, decomposes complexes into squares and zigzags, and
//! checks the standard inequalities relating these numbers.

pub mod bicomplex;
pub mod checkers;
pub mod clio;
pub mod cohomology;
pub mod error;
pub mod exactla;
pub mod models;
pub mod zigzag;

pub use bicomplex::{
    Bicomplex, Bidegree, ConjugationStructure, Differential, ProductStructure, TotalComplex, Violation,
};
pub use error::{Error, Result};
pub use exactla::{Matrix, Scalar, Subspace};

//! Exact computations in braid groups of handlebodies: combed normal forms of
//! pure braid groups, the kernel of `B_{g,n} → B_n`, the wreath quotient
//! `F_g ≀ S_n`, and Hecke-type algebras with Laurent-polynomial coefficients.

pub mod braid;
pub mod combing;
pub mod conjrules;
pub mod error;
pub mod freewords;
pub mod handlebody;
pub mod hecke;
pub mod laurent;
pub mod syntax;
pub mod wreath;

pub use error::{Error, Result};

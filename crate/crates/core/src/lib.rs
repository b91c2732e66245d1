//! Exact computation around parking functions and multiplicity-free
//! permutation representations of wreath products.
//!
//! The crate builds finite groups and the coset space `Gamma^n / diag`,
//! enumerates parking functions and their orbit structure, decomposes the
//! induced trivial representation of `Z_r wr S_n` and of its diagonal
//! quotient into monomial constituents, evaluates zonal spherical
//! functions exactly over roots of unity, decides the Gelfand property for
//! arbitrary finite base groups through centralizer-algebra commutativity,
//! and compares the resulting q-analogue of the Catalan numbers against
//! ballot sequences and plane-tree degree polynomials.
//!
//! Everything arithmetic is exact: big integers for counts and exponents,
//! integer cyclotomic vectors for character values. Floating point appears
//! only at output boundaries (value clouds, tolerance checks).

pub mod combinat;
pub mod cyclotomic;
pub mod error;
pub mod gelfand;
pub mod groups;
pub mod parking;
pub mod qcatalan;
pub mod repthy;
pub mod spherical;
pub mod treepoly;

pub use error::{Error, Result};

//! Reversible BCH codes over finite fields: field and polynomial arithmetic,
//! cyclotomic coset combinatorics, generator construction, closed-form
//! dimensions and minimum-distance certificates.

pub mod arith;
pub mod bch;
pub mod cosets;
pub mod distance;
pub mod error;
pub mod ffield;
pub mod qpoly;
pub mod symbols;
pub mod tables;
pub mod theory;
pub mod verify;

pub use bch::{BchCode, CodeReport, Variant};
pub use error::{Error, Result};
pub use ffield::{Elem, Extension, Field, FieldElement};
pub use qpoly::Poly;

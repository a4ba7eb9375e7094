//! Selfdual skew cyclic codes over finite fields of odd characteristic.
//!
//! Codes are left ideals of `K[X;θ]/(X^(rk) - 1)` where `K/F` has degree `r`
//! and `θ` is the `|F|`-power Frobenius. Selfdual codes are counted, sampled
//! and enumerated through a bijection with families of isotropic subspaces.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod codes;
pub mod decomposition;
pub mod error;
pub mod finite_field;
pub mod geometry;
pub mod linalg;
pub mod oracle;
pub mod ore;

pub use error::{Error, Result};
pub use finite_field::{Elem, Field};

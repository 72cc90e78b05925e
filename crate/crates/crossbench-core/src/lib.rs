//! Crossed products of finite-dimensional Banach algebras by finite groups.
//!
//! Every object is finite: groups are Cayley tables, algebras are structure
//! constants with one of three computable norms, and representations are
//! explicit complex matrices. Integrals over the group are sums against the
//! counting measure, so the identities relating covariant pairs, integrated
//! forms and crossed products become matrix identities that can be checked
//! to rounding error.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebras;
pub mod convolution;
pub mod correspondence;
pub mod crossed;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod linalg;
pub mod norms;
pub mod tensor;

pub use algebras::{NormTag, NormedAlgebra, Structure};
pub use convolution::{AFunction, BeurlingAlgebra};
pub use correspondence::{AlgebraRep, RepKind};
pub use crossed::{CovariantPair, CrossedProduct, Flavor, RepClass};
pub use dynamics::DynamicalSystem;
pub use error::{Error, Result};
pub use groups::{Character, FiniteGroup, Weight};
pub use linalg::{Mat, C64};
pub use norms::{Bounds, SpaceNorm};
pub use tensor::TensorAlgebra;

//! Product spans ⟨AB⟩ of K-subspaces in field extensions K ⊂ L, linear
//! Kemperman transforms, and exhaustive verification of addition theorems
//! in both the linear and the finite-group setting.

pub mod campaign;
pub mod error;
pub mod ffield;
pub mod groupsets;
pub mod linalg;
pub mod subspace;
pub mod theorems;
pub mod transform;

pub use error::{Error, Result};
pub use ffield::{Ambient, Element, Poly};
pub use subspace::Subspace;

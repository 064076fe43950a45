//! Exact computer algebra for toroidal Lie algebras.

pub mod cli;
pub mod doc;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod reps;
pub mod roots;
pub mod sample;
pub mod linalg;
pub mod presentation;
pub mod simple_lie;
pub mod toroidal;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{ExpVec, Scalar, UnimodularMatrix};

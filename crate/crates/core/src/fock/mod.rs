//! Lattice Fock space `V(Gamma) = Q[Gamma] (x) S(A_-)`, Heisenberg and vertex
//! operators, and the vertex representation of the toroidal algebra.

mod rep;
mod space;

pub use rep::{FockActionCache, FockRep};
pub use space::{FockKey, FockLattice, FockSpace, FockVec};

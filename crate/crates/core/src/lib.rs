//! Mechanical verification of q-hypergeometric duality identities: exact
//! rational checks of the rational and trigonometric families, multiprecision
//! checks of the elliptic family, and exact residue calculus for the
//! symmetric trigonometric summands.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod pochhammer;
pub mod residues;
pub mod sampling;

pub use error::{Error, Result};

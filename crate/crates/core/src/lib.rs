//! Exact Chevalley-Eilenberg calculus on Lie algebras, with the twist and
//! shear constructions and checks for the geometric structures they carry.

pub mod error;
pub mod exterior;
pub mod geometry;
pub mod lie;
pub mod linalg;
pub mod notation;
pub mod rational;
pub mod search;
pub mod shear;

pub use error::{Error, Result};
pub use exterior::{KForm, Monomial, Vector};
pub use lie::LieAlgebra;
pub use rational::Q;

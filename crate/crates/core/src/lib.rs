//! Dual 2-cocycle twists of finite quantum groups and the induced deformation
//! of equivariant finite spectral triples.

pub mod catalog;
pub mod cocycle;
pub mod corep;
pub mod deform;
pub mod error;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod peter_weyl;
pub mod random;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod tensor;
pub mod twist;

pub use error::{Error, Result};

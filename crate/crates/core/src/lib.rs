#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod classifier;
pub mod error;
pub mod families;
pub mod fingerprint;
mod hints;
pub mod io;
pub mod matrix;
pub mod probe;
pub mod scalar;
pub mod structure;
pub mod subspace;

pub use algebra::{AlgebraBuilder, AxiomReport, OmegaAlgebra};
pub use catalog::CatalogLabel;
pub use error::{Error, Result};
pub use families::{FamilyLabel, FamilyParams};
pub use fingerprint::Fingerprint;
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::Subspace;

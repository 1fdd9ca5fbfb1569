pub mod angles;
pub mod complexes;
pub mod constructions;
pub mod curved;
pub mod error;
pub mod facelattice;
pub mod linalg;
pub mod relations;
pub mod scalar;
pub mod spans;
pub mod vectors;

pub use error::{Error, Result};
pub use facelattice::{FaceId, FaceLattice, VPolytope};
pub use scalar::Scalar;
pub use vectors::{AlphaFVector, AlphaVector, FVector, GammaVector, HVector};

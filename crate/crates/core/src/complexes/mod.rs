//! Polytopal complexes: the exact voxel engine, gluing, fixtures, and the
//! simplicial and float cell complexes used for the DS/Perles gluing laws.

pub mod facecx;
pub mod fixtures;
pub mod cells;
pub mod gluing;
pub mod simplicial;
pub mod voxel;

pub use cells::{ds_pe_gluing_check, CellComplex3, DsPeGluing};
pub use facecx::{classify, predict, Chars, Classification, FaceComplex, Piece};
pub use fixtures::{furch, gamma, handlebody, torus};
pub use simplicial::{ds_ball_lemma_check, SimplicialComplex};
pub use gluing::{chars, glue, Gluing, GluingReport, GluingSpec};
pub use voxel::{boundary_f, flats, refine, voxel_alpha, BoundaryComponent, Flat, LatticeFace, VoxelComplex};

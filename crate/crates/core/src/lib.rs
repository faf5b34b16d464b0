//! Mod-2 cohomology, cup products and cochain-level Steenrod squares of finite
//! simplicial complexes, with the face-ring, moment-angle and polyhedral-join
//! constructions built on top of them.

pub mod cohomology;
pub mod complex;
pub mod corpus;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod io;
pub mod linalg;
pub mod moment_angle;
pub mod polyhedral_join;
pub mod registry;
pub mod stanley_reisner;
pub mod steenrod;

pub use cohomology::{betti, cohomology_basis, cup, BettiMap, Cochain, CohomologyBasis};
pub use complex::{Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use exec::Execution;
pub use steenrod::{sq_cochain, sq_matrix, sq_profile, ProfileEntry, SteenrodMatrix, SteenrodProfile};
pub use moment_angle::{hochster_table, za_betti, za_sq_profile, HochsterTable, ZkOptions, ZkSqProfile};
pub use polyhedral_join::{composition, polyhedral_join, substitution, LabelingMode, PairSpec};

//! Finite combinatorial models of stratified spaces: posets with the
//! Alexandrov topology, simplicial complexes with monotone stratifications,
//! enter-path posets, constructible sheaves, unzips and Ran posets.
//!
//! All arithmetic is exact (big rationals or 𝔽₂).

pub mod complex;
pub mod corpus;
pub mod exitpath;
pub mod linalg;
pub mod poset;
pub mod ran;
pub mod sheaf;
pub mod strat;
pub mod unzip;

pub use complex::{homology, HomologyProfile, SimplicialComplex};
pub use linalg::Coefficients;
pub use poset::Poset;
pub use sheaf::Sheaf;
pub use strat::StratifiedComplex;

//! Sparse polynomial types and the `omega` / `Omega` recursions.

mod half;
pub mod omega;
pub mod render;
mod sparse;
mod symmetric;

pub use half::HalfPowerPoly;
pub use omega::CellMap;
pub use render::ExponentUnit;
pub use sparse::Poly;
pub use symmetric::{distinct_permutations, orbit_size, SparseSymPoly};

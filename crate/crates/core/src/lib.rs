//! Exact rational geometry for k-fold translative coverings of a square
//! window by translates of the triangle `T = conv{(0,0), (1,0), (0,1)}`:
//! stair-polygon decomposition, tiling and coverage verification, area
//! bounds, and lattice covering search.

pub mod audit;
pub mod bounds;
pub mod decompose;
pub mod depth;
pub mod error;
pub mod geom;
pub mod lattice;
pub mod rational;
pub mod verify;

pub use decompose::{decompose, CoveringInstance, DecompositionResult};
pub use error::{Error, Result};
pub use geom::{Point, StairPolygon, TriTranslate};
pub use rational::Rational;

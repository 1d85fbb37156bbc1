//! Exact intersection calculus on moduli spaces of pointed stable curves,
//! plus the surface-lattice and dual-graph checks that feed it.

pub mod curve_numerics;
pub mod divisor_algebra;
pub mod dual_graph;
pub mod error;
pub mod rational;
pub mod repro;
pub mod surface_lattice;

pub use error::{Error, Result};
pub use rational::Rational;

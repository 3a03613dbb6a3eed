//! Essential-type finite subdivision rules for matings of Misiurewicz quadratic
//! polynomials, computed from external angles with exact arithmetic.

pub mod angle_dynamics;
pub mod complexes;
pub mod engine;
pub mod error;
pub mod hubbard_tree;
pub mod mating;
pub mod pseudo_equator;

pub use engine::{Config, Engine};
pub use error::{FsrError, Result};

//! Exact Euler calculus on finite categories.
//!
//! Categories are given by their similarity matrices (morphism counts). On
//! top of that the crate computes Euler characteristics from weightings,
//! integrates definable functions against them on filters or ideals, pushes
//! functions forward along measurable maps, and counts targets on one-way
//! sensor networks by integrating the sensors' counting function.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod category;
pub mod cli;
pub mod definable;
pub mod error;
pub mod euler;
pub mod integration;
pub mod io;
pub mod linalg;
pub mod random;
pub mod rational;
pub mod sensor;

pub use category::{FiniteCategory, ObjectSet, QuotientPoset};
pub use definable::{Basis, DefinableFunction, FilterDecomposition};
pub use error::{Error, Result};
pub use euler::{euler_characteristic, nerve_euler_characteristic, Weighting};
pub use integration::{integrate, pushforward, ObjectMap, Side};
pub use rational::Rational;
pub use sensor::{CountingFunction, SensorNetwork, TargetPlacement};

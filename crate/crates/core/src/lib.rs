//! Exact computer algebra on rooted trees: the edge-contraction Hopf algebra
//! `H`, the Connes–Kreimer Hopf algebra, their characters and pre-Lie
//! structures, the quasi-shuffle image of forests, and B-series.

pub mod bseries;
pub mod characters;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod prelie;
pub mod qshuffle;
pub mod rational;
pub mod report;
pub mod suite;
pub mod trees;

pub use error::{Error, Result};
pub use linalg::{Algebra, ForestSum, Functional, Grading, Kind, TensorSum};
pub use rational::Rational;
pub use trees::{Forest, Tree, TreeStats};

//! Exact computation of colored HOMFLY invariants of torus links and of
//! their integral reformulation.

pub mod combinatorics;
pub mod error;
pub mod golden;
pub mod hecke;
pub mod linalg;
pub mod lmv;
pub mod poly;
pub mod selftest;
pub mod symchar;
pub mod symfunc;
pub mod torus;
mod unipoly;

pub use combinatorics::{Partition, PartitionTuple};
pub use error::{Error, Result};
pub use poly::{Bracket, Coefficient, ExactLaurent, RationalFunction, Var};

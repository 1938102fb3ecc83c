//! Exact counting of vertices by outdegree in plane trees and k-ary trees.
//!
//! The crate provides closed-form counts over arbitrary-precision integers,
//! exhaustive enumeration used as a brute-force oracle, the composition
//! bijections that explain the counts, and a truncated power-series engine
//! that checks the generating-function identities coefficient by coefficient.

pub mod compositions;
pub mod error;
pub mod exact_math;
pub mod guard;
pub mod kary_trees;
pub mod plane_trees;
pub mod series;
pub mod verify;

pub use compositions::{Composition, FundamentalDecomposition};
pub use error::{Error, Result};
pub use exact_math::{BigCount, Formulas};
pub use guard::Guards;
pub use kary_trees::{KaryTree, MarkedKaryTree, SubsetPair};
pub use plane_trees::{MarkedPlaneTree, PlaneTree};
pub use series::TruncatedSeries;

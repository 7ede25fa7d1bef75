//! Exact-arithmetic machinery for counting empty convex polygons (k-holes)
//! in planar point sets, and for building the block-by-block assignment of
//! 5-holes to points used to lower-bound their number.
//!
//! Everything here is `no_std` (with `alloc`): coordinates are bounded
//! integers and every geometric decision is the sign of an exact 64-bit
//! determinant. File formats, the command-line front end, parallel drivers
//! and the property suites live in the companion `khole` crate.
//!
//! Module map:
//!
//! - [`geom`]: points, orientation, hulls, radial orders, emptiness tests.
//! - [`layers`]: onion-layer decomposition and `k_mid`.
//! - [`holes`]: brute-force and dynamic-programming k-hole counting, and the
//!   hole catalog with its vertex-pair index.
//! - [`assignment`]: blocks, candidate families, classification, block
//!   selection and the assignment ledger.
//! - [`visibility`]: convex runs, visible and long 5-holes, pipeline report.
//! - [`generators`]: seeded random, convex-position and Horton point sets.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod assignment;
pub mod combinatorics;
mod error;
pub mod generators;
pub mod geom;
pub mod holes;
pub mod layers;
pub mod visibility;

pub use error::{Error, Result};
pub use geom::{Orientation, Point, PointSet, RadialOrder, Violation};
pub use holes::{Hole, HoleCatalog, HoleId};
pub use layers::LayerDecomposition;

//! Optimal downsets of products of chains and related posets.
//!
//! The crate is `no_std` with `alloc`. Points are 0-based coordinate vectors,
//! downsets are stored either as point sets or, for rectangles, as column
//! profiles.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod error;
pub mod graphs;
pub mod grid;
pub mod oracle;
pub mod order;
pub mod symmetry;
pub mod triangle;
pub mod weight;

pub use error::{Error, Result};
pub use grid::{DownSet2D, DownSetGeneric, GridPoint, GridShape, PointSet};
pub use order::{DominationOrder, OrderKind};
pub use symmetry::PackedBox;
pub use triangle::{TriangleDownSet, TriangleShape};
pub use weight::{RankWeight, Weighting};

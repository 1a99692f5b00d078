//! Binary-emulated 2^k-trees: a hierarchical representation of subsets of
//! the k-dimensional unit hypercube on a dyadic grid.
//!
//! Each level of a [`Tree`] halves its block along one axis, cycling
//! through the axes, so `k` consecutive levels make one 2^k-ant split.
//! On top of the representation sit Boolean set operations, slices,
//! polytope rasterization and homographic transforms, connected-component
//! labeling, moments and principal-axis normalization, an XOR-mass
//! distance, and two classifiers built from them.

pub mod boolean;
pub mod builder;
mod error;
pub mod geometry;
pub mod io;
mod linalg;
pub mod metric;
pub mod moments;
pub mod recognition;
pub mod segmentation;
pub mod slices;
mod tree;

pub use boolean::{assert_tree, combine, diff, intersect, not_tree, union, xor, BoolOp};
pub use builder::{
    add_int_vector, add_real_vector, add_with_growth, contains, extend_tree, grow_bounds, RefBox,
};
pub use error::{Error, Result};
pub use linalg::symmetric_eigen;
pub use metric::{hausdorff, mass, mass_exact};
pub use tree::{CellPath, Color, Decorated, Depth, Shape, Tree, MAX_LEVELS};

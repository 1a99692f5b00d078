//! Polytopes, their rasterization, homographic transforms of trees and the
//! auxiliary symmetry, visibility and projection operators.

mod complements;
mod polytope;
mod transform;

pub use complements::{project, remove_hidden, symmetry_tree};
pub use polytope::{
    intersect_convex, polytope_tree, position_vs_hyperplane, split, split_faces, split_vertices,
    transform_polytope_of, Faces, HomogeneousMatrix, Hyperplane, Overlap, Polytope, Position,
    EPS_GEOM,
};
pub use transform::{homographic_transform, homographic_transform_fast};

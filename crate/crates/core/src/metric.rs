//! Hypervolume and the XOR-mass distance.

use crate::boolean::xor;
use crate::tree::{Depth, Tree};

/// Mass as an exact integer count of unit cells of the `2^r` grid.
///
/// A node left internal at full depth counts as black, consistently with
/// the Boolean operators.
pub fn mass_exact(t: &Tree, depth: Depth) -> u128 {
    fn rec(t: &Tree, remaining: u32) -> u128 {
        match t {
            Tree::Leaf(c) => {
                if c.is_black() {
                    1u128 << remaining
                } else {
                    0
                }
            }
            Tree::Node(..) if remaining == 0 => 1,
            Tree::Node(l, r) => rec(l, remaining - 1) + rec(r, remaining - 1),
        }
    }
    rec(t, depth.levels())
}

/// Converts a cell count into a fraction of the unit hypercube.
pub fn cells_to_mass(cells: u128, depth: Depth) -> f64 {
    // 2^-levels is exact in f64 for levels <= 64
    cells as f64 * (-(depth.levels() as f64)).exp2()
}

/// Hypervolume of the black region, the unit hypercube having mass 1.
pub fn mass(t: &Tree, depth: Depth) -> f64 {
    cells_to_mass(mass_exact(t, depth), depth)
}

/// `mass(a xor b)` in unit cells.
pub fn hausdorff_exact(a: &Tree, b: &Tree, depth: Depth) -> u128 {
    mass_exact(&xor(a, b, depth), depth)
}

/// Distance between two sets: the hypervolume of their symmetric difference.
pub fn hausdorff(a: &Tree, b: &Tree, depth: Depth) -> f64 {
    cells_to_mass(hausdorff_exact(a, b, depth), depth)
}

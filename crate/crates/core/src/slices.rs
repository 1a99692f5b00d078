//! Axis-parallel slices: extraction of a lower-dimensional section and
//! insertion of a section back into a space.

use crate::boolean::{combine_levels, BoolOp};
use crate::error::{Error, Result};
use crate::tree::{Depth, Tree};

/// Per-axis flags of the space: `true` marks a slice axis (a fixed
/// coordinate given by the coordinate tree), `false` a free axis kept in the
/// slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxesMask(pub Vec<bool>);

impl AxesMask {
    pub fn dims(&self) -> usize {
        self.0.len()
    }

    /// Number of fixed axes.
    pub fn codimension(&self) -> usize {
        self.0.iter().filter(|&&f| f).count()
    }

    /// Mask fixing exactly the listed axes.
    pub fn fixing(dims: usize, axes: &[usize]) -> Result<AxesMask> {
        let mut flags = vec![false; dims];
        for &a in axes {
            if a >= dims {
                return Err(Error::AxisOutOfRange { axis: a, dims });
            }
            flags[a] = true;
        }
        Ok(AxesMask(flags))
    }
}

fn check(space_dims: usize, codim: usize, mask: &AxesMask) -> Result<()> {
    if mask.dims() != space_dims {
        return Err(Error::DimensionMismatch {
            expected: space_dims,
            found: mask.dims(),
        });
    }
    if mask.codimension() != codim {
        return Err(Error::DimensionMismatch {
            expected: codim,
            found: mask.codimension(),
        });
    }
    Ok(())
}

/// Section of `space` at the fixed coordinates held by `coord` (a tree of
/// dimension `codim`, usually a single cell). The result has dimension
/// `k - codim`; a free-coordinate cell is black when some fixed-coordinate
/// cell of `coord` combined with it is black in `space`.
pub fn extract_slice(
    space: &Tree,
    depth: Depth,
    coord: &Tree,
    codim: usize,
    mask: &AxesMask,
) -> Result<Tree> {
    let k = depth.dims();
    check(k, codim, mask)?;
    let out_levels = ((k - codim) as u32) * depth.precision();

    fn rec(space: &Tree, coord: &Tree, level: u32, out_level: u32, ctx: &Ctx) -> Tree {
        if coord.is_white() || space.is_white() {
            return Tree::white();
        }
        if level == ctx.levels || (space.is_terminal() && coord.is_terminal()) {
            return Tree::black();
        }
        let (sl, sr) = space.children();
        if ctx.mask[(level % ctx.dims) as usize] {
            // fixed axis: consume a coordinate level, fold the two halves
            let (cl, cr) = coord.children();
            let left = rec(sl, cl, level + 1, out_level, ctx);
            if left.is_black() {
                return left;
            }
            let right = rec(sr, cr, level + 1, out_level, ctx);
            combine_levels(&left, &right, BoolOp::Union, ctx.out_levels - out_level)
        } else {
            Tree::join(
                rec(sl, coord, level + 1, out_level + 1, ctx),
                rec(sr, coord, level + 1, out_level + 1, ctx),
            )
        }
    }
    let ctx = Ctx {
        mask: &mask.0,
        dims: k as u32,
        levels: depth.levels(),
        out_levels,
    };
    Ok(rec(space, coord, 0, 0, &ctx))
}

struct Ctx<'a> {
    mask: &'a [bool],
    dims: u32,
    levels: u32,
    out_levels: u32,
}

/// Unions into `space` the cylinder `{fixed in coord} x {free in slice}`.
/// `slice` has dimension `k - codim`, `coord` dimension `codim`.
pub fn insert_slice(
    space: &Tree,
    depth: Depth,
    slice: &Tree,
    slice_dims: usize,
    coord: &Tree,
    codim: usize,
    mask: &AxesMask,
) -> Result<Tree> {
    let k = depth.dims();
    if slice_dims + codim != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: slice_dims + codim,
        });
    }
    check(k, codim, mask)?;

    fn cylinder(slice: &Tree, coord: &Tree, level: u32, ctx: &Ctx) -> Tree {
        if slice.is_white() || coord.is_white() {
            return Tree::white();
        }
        if level == ctx.levels || (slice.is_terminal() && coord.is_terminal()) {
            return Tree::black();
        }
        let (l, r) = if ctx.mask[(level % ctx.dims) as usize] {
            let (cl, cr) = coord.children();
            (
                cylinder(slice, cl, level + 1, ctx),
                cylinder(slice, cr, level + 1, ctx),
            )
        } else {
            let (sl, sr) = slice.children();
            (
                cylinder(sl, coord, level + 1, ctx),
                cylinder(sr, coord, level + 1, ctx),
            )
        };
        Tree::join(l, r)
    }
    let ctx = Ctx {
        mask: &mask.0,
        dims: k as u32,
        levels: depth.levels(),
        out_levels: depth.levels(),
    };
    let cyl = cylinder(slice, coord, 0, &ctx);
    Ok(combine_levels(space, &cyl, BoolOp::Union, depth.levels()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::assert_tree;
    use crate::builder::{add_int_vector, contains};

    fn d(k: u32, r: u32) -> Depth {
        Depth::new(k, r).unwrap()
    }

    #[test]
    fn white_space_gives_white_slice() {
        let coord = add_int_vector(Tree::white(), &[1], d(1, 2)).unwrap();
        let mask = AxesMask::fixing(2, &[1]).unwrap();
        assert_eq!(
            extract_slice(&Tree::white(), d(2, 2), &coord, 1, &mask).unwrap(),
            Tree::white()
        );
    }

    #[test]
    fn degenerate_slice_is_the_space() {
        let depth = d(2, 2);
        let t = add_int_vector(Tree::white(), &[2, 1], depth).unwrap();
        let mask = AxesMask(vec![false, false]);
        assert_eq!(
            extract_slice(&t, depth, &Tree::black(), 0, &mask).unwrap(),
            assert_tree(&t, depth)
        );
    }

    #[test]
    fn row_extraction() {
        let depth = d(2, 2);
        let mut t = Tree::white();
        for v in [[0u64, 1], [3, 1], [2, 2]] {
            t = add_int_vector(t, &v, depth).unwrap();
        }
        let coord = add_int_vector(Tree::white(), &[1], d(1, 2)).unwrap();
        let mask = AxesMask::fixing(2, &[1]).unwrap();
        let row = extract_slice(&t, depth, &coord, 1, &mask).unwrap();
        let expect: Vec<bool> = (0..4).map(|x| x == 0 || x == 3).collect();
        let got: Vec<bool> = (0..4)
            .map(|x| contains(&row, &[x], d(1, 2)).unwrap())
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn insert_white_is_noop_and_roundtrip_on_empty_space() {
        let depth = d(3, 2);
        let space = add_int_vector(Tree::white(), &[1, 2, 3], depth).unwrap();
        let coord = add_int_vector(Tree::white(), &[2], d(1, 2)).unwrap();
        let mask = AxesMask::fixing(3, &[1]).unwrap();
        assert_eq!(
            insert_slice(&space, depth, &Tree::white(), 2, &coord, 1, &mask).unwrap(),
            space
        );
        let slice = add_int_vector(Tree::white(), &[3, 0], d(2, 2)).unwrap();
        let filled = insert_slice(&Tree::white(), depth, &slice, 2, &coord, 1, &mask).unwrap();
        assert!(contains(&filled, &[3, 2, 0], depth).unwrap());
        let back = extract_slice(&filled, depth, &coord, 1, &mask).unwrap();
        assert_eq!(back, slice);
    }

    #[test]
    fn dimension_errors() {
        let depth = d(2, 2);
        let mask = AxesMask::fixing(2, &[0]).unwrap();
        assert!(extract_slice(&Tree::black(), depth, &Tree::black(), 2, &mask).is_err());
        assert!(insert_slice(
            &Tree::black(),
            depth,
            &Tree::black(),
            2,
            &Tree::black(),
            1,
            &mask
        )
        .is_err());
        assert!(AxesMask::fixing(2, &[2]).is_err());
    }
}

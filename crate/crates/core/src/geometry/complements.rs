//! Reflections, hidden-part removal and orthographic projection.

use crate::boolean::{combine_levels, BoolOp};
use crate::error::{Error, Result};
use crate::tree::{Depth, Tree};

/// Reflects the set along every axis whose flag is set.
pub fn symmetry_tree(t: &Tree, flags: &[bool], depth: Depth) -> Result<Tree> {
    depth.check_dims(flags.len())?;
    fn rec(t: &Tree, flags: &[bool], depth: Depth, level: u32) -> Tree {
        match t {
            Tree::Node(l, r) if level != depth.levels() => {
                let l = rec(l, flags, depth, level + 1);
                let r = rec(r, flags, depth, level + 1);
                if flags[depth.axis(level)] {
                    Tree::join(r, l)
                } else {
                    Tree::join(l, r)
                }
            }
            _ => Tree::new(if t.is_white() {
                crate::Color::White
            } else {
                crate::Color::Black
            }),
        }
    }
    Ok(rec(t, flags, depth, 0))
}

fn check_axis(axis: usize, depth: Depth) -> Result<()> {
    if axis < depth.dims() {
        Ok(())
    } else {
        Err(Error::AxisOutOfRange {
            axis,
            dims: depth.dims(),
        })
    }
}

/// Keeps, on every line of cells parallel to `axis`, only the black cell
/// with the smallest coordinate.
pub fn remove_hidden(t: &Tree, axis: usize, depth: Depth) -> Result<Tree> {
    check_axis(axis, depth)?;
    let levels = depth.levels();
    let shadow = shadow(t, axis, depth, 0);
    Ok(combine_levels(t, &shadow, BoolOp::Diff, levels))
}

/// Cells having a black cell before them on their line along `axis`.
fn shadow(t: &Tree, axis: usize, depth: Depth, level: u32) -> Tree {
    if t.is_white() || level == depth.levels() {
        return Tree::white();
    }
    let (l, r) = t.children();
    let sl = shadow(l, axis, depth, level + 1);
    let sr = shadow(r, axis, depth, level + 1);
    if depth.axis(level) == axis {
        let behind = combine_levels(
            &sr,
            &fill(l, axis, depth, level + 1),
            BoolOp::Union,
            depth.levels() - level - 1,
        );
        Tree::join(sl, behind)
    } else {
        Tree::join(sl, sr)
    }
}

/// Sweeps the set along `axis` across its whole block.
fn fill(t: &Tree, axis: usize, depth: Depth, level: u32) -> Tree {
    match t {
        Tree::Node(l, r) if level != depth.levels() => {
            let fl = fill(l, axis, depth, level + 1);
            let fr = fill(r, axis, depth, level + 1);
            if depth.axis(level) == axis {
                let both = combine_levels(&fl, &fr, BoolOp::Union, depth.levels() - level - 1);
                Tree::join(both.clone(), both)
            } else {
                Tree::join(fl, fr)
            }
        }
        _ => Tree::new(if t.is_white() {
            crate::Color::White
        } else {
            crate::Color::Black
        }),
    }
}

/// Orthographic projection along `axis`: a `(k-1)`-dimensional tree whose
/// cell is black when some cell of its line is black.
pub fn project(t: &Tree, axis: usize, depth: Depth) -> Result<Tree> {
    check_axis(axis, depth)?;
    let out_levels = (depth.dims() as u32 - 1) * depth.precision();
    fn rec(
        t: &Tree,
        axis: usize,
        depth: Depth,
        level: u32,
        out_level: u32,
        out_levels: u32,
    ) -> Tree {
        match t {
            Tree::Node(l, r) if level != depth.levels() => {
                if depth.axis(level) == axis {
                    let pl = rec(l, axis, depth, level + 1, out_level, out_levels);
                    if pl.is_black() {
                        return pl;
                    }
                    let pr = rec(r, axis, depth, level + 1, out_level, out_levels);
                    combine_levels(&pl, &pr, BoolOp::Union, out_levels - out_level)
                } else {
                    Tree::join(
                        rec(l, axis, depth, level + 1, out_level + 1, out_levels),
                        rec(r, axis, depth, level + 1, out_level + 1, out_levels),
                    )
                }
            }
            _ => Tree::new(if t.is_white() {
                crate::Color::White
            } else {
                crate::Color::Black
            }),
        }
    }
    Ok(rec(t, axis, depth, 0, 0, out_levels))
}

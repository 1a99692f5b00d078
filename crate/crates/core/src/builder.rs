//! Tree enrichment from integer and real vectors, with inductive-limit
//! growth of the reference box.

use crate::boolean::assert_tree;
use crate::error::{Error, Result};
use crate::tree::{Color, Depth, Tree};

/// Doubling steps allowed before [`grow_bounds`] gives up.
pub const MAX_DOUBLINGS: u32 = 64;

/// Per-axis `[min, max)` bounds of the hypercube a tree models. All axes
/// share one span.
#[derive(Clone, Debug, PartialEq)]
pub struct RefBox {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl RefBox {
    /// `[0, 1)^k`.
    pub fn unit(dims: usize) -> RefBox {
        RefBox {
            min: vec![0.0; dims],
            max: vec![1.0; dims],
        }
    }

    /// Unit box of the integer lattice cell holding `v`.
    pub fn around(v: &[f64]) -> Result<RefBox> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        let min: Vec<f64> = v.iter().map(|x| x.floor()).collect();
        let max = min.iter().map(|x| x + 1.0).collect();
        Ok(RefBox { min, max })
    }

    pub fn dims(&self) -> usize {
        self.min.len()
    }

    pub fn span(&self) -> f64 {
        self.max[0] - self.min[0]
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        v.len() == self.dims()
            && v.iter()
                .zip(self.min.iter().zip(&self.max))
                .all(|(x, (lo, hi))| lo <= x && x < hi)
    }

    /// Maps `v` into `[0,1)^k` relative to this box.
    pub fn normalize(&self, v: &[f64]) -> Vec<f64> {
        let span = self.span();
        v.iter()
            .zip(&self.min)
            .map(|(x, lo)| {
                let u = (x - lo) / span;
                // rounding can push values just below max onto 1.0
                if u >= 1.0 {
                    1.0 - f64::EPSILON / 2.0
                } else {
                    u
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.min.len() != self.max.len() {
            return Err(Error::DimensionMismatch {
                expected: self.min.len(),
                found: self.max.len(),
            });
        }
        if self.min.iter().chain(&self.max).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("reference box"));
        }
        let span = self.span();
        let uneven = self
            .min
            .iter()
            .zip(&self.max)
            .any(|(lo, hi)| hi - lo != span || span <= 0.0);
        if uneven {
            return Err(Error::BoxesNotNested(
                "box spans differ or are empty".into(),
            ));
        }
        Ok(())
    }
}

fn check_int_vector(v: &[u64], depth: Depth) -> Result<()> {
    depth.check_dims(v.len())?;
    let limit = depth.side();
    match v.iter().position(|&x| x >= limit) {
        Some(axis) => Err(Error::CoordinateOutOfRange {
            axis,
            value: v[axis],
            limit,
        }),
        None => Ok(()),
    }
}

/// Side taken at `level` by the cell `v`: the next most significant unused
/// bit of the coordinate on that level's axis.
pub(crate) fn turn(v: &[u64], depth: Depth, level: u32) -> bool {
    let axis = depth.axis(level);
    let shift = depth.precision() - 1 - level / depth.dims() as u32;
    (v[axis] >> shift) & 1 == 1
}

/// Blackens the cell addressed by `v`, merging on the way back up.
pub fn add_int_vector(tree: Tree, v: &[u64], depth: Depth) -> Result<Tree> {
    check_int_vector(v, depth)?;
    fn add(node: Tree, v: &[u64], depth: Depth, level: u32) -> Tree {
        if level == depth.levels() || node.is_black() {
            return Tree::black();
        }
        let (l, r) = match node {
            Tree::Node(l, r) => (*l, *r),
            Tree::Leaf(c) => (Tree::Leaf(c), Tree::Leaf(c)),
        };
        if turn(v, depth, level) {
            Tree::join(l, add(r, v, depth, level + 1))
        } else {
            Tree::join(add(l, v, depth, level + 1), r)
        }
    }
    Ok(add(tree, v, depth, 0))
}

/// Whether the node reached by descending along `v` is black. Stops early
/// at terminals above full precision.
pub fn contains(tree: &Tree, v: &[u64], depth: Depth) -> Result<bool> {
    check_int_vector(v, depth)?;
    let mut node = tree;
    for level in 0..depth.levels() {
        if node.is_terminal() {
            break;
        }
        node = node.child(turn(v, depth, level));
    }
    // gray at full precision counts as black
    Ok(!node.is_white())
}

/// Integer cell of the `2^r` grid holding a real vector of `[0,1)^k`.
pub fn cell_of(v: &[f64], depth: Depth) -> Result<Vec<u64>> {
    depth.check_dims(v.len())?;
    if let Some(axis) = v.iter().position(|x| !(0.0..1.0).contains(x)) {
        return Err(Error::RealOutOfRange {
            axis,
            value: v[axis],
        });
    }
    // scaling by a power of two is exact
    let side = (depth.precision() as f64).exp2();
    Ok(v.iter().map(|x| (x * side).floor() as u64).collect())
}

/// Blackens the cell holding a real vector of `[0,1)^k`. A coordinate equal
/// to a block midpoint goes right.
pub fn add_real_vector(tree: Tree, v: &[f64], depth: Depth) -> Result<Tree> {
    depth.check_dims(v.len())?;
    if let Some(axis) = v.iter().position(|x| !(0.0..1.0).contains(x)) {
        return Err(Error::RealOutOfRange {
            axis,
            value: v[axis],
        });
    }
    fn add(
        node: Tree,
        lo: &mut [f64],
        hi: &mut [f64],
        v: &[f64],
        depth: Depth,
        level: u32,
    ) -> Tree {
        if level == depth.levels() || node.is_black() {
            return Tree::black();
        }
        let axis = depth.axis(level);
        let center = (lo[axis] + hi[axis]) / 2.0;
        let right = v[axis] >= center;
        if right {
            lo[axis] = center;
        } else {
            hi[axis] = center;
        }
        let (l, r) = match node {
            Tree::Node(l, r) => (*l, *r),
            Tree::Leaf(c) => (Tree::Leaf(c), Tree::Leaf(c)),
        };
        if right {
            Tree::join(l, add(r, lo, hi, v, depth, level + 1))
        } else {
            Tree::join(add(l, lo, hi, v, depth, level + 1), r)
        }
    }
    let k = depth.dims();
    Ok(add(tree, &mut vec![0.0; k], &mut vec![1.0; k], v, depth, 0))
}

/// Smallest box obtained from `bounds` by successive doublings that holds
/// `v`. Each doubling keeps the old box as one half along every axis: it
/// extends downward on axes where `v` lies below the box, upward otherwise,
/// so the old box stays a branch of the new tree.
pub fn grow_bounds(bounds: &RefBox, v: &[f64]) -> Result<RefBox> {
    bounds.validate()?;
    if v.len() != bounds.dims() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dims(),
            found: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("vector"));
    }
    let mut b = bounds.clone();
    for _ in 0..=MAX_DOUBLINGS {
        if b.contains(v) {
            return Ok(b);
        }
        let span = b.span();
        for (i, x) in v.iter().enumerate() {
            if *x < b.min[i] {
                b.min[i] -= span;
            } else {
                b.max[i] += span;
            }
        }
    }
    Err(Error::BoundsDiverged(MAX_DOUBLINGS))
}

/// Re-roots `tree` (modeled over `old`) into the larger box `new`, wrapping
/// it in `m * k` levels whose other halves are white. `new` must be a
/// `2^m` homothety of `old` with `old` one of its dyadic sub-blocks.
pub fn extend_tree(tree: Tree, old: &RefBox, new: &RefBox, depth: Depth) -> Result<Tree> {
    old.validate()?;
    new.validate()?;
    depth.check_dims(old.dims())?;
    depth.check_dims(new.dims())?;
    let ratio = new.span() / old.span();
    let steps = ratio.log2().round();
    if !(steps >= 0.0 && 2f64.powi(steps as i32) == ratio) {
        return Err(Error::BoxesNotNested(format!(
            "span ratio {ratio} is not a power of 2"
        )));
    }
    let steps = steps as u32;
    for i in 0..old.dims() {
        let offset = (old.min[i] - new.min[i]) / old.span();
        if offset.fract() != 0.0 || offset < 0.0 || offset >= ratio {
            return Err(Error::BoxesNotNested(format!(
                "axis {i}: old box is not a dyadic sub-block of the new box"
            )));
        }
    }

    // sides from the new root down to the old root
    let mut sides = Vec::with_capacity((steps as usize) * old.dims());
    let mut lo = new.min.clone();
    let mut span = new.span();
    for _ in 0..steps {
        span /= 2.0;
        for (o, l) in old.min.iter().zip(lo.iter_mut()) {
            let right = *o >= *l + span;
            if right {
                *l += span;
            }
            sides.push(right);
        }
    }
    Ok(sides.into_iter().rev().fold(tree, |t, right| {
        if right {
            Tree::join(Tree::white(), t)
        } else {
            Tree::join(t, Tree::white())
        }
    }))
}

/// Adds a real vector of any magnitude: grows the box if needed, re-roots
/// the tree (truncated back to `depth`), then adds the normalized vector.
pub fn add_with_growth(
    tree: Tree,
    bounds: &RefBox,
    v: &[f64],
    depth: Depth,
) -> Result<(Tree, RefBox)> {
    let grown = grow_bounds(bounds, v)?;
    let tree = if grown == *bounds {
        tree
    } else {
        assert_tree(&extend_tree(tree, bounds, &grown, depth)?, depth)
    };
    let u = grown.normalize(v);
    Ok((add_real_vector(tree, &u, depth)?, grown))
}

/// Tree of a set of integer vectors.
pub fn tree_of_cells<'a>(cells: impl IntoIterator<Item = &'a [u64]>, depth: Depth) -> Result<Tree> {
    cells
        .into_iter()
        .try_fold(Tree::new(Color::White), |t, v| add_int_vector(t, v, depth))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(k: u32, r: u32) -> Depth {
        Depth::new(k, r).unwrap()
    }

    #[test]
    fn single_cell_k2_r1() {
        let t = add_int_vector(Tree::white(), &[0, 0], d(2, 1)).unwrap();
        let expected = Tree::join(Tree::join(Tree::black(), Tree::white()), Tree::white());
        assert_eq!(t, expected);
        assert!(contains(&t, &[0, 0], d(2, 1)).unwrap());
        assert!(!contains(&t, &[1, 1], d(2, 1)).unwrap());
    }

    #[test]
    fn all_cells_merge_to_black() {
        let depth = d(2, 2);
        let mut t = Tree::white();
        for x in 0..4 {
            for y in 0..4 {
                t = add_int_vector(t, &[x, y], depth).unwrap();
            }
        }
        assert_eq!(t, Tree::black());
    }

    #[test]
    fn adding_twice_is_idempotent() {
        let depth = d(3, 2);
        let once = add_int_vector(Tree::white(), &[1, 2, 3], depth).unwrap();
        let twice = add_int_vector(once.clone(), &[1, 2, 3], depth).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn out_of_range_coordinates_are_rejected() {
        assert!(matches!(
            add_int_vector(Tree::white(), &[4, 0], d(2, 2)),
            Err(Error::CoordinateOutOfRange {
                axis: 0,
                value: 4,
                limit: 4
            })
        ));
        assert!(add_int_vector(Tree::white(), &[0], d(2, 2)).is_err());
        assert!(add_real_vector(Tree::white(), &[1.0], d(1, 2)).is_err());
        assert!(add_real_vector(Tree::white(), &[-0.1], d(1, 2)).is_err());
    }

    #[test]
    fn midpoint_goes_right() {
        let t = add_real_vector(Tree::white(), &[0.5], d(1, 1)).unwrap();
        assert_eq!(t, Tree::join(Tree::white(), Tree::black()));
    }

    #[test]
    fn origin_cell() {
        let t = add_real_vector(Tree::white(), &[0.0], d(1, 2)).unwrap();
        assert_eq!(
            t,
            Tree::join(Tree::join(Tree::black(), Tree::white()), Tree::white())
        );
    }

    #[test]
    fn contains_on_terminals() {
        let depth = d(2, 3);
        assert!(!contains(&Tree::white(), &[3, 5], depth).unwrap());
        assert!(contains(&Tree::black(), &[3, 5], depth).unwrap());
    }

    #[test]
    fn grow_bounds_examples() {
        let unit = RefBox::unit(2);
        assert_eq!(grow_bounds(&unit, &[0.3, 0.9]).unwrap(), unit);
        let g = grow_bounds(&unit, &[1.5, 0.2]).unwrap();
        assert_eq!(
            g,
            RefBox {
                min: vec![0.0, 0.0],
                max: vec![2.0, 2.0]
            }
        );
        let g = grow_bounds(&RefBox::unit(1), &[-0.25]).unwrap();
        assert_eq!(
            g,
            RefBox {
                min: vec![-1.0],
                max: vec![1.0]
            }
        );
        assert!(matches!(
            grow_bounds(&unit, &[f64::NAN, 0.0]),
            Err(Error::NonFinite(_))
        ));
        assert!(grow_bounds(&unit, &[1e300, 0.0]).is_err());
    }

    #[test]
    fn extend_tree_examples() {
        let depth = d(1, 2);
        let old = RefBox::unit(1);
        assert_eq!(
            extend_tree(Tree::black(), &old, &old, depth).unwrap(),
            Tree::black()
        );
        let new = RefBox {
            min: vec![0.0],
            max: vec![2.0],
        };
        assert_eq!(
            extend_tree(Tree::black(), &old, &new, depth).unwrap(),
            Tree::join(Tree::black(), Tree::white())
        );
        let new = RefBox {
            min: vec![-1.0],
            max: vec![1.0],
        };
        assert_eq!(
            extend_tree(Tree::black(), &old, &new, depth).unwrap(),
            Tree::join(Tree::white(), Tree::black())
        );
        let bad = RefBox {
            min: vec![0.0],
            max: vec![3.0],
        };
        assert!(extend_tree(Tree::black(), &old, &bad, depth).is_err());
        let misaligned = RefBox {
            min: vec![-0.5],
            max: vec![1.5],
        };
        assert!(extend_tree(Tree::black(), &old, &misaligned, depth).is_err());
    }

    #[test]
    fn add_with_growth_places_vectors() {
        let depth = d(1, 2);
        let (t, b) = add_with_growth(Tree::white(), &RefBox::unit(1), &[0.1], depth).unwrap();
        assert_eq!(b, RefBox::unit(1));
        let (t, b) = add_with_growth(t, &b, &[1.9], depth).unwrap();
        assert_eq!(
            b,
            RefBox {
                min: vec![0.0],
                max: vec![2.0]
            }
        );
        // cells of width 0.5 in [0,2): 0.1 -> cell 0, 1.9 -> cell 3
        assert!(contains(&t, &[0], depth).unwrap());
        assert!(contains(&t, &[3], depth).unwrap());
        assert!(!contains(&t, &[1], depth).unwrap());
    }
}

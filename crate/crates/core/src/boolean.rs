//! Set algebra on trees at an explicit output precision.
//!
//! Operands are descended in parallel (terminals act as their own sons).
//! A node still internal at the output depth counts as black, so results at
//! lower precision enclose those at higher precision.

use crate::tree::{Color, Depth, Tree};

/// Binary set operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    Union,
    Intersect,
    Xor,
    Diff,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersect => a && b,
            BoolOp::Xor => a != b,
            BoolOp::Diff => a && !b,
        }
    }
}

pub(crate) fn combine_levels(a: &Tree, b: &Tree, op: BoolOp, levels: u32) -> Tree {
    fn rec(a: &Tree, b: &Tree, op: BoolOp, level: u32, levels: u32) -> Tree {
        if level != levels && !(a.is_terminal() && b.is_terminal()) {
            // shortcuts that do not change the result
            match op {
                BoolOp::Union if a.is_black() || b.is_black() => return Tree::black(),
                BoolOp::Intersect | BoolOp::Diff if a.is_white() => return Tree::white(),
                BoolOp::Intersect if b.is_white() => return Tree::white(),
                BoolOp::Diff if b.is_black() => return Tree::white(),
                _ => {}
            }
            let (al, ar) = a.children();
            let (bl, br) = b.children();
            Tree::join(
                rec(al, bl, op, level + 1, levels),
                rec(ar, br, op, level + 1, levels),
            )
        } else {
            Tree::new(Color::from_bool(op.apply(!a.is_white(), !b.is_white())))
        }
    }
    rec(a, b, op, 0, levels)
}

pub(crate) fn map_levels(t: &Tree, invert: bool, levels: u32) -> Tree {
    fn rec(t: &Tree, invert: bool, level: u32, levels: u32) -> Tree {
        match t {
            Tree::Node(l, r) if level != levels => Tree::join(
                rec(l, invert, level + 1, levels),
                rec(r, invert, level + 1, levels),
            ),
            _ => Tree::new(Color::from_bool(t.is_white() == invert)),
        }
    }
    rec(t, invert, 0, levels)
}

pub fn combine(a: &Tree, b: &Tree, op: BoolOp, depth: Depth) -> Tree {
    combine_levels(a, b, op, depth.levels())
}

/// Canonical copy of `t` truncated to `depth` (gray at the limit becomes
/// black).
pub fn assert_tree(t: &Tree, depth: Depth) -> Tree {
    map_levels(t, false, depth.levels())
}

/// Complement within the unit hypercube.
pub fn not_tree(t: &Tree, depth: Depth) -> Tree {
    map_levels(t, true, depth.levels())
}

pub fn union(a: &Tree, b: &Tree, depth: Depth) -> Tree {
    combine(a, b, BoolOp::Union, depth)
}

pub fn intersect(a: &Tree, b: &Tree, depth: Depth) -> Tree {
    combine(a, b, BoolOp::Intersect, depth)
}

pub fn xor(a: &Tree, b: &Tree, depth: Depth) -> Tree {
    combine(a, b, BoolOp::Xor, depth)
}

/// `a` minus `b`.
pub fn diff(a: &Tree, b: &Tree, depth: Depth) -> Tree {
    combine(a, b, BoolOp::Diff, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(k: u32, r: u32) -> Depth {
        Depth::new(k, r).unwrap()
    }

    fn sample() -> Tree {
        // k=2, r=2: a few scattered cells
        Tree::join(
            Tree::join(Tree::join(Tree::black(), Tree::white()), Tree::white()),
            Tree::join(
                Tree::white(),
                Tree::join(Tree::white(), Tree::join(Tree::black(), Tree::white())),
            ),
        )
    }

    #[test]
    fn complement_laws() {
        let depth = d(2, 2);
        let a = sample();
        let na = not_tree(&a, depth);
        assert_eq!(union(&a, &na, depth), Tree::black());
        assert_eq!(intersect(&a, &na, depth), Tree::white());
        assert_eq!(not_tree(&na, depth), assert_tree(&a, depth));
        assert_eq!(not_tree(&Tree::white(), depth), Tree::black());
    }

    #[test]
    fn xor_and_diff_identities() {
        let depth = d(2, 2);
        let a = sample();
        assert_eq!(xor(&a, &a, depth), Tree::white());
        assert_eq!(diff(&a, &Tree::white(), depth), assert_tree(&a, depth));
        assert_eq!(diff(&a, &Tree::black(), depth), Tree::white());
    }

    #[test]
    fn assertion_truncates_to_hull() {
        // one cell at r=3 in k=1, asserted at r=2: enclosing cell is black
        let cell = crate::builder::add_int_vector(Tree::white(), &[5], d(1, 3)).unwrap();
        let hull = assert_tree(&cell, d(1, 2));
        let expected = crate::builder::add_int_vector(Tree::white(), &[2], d(1, 2)).unwrap();
        assert_eq!(hull, expected);
        assert_eq!(assert_tree(&cell, d(1, 3)), cell);
        assert_eq!(assert_tree(&Tree::black(), d(3, 4)), Tree::black());
    }

    #[test]
    fn results_are_canonical() {
        let depth = d(2, 2);
        let a = sample();
        let b = not_tree(&Tree::join(Tree::black(), Tree::white()), depth);
        for op in [BoolOp::Union, BoolOp::Intersect, BoolOp::Xor, BoolOp::Diff] {
            assert!(combine(&a, &b, op, depth).is_canonical());
        }
    }
}

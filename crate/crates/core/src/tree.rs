//! Canonical binary region trees.
//!
//! A 2^k-tree over the unit hypercube `[0,1)^k` is emulated by a binary tree
//! whose level `l` (0 at the root) halves the block along axis `l mod k`.
//! A path of `k * r` steps addresses one cell of the `2^r` grid.
//!
//! Terminal nodes act as their own children: descending past a terminal
//! keeps returning the same color, so trees built at different precisions
//! can be traversed in parallel.

use std::fmt;

use crate::error::{Error, Result};

/// Hard limit on `k * r`. Keeps cell coordinates and paths within `u64`.
pub const MAX_LEVELS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    /// Empty set.
    White,
    /// Full block.
    Black,
}

impl Color {
    pub fn is_white(self) -> bool {
        self == Color::White
    }

    pub fn is_black(self) -> bool {
        self == Color::Black
    }

    pub fn invert(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub(crate) fn from_bool(black: bool) -> Color {
        if black {
            Color::Black
        } else {
            Color::White
        }
    }
}

/// Dimension `k` and precision `r` of a regular decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Depth {
    dims: u32,
    precision: u32,
}

impl Depth {
    /// `dims` may be zero (a point space whose tree is a single color).
    pub fn new(dims: u32, precision: u32) -> Result<Self> {
        match dims.checked_mul(precision) {
            Some(levels) if levels <= MAX_LEVELS && dims <= MAX_LEVELS => {
                Ok(Depth { dims, precision })
            }
            _ => Err(Error::InvalidDepth {
                dims,
                precision,
                max: MAX_LEVELS,
            }),
        }
    }

    pub fn dims(self) -> usize {
        self.dims as usize
    }

    pub fn precision(self) -> u32 {
        self.precision
    }

    /// Number of binary levels, `k * r`.
    pub fn levels(self) -> u32 {
        self.dims * self.precision
    }

    /// Axis split at `level` (0-based).
    pub fn axis(self, level: u32) -> usize {
        (level % self.dims) as usize
    }

    /// Cells per axis, `2^r`.
    pub fn side(self) -> u64 {
        1u64 << self.precision
    }

    pub(crate) fn check_dims(self, found: usize) -> Result<()> {
        if found == self.dims() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dims(),
                found,
            })
        }
    }
}

/// Binary region tree. Public constructors and set operations return
/// canonical trees: no internal node has two terminal children of the same
/// color, so structural equality is set equality at a fixed precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(Color),
    Node(Box<Tree>, Box<Tree>),
}

static WHITE: Tree = Tree::Leaf(Color::White);
static BLACK: Tree = Tree::Leaf(Color::Black);

impl Tree {
    pub fn new(color: Color) -> Tree {
        Tree::Leaf(color)
    }

    pub fn white() -> Tree {
        Tree::Leaf(Color::White)
    }

    pub fn black() -> Tree {
        Tree::Leaf(Color::Black)
    }

    /// Fully developed tree with `levels` levels of internal nodes below the
    /// root and every leaf of `color`. Not canonical for `levels > 0`; used to
    /// reach the size bound and to reason about unit cells explicitly.
    pub fn developed(color: Color, levels: u32) -> Tree {
        if levels == 0 {
            Tree::Leaf(color)
        } else {
            let child = Tree::developed(color, levels - 1);
            Tree::Node(Box::new(child.clone()), Box::new(child))
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    /// Color of a terminal node, `None` for internal nodes.
    pub fn color(&self) -> Option<Color> {
        match self {
            Tree::Leaf(c) => Some(*c),
            Tree::Node(..) => None,
        }
    }

    /// Terminal white.
    pub fn is_white(&self) -> bool {
        matches!(self, Tree::Leaf(Color::White))
    }

    /// Terminal black.
    pub fn is_black(&self) -> bool {
        matches!(self, Tree::Leaf(Color::Black))
    }

    /// Left and right sons; a terminal is its own son on both sides.
    pub fn children(&self) -> (&Tree, &Tree) {
        match self {
            Tree::Leaf(Color::White) => (&WHITE, &WHITE),
            Tree::Leaf(Color::Black) => (&BLACK, &BLACK),
            Tree::Node(l, r) => (l, r),
        }
    }

    pub fn child(&self, right: bool) -> &Tree {
        let (l, r) = self.children();
        if right {
            r
        } else {
            l
        }
    }

    /// Splits a terminal into two terminals of the same color. The result is
    /// not canonical.
    pub fn fission(self) -> Result<Tree> {
        match self {
            Tree::Leaf(c) => Ok(Tree::Node(Box::new(Tree::Leaf(c)), Box::new(Tree::Leaf(c)))),
            Tree::Node(..) => Err(Error::NotTerminal),
        }
    }

    /// Collapses an internal node whose sons are terminals of one color.
    pub fn merge(self) -> Tree {
        match self {
            Tree::Node(l, r) => match (&*l, &*r) {
                (Tree::Leaf(a), Tree::Leaf(b)) if a == b => Tree::Leaf(*a),
                _ => Tree::Node(l, r),
            },
            leaf => leaf,
        }
    }

    /// Union of two sub-trees under a new root, merged once at that root.
    pub fn join(left: Tree, right: Tree) -> Tree {
        match (&left, &right) {
            (Tree::Leaf(a), Tree::Leaf(b)) if a == b => Tree::Leaf(*a),
            _ => Tree::Node(Box::new(left), Box::new(right)),
        }
    }

    /// In-place counterpart of [`Tree::fission`] used by mutating pipelines.
    pub(crate) fn split_in_place(&mut self) {
        if let Tree::Leaf(c) = *self {
            *self = Tree::Node(Box::new(Tree::Leaf(c)), Box::new(Tree::Leaf(c)));
        }
    }

    pub(crate) fn merge_in_place(&mut self) {
        if let Tree::Node(l, r) = self {
            if let (Tree::Leaf(a), Tree::Leaf(b)) = (&**l, &**r) {
                if a == b {
                    *self = Tree::Leaf(*a);
                }
            }
        }
    }

    pub(crate) fn children_mut(&mut self) -> (&mut Tree, &mut Tree) {
        self.split_in_place();
        match self {
            Tree::Node(l, r) => (l, r),
            Tree::Leaf(_) => unreachable!("split_in_place leaves an internal node"),
        }
    }

    /// Number of nodes: 1 for a terminal, 1 + left + right otherwise.
    pub fn node_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Length of the longest root-to-leaf path.
    pub fn height(&self) -> u32 {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(l, r) => 1 + l.height().max(r.height()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Node(l, r) => {
                !matches!((&**l, &**r), (Tree::Leaf(a), Tree::Leaf(b)) if a == b)
                    && l.is_canonical()
                    && r.is_canonical()
            }
        }
    }

    /// Full bottom-up merge.
    pub fn canonicalize(self) -> Tree {
        match self {
            Tree::Node(l, r) => Tree::join(l.canonicalize(), r.canonicalize()),
            leaf => leaf,
        }
    }

    /// Number of terminal nodes at each depth, index = depth.
    pub fn depth_histogram(&self) -> Vec<(usize, usize)> {
        fn walk(t: &Tree, d: usize, hist: &mut Vec<(usize, usize)>) {
            match t {
                Tree::Leaf(c) => {
                    if hist.len() <= d {
                        hist.resize(d + 1, (0, 0));
                    }
                    match c {
                        Color::White => hist[d].0 += 1,
                        Color::Black => hist[d].1 += 1,
                    }
                }
                Tree::Node(l, r) => {
                    walk(l, d + 1, hist);
                    walk(r, d + 1, hist);
                }
            }
        }
        let mut hist = Vec::new();
        walk(self, 0, &mut hist);
        hist
    }
}

impl Default for Tree {
    fn default() -> Self {
        Tree::white()
    }
}

/// Address of a node: the left/right turns taken from the root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CellPath {
    bits: u64,
    len: u8,
}

impl CellPath {
    pub const ROOT: CellPath = CellPath { bits: 0, len: 0 };

    pub fn len(self) -> u32 {
        self.len as u32
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Turn taken at `level`, `true` for right.
    pub fn turn(self, level: u32) -> bool {
        debug_assert!(level < self.len());
        (self.bits >> (self.len() - 1 - level)) & 1 == 1
    }

    pub fn push(self, right: bool) -> CellPath {
        debug_assert!(self.len() < MAX_LEVELS);
        CellPath {
            bits: (self.bits << 1) | right as u64,
            len: self.len + 1,
        }
    }

    pub fn turns(self) -> impl Iterator<Item = bool> {
        (0..self.len()).map(move |l| self.turn(l))
    }

    /// Lower corner (in cells of the `2^r` grid) and per-axis extent in
    /// cells of the block addressed by this path.
    pub fn block(self, depth: Depth) -> (Vec<u64>, Vec<u64>) {
        let k = depth.dims();
        let mut lo = vec![0u64; k];
        let mut size = vec![depth.side(); k];
        for (level, right) in self.turns().enumerate() {
            let a = depth.axis(level as u32);
            size[a] /= 2;
            if right {
                lo[a] += size[a];
            }
        }
        (lo, size)
    }
}

impl fmt::Display for CellPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for right in self.turns() {
            f.write_str(if right { "R" } else { "L" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CellPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CellPath({self})")
    }
}

impl std::str::FromStr for CellPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "-" {
            return Ok(CellPath::ROOT);
        }
        if s.len() > MAX_LEVELS as usize {
            return Err(Error::parse(0, format!("path longer than {MAX_LEVELS}")));
        }
        s.chars().try_fold(CellPath::ROOT, |p, c| match c {
            'L' => Ok(p.push(false)),
            'R' => Ok(p.push(true)),
            other => Err(Error::parse(0, format!("bad path character {other:?}"))),
        })
    }
}

/// A tree whose nodes may carry one optional payload each.
///
/// Algorithms that park intermediate data on nodes (adjacency lists, labels,
/// cached polytopes) work on a `Decorated` copy and strip it afterwards.
/// Annotated terminals never merge.
#[derive(Clone, Debug, PartialEq)]
pub struct Decorated<T> {
    pub value: Option<T>,
    pub shape: Shape<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shape<T> {
    Leaf(Color),
    Node(Box<Decorated<T>>, Box<Decorated<T>>),
}

impl<T> Decorated<T> {
    pub fn leaf(color: Color) -> Self {
        Decorated {
            value: None,
            shape: Shape::Leaf(color),
        }
    }

    pub fn from_tree(tree: &Tree) -> Self {
        let shape = match tree {
            Tree::Leaf(c) => Shape::Leaf(*c),
            Tree::Node(l, r) => Shape::Node(
                Box::new(Decorated::from_tree(l)),
                Box::new(Decorated::from_tree(r)),
            ),
        };
        Decorated { value: None, shape }
    }

    pub fn color(&self) -> Option<Color> {
        match self.shape {
            Shape::Leaf(c) => Some(c),
            Shape::Node(..) => None,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self.shape, Shape::Leaf(_))
    }

    /// Splits a terminal into two unannotated terminals of its color.
    pub fn fission(&mut self) {
        if let Shape::Leaf(c) = self.shape {
            self.shape = Shape::Node(Box::new(Decorated::leaf(c)), Box::new(Decorated::leaf(c)));
        }
    }

    /// Merges iso-colored unannotated terminal sons.
    pub fn merge(&mut self) {
        if let Shape::Node(l, r) = &self.shape {
            if l.value.is_none() && r.value.is_none() {
                if let (Shape::Leaf(a), Shape::Leaf(b)) = (&l.shape, &r.shape) {
                    if a == b {
                        self.shape = Shape::Leaf(*a);
                    }
                }
            }
        }
    }

    /// Drops every payload and merges bottom-up.
    pub fn devaluate(self) -> Tree {
        match self.shape {
            Shape::Leaf(c) => Tree::Leaf(c),
            Shape::Node(l, r) => Tree::join(l.devaluate(), r.devaluate()),
        }
    }

    /// Number of annotated nodes.
    pub fn annotated_count(&self) -> usize {
        let own = self.value.is_some() as usize;
        match &self.shape {
            Shape::Leaf(_) => own,
            Shape::Node(l, r) => own + l.annotated_count() + r.annotated_count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_tree_is_terminal() {
        assert_eq!(Tree::new(Color::White).node_count(), 1);
        assert!(Tree::new(Color::Black).is_black());
    }

    #[test]
    fn fission_then_merge_is_identity() {
        for c in [Color::White, Color::Black] {
            let split = Tree::new(c).fission().unwrap();
            assert_eq!(
                split,
                Tree::Node(Box::new(Tree::Leaf(c)), Box::new(Tree::Leaf(c)))
            );
            assert!(!split.is_canonical());
            assert_eq!(split.merge(), Tree::new(c));
        }
    }

    #[test]
    fn fission_rejects_internal_nodes() {
        let t = Tree::join(Tree::black(), Tree::white());
        assert!(matches!(t.fission(), Err(Error::NotTerminal)));
    }

    #[test]
    fn merge_leaves_mixed_nodes_alone() {
        let mixed = Tree::Node(Box::new(Tree::black()), Box::default());
        assert_eq!(mixed.clone().merge(), mixed);
        let nested = Tree::Node(Box::new(mixed.clone()), Box::new(Tree::black()));
        assert_eq!(nested.clone().merge(), nested);
    }

    #[test]
    fn join_of_equal_terminals_merges() {
        assert_eq!(Tree::join(Tree::black(), Tree::black()), Tree::black());
        assert_eq!(Tree::join(Tree::white(), Tree::white()), Tree::white());
        assert_eq!(Tree::join(Tree::white(), Tree::black()).node_count(), 3);
    }

    #[test]
    fn terminals_are_their_own_children() {
        let t = Tree::black();
        let (l, r) = t.children();
        assert!(l.is_black() && r.is_black());
        assert!(t.child(true).child(false).is_black());
    }

    #[test]
    fn developed_tree_meets_size_bound() {
        for levels in 0..8 {
            let t = Tree::developed(Color::Black, levels);
            assert_eq!(t.node_count(), (1usize << (levels + 1)) - 1);
            assert_eq!(t.clone().canonicalize(), Tree::black());
        }
    }

    #[test]
    fn copy_is_structurally_equal() {
        let t = Tree::join(Tree::join(Tree::black(), Tree::white()), Tree::black());
        let c = t.clone();
        assert_eq!(c, t);
        assert!(!std::ptr::eq(&c, &t));
    }

    #[test]
    fn depth_validation() {
        assert!(Depth::new(2, 32).is_ok());
        assert!(Depth::new(3, 22).is_err());
        let d = Depth::new(3, 2).unwrap();
        assert_eq!(d.levels(), 6);
        assert_eq!(
            (0..6).map(|l| d.axis(l)).collect::<Vec<_>>(),
            vec![0, 1, 2, 0, 1, 2]
        );
    }

    #[test]
    fn cell_path_roundtrip_and_block() {
        let p: CellPath = "RLR".parse().unwrap();
        assert_eq!(p.to_string(), "RLR");
        assert_eq!(p.turns().collect::<Vec<_>>(), vec![true, false, true]);
        let (lo, size) = p.block(Depth::new(2, 2).unwrap());
        assert_eq!(lo, vec![3, 0]);
        assert_eq!(size, vec![1, 2]);
        assert!("LXR".parse::<CellPath>().is_err());
    }

    #[test]
    fn decorated_leaves_with_values_do_not_merge() {
        let mut d: Decorated<u32> = Decorated::leaf(Color::Black);
        d.fission();
        if let Shape::Node(l, _) = &mut d.shape {
            l.value = Some(7);
        }
        d.merge();
        assert!(!d.is_terminal());
        assert_eq!(d.annotated_count(), 1);
        assert_eq!(d.devaluate(), Tree::black());
    }
}

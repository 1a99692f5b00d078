//! Adjacency between black leaves, connected-component labeling and
//! extraction of one tree per component.
//!
//! Adjacencies are found by descending pairs of same-level nodes whose
//! blocks touch. Each pair carries, per axis, whether the first block lies
//! just before the second, just after it, or spans the same interval.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::tree::{CellPath, Color, Decorated, Depth, Shape, Tree};

/// Neighborhood used for adjacency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Cells sharing a facet.
    D1,
    /// Cells sharing at least a corner.
    Dinf,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d1" => Ok(Metric::D1),
            "dinf" => Ok(Metric::Dinf),
            other => Err(Error::Unsupported(format!("metric {other:?}"))),
        }
    }
}

/// Graph whose nodes are the black leaves of a tree, in depth-first order.
///
/// A node still internal at full depth counts as one black leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyGraph {
    pub metric: Metric,
    pub cells: Vec<CellPath>,
    /// Unordered edges stored as `(low, high)` indices into `cells`.
    pub edges: BTreeSet<(usize, usize)>,
}

impl AdjacencyGraph {
    pub fn degree(&self, cell: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == cell || b == cell)
            .count()
    }

    pub fn index_of(&self, path: CellPath) -> Option<usize> {
        self.cells.iter().position(|&c| c == path)
    }

    /// Neighbor lists, each sorted.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.cells.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

fn collect_leaves(t: &Tree, path: CellPath, level: u32, depth: Depth, out: &mut Vec<CellPath>) {
    match t {
        Tree::Leaf(Color::White) => {}
        Tree::Leaf(Color::Black) => out.push(path),
        Tree::Node(..) if level == depth.levels() => out.push(path),
        Tree::Node(l, r) => {
            collect_leaves(l, path.push(false), level + 1, depth, out);
            collect_leaves(r, path.push(true), level + 1, depth, out);
        }
    }
}

struct Search<'a> {
    depth: Depth,
    metric: Metric,
    index: &'a HashMap<CellPath, usize>,
    edges: BTreeSet<(usize, usize)>,
}

/// A node of the walk; terminals stand for all their virtual descendants
/// and keep their own path.
#[derive(Clone, Copy)]
struct Walk<'t> {
    node: &'t Tree,
    path: CellPath,
}

impl<'t> Walk<'t> {
    fn children(self) -> (Walk<'t>, Walk<'t>) {
        match self.node {
            Tree::Leaf(_) => (self, self),
            Tree::Node(l, r) => (
                Walk {
                    node: l,
                    path: self.path.push(false),
                },
                Walk {
                    node: r,
                    path: self.path.push(true),
                },
            ),
        }
    }
}

impl Search<'_> {
    /// Every pair of touching leaves split below `w`.
    fn inside(&mut self, w: Walk, level: u32) {
        if w.node.is_terminal() || level == self.depth.levels() {
            return;
        }
        let (l, r) = w.children();
        let bit = 1u64 << self.depth.axis(level);
        self.pair(l, r, level + 1, bit, 0);
        self.inside(l, level + 1);
        self.inside(r, level + 1);
    }

    /// `a` and `b` are same-level blocks; `before` flags the axes where `a`
    /// ends where `b` starts, `after` the reverse, other axes coincide.
    fn pair(&mut self, a: Walk, b: Walk, level: u32, before: u64, after: u64) {
        if a.node.is_white() || b.node.is_white() {
            return;
        }
        if level == self.depth.levels() || (a.node.is_terminal() && b.node.is_terminal()) {
            let (i, j) = (self.index[&a.path], self.index[&b.path]);
            self.edges.insert((i.min(j), i.max(j)));
            return;
        }
        let bit = 1u64 << self.depth.axis(level);
        let (al, ar) = a.children();
        let (bl, br) = b.children();
        if before & bit != 0 {
            self.pair(ar, bl, level + 1, before, after);
        } else if after & bit != 0 {
            self.pair(al, br, level + 1, before, after);
        } else {
            self.pair(al, bl, level + 1, before, after);
            self.pair(ar, br, level + 1, before, after);
            if self.metric == Metric::Dinf {
                self.pair(al, br, level + 1, before | bit, after);
                self.pair(ar, bl, level + 1, before, after | bit);
            }
        }
    }
}

/// Adjacency graph of the black leaves of `t`. Two leaves are adjacent when
/// some unit cell of one is a neighbor of some unit cell of the other.
pub fn search_adjacencies(t: &Tree, metric: Metric, depth: Depth) -> AdjacencyGraph {
    let mut cells = Vec::new();
    collect_leaves(t, CellPath::ROOT, 0, depth, &mut cells);
    let index: HashMap<CellPath, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut search = Search {
        depth,
        metric,
        index: &index,
        edges: BTreeSet::new(),
    };
    search.inside(
        Walk {
            node: t,
            path: CellPath::ROOT,
        },
        0,
    );
    let edges = search.edges;
    AdjacencyGraph {
        metric,
        cells,
        edges,
    }
}

/// A tree whose black leaves carry their component label, from 1.
pub type LabeledTree = Decorated<u32>;

/// Labels the connected components of the black region. Components are
/// numbered in the depth-first order of their first leaf.
pub fn label_components(t: &Tree, metric: Metric, depth: Depth) -> (LabeledTree, u32) {
    let graph = search_adjacencies(t, metric, depth);
    let adj = graph.neighbors();
    let mut labels = vec![0u32; graph.cells.len()];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for seed in 0..labels.len() {
        if labels[seed] != 0 {
            continue;
        }
        count += 1;
        labels[seed] = count;
        queue.push_back(seed);
        while let Some(c) = queue.pop_front() {
            for &n in &adj[c] {
                if labels[n] == 0 {
                    labels[n] = count;
                    queue.push_back(n);
                }
            }
        }
    }
    let mut lt = Decorated::from_tree(t);
    for (cell, label) in graph.cells.iter().zip(labels) {
        let mut node = &mut lt;
        for right in cell.turns() {
            node = match &mut node.shape {
                Shape::Node(l, r) => {
                    if right {
                        r
                    } else {
                        l
                    }
                }
                Shape::Leaf(_) => unreachable!("cell paths end at leaves"),
            };
        }
        node.value = Some(label);
    }
    (lt, count)
}

/// The cells carrying `label`, as a canonical tree.
pub fn extract_component(lt: &LabeledTree, label: u32) -> Tree {
    if lt.value == Some(label) {
        return Tree::black();
    }
    match &lt.shape {
        Shape::Leaf(_) => Tree::white(),
        Shape::Node(l, r) => Tree::join(extract_component(l, label), extract_component(r, label)),
    }
}

/// One tree per component, label `i` at position `i - 1`.
pub fn segment_forest(lt: &LabeledTree, count: u32) -> Vec<Tree> {
    (1..=count)
        .map(|label| extract_component(lt, label))
        .collect()
}

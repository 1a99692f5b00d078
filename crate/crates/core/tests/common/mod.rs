//! Independent oracles shared by the integration tests: dense voxel grids,
//! flood fill and random generators.
#![allow(dead_code)]

use std::collections::VecDeque;

use hypertree::{Color, Decorated, Depth, Shape, Tree};
use rand::Rng;

/// Dense occupancy of the `2^r` grid; cell `(x_0, .., x_{k-1})` lives at
/// `sum x_i * side^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub dims: usize,
    pub side: usize,
    pub cells: Vec<bool>,
}

impl Grid {
    pub fn empty(dims: usize, precision: u32) -> Grid {
        let side = 1usize << precision;
        Grid {
            dims,
            side,
            cells: vec![false; side.pow(dims as u32)],
        }
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &c| acc * self.side + c)
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        (0..self.dims)
            .map(|_| {
                let c = index % self.side;
                index /= self.side;
                c
            })
            .collect()
    }

    pub fn get(&self, coords: &[usize]) -> bool {
        self.cells[self.index(coords)]
    }

    pub fn set(&mut self, coords: &[usize], v: bool) {
        let i = self.index(coords);
        self.cells[i] = v;
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn map2(&self, other: &Grid, f: impl Fn(bool, bool) -> bool) -> Grid {
        Grid {
            dims: self.dims,
            side: self.side,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn black_coords(&self) -> Vec<Vec<usize>> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i])
            .map(|i| self.coords(i))
            .collect()
    }
}

pub fn random_grid(rng: &mut impl Rng, dims: usize, precision: u32, density: f64) -> Grid {
    let mut g = Grid::empty(dims, precision);
    for c in g.cells.iter_mut() {
        *c = rng.random_bool(density);
    }
    g
}

/// Rasterizes a tree by walking it: every block reached at a black
/// terminal (or still internal at full depth) is filled.
pub fn expand(t: &Tree, dims: usize, precision: u32) -> Grid {
    let mut g = Grid::empty(dims, precision);
    let levels = dims as u32 * precision;
    fn walk(
        t: &Tree,
        lo: &mut Vec<usize>,
        size: &mut Vec<usize>,
        level: u32,
        levels: u32,
        g: &mut Grid,
    ) {
        let black = match t {
            Tree::Leaf(c) => *c == Color::Black,
            Tree::Node(..) => level == levels,
        };
        if black {
            fill(g, lo, size, 0, &mut Vec::new());
            return;
        }
        if let Tree::Node(l, r) = t {
            let axis = level as usize % g.dims;
            size[axis] /= 2;
            walk(l, lo, size, level + 1, levels, g);
            lo[axis] += size[axis];
            walk(r, lo, size, level + 1, levels, g);
            lo[axis] -= size[axis];
            size[axis] *= 2;
        }
    }
    fn fill(g: &mut Grid, lo: &[usize], size: &[usize], axis: usize, at: &mut Vec<usize>) {
        if axis == g.dims {
            g.set(at, true);
            return;
        }
        for c in lo[axis]..lo[axis] + size[axis] {
            at.push(c);
            fill(g, lo, size, axis + 1, at);
            at.pop();
        }
    }
    let side = g.side;
    walk(
        t,
        &mut vec![0; dims],
        &mut vec![side; dims],
        0,
        levels,
        &mut g,
    );
    g
}

/// Canonical tree of a grid by recursive halving: a block is terminal when
/// all its cells agree.
pub fn tree_from_grid(g: &Grid) -> Tree {
    let levels = (g.side.trailing_zeros() as usize * g.dims) as u32;
    fn build(
        g: &Grid,
        lo: &mut Vec<usize>,
        size: &mut Vec<usize>,
        level: u32,
        levels: u32,
    ) -> Tree {
        if level == levels {
            return Tree::new(if g.get(lo) {
                Color::Black
            } else {
                Color::White
            });
        }
        let axis = level as usize % g.dims;
        size[axis] /= 2;
        let l = build(g, lo, size, level + 1, levels);
        lo[axis] += size[axis];
        let r = build(g, lo, size, level + 1, levels);
        lo[axis] -= size[axis];
        size[axis] *= 2;
        match (&l, &r) {
            (Tree::Leaf(a), Tree::Leaf(b)) if a == b => Tree::new(*a),
            _ => Tree::Node(Box::new(l), Box::new(r)),
        }
    }
    let side = g.side;
    build(g, &mut vec![0; g.dims], &mut vec![side; g.dims], 0, levels)
}

/// Random canonical tree: grids of random density half of the time,
/// random shapes with early terminals otherwise.
pub fn random_tree(rng: &mut impl Rng, depth: Depth) -> Tree {
    if rng.random_bool(0.5) {
        let density = rng.random_range(0.0..=1.0);
        return tree_from_grid(&random_grid(rng, depth.dims(), depth.precision(), density));
    }
    let stop = rng.random_range(0.05..0.5);
    fn grow(rng: &mut impl Rng, level: u32, levels: u32, stop: f64) -> Tree {
        if level == levels || rng.random_bool(stop) {
            return Tree::new(if rng.random_bool(0.5) {
                Color::Black
            } else {
                Color::White
            });
        }
        Tree::join(
            grow(rng, level + 1, levels, stop),
            grow(rng, level + 1, levels, stop),
        )
    }
    grow(rng, 0, depth.levels(), stop)
}

/// Offsets of the neighbors of a cell: facet neighbors when `diagonal` is
/// false, all cells at Chebyshev distance one otherwise.
pub fn neighbor_offsets(dims: usize, diagonal: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(dims as u32) {
        let mut c = code;
        let off: Vec<i64> = (0..dims)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        let moved = off.iter().filter(|&&d| d != 0).count();
        if moved == 1 || (diagonal && moved > 1) {
            out.push(off);
        }
    }
    out
}

/// BFS flood fill; returns per-cell component ids (0 = white) and the
/// number of components.
pub fn flood_fill(g: &Grid, diagonal: bool) -> (Vec<usize>, usize) {
    let offsets = neighbor_offsets(g.dims, diagonal);
    let mut comp = vec![0; g.cells.len()];
    let mut n = 0;
    for start in 0..g.cells.len() {
        if !g.cells[start] || comp[start] != 0 {
            continue;
        }
        n += 1;
        comp[start] = n;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let c = g.coords(i);
            for off in &offsets {
                let moved: Option<Vec<usize>> = c
                    .iter()
                    .zip(off)
                    .map(|(&x, &d)| {
                        let y = x as i64 + d;
                        (0..g.side as i64).contains(&y).then_some(y as usize)
                    })
                    .collect();
                if let Some(m) = moved {
                    let j = g.index(&m);
                    if g.cells[j] && comp[j] == 0 {
                        comp[j] = n;
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    (comp, n)
}

/// Per-cell labels read off a labeled tree (0 where unlabeled).
pub fn expand_labels(lt: &Decorated<u32>, dims: usize, precision: u32) -> Vec<u32> {
    let side = 1usize << precision;
    let mut out = vec![0; side.pow(dims as u32)];
    fn walk(
        t: &Decorated<u32>,
        lo: &mut Vec<usize>,
        size: &mut Vec<usize>,
        level: usize,
        side: usize,
        out: &mut Vec<u32>,
    ) {
        if let Some(label) = t.value {
            paint(lo, size, 0, &mut Vec::new(), side, label, out);
            return;
        }
        if let Shape::Node(l, r) = &t.shape {
            let axis = level % lo.len();
            size[axis] /= 2;
            walk(l, lo, size, level + 1, side, out);
            lo[axis] += size[axis];
            walk(r, lo, size, level + 1, side, out);
            lo[axis] -= size[axis];
            size[axis] *= 2;
        }
    }
    fn paint(
        lo: &[usize],
        size: &[usize],
        axis: usize,
        at: &mut Vec<usize>,
        side: usize,
        label: u32,
        out: &mut [u32],
    ) {
        if axis == lo.len() {
            let idx = at.iter().rev().fold(0, |acc, &c| acc * side + c);
            out[idx] = label;
            return;
        }
        for c in lo[axis]..lo[axis] + size[axis] {
            at.push(c);
            paint(lo, size, axis + 1, at, side, label, out);
            at.pop();
        }
    }
    walk(
        lt,
        &mut vec![0; dims],
        &mut vec![side; dims],
        0,
        side,
        &mut out,
    );
    out
}

/// Whether two labelings of the same cells induce the same partition.
pub fn same_partition(a: &[usize], b: &[u32]) -> bool {
    use std::collections::HashMap;
    let mut ab: HashMap<usize, u32> = HashMap::new();
    let mut ba: HashMap<u32, usize> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        if (x == 0) != (y == 0) {
            return false;
        }
        if x == 0 {
            continue;
        }
        if *ab.entry(x).or_insert(y) != y || *ba.entry(y).or_insert(x) != x {
            return false;
        }
    }
    true
}

/// Tree of an explicit list of cells, through the grid oracle.
pub fn tree_of(dims: usize, precision: u32, cells: &[Vec<usize>]) -> Tree {
    let mut g = Grid::empty(dims, precision);
    for c in cells {
        g.set(c, true);
    }
    tree_from_grid(&g)
}

/// Exact integral of `prod x_a^{e_a}` over the black cells of `g`, summed
/// cell by cell in integers: over a cell `[c h, (c+1) h)` the axis factor is
/// `((c+1)^{e+1} - c^{e+1}) h^{e+1} / (e+1)`.
pub fn grid_moment(g: &Grid, exps: &[u32]) -> f64 {
    let mut sum: u128 = 0;
    for c in g.black_coords() {
        let mut term: u128 = 1;
        for (&x, &e) in c.iter().zip(exps) {
            let x = x as u128;
            term *= (x + 1).pow(e + 1) - x.pow(e + 1);
        }
        sum += term;
    }
    let denom: f64 = exps.iter().map(|&e| (e + 1) as f64).product();
    let power: i32 = exps.iter().map(|&e| e as i32 + 1).sum();
    sum as f64 / denom * (g.side as f64).powi(-power)
}

/// Cell path (as `L`/`R` turns) of integer coordinates.
pub fn path_of(coords: &[usize], precision: u32) -> String {
    let k = coords.len();
    (0..k as u32 * precision)
        .map(|level| {
            let axis = level as usize % k;
            let shift = precision - 1 - level / k as u32;
            if (coords[axis] >> shift) & 1 == 1 {
                'R'
            } else {
                'L'
            }
        })
        .collect()
}

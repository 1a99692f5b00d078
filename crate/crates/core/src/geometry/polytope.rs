//! Homographic images of the unit hypercube, held both by their `2^k`
//! vertices and by their `2k` faces.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tree::{Depth, Tree};

/// Absolute tolerance on hyperplane evaluations.
pub const EPS_GEOM: f64 = 1.0 / (1u64 << 40) as f64;

/// Homogeneous covector `(c_1, ..., c_k, c_{k+1})`, evaluated at an affine
/// point as `sum c_i x_i + c_{k+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane(pub Vec<f64>);

impl Hyperplane {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let (lin, c) = self.0.split_at(x.len());
        lin.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + c[0]
    }

    fn midway(&self, other: &Hyperplane) -> Hyperplane {
        Hyperplane(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a + b) / 2.0)
                .collect(),
        )
    }
}

/// Convex polytope `{ lower_i(x) >= 0 } ∩ { upper_i(x) <= 0 }` with vertex
/// `v` holding, on axis `j`, the side selected by bit `j` of `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    dims: usize,
    /// `2^k` rows of `k` coordinates, row-major.
    vertices: Vec<f64>,
    pub lower: Vec<Hyperplane>,
    pub upper: Vec<Hyperplane>,
}

/// Sign pattern of a polytope's vertices against a hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    /// Every vertex on the plane.
    pub all_on: bool,
    /// No vertex strictly positive.
    pub all_nonpos: bool,
    /// No vertex strictly negative.
    pub all_nonneg: bool,
}

/// Result of comparing two convex polytopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub intersects: bool,
    pub first_in_second: bool,
    pub second_in_first: bool,
}

impl Polytope {
    pub fn new(
        dims: usize,
        vertices: Vec<Vec<f64>>,
        lower: Vec<Hyperplane>,
        upper: Vec<Hyperplane>,
    ) -> Result<Polytope> {
        let count = 1usize << dims;
        if vertices.len() != count {
            return Err(Error::DimensionMismatch {
                expected: count,
                found: vertices.len(),
            });
        }
        if let Some(bad) = vertices.iter().find(|v| v.len() != dims) {
            return Err(Error::DimensionMismatch {
                expected: dims,
                found: bad.len(),
            });
        }
        for faces in [&lower, &upper] {
            if faces.len() != dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    found: faces.len(),
                });
            }
            if let Some(bad) = faces.iter().find(|h| h.0.len() != dims + 1) {
                return Err(Error::DimensionMismatch {
                    expected: dims + 1,
                    found: bad.0.len(),
                });
            }
        }
        Ok(Polytope {
            dims,
            vertices: vertices.concat(),
            lower,
            upper,
        })
    }

    /// `[0,1]^k`.
    pub fn unit(dims: usize) -> Polytope {
        let count = 1usize << dims;
        let mut vertices = Vec::with_capacity(count * dims);
        for v in 0..count {
            vertices.extend((0..dims).map(|j| ((v >> j) & 1) as f64));
        }
        let face = |axis: usize, constant: f64| {
            let mut c = vec![0.0; dims + 1];
            c[axis] = 1.0;
            c[dims] = constant;
            Hyperplane(c)
        };
        Polytope {
            dims,
            vertices,
            lower: (0..dims).map(|a| face(a, 0.0)).collect(),
            upper: (0..dims).map(|a| face(a, -1.0)).collect(),
        }
    }

    /// Axis-aligned box `[lo, hi]`.
    pub fn aabb(lo: &[f64], hi: &[f64]) -> Polytope {
        let dims = lo.len();
        let mut p = Polytope::unit(dims);
        for v in 0..(1usize << dims) {
            for j in 0..dims {
                p.vertices[v * dims + j] = if (v >> j) & 1 == 1 { hi[j] } else { lo[j] };
            }
        }
        for a in 0..dims {
            p.lower[a].0[dims] = -lo[a];
            p.upper[a].0[dims] = -hi[a];
        }
        p
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.dims
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.vertices[i * self.dims..(i + 1) * self.dims]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[f64]> {
        self.vertices
            .chunks_exact(self.dims.max(1))
            .take(self.vertex_count())
    }

    /// Whether `x` satisfies every face constraint within tolerance.
    pub fn contains_point(&self, x: &[f64]) -> bool {
        self.lower.iter().all(|h| h.eval(x) >= -EPS_GEOM)
            && self.upper.iter().all(|h| h.eval(x) <= EPS_GEOM)
    }
}

/// Evaluates `plane` at every vertex of `p`.
pub fn position_vs_hyperplane(p: &Polytope, plane: &Hyperplane) -> Position {
    let mut pos = Position {
        all_on: true,
        all_nonpos: true,
        all_nonneg: true,
    };
    for v in p.vertices() {
        let s = plane.eval(v);
        if s > EPS_GEOM {
            pos.all_on = false;
            pos.all_nonpos = false;
        } else if s < -EPS_GEOM {
            pos.all_on = false;
            pos.all_nonneg = false;
        }
    }
    pos
}

/// `(intersects, inside)` of `vertices_of` against the faces of `faces_of`.
/// A face whose half-space misses every vertex (touching allowed) refutes
/// the intersection.
fn against_faces(faces_of: &Polytope, vertices_of: &Polytope) -> (bool, bool) {
    let mut intersects = true;
    let mut inside = true;
    for plane in &faces_of.lower {
        let pos = position_vs_hyperplane(vertices_of, plane);
        if !pos.all_on {
            if !pos.all_nonneg {
                inside = false;
            }
            if pos.all_nonpos {
                intersects = false;
            }
        }
    }
    for plane in &faces_of.upper {
        let pos = position_vs_hyperplane(vertices_of, plane);
        if !pos.all_on {
            if !pos.all_nonpos {
                inside = false;
            }
            if pos.all_nonneg {
                intersects = false;
            }
        }
    }
    (intersects, inside)
}

/// Intersection and inclusion tests between two convex polytopes, using
/// the faces of each against the vertices of the other.
pub fn intersect_convex(p1: &Polytope, p2: &Polytope) -> Overlap {
    let (hit_a, second_in_first) = against_faces(p1, p2);
    let (hit_b, first_in_second) = against_faces(p2, p1);
    let intersects = hit_a && hit_b;
    Overlap {
        intersects,
        first_in_second: intersects && first_in_second,
        second_in_first: intersects && second_in_first,
    }
}

/// Halves the vertex set along `axis`: each butterfly pair `(i, i + 2^axis)`
/// gives the left half vertex `i` and the pair midpoint, the right half the
/// midpoint and vertex `i + 2^axis`.
pub fn split_vertices(p: &Polytope, axis: usize) -> (Vec<f64>, Vec<f64>) {
    let k = p.dims;
    let stride = 1usize << axis;
    let mut left = p.vertices.clone();
    let mut right = p.vertices.clone();
    for i in (0..p.vertex_count()).filter(|i| i & stride == 0) {
        let j = i + stride;
        for c in 0..k {
            let mid = (p.vertices[i * k + c] + p.vertices[j * k + c]) / 2.0;
            left[j * k + c] = mid;
            right[i * k + c] = mid;
        }
    }
    (left, right)
}

/// Lower and upper faces of a polytope.
pub type Faces = (Vec<Hyperplane>, Vec<Hyperplane>);

/// Faces of the two halves along `axis`: the median plane (half-sum of the
/// lower and upper faces) closes the left half from above and the right
/// half from below.
pub fn split_faces(lower: &[Hyperplane], upper: &[Hyperplane], axis: usize) -> (Faces, Faces) {
    let median = lower[axis].midway(&upper[axis]);
    let mut left_upper = upper.to_vec();
    left_upper[axis] = median.clone();
    let mut right_lower = lower.to_vec();
    right_lower[axis] = median;
    ((lower.to_vec(), left_upper), (right_lower, upper.to_vec()))
}

/// Both halves of `p` along `axis`.
pub fn split(p: &Polytope, axis: usize) -> (Polytope, Polytope) {
    let (lv, rv) = split_vertices(p, axis);
    let ((ll, lu), (rl, ru)) = split_faces(&p.lower, &p.upper, axis);
    (
        Polytope {
            dims: p.dims,
            vertices: lv,
            lower: ll,
            upper: lu,
        },
        Polytope {
            dims: p.dims,
            vertices: rv,
            lower: rl,
            upper: ru,
        },
    )
}

/// Rasterizes `p` by recursive division of the unit hypercube: blocks
/// inside `p` are black, disjoint blocks white, boundary blocks are split
/// down to the precision limit where they turn black.
pub fn polytope_tree(p: &Polytope, depth: Depth) -> Result<Tree> {
    depth.check_dims(p.dims)?;
    fn rec(block: &Polytope, p: &Polytope, depth: Depth, level: u32) -> Tree {
        let ov = intersect_convex(block, p);
        if !ov.intersects {
            return Tree::white();
        }
        if ov.first_in_second || level == depth.levels() {
            return Tree::black();
        }
        let (l, r) = split(block, depth.axis(level));
        Tree::join(rec(&l, p, depth, level + 1), rec(&r, p, depth, level + 1))
    }
    Ok(rec(&Polytope::unit(p.dims), p, depth, 0))
}

/// `(k+1) x (k+1)` matrix acting on homogeneous column vectors `(x, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousMatrix(pub DMatrix<f64>);

impl HomogeneousMatrix {
    pub fn identity(dims: usize) -> Self {
        HomogeneousMatrix(DMatrix::identity(dims + 1, dims + 1))
    }

    /// Row-major `(k+1)^2` entries.
    pub fn from_row_slice(dims: usize, entries: &[f64]) -> Result<Self> {
        let n = dims + 1;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(HomogeneousMatrix(DMatrix::from_row_slice(n, n, entries)))
    }

    pub fn translation(t: &[f64]) -> Self {
        let k = t.len();
        let mut m = DMatrix::identity(k + 1, k + 1);
        for (i, x) in t.iter().enumerate() {
            m[(i, k)] = *x;
        }
        HomogeneousMatrix(m)
    }

    /// Diagonal anamorphosis about the origin.
    pub fn scaling(s: &[f64]) -> Self {
        let k = s.len();
        let mut m = DMatrix::identity(k + 1, k + 1);
        for (i, x) in s.iter().enumerate() {
            m[(i, i)] = *x;
        }
        HomogeneousMatrix(m)
    }

    /// Embeds a `k x k` linear map.
    pub fn linear(a: &DMatrix<f64>) -> Self {
        let k = a.nrows();
        let mut m = DMatrix::identity(k + 1, k + 1);
        m.view_mut((0, 0), (k, k)).copy_from(a);
        HomogeneousMatrix(m)
    }

    /// Applies `about(center)`: conjugates `self` by the translation to
    /// `center`.
    pub fn about(&self, center: &[f64]) -> Self {
        let neg: Vec<f64> = center.iter().map(|x| -x).collect();
        HomogeneousMatrix::translation(center)
            .then_after(self)
            .then_after(&HomogeneousMatrix::translation(&neg))
    }

    /// `self * other`: apply `other` first.
    pub fn then_after(&self, other: &HomogeneousMatrix) -> Self {
        HomogeneousMatrix(&self.0 * &other.0)
    }

    pub fn dims(&self) -> usize {
        self.0.nrows() - 1
    }

    pub fn inverse(&self) -> Result<Self> {
        self.0
            .clone()
            .try_inverse()
            .filter(|m| m.iter().all(|x| x.is_finite()))
            .map(HomogeneousMatrix)
            .ok_or(Error::SingularMatrix)
    }

    /// Affine image of `x`; `None` when the weight vanishes.
    pub fn apply(&self, x: &[f64]) -> Option<Vec<f64>> {
        let k = x.len();
        let mut h = DVector::from_element(k + 1, 1.0);
        h.rows_mut(0, k).copy_from_slice(x);
        let y = &self.0 * h;
        let w = y[k];
        (w.abs() >= EPS_GEOM).then(|| (0..k).map(|i| y[i] / w).collect())
    }

    pub fn row_major(&self) -> Vec<f64> {
        self.0.transpose().iter().copied().collect()
    }
}

/// Polytope of a homography `m`: the inverse image of the unit hypercube.
/// Vertices come from `m^-1`, faces from the unit faces composed with `m`.
pub fn transform_polytope_of(m: &HomogeneousMatrix) -> Result<Polytope> {
    let k = m.dims();
    let inv = m.inverse()?;
    let unit = Polytope::unit(k);
    let mut vertices = Vec::with_capacity(unit.vertex_count());
    for (i, corner) in unit.vertices().enumerate() {
        vertices.push(inv.apply(corner).ok_or(Error::VertexAtInfinity(i))?);
    }
    let compose = |h: &Hyperplane| {
        let row = nalgebra::RowDVector::from_row_slice(&h.0) * &m.0;
        Hyperplane(row.iter().copied().collect())
    };
    Polytope::new(
        k,
        vertices,
        unit.lower.iter().map(compose).collect(),
        unit.upper.iter().map(compose).collect(),
    )
}

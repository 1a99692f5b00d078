//! Generalized moments up to order 3, centering, principal-axis
//! normalization and Eigen trees.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::{homographic_transform_fast, symmetry_tree, HomogeneousMatrix};
use crate::linalg::symmetric_eigen;
use crate::tree::{Depth, Tree};

/// Masses below this are treated as empty.
pub const EPS_MASS: f64 = 1e-15;
/// Tolerance for orthogonality, diagonality and sign decisions.
pub const EPS_NUM: f64 = 1e-9;

/// Sorted multi-index `(i, j, m)`, `i <= j <= m`; axes are numbered from 1
/// and 0 marks an unused slot. `(0, 0, 0)` is the mass, `(0, 0, i)` the
/// first-order moment along axis `i`, and so on.
pub type MomentIndex = [usize; 3];

/// Builds the index of the monomial `prod X_a` over the listed 1-based axes.
pub fn moment_index(axes: &[usize]) -> MomentIndex {
    assert!(axes.len() <= 3, "moments stop at order 3");
    let mut key = [0; 3];
    key[3 - axes.len()..].copy_from_slice(axes);
    key.sort_unstable();
    key
}

/// Every index for dimension `k`, in lexicographic order.
pub fn moment_indices(k: usize) -> Vec<MomentIndex> {
    let mut keys = Vec::new();
    for i in 0..=k {
        for j in i..=k {
            for m in j..=k {
                keys.push([i, j, m]);
            }
        }
    }
    keys
}

/// Moments of a region, indexed by [`MomentIndex`].
#[derive(Clone, Debug, PartialEq)]
pub struct MomentList {
    dims: usize,
    values: BTreeMap<MomentIndex, f64>,
}

impl MomentList {
    pub fn zeros(dims: usize) -> MomentList {
        MomentList {
            dims,
            values: moment_indices(dims)
                .into_iter()
                .map(|key| (key, 0.0))
                .collect(),
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Moment of the monomial over the listed 1-based axes (any order).
    pub fn get(&self, axes: &[usize]) -> f64 {
        self.values[&moment_index(axes)]
    }

    pub fn mass(&self) -> f64 {
        self.values[&[0, 0, 0]]
    }

    pub fn iter(&self) -> impl Iterator<Item = (MomentIndex, f64)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }

    pub fn set(&mut self, key: MomentIndex, value: f64) {
        debug_assert!(self.values.contains_key(&key));
        self.values.insert(key, value);
    }

    fn add_assign(&mut self, other: &MomentList) {
        for (key, v) in self.values.iter_mut() {
            *v += other.values[key];
        }
    }
}

/// Exponents of each axis in a multi-index, 0-based axes.
fn exponents(key: &MomentIndex, k: usize) -> Vec<usize> {
    let mut e = vec![0; k];
    for &a in key.iter().filter(|&&a| a > 0) {
        e[a - 1] += 1;
    }
    e
}

fn key_of(exps: &[usize]) -> MomentIndex {
    let axes: Vec<usize> = exps
        .iter()
        .enumerate()
        .flat_map(|(a, &n)| std::iter::repeat_n(a + 1, n))
        .collect();
    moment_index(&axes)
}

/// Moments of the unit hypercube: every monomial integrates to
/// `prod 1 / (n_i + 1)`.
pub fn unit_moments(k: usize) -> MomentList {
    let mut m = MomentList::zeros(k);
    for key in moment_indices(k) {
        let v = exponents(&key, k)
            .iter()
            .map(|&n| 1.0 / (n as f64 + 1.0))
            .product();
        m.set(key, v);
    }
    m
}

const BINOMIAL: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0],
    [1.0, 3.0, 3.0, 1.0],
];

/// Moments of one half of a block from the moments of the block.
///
/// The half is the image of the block under the homothety of ratio 1/2
/// along `axis` (0-based) fixing the hyperplane `X_axis = x`; `x` is the
/// block's lower bound for the lower half and its upper bound for the upper
/// half. Expanding `((X + x) / 2)^n` gives the binomial recurrence.
pub fn child_moments(parent: &MomentList, axis: usize, x: f64) -> MomentList {
    let k = parent.dims;
    let mut child = MomentList::zeros(k);
    for key in moment_indices(k) {
        let mut e = exponents(&key, k);
        let n = e[axis];
        let mut sum = 0.0;
        for (j, b) in BINOMIAL[n].iter().enumerate().take(n + 1) {
            e[axis] = j;
            sum += b * x.powi((n - j) as i32) * parent.values[&key_of(&e)];
        }
        child.set(key, 0.5 * sum / (1u32 << n) as f64);
    }
    child
}

/// Exact moments of the black region of `t`. Block moments are propagated
/// down from the unit cube and accumulated over black terminals; a node
/// still internal at full depth counts as black.
pub fn tree_moments(t: &Tree, depth: Depth) -> MomentList {
    let k = depth.dims();
    fn rec(
        t: &Tree,
        block: &MomentList,
        lo: &mut [f64],
        hi: &mut [f64],
        level: u32,
        depth: Depth,
        acc: &mut MomentList,
    ) {
        if t.is_white() {
            return;
        }
        if t.is_black() || level == depth.levels() {
            acc.add_assign(block);
            return;
        }
        let (l, r) = t.children();
        let a = depth.axis(level);
        let (a_lo, a_hi) = (lo[a], hi[a]);
        let mid = 0.5 * (a_lo + a_hi);
        if !l.is_white() {
            hi[a] = mid;
            rec(
                l,
                &child_moments(block, a, a_lo),
                lo,
                hi,
                level + 1,
                depth,
                acc,
            );
            hi[a] = a_hi;
        }
        if !r.is_white() {
            lo[a] = mid;
            rec(
                r,
                &child_moments(block, a, a_hi),
                lo,
                hi,
                level + 1,
                depth,
                acc,
            );
            lo[a] = a_lo;
        }
    }
    let mut acc = MomentList::zeros(k);
    rec(
        t,
        &unit_moments(k),
        &mut vec![0.0; k],
        &mut vec![1.0; k],
        0,
        depth,
        &mut acc,
    );
    acc
}

/// Mass-normalized central moments.
#[derive(Clone, Debug, PartialEq)]
pub struct CenteredMoments {
    pub hypervolume: f64,
    pub center: Vec<f64>,
    pub covariance: DMatrix<f64>,
    third: Vec<f64>,
}

impl CenteredMoments {
    pub fn dims(&self) -> usize {
        self.center.len()
    }

    /// Central third moment `E[(X_i - g_i)(X_j - g_j)(X_m - g_m)]`, 0-based.
    pub fn third(&self, i: usize, j: usize, m: usize) -> f64 {
        let k = self.dims();
        self.third[(i * k + j) * k + m]
    }
}

/// Center of gravity, covariance and central third moments, each divided
/// by the mass.
pub fn center_moments(m: &MomentList) -> Result<CenteredMoments> {
    let k = m.dims;
    let mass = m.mass();
    if !mass.is_finite() {
        return Err(Error::NonFinite("moments"));
    }
    if mass <= EPS_MASS {
        return Err(Error::ZeroMass);
    }
    let e = |axes: &[usize]| m.get(&axes.iter().map(|a| a + 1).collect::<Vec<_>>()) / mass;
    let g: Vec<f64> = (0..k).map(|i| e(&[i])).collect();
    let covariance = DMatrix::from_fn(k, k, |i, j| e(&[i, j]) - g[i] * g[j]);
    let mut third = vec![0.0; k * k * k];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                third[(i * k + j) * k + l] =
                    e(&[i, j, l]) - g[i] * e(&[j, l]) - g[j] * e(&[i, l]) - g[l] * e(&[i, j])
                        + 2.0 * g[i] * g[j] * g[l];
            }
        }
    }
    Ok(CenteredMoments {
        hypervolume: mass,
        center: g,
        covariance,
        third,
    })
}

/// How the principal variance `l1` sets the Eigen-tree scale factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScalePolicy {
    /// `1 / sqrt(12 l1)`: a length ratio; the unit cube is a fixed point.
    #[default]
    Sqrt,
    /// `1 / (12 l1)`.
    Linear,
    /// `1 / (6 l1)`.
    Annex,
}

impl ScalePolicy {
    pub fn scale(self, l1: f64) -> f64 {
        match self {
            ScalePolicy::Sqrt => 1.0 / (12.0 * l1).sqrt(),
            ScalePolicy::Linear => 1.0 / (12.0 * l1),
            ScalePolicy::Annex => 1.0 / (6.0 * l1),
        }
    }
}

impl std::str::FromStr for ScalePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt" => Ok(ScalePolicy::Sqrt),
            "linear" => Ok(ScalePolicy::Linear),
            "annex" => Ok(ScalePolicy::Annex),
            other => Err(Error::Unsupported(format!("scale policy {other:?}"))),
        }
    }
}

/// Inertial reference frame of a region.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenFrame {
    /// Columns are the principal axes.
    pub rotation: DMatrix<f64>,
    /// Nonincreasing.
    pub eigenvalues: Vec<f64>,
    /// Central third moment along each principal axis.
    pub asymmetries: Vec<f64>,
    pub center: Vec<f64>,
    pub scale: f64,
}

impl EigenFrame {
    pub fn dims(&self) -> usize {
        self.center.len()
    }

    /// The displacement mapping the region into its inertial frame: center
    /// to the cube center, principal axes onto the coordinate axes, uniform
    /// scaling about the cube center.
    pub fn matrix(&self) -> Result<HomogeneousMatrix> {
        let k = self.dims();
        match self.eigenvalues.first() {
            Some(&l1) if l1 > EPS_MASS && self.scale.is_finite() => {}
            other => return Err(Error::DegenerateFrame(other.copied().unwrap_or(0.0))),
        }
        let half = vec![0.5; k];
        let neg_center: Vec<f64> = self.center.iter().map(|c| -c).collect();
        let linear = self.rotation.transpose() * self.scale;
        Ok(HomogeneousMatrix::translation(&half)
            .then_after(&HomogeneousMatrix::linear(&linear))
            .then_after(&HomogeneousMatrix::translation(&neg_center)))
    }
}

/// Principal axes of the covariance with the default scale policy.
pub fn normalize_moments(c: &CenteredMoments) -> Result<EigenFrame> {
    normalize_moments_with(c, ScalePolicy::default())
}

/// Diagonalizes the covariance, sorts the axes by decreasing variance and
/// orients each so that its third moment is nonnegative.
pub fn normalize_moments_with(c: &CenteredMoments, policy: ScalePolicy) -> Result<EigenFrame> {
    let k = c.dims();
    if c.covariance
        .iter()
        .chain(c.center.iter())
        .chain(c.third.iter())
        .any(|x| !x.is_finite())
    {
        return Err(Error::NonFinite("centered moments"));
    }
    let (values, vectors) = symmetric_eigen(&c.covariance);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut rotation = DMatrix::zeros(k, k);
    let mut eigenvalues = Vec::with_capacity(k);
    let mut asymmetries = Vec::with_capacity(k);
    for (col, &src) in order.iter().enumerate() {
        let mut v: Vec<f64> = vectors.column(src).iter().copied().collect();
        // sign convention: largest-magnitude entry positive
        let lead = (0..k).fold(
            0,
            |best, i| if v[i].abs() > v[best].abs() { i } else { best },
        );
        if v[lead] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let mut skew = 0.0;
        for i in 0..k {
            for j in 0..k {
                for m in 0..k {
                    skew += v[i] * v[j] * v[m] * c.third(i, j, m);
                }
            }
        }
        if skew < -EPS_NUM {
            v.iter_mut().for_each(|x| *x = -*x);
            skew = -skew;
        }
        for (i, x) in v.into_iter().enumerate() {
            rotation[(i, col)] = x;
        }
        eigenvalues.push(values[src].max(0.0));
        // what is left below zero is rounding noise
        asymmetries.push(skew.max(0.0));
    }
    let l1 = eigenvalues.first().copied().unwrap_or(0.0);
    Ok(EigenFrame {
        rotation,
        scale: if l1 > EPS_MASS {
            policy.scale(l1)
        } else {
            f64::INFINITY
        },
        eigenvalues,
        asymmetries,
        center: c.center.clone(),
    })
}

/// The frame of `t` computed from its moments.
pub fn eigen_frame(t: &Tree, depth: Depth, policy: ScalePolicy) -> Result<EigenFrame> {
    normalize_moments_with(&center_moments(&tree_moments(t, depth))?, policy)
}

/// `t` re-expressed in its inertial frame.
pub fn eigen_tree(t: &Tree, frame: &EigenFrame, r_analysis: u32, r_build: u32) -> Result<Tree> {
    let k = frame.dims();
    let m = frame.matrix()?;
    let moved = homographic_transform_fast(t, &m, r_analysis, r_build)?;
    // the frame axes are already oriented; this only acts on frames built
    // by hand with negative asymmetries
    let flags: Vec<bool> = frame.asymmetries.iter().map(|&a| a < -EPS_NUM).collect();
    if flags.iter().any(|&f| f) {
        symmetry_tree(&moved, &flags, Depth::new(k as u32, r_build)?)
    } else {
        Ok(moved)
    }
}

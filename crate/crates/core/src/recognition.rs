//! Supervised recognition: attribute-vector lookup in a learned attribute
//! space tree, and nearest label by XOR mass between Eigen trees.

use std::collections::{BTreeMap, BTreeSet};

use crate::boolean::union;
use crate::builder::{cell_of, grow_bounds, turn, RefBox};
use crate::error::{Error, Result};
use crate::metric::{cells_to_mass, hausdorff_exact};
use crate::moments::{eigen_frame, eigen_tree, EigenFrame, ScalePolicy, EPS_MASS};
use crate::tree::{Color, Decorated, Depth, Shape, Tree};

/// Default precision per attribute axis of a spectral base.
pub const DEFAULT_R_LEARN: u32 = 6;

/// Similarity-invariant shape attributes: the variance ratios `l_i / l_1`
/// for `i >= 2`, then the principal-axis asymmetries scaled by `l_1^1.5`.
#[derive(Clone, Debug, PartialEq)]
pub struct AttributeVector(pub Vec<f64>);

/// Attribute vector of a frame; `2k - 1` entries.
pub fn attributes_of(frame: &EigenFrame) -> Result<AttributeVector> {
    let l1 = frame.eigenvalues.first().copied().unwrap_or(0.0);
    if l1.is_nan() || l1 <= EPS_MASS {
        return Err(Error::DegenerateFrame(l1));
    }
    let ratios = frame.eigenvalues[1..].iter().map(|l| l / l1);
    let skews = frame.asymmetries.iter().map(|a| a / l1.powf(1.5));
    let v: Vec<f64> = ratios.chain(skews).collect();
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("attributes"));
    }
    Ok(AttributeVector(v))
}

/// Learned attribute space: black cells hold the ids of the labels whose
/// samples fell there.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBase {
    pub depth: Depth,
    pub bounds: RefBox,
    pub tree: Decorated<BTreeSet<u32>>,
    /// Label names; id `i` is `labels[i - 1]`.
    pub labels: Vec<String>,
}

impl SpectralBase {
    /// Plain tree of the occupied cells.
    pub fn occupancy(&self) -> Tree {
        self.tree.clone().devaluate()
    }

    pub fn label_id(&self, name: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == name)
            .map(|i| i as u32 + 1)
    }
}

/// Builds a spectral base at `r_learn` levels per attribute axis.
pub fn spectral_learn(samples: &[(String, AttributeVector)], r_learn: u32) -> Result<SpectralBase> {
    let first = samples.first().ok_or(Error::Empty("training set"))?;
    let dims = first.1 .0.len();
    let depth = Depth::new(dims as u32, r_learn)?;
    let mut bounds = RefBox::around(&first.1 .0)?;
    for (_, v) in samples {
        depth.check_dims(v.0.len())?;
        bounds = grow_bounds(&bounds, &v.0)?;
    }
    let mut labels: Vec<String> = Vec::new();
    let mut tree = Decorated::leaf(Color::White);
    for (name, v) in samples {
        let id = match labels.iter().position(|l| l == name) {
            Some(i) => i as u32 + 1,
            None => {
                labels.push(name.clone());
                labels.len() as u32
            }
        };
        let cell = cell_of(&bounds.normalize(&v.0), depth)?;
        let mut node = &mut tree;
        for level in 0..depth.levels() {
            node.fission();
            node = match &mut node.shape {
                Shape::Node(l, r) => {
                    if turn(&cell, depth, level) {
                        r
                    } else {
                        l
                    }
                }
                Shape::Leaf(_) => unreachable!("fission made a node"),
            };
        }
        node.shape = Shape::Leaf(Color::Black);
        node.value.get_or_insert_with(BTreeSet::new).insert(id);
    }
    Ok(SpectralBase {
        depth,
        bounds,
        tree,
        labels,
    })
}

/// Labels of the cell holding `v`; empty when the cell is white or `v`
/// lies outside the learned box.
pub fn spectral_classify(base: &SpectralBase, v: &AttributeVector) -> Vec<String> {
    if !base.bounds.contains(&v.0) {
        return Vec::new();
    }
    let Ok(cell) = cell_of(&base.bounds.normalize(&v.0), base.depth) else {
        return Vec::new();
    };
    let mut node = &base.tree;
    for level in 0..base.depth.levels() {
        match &node.shape {
            Shape::Node(l, r) => node = if turn(&cell, base.depth, level) { r } else { l },
            Shape::Leaf(_) => break,
        }
    }
    node.value
        .iter()
        .flatten()
        .map(|&id| base.labels[id as usize - 1].clone())
        .collect()
}

/// Per-label unions of Eigen trees.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelativeBase {
    pub depth: Depth,
    pub policy: ScalePolicy,
    pub classes: BTreeMap<String, Tree>,
}

/// Eigen tree of `t` analysed and rebuilt at the precision of `depth`.
pub fn eigen_tree_of(t: &Tree, depth: Depth, policy: ScalePolicy) -> Result<Tree> {
    let frame = eigen_frame(t, depth, policy)?;
    eigen_tree(t, &frame, depth.precision(), depth.precision())
}

pub fn correlative_learn(
    samples: &[(String, Tree)],
    depth: Depth,
    policy: ScalePolicy,
) -> Result<CorrelativeBase> {
    let mut classes: BTreeMap<String, Tree> = BTreeMap::new();
    for (name, t) in samples {
        let e = eigen_tree_of(t, depth, policy)?;
        let merged = match classes.get(name) {
            Some(prev) => union(prev, &e, depth),
            None => e,
        };
        classes.insert(name.clone(), merged);
    }
    Ok(CorrelativeBase {
        depth,
        policy,
        classes,
    })
}

/// Label whose union is nearest to the query's Eigen tree in XOR mass, with
/// that distance. Ties go to the first label in order.
pub fn correlative_classify(base: &CorrelativeBase, t: &Tree) -> Result<(String, f64)> {
    let q = eigen_tree_of(t, base.depth, base.policy)?;
    let mut best: Option<(&String, u128)> = None;
    for (name, class) in &base.classes {
        let d = hausdorff_exact(&q, class, base.depth);
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((name, d));
        }
    }
    let (name, d) = best.ok_or(Error::Empty("correlative base"))?;
    Ok((name.clone(), cells_to_mass(d, base.depth)))
}

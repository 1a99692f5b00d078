//! Python bindings. Trees are immutable values; every operation returns a
//! new `Tree`.

use ::hypertree as ht;
use ht::geometry::{
    homographic_transform_fast, project, remove_hidden, symmetry_tree, HomogeneousMatrix,
};
use ht::io::{decode_leaves, decode_tree, encode_leaves, encode_tree, TreeFile};
use ht::moments::{eigen_frame, eigen_tree, tree_moments, ScalePolicy};
use ht::recognition::{
    attributes_of, correlative_classify, correlative_learn, spectral_classify, spectral_learn,
    CorrelativeBase, SpectralBase, DEFAULT_R_LEARN,
};
use ht::segmentation::{label_components, search_adjacencies, segment_forest, Metric};
use ht::{BoolOp, Depth, RefBox};
use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use std::collections::BTreeMap;

fn err(e: ht::Error) -> PyErr {
    match e {
        ht::Error::Io(_) => PyIOError::new_err(e.to_string()),
        ht::Error::NotTerminal => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parsed<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse()
        .map_err(|e: T::Err| PyValueError::new_err(e.to_string()))
}

fn depth(dims: u32, precision: u32) -> PyResult<Depth> {
    Depth::new(dims, precision).map_err(err)
}

/// A set of cells of the `2^r`-per-axis grid over a reference box.
#[pyclass(name = "Tree", module = "hypertree_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTree {
    depth: Depth,
    bounds: RefBox,
    tree: ht::Tree,
}

impl PyTree {
    fn unit(depth: Depth, tree: ht::Tree) -> PyTree {
        PyTree {
            depth,
            bounds: RefBox::unit(depth.dims()),
            tree,
        }
    }

    fn with(&self, tree: ht::Tree) -> PyTree {
        PyTree {
            depth: self.depth,
            bounds: self.bounds.clone(),
            tree,
        }
    }

    fn binary(&self, other: &PyTree, op: BoolOp) -> PyResult<PyTree> {
        if other.depth.dims() != self.depth.dims() || other.bounds != self.bounds {
            return Err(PyValueError::new_err("operands live in different spaces"));
        }
        Ok(self.with(ht::combine(&self.tree, &other.tree, op, self.depth)))
    }

    fn frame(&self, policy: &str) -> PyResult<ht::moments::EigenFrame> {
        eigen_frame(&self.tree, self.depth, parsed(policy)?).map_err(err)
    }
}

#[pymethods]
impl PyTree {
    #[new]
    #[pyo3(signature = (dims, precision, cells=None))]
    fn new(dims: u32, precision: u32, cells: Option<Vec<Vec<u64>>>) -> PyResult<Self> {
        let d = depth(dims, precision)?;
        let mut t = ht::Tree::white();
        for c in cells.unwrap_or_default() {
            t = ht::add_int_vector(t, &c, d).map_err(err)?;
        }
        Ok(PyTree::unit(d, t))
    }

    /// Points in `[0,1)^k`, or anywhere with `inductive=True`.
    #[staticmethod]
    #[pyo3(signature = (points, dims, precision, inductive=false))]
    fn from_points(
        points: Vec<Vec<f64>>,
        dims: u32,
        precision: u32,
        inductive: bool,
    ) -> PyResult<Self> {
        let d = depth(dims, precision)?;
        let mut t = ht::Tree::white();
        if !inductive {
            for p in &points {
                t = ht::add_real_vector(t, p, d).map_err(err)?;
            }
            return Ok(PyTree::unit(d, t));
        }
        let mut bounds: Option<RefBox> = None;
        for p in &points {
            let b = match bounds.take() {
                Some(b) => b,
                None => RefBox::around(p).map_err(err)?,
            };
            let (grown_tree, grown) = ht::add_with_growth(t, &b, p, d).map_err(err)?;
            t = grown_tree;
            bounds = Some(grown);
        }
        Ok(PyTree {
            depth: d,
            bounds: bounds.unwrap_or_else(|| RefBox::unit(d.dims())),
            tree: t,
        })
    }

    #[staticmethod]
    fn decode(code: &str, dims: u32, precision: u32) -> PyResult<Self> {
        Ok(PyTree::unit(
            depth(dims, precision)?,
            decode_tree(code.trim()).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn decode_leaves(codes: Vec<String>, dims: u32, precision: u32) -> PyResult<Self> {
        let d = depth(dims, precision)?;
        Ok(PyTree::unit(d, decode_leaves(&codes, d).map_err(err)?))
    }

    /// Parses the text of a tree file.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let f = TreeFile::parse(text).map_err(err)?;
        Ok(PyTree {
            depth: f.depth,
            bounds: f.bounds,
            tree: f.tree,
        })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        let f = TreeFile::read(path).map_err(err)?;
        Ok(PyTree {
            depth: f.depth,
            bounds: f.bounds,
            tree: f.tree,
        })
    }

    fn render(&self) -> String {
        TreeFile {
            depth: self.depth,
            bounds: self.bounds.clone(),
            tree: self.tree.clone(),
        }
        .render()
    }

    fn write(&self, path: &str) -> PyResult<()> {
        std::fs::write(path, self.render()).map_err(|e| PyIOError::new_err(e.to_string()))
    }

    #[getter]
    fn dims(&self) -> usize {
        self.depth.dims()
    }

    #[getter]
    fn precision(&self) -> u32 {
        self.depth.precision()
    }

    /// `(min, max)` corners of the reference box.
    #[getter]
    fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        (self.bounds.min.clone(), self.bounds.max.clone())
    }

    fn add(&self, cell: Vec<u64>) -> PyResult<Self> {
        Ok(self.with(ht::add_int_vector(self.tree.clone(), &cell, self.depth).map_err(err)?))
    }

    fn contains(&self, cell: Vec<u64>) -> PyResult<bool> {
        ht::contains(&self.tree, &cell, self.depth).map_err(err)
    }

    fn union(&self, other: &PyTree) -> PyResult<Self> {
        self.binary(other, BoolOp::Union)
    }

    fn intersect(&self, other: &PyTree) -> PyResult<Self> {
        self.binary(other, BoolOp::Intersect)
    }

    fn xor(&self, other: &PyTree) -> PyResult<Self> {
        self.binary(other, BoolOp::Xor)
    }

    fn difference(&self, other: &PyTree) -> PyResult<Self> {
        self.binary(other, BoolOp::Diff)
    }

    fn complement(&self) -> Self {
        self.with(ht::not_tree(&self.tree, self.depth))
    }

    fn __or__(&self, other: &PyTree) -> PyResult<Self> {
        self.union(other)
    }

    fn __and__(&self, other: &PyTree) -> PyResult<Self> {
        self.intersect(other)
    }

    fn __xor__(&self, other: &PyTree) -> PyResult<Self> {
        self.xor(other)
    }

    fn __sub__(&self, other: &PyTree) -> PyResult<Self> {
        self.difference(other)
    }

    fn __invert__(&self) -> Self {
        self.complement()
    }

    fn __eq__(&self, other: &PyTree) -> bool {
        self.depth == other.depth && self.bounds == other.bounds && self.tree == other.tree
    }

    fn __repr__(&self) -> String {
        format!(
            "Tree(dims={}, precision={}, nodes={})",
            self.depth.dims(),
            self.depth.precision(),
            self.tree.node_count()
        )
    }

    /// The same set at another precision, keeping the hull.
    fn assert_to(&self, precision: u32) -> PyResult<Self> {
        let d = depth(self.depth.dims() as u32, precision)?;
        Ok(PyTree {
            depth: d,
            bounds: self.bounds.clone(),
            tree: ht::assert_tree(&self.tree, d),
        })
    }

    /// Hypervolume as a fraction of the reference box.
    fn mass(&self) -> f64 {
        ht::mass(&self.tree, self.depth)
    }

    /// Number of black finest cells.
    fn cells(&self) -> u128 {
        ht::mass_exact(&self.tree, self.depth)
    }

    fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    fn height(&self) -> u32 {
        self.tree.height()
    }

    /// Mass of the symmetric difference.
    fn hausdorff(&self, other: &PyTree) -> PyResult<f64> {
        if other.depth.dims() != self.depth.dims() {
            return Err(PyValueError::new_err("operands differ in dimension"));
        }
        Ok(ht::hausdorff(&self.tree, &other.tree, self.depth))
    }

    fn encode(&self) -> String {
        encode_tree(&self.tree)
    }

    fn encode_leaves(&self) -> PyResult<Vec<String>> {
        encode_leaves(&self.tree, self.depth).map_err(err)
    }

    /// Image through a `(k+1) x (k+1)` homogeneous matrix given by rows.
    #[pyo3(signature = (matrix, precision_build=None))]
    fn transform(&self, matrix: Vec<Vec<f64>>, precision_build: Option<u32>) -> PyResult<Self> {
        let entries: Vec<f64> = matrix.into_iter().flatten().collect();
        let m = HomogeneousMatrix::from_row_slice(self.depth.dims(), &entries).map_err(err)?;
        let rb = precision_build.unwrap_or(self.depth.precision());
        let out =
            homographic_transform_fast(&self.tree, &m, self.depth.precision(), rb).map_err(err)?;
        Ok(PyTree {
            depth: depth(self.depth.dims() as u32, rb)?,
            bounds: self.bounds.clone(),
            tree: out,
        })
    }

    fn symmetry(&self, axes: Vec<usize>) -> PyResult<Self> {
        let mut flags = vec![false; self.depth.dims()];
        for a in axes {
            *flags
                .get_mut(a)
                .ok_or_else(|| PyValueError::new_err(format!("axis {a} out of range")))? = true;
        }
        Ok(self.with(symmetry_tree(&self.tree, &flags, self.depth).map_err(err)?))
    }

    fn remove_hidden(&self, axis: usize) -> PyResult<Self> {
        Ok(self.with(remove_hidden(&self.tree, axis, self.depth).map_err(err)?))
    }

    fn project(&self, axis: usize) -> PyResult<Self> {
        let out = project(&self.tree, axis, self.depth).map_err(err)?;
        let keep = |v: &[f64]| {
            v.iter()
                .enumerate()
                .filter(|(a, _)| *a != axis)
                .map(|(_, x)| *x)
                .collect()
        };
        Ok(PyTree {
            depth: depth(self.depth.dims() as u32 - 1, self.depth.precision())?,
            bounds: RefBox {
                min: keep(&self.bounds.min),
                max: keep(&self.bounds.max),
            },
            tree: out,
        })
    }

    /// Pairs of adjacent black leaves, as path strings.
    #[pyo3(signature = (metric="dinf"))]
    fn adjacency(&self, metric: &str) -> PyResult<Vec<(String, String)>> {
        let t = ht::assert_tree(&self.tree, self.depth);
        let g = search_adjacencies(&t, parsed::<Metric>(metric)?, self.depth);
        Ok(g.edges
            .iter()
            .map(|&(a, b)| (g.cells[a].to_string(), g.cells[b].to_string()))
            .collect())
    }

    /// Connected components, in labeling order.
    #[pyo3(signature = (metric="dinf"))]
    fn components(&self, metric: &str) -> PyResult<Vec<PyTree>> {
        let t = ht::assert_tree(&self.tree, self.depth);
        let (lt, n) = label_components(&t, parsed::<Metric>(metric)?, self.depth);
        Ok(segment_forest(&lt, n)
            .into_iter()
            .map(|c| self.with(c))
            .collect())
    }

    /// Moments up to order 3 keyed by `(i, j, m)`, 0 meaning no axis.
    fn moments(&self) -> BTreeMap<(usize, usize, usize), f64> {
        tree_moments(&self.tree, self.depth)
            .iter()
            .map(|([i, j, m], v)| ((i, j, m), v))
            .collect()
    }

    /// Principal axes: eigenvalues, rotation rows, asymmetries, center, scale.
    #[pyo3(signature = (policy="sqrt"))]
    fn eigen_frame<'py>(
        &self,
        py: Python<'py>,
        policy: &str,
    ) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let f = self.frame(policy)?;
        let d = pyo3::types::PyDict::new(py);
        let rows: Vec<Vec<f64>> = (0..f.dims())
            .map(|i| f.rotation.row(i).iter().copied().collect())
            .collect();
        d.set_item("eigenvalues", f.eigenvalues.clone())?;
        d.set_item("rotation", rows)?;
        d.set_item("asymmetries", f.asymmetries.clone())?;
        d.set_item("center", f.center.clone())?;
        d.set_item("scale", f.scale)?;
        Ok(d)
    }

    /// The set in its inertial frame, on the unit box.
    #[pyo3(signature = (policy="sqrt", precision_build=None))]
    fn eigen_tree(&self, policy: &str, precision_build: Option<u32>) -> PyResult<Self> {
        let f = self.frame(policy)?;
        let rb = precision_build.unwrap_or(self.depth.precision());
        let out = eigen_tree(&self.tree, &f, self.depth.precision(), rb).map_err(err)?;
        Ok(PyTree::unit(depth(self.depth.dims() as u32, rb)?, out))
    }

    /// Rotation- and scale-free shape attributes.
    #[pyo3(signature = (policy="sqrt"))]
    fn attributes(&self, policy: &str) -> PyResult<Vec<f64>> {
        Ok(attributes_of(&self.frame(policy)?).map_err(err)?.0)
    }
}

/// Classes stored as Eigen trees, matched by Hausdorff distance.
#[pyclass(name = "CorrelativeBase", module = "hypertree_py", frozen)]
struct PyCorrelativeBase(CorrelativeBase);

#[pymethods]
impl PyCorrelativeBase {
    #[staticmethod]
    #[pyo3(signature = (samples, policy="sqrt"))]
    fn learn(samples: Vec<(String, PyRef<'_, PyTree>)>, policy: &str) -> PyResult<Self> {
        let d = samples
            .first()
            .map(|(_, t)| t.depth)
            .ok_or_else(|| PyValueError::new_err("no samples"))?;
        let trees: Vec<(String, ht::Tree)> = samples
            .iter()
            .map(|(l, t)| (l.clone(), t.tree.clone()))
            .collect();
        Ok(Self(
            correlative_learn(&trees, d, parsed::<ScalePolicy>(policy)?).map_err(err)?,
        ))
    }

    /// `(label, distance)` of the nearest class.
    fn classify(&self, tree: &PyTree) -> PyResult<(String, f64)> {
        correlative_classify(&self.0, &tree.tree).map_err(err)
    }

    fn labels(&self) -> Vec<String> {
        self.0.classes.keys().cloned().collect()
    }

    fn render(&self) -> PyResult<String> {
        ht::io::render_correlative_base(&self.0).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self(ht::io::parse_correlative_base(text).map_err(err)?))
    }
}

/// Attribute-space partition labeled by the training classes.
#[pyclass(name = "SpectralBase", module = "hypertree_py", frozen)]
struct PySpectralBase {
    base: SpectralBase,
    policy: ScalePolicy,
}

#[pymethods]
impl PySpectralBase {
    #[staticmethod]
    #[pyo3(signature = (samples, precision=DEFAULT_R_LEARN, policy="sqrt"))]
    fn learn(
        samples: Vec<(String, PyRef<'_, PyTree>)>,
        precision: u32,
        policy: &str,
    ) -> PyResult<Self> {
        let mut vectors = Vec::with_capacity(samples.len());
        for (label, t) in &samples {
            vectors.push((
                label.clone(),
                attributes_of(&t.frame(policy)?).map_err(err)?,
            ));
        }
        Ok(PySpectralBase {
            base: spectral_learn(&vectors, precision).map_err(err)?,
            policy: parsed(policy)?,
        })
    }

    /// Labels of the training classes sharing the query's cell.
    fn classify(&self, tree: &PyTree) -> PyResult<Vec<String>> {
        let f = eigen_frame(&tree.tree, tree.depth, self.policy).map_err(err)?;
        Ok(spectral_classify(
            &self.base,
            &attributes_of(&f).map_err(err)?,
        ))
    }

    fn render(&self) -> PyResult<String> {
        ht::io::render_spectral_base(&self.base).map_err(err)
    }
}

#[pymodule]
fn hypertree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTree>()?;
    m.add_class::<PyCorrelativeBase>()?;
    m.add_class::<PySpectralBase>()?;
    Ok(())
}

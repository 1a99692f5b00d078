//! `hypertree` command-line tool. Trees travel as tree files (`k r`, the
//! reference box, the tree code); every command reads its inputs from
//! files and writes to `--output` or standard output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypertree::geometry::{
    homographic_transform_fast, polytope_tree, project, remove_hidden, symmetry_tree,
    transform_polytope_of,
};
use hypertree::io::{
    decode_leaves, decode_tree, encode_leaves, encode_tree, format_graph, format_moments,
    ingest_points_file, parse_correlative_base, parse_matrix, parse_spectral_base,
    render_correlative_base, render_spectral_base, PointMode, TreeFile,
};
use hypertree::metric::{mass, mass_exact};
use hypertree::moments::{
    center_moments, eigen_tree, normalize_moments_with, tree_moments, EigenFrame, ScalePolicy,
};
use hypertree::recognition::{
    attributes_of, correlative_classify, correlative_learn, spectral_classify, spectral_learn,
    DEFAULT_R_LEARN,
};
use hypertree::segmentation::{
    label_components, search_adjacencies, segment_forest, LabeledTree, Metric,
};
use hypertree::slices::{extract_slice, insert_slice, AxesMask};
use hypertree::{
    add_int_vector, assert_tree, combine, contains, not_tree, BoolOp, CellPath, Depth, Error,
    Shape, Tree,
};

#[derive(Parser)]
#[command(
    name = "hypertree",
    version,
    about = "Binary-emulated 2^k-trees over the unit hypercube"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Number of dimensions k (commands creating trees from scratch)
    #[arg(long, short = 'k', global = true)]
    dims: Option<u32>,
    /// Precision r, levels per axis; overrides the input's precision
    #[arg(long, short = 'r', global = true)]
    precision: Option<u32>,
    /// Output precision of transforms and Eigen trees
    #[arg(long, global = true)]
    precision_build: Option<u32>,
    #[arg(long, value_enum, default_value_t = MetricArg::Dinf, global = true)]
    metric: MetricArg,
    #[arg(long, value_enum, default_value_t = PolicyArg::Sqrt, global = true)]
    scale_policy: PolicyArg,
    /// Write the result here instead of standard output
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    D1,
    Dinf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Sqrt,
    Linear,
    Annex,
}

#[derive(Subcommand)]
enum Command {
    /// Build a tree from a file of points (one point per line)
    Build {
        points: PathBuf,
        /// Accept any coordinates and grow the reference box
        #[arg(long)]
        inductive: bool,
    },
    /// Test whether an integer cell is black
    Contains {
        tree: PathBuf,
        #[arg(required = true, num_args = 1..)]
        cell: Vec<u64>,
    },
    /// Boolean operations
    Bool {
        #[command(subcommand)]
        op: BoolCommand,
    },
    /// Axis-parallel slices
    Slice {
        #[command(subcommand)]
        op: SliceCommand,
    },
    /// Rasterize the polytope of a homogeneous matrix
    Polytope { matrix: PathBuf },
    /// Apply a homogeneous matrix to a tree
    Transform { tree: PathBuf, matrix: PathBuf },
    /// Reflect along the listed axes
    Symmetry {
        tree: PathBuf,
        #[arg(long, value_delimiter = ',')]
        axes: Vec<usize>,
    },
    /// Remove the cells hidden behind others along an axis
    Hide {
        tree: PathBuf,
        #[arg(long)]
        axis: usize,
    },
    /// Project along an axis
    Project {
        tree: PathBuf,
        #[arg(long)]
        axis: usize,
    },
    /// List adjacent black leaves
    Adjacency { tree: PathBuf },
    /// Label connected components
    Label { tree: PathBuf },
    /// Write one tree file per connected component into a directory
    Segments { tree: PathBuf, dir: PathBuf },
    /// Moments up to order 3
    Moments { tree: PathBuf },
    /// Center of gravity and central moments
    Center { tree: PathBuf },
    /// Principal axes
    Normalize { tree: PathBuf },
    /// The tree in its inertial frame
    Eigen { tree: PathBuf },
    /// Build a recognition base from a list of `label tree-file` lines
    Learn {
        #[command(subcommand)]
        kind: LearnCommand,
    },
    /// Classify a tree against a recognition base
    Classify {
        #[command(subcommand)]
        kind: ClassifyCommand,
    },
    /// Print a tree as a code
    Encode {
        #[command(subcommand)]
        kind: EncodeCommand,
    },
    /// Read a tree code (or leaf codes with --leaves) into a tree file
    Decode {
        input: PathBuf,
        #[arg(long)]
        leaves: bool,
    },
    /// Node count, mass and depth histogram
    Stats { tree: PathBuf },
}

#[derive(Subcommand)]
enum BoolCommand {
    And {
        a: PathBuf,
        b: PathBuf,
    },
    Or {
        a: PathBuf,
        b: PathBuf,
    },
    Xor {
        a: PathBuf,
        b: PathBuf,
    },
    Diff {
        a: PathBuf,
        b: PathBuf,
    },
    Not {
        a: PathBuf,
    },
    /// Truncate to --precision, keeping the hull
    Assert {
        a: PathBuf,
    },
}

#[derive(Subcommand)]
enum SliceCommand {
    /// Section at fixed integer coordinates on the given axes
    Extract {
        space: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        axes: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<u64>,
    },
    /// Union a section into the space at fixed coordinates
    Insert {
        space: PathBuf,
        slice: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        axes: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum LearnCommand {
    Spectral { list: PathBuf },
    Correlative { list: PathBuf },
}

#[derive(Subcommand)]
enum ClassifyCommand {
    Spectral { base: PathBuf, tree: PathBuf },
    Correlative { base: PathBuf, tree: PathBuf },
}

#[derive(Subcommand)]
enum EncodeCommand {
    Tree { tree: PathBuf },
    Leaves { tree: PathBuf },
}

/// Failures split by exit code.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotTerminal => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = std::panic::catch_unwind(|| run(&cli));
    let result = match outcome {
        Ok(r) => r,
        Err(_) => Err(Failure::Internal("unexpected internal failure".into())),
    };
    let written = result.and_then(|text| match &cli.opts.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_tree(path: &Path) -> Result<TreeFile, Failure> {
    TreeFile::read(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

impl Opts {
    fn metric(&self) -> Metric {
        match self.metric {
            MetricArg::D1 => Metric::D1,
            MetricArg::Dinf => Metric::Dinf,
        }
    }

    fn policy(&self) -> ScalePolicy {
        match self.scale_policy {
            PolicyArg::Sqrt => ScalePolicy::Sqrt,
            PolicyArg::Linear => ScalePolicy::Linear,
            PolicyArg::Annex => ScalePolicy::Annex,
        }
    }

    /// Grid for commands that create a tree from scratch.
    fn fresh_depth(&self) -> Result<Depth, Failure> {
        let k = self.dims.ok_or_else(|| input("--dims is required"))?;
        let r = self
            .precision
            .ok_or_else(|| input("--precision is required"))?;
        Ok(Depth::new(k, r)?)
    }

    fn check_dims(&self, depth: Depth) -> Result<(), Failure> {
        match self.dims {
            Some(k) if k as usize != depth.dims() => Err(input(format!(
                "--dims {k} does not match the {}-dimensional input",
                depth.dims()
            ))),
            _ => Ok(()),
        }
    }

    /// The input's grid, or the same dimension at --precision.
    fn depth_of(&self, file: &TreeFile) -> Result<Depth, Failure> {
        self.check_dims(file.depth)?;
        Ok(Depth::new(
            file.depth.dims() as u32,
            self.precision.unwrap_or(file.depth.precision()),
        )?)
    }

    fn build_precision(&self, analysis: Depth) -> u32 {
        self.precision_build.unwrap_or(analysis.precision())
    }
}

fn tree_out(depth: Depth, bounds: hypertree::RefBox, tree: Tree) -> String {
    TreeFile {
        depth,
        bounds,
        tree,
    }
    .render()
}

fn run(cli: &Cli) -> CmdResult {
    let o = &cli.opts;
    match &cli.command {
        Command::Build { points, inductive } => {
            let depth = o.fresh_depth()?;
            let mode = if *inductive {
                PointMode::Inductive
            } else {
                PointMode::Fixed
            };
            let (tree, bounds) = ingest_points_file(points, depth, mode)
                .map_err(|e| input(format!("{}: {e}", points.display())))?;
            Ok(tree_out(depth, bounds, tree))
        }
        Command::Contains { tree, cell } => {
            let f = read_tree(tree)?;
            Ok(format!("{}\n", contains(&f.tree, cell, f.depth)?))
        }
        Command::Bool { op } => boolean(o, op),
        Command::Slice { op } => slice(o, op),
        Command::Polytope { matrix } => {
            let depth = o.fresh_depth()?;
            let m = parse_matrix(&read_text(matrix)?, depth.dims())?;
            let p = transform_polytope_of(&m)?;
            Ok(TreeFile::unit(depth, polytope_tree(&p, depth)?).render())
        }
        Command::Transform { tree, matrix } => {
            let f = read_tree(tree)?;
            o.check_dims(f.depth)?;
            let m = parse_matrix(&read_text(matrix)?, f.depth.dims())?;
            let rb = o.build_precision(f.depth);
            let out = homographic_transform_fast(&f.tree, &m, f.depth.precision(), rb)?;
            Ok(tree_out(
                Depth::new(f.depth.dims() as u32, rb)?,
                f.bounds,
                out,
            ))
        }
        Command::Symmetry { tree, axes } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            let mut flags = vec![false; depth.dims()];
            for &a in axes {
                *flags
                    .get_mut(a)
                    .ok_or_else(|| input(format!("axis {a} out of range")))? = true;
            }
            Ok(tree_out(
                depth,
                f.bounds,
                symmetry_tree(&f.tree, &flags, depth)?,
            ))
        }
        Command::Hide { tree, axis } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            Ok(tree_out(
                depth,
                f.bounds,
                remove_hidden(&f.tree, *axis, depth)?,
            ))
        }
        Command::Project { tree, axis } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            let out = project(&f.tree, *axis, depth)?;
            let keep = |v: &Vec<f64>| {
                v.iter()
                    .enumerate()
                    .filter(|(a, _)| a != axis)
                    .map(|(_, x)| *x)
                    .collect()
            };
            let bounds = hypertree::RefBox {
                min: keep(&f.bounds.min),
                max: keep(&f.bounds.max),
            };
            Ok(tree_out(
                Depth::new(depth.dims() as u32 - 1, depth.precision())?,
                bounds,
                out,
            ))
        }
        Command::Adjacency { tree } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            Ok(format_graph(&search_adjacencies(
                &assert_tree(&f.tree, depth),
                o.metric(),
                depth,
            )))
        }
        Command::Label { tree } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            let (lt, n) = label_components(&assert_tree(&f.tree, depth), o.metric(), depth);
            let mut s = format!("components {n}\n");
            write_labels(&lt, CellPath::ROOT, &mut s);
            Ok(s)
        }
        Command::Segments { tree, dir } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            let (lt, n) = label_components(&assert_tree(&f.tree, depth), o.metric(), depth);
            std::fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
            let mut s = String::new();
            for (i, seg) in segment_forest(&lt, n).into_iter().enumerate() {
                let path = dir.join(format!("segment-{}.tree", i + 1));
                std::fs::write(&path, tree_out(depth, f.bounds.clone(), seg))
                    .map_err(|e| input(format!("{}: {e}", path.display())))?;
                let _ = writeln!(s, "{}", path.display());
            }
            Ok(s)
        }
        Command::Moments { tree } => {
            let f = read_tree(tree)?;
            Ok(format_moments(&tree_moments(&f.tree, o.depth_of(&f)?)))
        }
        Command::Center { tree } => {
            let f = read_tree(tree)?;
            let c = center_moments(&tree_moments(&f.tree, o.depth_of(&f)?))?;
            let k = c.dims();
            let mut s = format!("mass {}\ncenter {}\n", c.hypervolume, join(&c.center));
            for i in 0..k {
                let row: Vec<f64> = (0..k).map(|j| c.covariance[(i, j)]).collect();
                let _ = writeln!(s, "covariance {}", join(&row));
            }
            for i in 0..k {
                for j in i..k {
                    for m in j..k {
                        let _ = writeln!(
                            s,
                            "third {} {} {} {}",
                            i + 1,
                            j + 1,
                            m + 1,
                            c.third(i, j, m)
                        );
                    }
                }
            }
            Ok(s)
        }
        Command::Normalize { tree } => {
            let f = read_tree(tree)?;
            let frame = frame_of(o, &f)?;
            let mut s = format!(
                "eigenvalues {}\nasymmetries {}\ncenter {}\nscale {}\n",
                join(&frame.eigenvalues),
                join(&frame.asymmetries),
                join(&frame.center),
                frame.scale
            );
            for i in 0..frame.dims() {
                let row: Vec<f64> = frame.rotation.row(i).iter().copied().collect();
                let _ = writeln!(s, "rotation {}", join(&row));
            }
            let _ = writeln!(s, "attributes {}", join(&attributes_of(&frame)?.0));
            Ok(s)
        }
        Command::Eigen { tree } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            let frame = frame_of(o, &f)?;
            let rb = o.build_precision(depth);
            let out = eigen_tree(&f.tree, &frame, depth.precision(), rb)?;
            Ok(TreeFile::unit(Depth::new(depth.dims() as u32, rb)?, out).render())
        }
        Command::Learn { kind } => learn(o, kind),
        Command::Classify { kind } => classify(o, kind),
        Command::Encode { kind } => match kind {
            EncodeCommand::Tree { tree } => {
                Ok(format!("{}\n", encode_tree(&read_tree(tree)?.tree)))
            }
            EncodeCommand::Leaves { tree } => {
                let f = read_tree(tree)?;
                let codes = encode_leaves(&f.tree, o.depth_of(&f)?)?;
                Ok(codes.iter().map(|c| format!("{c}\n")).collect())
            }
        },
        Command::Decode {
            input: path,
            leaves,
        } => {
            let depth = o.fresh_depth()?;
            let text = read_text(path)?;
            let tree = if *leaves {
                let codes: Vec<&str> = text.split_whitespace().collect();
                decode_leaves(&codes, depth)?
            } else {
                decode_tree(text.trim())?
            };
            Ok(TreeFile::unit(depth, tree).render())
        }
        Command::Stats { tree } => {
            let f = read_tree(tree)?;
            let depth = o.depth_of(&f)?;
            let mut s = format!(
                "nodes {}\nheight {}\nmass {}\ncells {}\n",
                f.tree.node_count(),
                f.tree.height(),
                mass(&f.tree, depth),
                mass_exact(&f.tree, depth)
            );
            // terminals per level
            for (level, (white, black)) in f.tree.depth_histogram().into_iter().enumerate() {
                if white + black > 0 {
                    let _ = writeln!(s, "level {level} white {white} black {black}");
                }
            }
            Ok(s)
        }
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_labels(t: &LabeledTree, path: CellPath, s: &mut String) {
    if let Some(label) = t.value {
        let _ = writeln!(s, "{path} {label}");
    }
    if let Shape::Node(l, r) = &t.shape {
        write_labels(l, path.push(false), s);
        write_labels(r, path.push(true), s);
    }
}

fn frame_of(o: &Opts, f: &TreeFile) -> Result<EigenFrame, Failure> {
    let c = center_moments(&tree_moments(&f.tree, o.depth_of(f)?))?;
    Ok(normalize_moments_with(&c, o.policy())?)
}

fn boolean(o: &Opts, op: &BoolCommand) -> CmdResult {
    let binary = |a: &Path, b: &Path, op: BoolOp| -> CmdResult {
        let (fa, fb) = (read_tree(a)?, read_tree(b)?);
        if fa.depth.dims() != fb.depth.dims() {
            return Err(input(format!(
                "operands have {} and {} dimensions",
                fa.depth.dims(),
                fb.depth.dims()
            )));
        }
        if fa.bounds != fb.bounds {
            return Err(input("operands model different reference boxes"));
        }
        let depth = o.depth_of(&fa)?;
        Ok(tree_out(
            depth,
            fa.bounds,
            combine(&fa.tree, &fb.tree, op, depth),
        ))
    };
    match op {
        BoolCommand::And { a, b } => binary(a, b, BoolOp::Intersect),
        BoolCommand::Or { a, b } => binary(a, b, BoolOp::Union),
        BoolCommand::Xor { a, b } => binary(a, b, BoolOp::Xor),
        BoolCommand::Diff { a, b } => binary(a, b, BoolOp::Diff),
        BoolCommand::Not { a } => {
            let f = read_tree(a)?;
            let depth = o.depth_of(&f)?;
            Ok(tree_out(depth, f.bounds, not_tree(&f.tree, depth)))
        }
        BoolCommand::Assert { a } => {
            let f = read_tree(a)?;
            let depth = o.depth_of(&f)?;
            Ok(tree_out(depth, f.bounds, assert_tree(&f.tree, depth)))
        }
    }
}

/// Mask and coordinate tree of fixed axes given as integer coordinates.
fn fixed_coords(depth: Depth, axes: &[usize], at: &[u64]) -> Result<(AxesMask, Tree), Failure> {
    if axes.len() != at.len() {
        return Err(input(format!(
            "{} axes but {} coordinates",
            axes.len(),
            at.len()
        )));
    }
    let mask = AxesMask::fixing(depth.dims(), axes)?;
    if mask.codimension() != axes.len() {
        return Err(input("repeated axis"));
    }
    // coordinates in increasing axis order
    let mut pairs: Vec<(usize, u64)> = axes.iter().copied().zip(at.iter().copied()).collect();
    pairs.sort_unstable();
    let coords: Vec<u64> = pairs.into_iter().map(|(_, c)| c).collect();
    let cd = Depth::new(axes.len() as u32, depth.precision())?;
    Ok((mask, add_int_vector(Tree::white(), &coords, cd)?))
}

fn slice(o: &Opts, op: &SliceCommand) -> CmdResult {
    match op {
        SliceCommand::Extract { space, axes, at } => {
            let f = read_tree(space)?;
            let depth = o.depth_of(&f)?;
            let (mask, coord) = fixed_coords(depth, axes, at)?;
            let out = extract_slice(&f.tree, depth, &coord, axes.len(), &mask)?;
            let free = |v: &Vec<f64>| {
                v.iter()
                    .enumerate()
                    .filter(|(a, _)| !mask.0[*a])
                    .map(|(_, x)| *x)
                    .collect()
            };
            let bounds = hypertree::RefBox {
                min: free(&f.bounds.min),
                max: free(&f.bounds.max),
            };
            let sd = Depth::new((depth.dims() - axes.len()) as u32, depth.precision())?;
            Ok(tree_out(sd, bounds, out))
        }
        SliceCommand::Insert {
            space,
            slice,
            axes,
            at,
        } => {
            let f = read_tree(space)?;
            let s = read_tree(slice)?;
            let depth = o.depth_of(&f)?;
            let (mask, coord) = fixed_coords(depth, axes, at)?;
            let out = insert_slice(
                &f.tree,
                depth,
                &s.tree,
                s.depth.dims(),
                &coord,
                axes.len(),
                &mask,
            )?;
            Ok(tree_out(depth, f.bounds, out))
        }
    }
}

/// `label tree-file` lines; relative paths are taken from the list's
/// directory.
fn read_list(list: &Path) -> Result<Vec<(String, TreeFile)>, Failure> {
    let text = read_text(list)?;
    let base = list.parent().unwrap_or(Path::new("."));
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, file) = line.split_once(char::is_whitespace).ok_or_else(|| {
            input(format!(
                "{}:{}: expected \"label tree-file\"",
                list.display(),
                i + 1
            ))
        })?;
        out.push((label.to_string(), read_tree(&base.join(file.trim()))?));
    }
    if out.is_empty() {
        return Err(input(format!("{}: no samples", list.display())));
    }
    Ok(out)
}

fn learn(o: &Opts, kind: &LearnCommand) -> CmdResult {
    match kind {
        LearnCommand::Spectral { list } => {
            let mut samples = Vec::new();
            for (label, f) in read_list(list)? {
                samples.push((label, attributes_of(&frame_of(o, &f)?)?));
            }
            let base = spectral_learn(&samples, o.precision.unwrap_or(DEFAULT_R_LEARN))?;
            Ok(render_spectral_base(&base)?)
        }
        LearnCommand::Correlative { list } => {
            let samples = read_list(list)?;
            let depth = o.depth_of(&samples[0].1)?;
            if samples.iter().any(|(_, f)| f.depth.dims() != depth.dims()) {
                return Err(input("samples differ in dimension"));
            }
            let trees: Vec<(String, Tree)> =
                samples.into_iter().map(|(l, f)| (l, f.tree)).collect();
            Ok(render_correlative_base(&correlative_learn(
                &trees,
                depth,
                o.policy(),
            )?)?)
        }
    }
}

fn classify(o: &Opts, kind: &ClassifyCommand) -> CmdResult {
    match kind {
        ClassifyCommand::Spectral { base, tree } => {
            let base = parse_spectral_base(&read_text(base)?)?;
            let f = read_tree(tree)?;
            let v = attributes_of(&frame_of(o, &f)?)?;
            Ok(spectral_classify(&base, &v)
                .iter()
                .map(|l| format!("{l}\n"))
                .collect())
        }
        ClassifyCommand::Correlative { base, tree } => {
            let base = parse_correlative_base(&read_text(base)?)?;
            let f = read_tree(tree)?;
            if f.depth.dims() != base.depth.dims() {
                return Err(input("query and base differ in dimension"));
            }
            let (label, score) = correlative_classify(&base, &f.tree)?;
            Ok(format!("{label} {score}\n"))
        }
    }
}

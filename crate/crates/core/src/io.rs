//! Text formats: tree codes, leaf codes, tree files, point lists, matrices,
//! moment listings, adjacency graphs and learned bases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::builder::{add_real_vector, add_with_growth, RefBox};
use crate::error::{Error, Result};
use crate::geometry::HomogeneousMatrix;
use crate::moments::{MomentList, ScalePolicy};
use crate::recognition::{CorrelativeBase, SpectralBase};
use crate::segmentation::AdjacencyGraph;
use crate::tree::{CellPath, Color, Decorated, Depth, Shape, Tree, MAX_LEVELS};

/// Pre-order code: `0` white terminal, `1` black terminal, `2` internal
/// node followed by its left and right codes.
pub fn encode_tree(t: &Tree) -> String {
    fn rec(t: &Tree, out: &mut String) {
        match t {
            Tree::Leaf(Color::White) => out.push('0'),
            Tree::Leaf(Color::Black) => out.push('1'),
            Tree::Node(l, r) => {
                out.push('2');
                rec(l, out);
                rec(r, out);
            }
        }
    }
    let mut out = String::new();
    rec(t, &mut out);
    out
}

fn encode_shape<T>(t: &Decorated<T>, out: &mut String) {
    match &t.shape {
        Shape::Leaf(Color::White) => out.push('0'),
        Shape::Leaf(Color::Black) => out.push('1'),
        Shape::Node(l, r) => {
            out.push('2');
            encode_shape(l, out);
            encode_shape(r, out);
        }
    }
}

/// Parses a pre-order code exactly as written, without merging.
pub fn decode_tree(code: &str) -> Result<Tree> {
    fn rec(bytes: &[u8], pos: &mut usize, level: u32) -> Result<Tree> {
        let Some(&c) = bytes.get(*pos) else {
            return Err(Error::parse(1, "tree code ends early"));
        };
        *pos += 1;
        match c {
            b'0' => Ok(Tree::white()),
            b'1' => Ok(Tree::black()),
            b'2' if level < MAX_LEVELS => {
                let l = rec(bytes, pos, level + 1)?;
                let r = rec(bytes, pos, level + 1)?;
                Ok(Tree::Node(Box::new(l), Box::new(r)))
            }
            b'2' => Err(Error::parse(
                1,
                format!("tree deeper than {MAX_LEVELS} levels"),
            )),
            other => Err(Error::parse(
                1,
                format!("unexpected {:?} at offset {}", other as char, *pos - 1),
            )),
        }
    }
    let bytes = code.trim_end().as_bytes();
    let mut pos = 0;
    let t = rec(bytes, &mut pos, 0)?;
    if pos != bytes.len() {
        return Err(Error::parse(
            1,
            format!("trailing characters after offset {pos}"),
        ));
    }
    Ok(t)
}

fn decode_shape(code: &str, line: usize) -> Result<Decorated<BTreeSet<u32>>> {
    let t = decode_tree(code).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(line, message),
        other => other,
    })?;
    Ok(Decorated::from_tree(&t))
}

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn check_leaf_dims(depth: Depth) -> Result<()> {
    let k = depth.dims();
    if k == 0 || k > 5 {
        return Err(Error::Unsupported(format!("leaf codes in {k} dimensions")));
    }
    Ok(())
}

/// Codes of the black leaves, one digit per group of `k` levels (bit `j`
/// of a digit is the turn on axis `j`) and a trailing `X` for leaves above
/// full precision. A leaf ending inside a group is listed once per way of
/// completing the group. Sorted.
pub fn encode_leaves(t: &Tree, depth: Depth) -> Result<Vec<String>> {
    check_leaf_dims(depth)?;
    let k = depth.dims();
    let r = depth.precision() as usize;
    fn rec(t: &Tree, path: &mut Vec<bool>, depth: Depth, out: &mut Vec<Vec<bool>>) {
        match t {
            Tree::Leaf(Color::White) => {}
            Tree::Leaf(Color::Black) => out.push(path.clone()),
            Tree::Node(..) if path.len() as u32 == depth.levels() => out.push(path.clone()),
            Tree::Node(l, rt) => {
                path.push(false);
                rec(l, path, depth, out);
                path.pop();
                path.push(true);
                rec(rt, path, depth, out);
                path.pop();
            }
        }
    }
    let mut leaves = Vec::new();
    rec(t, &mut Vec::new(), depth, &mut leaves);
    let mut codes = Vec::new();
    for path in leaves {
        let groups = path.len().div_ceil(k);
        let fixed = path.len() % k;
        let free = if fixed == 0 { 0 } else { k - fixed };
        for completion in 0..1usize << free {
            let mut code = String::with_capacity(groups + 1);
            for g in 0..groups {
                let mut digit = 0;
                for j in 0..k {
                    let bit = match path.get(g * k + j) {
                        Some(&b) => b as usize,
                        None => (completion >> (j - fixed)) & 1,
                    };
                    digit |= bit << j;
                }
                code.push(DIGITS[digit] as char);
            }
            if groups < r {
                code.push('X');
            }
            codes.push(code);
        }
    }
    codes.sort();
    Ok(codes)
}

/// Rebuilds the canonical tree of a leaf-code list.
pub fn decode_leaves<S: AsRef<str>>(codes: &[S], depth: Depth) -> Result<Tree> {
    check_leaf_dims(depth)?;
    let k = depth.dims();
    let r = depth.precision() as usize;
    fn blacken(t: Tree, path: &[bool]) -> Tree {
        let Some((&right, rest)) = path.split_first() else {
            return Tree::black();
        };
        if t.is_black() {
            return t;
        }
        let (l, r) = match t {
            Tree::Node(l, r) => (*l, *r),
            Tree::Leaf(c) => (Tree::Leaf(c), Tree::Leaf(c)),
        };
        if right {
            Tree::join(l, blacken(r, rest))
        } else {
            Tree::join(blacken(l, rest), r)
        }
    }
    let mut t = Tree::white();
    for (n, code) in codes.iter().enumerate() {
        let code = code.as_ref();
        let (digits, early) = match code.strip_suffix('X') {
            Some(d) => (d, true),
            None => (code, false),
        };
        let ok_len = if early {
            digits.len() < r
        } else {
            digits.len() == r
        };
        if !ok_len {
            return Err(Error::parse(
                n + 1,
                format!("leaf code {code:?} has the wrong length"),
            ));
        }
        let mut path = Vec::with_capacity(digits.len() * k);
        for c in digits.chars() {
            let d = c
                .to_digit(36)
                .filter(|&d| d < 1 << k && !c.is_ascii_uppercase())
                .ok_or_else(|| {
                    Error::parse(n + 1, format!("bad digit {c:?} in leaf code {code:?}"))
                })?;
            path.extend((0..k).map(|j| (d >> j) & 1 == 1));
        }
        t = blacken(t, &path);
    }
    Ok(t)
}

/// A tree with its grid and reference box, stored as three lines: `k r`,
/// the box minima then maxima, and the tree code.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeFile {
    pub depth: Depth,
    pub bounds: RefBox,
    pub tree: Tree,
}

impl TreeFile {
    /// A tree over the unit box.
    pub fn unit(depth: Depth, tree: Tree) -> TreeFile {
        TreeFile {
            depth,
            bounds: RefBox::unit(depth.dims()),
            tree,
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("{} {}\n", self.depth.dims(), self.depth.precision());
        s.push_str(&join_reals(self.bounds.min.iter().chain(&self.bounds.max)));
        s.push('\n');
        s.push_str(&encode_tree(&self.tree));
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<TreeFile> {
        let mut lines = text.lines();
        let head = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let depth = parse_header(head, 1)?;
        let k = depth.dims();
        let reals = parse_reals(
            lines
                .next()
                .ok_or_else(|| Error::parse(2, "missing bounds"))?,
            2,
        )?;
        if reals.len() != 2 * k {
            return Err(Error::parse(
                2,
                format!("expected {} bounds, found {}", 2 * k, reals.len()),
            ));
        }
        let bounds = RefBox {
            min: reals[..k].to_vec(),
            max: reals[k..].to_vec(),
        };
        let code = lines
            .next()
            .ok_or_else(|| Error::parse(3, "missing tree code"))?;
        let tree = decode_tree(code.trim()).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(3, message),
            other => other,
        })?;
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::parse(4, format!("unexpected content {extra:?}")));
        }
        Ok(TreeFile {
            depth,
            bounds,
            tree,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<TreeFile> {
        TreeFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.render())?)
    }
}

fn parse_header(line: &str, n: usize) -> Result<Depth> {
    let nums: Vec<&str> = line.split_whitespace().collect();
    let [k, r] = nums[..] else {
        return Err(Error::parse(n, "expected \"k r\""));
    };
    let k: u32 = k
        .parse()
        .map_err(|_| Error::parse(n, format!("bad dimension {k:?}")))?;
    let r: u32 = r
        .parse()
        .map_err(|_| Error::parse(n, format!("bad precision {r:?}")))?;
    Depth::new(k, r)
}

fn join_reals<'a>(xs: impl Iterator<Item = &'a f64>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Numbers of one line, separated by whitespace and/or commas.
fn parse_reals(line: &str, n: usize) -> Result<Vec<f64>> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|f| !f.is_empty())
        .map(|f| {
            let x: f64 = f
                .parse()
                .map_err(|_| Error::parse(n, format!("not a number: {f:?}")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::parse(n, format!("non-finite value {f:?}")))
            }
        })
        .collect()
}

/// How point coordinates map to the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointMode {
    /// Coordinates already in `[0,1)`.
    Fixed,
    /// Any coordinates; the reference box grows to hold them.
    Inductive,
}

/// Builds a tree from rows of `k` numbers. Blank lines and lines starting
/// with `#` are skipped.
pub fn ingest_points(text: &str, depth: Depth, mode: PointMode) -> Result<(Tree, RefBox)> {
    let k = depth.dims();
    let mut tree = Tree::white();
    let mut bounds: Option<RefBox> = None;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let v = parse_reals(trimmed, n)?;
        if v.len() != k {
            return Err(Error::parse(
                n,
                format!("expected {k} columns, found {}", v.len()),
            ));
        }
        match mode {
            PointMode::Fixed => {
                if let Some(x) = v.iter().find(|x| !(0.0..1.0).contains(*x)) {
                    return Err(Error::parse(n, format!("value {x} outside [0, 1)")));
                }
                tree = add_real_vector(tree, &v, depth)?;
            }
            PointMode::Inductive => {
                let b = match bounds.take() {
                    Some(b) => b,
                    None => RefBox::around(&v)?,
                };
                let (t, grown) = add_with_growth(tree, &b, &v, depth)?;
                tree = t;
                bounds = Some(grown);
            }
        }
    }
    Ok((tree, bounds.unwrap_or_else(|| RefBox::unit(k))))
}

pub fn ingest_points_file(
    path: impl AsRef<Path>,
    depth: Depth,
    mode: PointMode,
) -> Result<(Tree, RefBox)> {
    ingest_points(&std::fs::read_to_string(path)?, depth, mode)
}

/// Row-major `(k+1)^2` homogeneous matrix, numbers separated by whitespace
/// or commas over any number of lines.
pub fn parse_matrix(text: &str, dims: usize) -> Result<HomogeneousMatrix> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        entries.extend(parse_reals(line, i + 1)?);
    }
    HomogeneousMatrix::from_row_slice(dims, &entries)
}

pub fn format_matrix(m: &HomogeneousMatrix) -> String {
    let n = m.dims() + 1;
    let entries = m.row_major();
    let mut s = String::new();
    for row in entries.chunks(n) {
        s.push_str(&join_reals(row.iter()));
        s.push('\n');
    }
    s
}

/// `i j m value` lines, axes from 1 and 0 for unused slots.
pub fn format_moments(m: &MomentList) -> String {
    let mut s = String::new();
    for ([i, j, l], v) in m.iter() {
        let _ = writeln!(s, "{i} {j} {l} {v}");
    }
    s
}

/// One `pathA pathB` line per edge.
pub fn format_graph(g: &AdjacencyGraph) -> String {
    let mut s = String::new();
    for &(a, b) in &g.edges {
        let _ = writeln!(s, "{} {}", g.cells[a], g.cells[b]);
    }
    s
}

/// `id name` lines, ids from 1.
pub fn format_label_table(labels: &[String]) -> String {
    let mut s = String::new();
    for (i, name) in labels.iter().enumerate() {
        let _ = writeln!(s, "{} {}", i + 1, name);
    }
    s
}

/// Inverse of [`format_label_table`]; ids must run 1, 2, ... in order.
pub fn parse_label_table(text: &str) -> Result<Vec<String>> {
    parse_label_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

fn parse_label_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Vec<String>> {
    let mut labels = Vec::new();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (id, name) = line
            .split_once(' ')
            .ok_or_else(|| Error::parse(n, "expected \"id name\""))?;
        if id.parse::<usize>().ok() != Some(labels.len() + 1) || name.is_empty() {
            return Err(Error::parse(n, format!("bad label entry {line:?}")));
        }
        labels.push(name.to_string());
    }
    Ok(labels)
}

fn check_label(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(['\n', '\r']) {
        return Err(Error::Unsupported(format!("label {name:?}")));
    }
    Ok(())
}

/// Spectral base file:
///
/// ```text
/// spectral <dims> <r_learn>
/// <bounds minima then maxima>
/// <tree code>
/// labels <n>
/// <id name>            n lines
/// <cell path> <ids>    one line per labeled cell, ids comma separated
/// ```
pub fn render_spectral_base(base: &SpectralBase) -> Result<String> {
    let mut s = format!(
        "spectral {} {}\n",
        base.depth.dims(),
        base.depth.precision()
    );
    s.push_str(&join_reals(base.bounds.min.iter().chain(&base.bounds.max)));
    s.push('\n');
    encode_shape(&base.tree, &mut s);
    s.push('\n');
    for name in &base.labels {
        check_label(name)?;
    }
    let _ = writeln!(s, "labels {}", base.labels.len());
    s.push_str(&format_label_table(&base.labels));
    fn cells(t: &Decorated<BTreeSet<u32>>, path: CellPath, s: &mut String) {
        if let Some(ids) = &t.value {
            let ids: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(s, "{} {}", path, ids.join(","));
        }
        if let Shape::Node(l, r) = &t.shape {
            cells(l, path.push(false), s);
            cells(r, path.push(true), s);
        }
    }
    cells(&base.tree, CellPath::ROOT, &mut s);
    Ok(s)
}

pub fn parse_spectral_base(text: &str) -> Result<SpectralBase> {
    let lines: Vec<&str> = text.lines().collect();
    let line = |i: usize| {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| Error::parse(i + 1, "unexpected end of file"))
    };
    let depth = parse_header(
        line(0)?
            .strip_prefix("spectral ")
            .ok_or_else(|| Error::parse(1, "not a spectral base"))?,
        1,
    )?;
    let k = depth.dims();
    let reals = parse_reals(line(1)?, 2)?;
    if reals.len() != 2 * k {
        return Err(Error::parse(
            2,
            format!("expected {} bounds, found {}", 2 * k, reals.len()),
        ));
    }
    let bounds = RefBox {
        min: reals[..k].to_vec(),
        max: reals[k..].to_vec(),
    };
    let mut tree = decode_shape(line(2)?.trim(), 3)?;
    let count: usize = line(3)?
        .strip_prefix("labels ")
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| Error::parse(4, "expected \"labels <n>\""))?;
    let label_end = 4 + count;
    if lines.len() < label_end {
        return Err(Error::parse(lines.len() + 1, "label table ends early"));
    }
    let labels = parse_label_lines((4..label_end).map(|i| (i + 1, lines[i])))?;
    if labels.len() != count {
        return Err(Error::parse(4, "label count mismatch"));
    }
    for (i, entry) in lines.iter().enumerate().skip(label_end) {
        if entry.trim().is_empty() {
            continue;
        }
        let n = i + 1;
        let (path, ids) = entry
            .split_once(' ')
            .ok_or_else(|| Error::parse(n, "expected \"path ids\""))?;
        let path: CellPath = path
            .parse()
            .map_err(|_| Error::parse(n, format!("bad path {path:?}")))?;
        let mut set = BTreeSet::new();
        for id in ids.split(',') {
            match id.trim().parse::<u32>() {
                Ok(id) if id >= 1 && id as usize <= count => {
                    set.insert(id);
                }
                _ => return Err(Error::parse(n, format!("bad label id {id:?}"))),
            }
        }
        let mut node = &mut tree;
        for right in path.turns() {
            node = match &mut node.shape {
                Shape::Node(l, r) => {
                    if right {
                        r
                    } else {
                        l
                    }
                }
                Shape::Leaf(_) => {
                    return Err(Error::parse(n, format!("path {path} leaves the tree")))
                }
            };
        }
        node.value = Some(set);
    }
    Ok(SpectralBase {
        depth,
        bounds,
        tree,
        labels,
    })
}

fn policy_name(p: ScalePolicy) -> &'static str {
    match p {
        ScalePolicy::Sqrt => "sqrt",
        ScalePolicy::Linear => "linear",
        ScalePolicy::Annex => "annex",
    }
}

/// Correlative base file: a `correlative <k> <r> <policy>` header, then for
/// each label a `class <name>` line followed by its tree code.
pub fn render_correlative_base(base: &CorrelativeBase) -> Result<String> {
    let mut s = format!(
        "correlative {} {} {}\n",
        base.depth.dims(),
        base.depth.precision(),
        policy_name(base.policy)
    );
    for (name, t) in &base.classes {
        check_label(name)?;
        let _ = writeln!(s, "class {name}");
        s.push_str(&encode_tree(t));
        s.push('\n');
    }
    Ok(s)
}

pub fn parse_correlative_base(text: &str) -> Result<CorrelativeBase> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, head) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let fields: Vec<&str> = head.split_whitespace().collect();
    let ["correlative", k, r, policy] = fields[..] else {
        return Err(Error::parse(1, "not a correlative base"));
    };
    let depth = parse_header(&format!("{k} {r}"), 1)?;
    let policy: ScalePolicy = policy
        .parse()
        .map_err(|_| Error::parse(1, format!("bad policy {policy:?}")))?;
    let mut classes = BTreeMap::new();
    while let Some((n, line)) = lines.next() {
        if line.trim().is_empty() {
            continue;
        }
        let name = line
            .strip_prefix("class ")
            .ok_or_else(|| Error::parse(n, "expected \"class <name>\""))?;
        let (m, code) = lines
            .next()
            .ok_or_else(|| Error::parse(n + 1, "missing tree code"))?;
        let t = decode_tree(code.trim()).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(m, message),
            other => other,
        })?;
        classes.insert(name.to_string(), t);
    }
    Ok(CorrelativeBase {
        depth,
        policy,
        classes,
    })
}

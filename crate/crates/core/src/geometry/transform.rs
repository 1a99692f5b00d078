//! Homographic transformation of trees.
//!
//! The transform is given by its polytope `P`, the inverse image of the
//! unit hypercube. Halving `P` recursively yields the inverse images of the
//! output cells, so each output node is decided by comparing the source
//! blocks against the matching piece of `P`, without ever mapping a source
//! block forward.

use crate::error::Result;
use crate::geometry::polytope::{
    intersect_convex, polytope_tree, split, HomogeneousMatrix, Polytope,
};
use crate::tree::{Color, Decorated, Depth, Shape, Tree};

/// Image of `t` through the homography whose polytope is `p`. The source is
/// analysed at `r_analysis`, the output built at `r_build`.
pub fn homographic_transform(
    t: &Tree,
    p: &Polytope,
    dims: u32,
    r_analysis: u32,
    r_build: u32,
) -> Result<Tree> {
    let analysis = Depth::new(dims, r_analysis)?;
    let build = Depth::new(dims, r_build)?;
    analysis.check_dims(p.dims())?;
    let guide = polytope_tree(p, analysis)?;
    let mut out = Tree::white();
    analyse(
        t,
        &guide,
        &Polytope::unit(p.dims()),
        0,
        analysis,
        &mut |block| scatter(&mut out, p, block, 0, build),
    );
    Ok(out.canonicalize())
}

/// Same image as [`homographic_transform`], computed from the matrix. The
/// pieces of `P` are cached on the output nodes so each is split once.
pub fn homographic_transform_fast(
    t: &Tree,
    m: &HomogeneousMatrix,
    r_analysis: u32,
    r_build: u32,
) -> Result<Tree> {
    let p = crate::geometry::polytope::transform_polytope_of(m)?;
    let dims = p.dims() as u32;
    let analysis = Depth::new(dims, r_analysis)?;
    let build = Depth::new(dims, r_build)?;
    let guide = polytope_tree(&p, analysis)?;
    let mut out: Decorated<Polytope> = Decorated::leaf(Color::White);
    out.value = Some(p);
    analyse(
        t,
        &guide,
        &Polytope::unit(dims as usize),
        0,
        analysis,
        &mut |block| scatter_cached(&mut out, block, 0, build),
    );
    Ok(out.devaluate())
}

/// Walks the source tree alongside the polytope tree and hands every black
/// source block lying (partly) inside `P` to `emit`.
fn analyse(
    src: &Tree,
    guide: &Tree,
    block: &Polytope,
    level: u32,
    depth: Depth,
    emit: &mut impl FnMut(&Polytope),
) {
    if src.is_white() || guide.is_white() {
        return;
    }
    if level == depth.levels() || (src.is_terminal() && guide.is_terminal()) {
        emit(block);
        return;
    }
    let (sl, sr) = src.children();
    let (gl, gr) = guide.children();
    let (bl, br) = split(block, depth.axis(level));
    analyse(sl, gl, &bl, level + 1, depth, emit);
    analyse(sr, gr, &br, level + 1, depth, emit);
}

/// Blackens the output cells whose inverse image `piece` meets `block`.
fn scatter(node: &mut Tree, piece: &Polytope, block: &Polytope, level: u32, depth: Depth) {
    if node.is_black() {
        return;
    }
    let ov = intersect_convex(block, piece);
    if !ov.intersects {
        return;
    }
    if level == depth.levels() || ov.second_in_first {
        *node = Tree::black();
        return;
    }
    let (pl, pr) = split(piece, depth.axis(level));
    let (l, r) = node.children_mut();
    scatter(l, &pl, block, level + 1, depth);
    scatter(r, &pr, block, level + 1, depth);
    node.merge_in_place();
}

fn scatter_cached(node: &mut Decorated<Polytope>, block: &Polytope, level: u32, depth: Depth) {
    if node.color() == Some(Color::Black) {
        return;
    }
    let piece = node
        .value
        .as_ref()
        .expect("output nodes carry their polytope");
    let ov = intersect_convex(block, piece);
    if !ov.intersects {
        return;
    }
    if level == depth.levels() || ov.second_in_first {
        node.shape = Shape::Leaf(Color::Black);
        return;
    }
    if node.is_terminal() {
        let (pl, pr) = split(piece, depth.axis(level));
        node.fission();
        if let Shape::Node(l, r) = &mut node.shape {
            l.value = Some(pl);
            r.value = Some(pr);
        }
    }
    if let Shape::Node(l, r) = &mut node.shape {
        scatter_cached(l, block, level + 1, depth);
        scatter_cached(r, block, level + 1, depth);
        // black sons no longer need their pieces
        if l.color() == Some(Color::Black) && r.color() == Some(Color::Black) {
            node.shape = Shape::Leaf(Color::Black);
        }
    }
}

mod common;

use common::*;
use hypertree::geometry::{
    homographic_transform, homographic_transform_fast, intersect_convex, polytope_tree, project,
    remove_hidden, split, symmetry_tree, transform_polytope_of, HomogeneousMatrix, Polytope,
};
use hypertree::{assert_tree, union, Depth, Tree};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid_and_tree(seed: u64, k: usize, r: u32) -> (Grid, Tree) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = Depth::new(k as u32, r).unwrap();
    let t = random_tree(&mut rng, d);
    (expand(&t, k, r), t)
}

proptest! {
    #[test]
    fn reflections_match_the_grid(seed in any::<u64>(), flags in prop::collection::vec(any::<bool>(), 3)) {
        let (g, t) = grid_and_tree(seed, 3, 2);
        let d = Depth::new(3, 2).unwrap();
        let mut want = Grid::empty(3, 2);
        for c in g.black_coords() {
            let m: Vec<usize> = c.iter().zip(&flags).map(|(&x, &f)| if f { 3 - x } else { x }).collect();
            want.set(&m, true);
        }
        let got = symmetry_tree(&t, &flags, d).unwrap();
        prop_assert_eq!(&got, &tree_from_grid(&want));
        prop_assert_eq!(symmetry_tree(&got, &flags, d).unwrap(), t);
    }

    #[test]
    fn hidden_removal_keeps_first_cells(seed in any::<u64>(), axis in 0..3usize) {
        let (g, t) = grid_and_tree(seed, 3, 2);
        let d = Depth::new(3, 2).unwrap();
        let mut want = Grid::empty(3, 2);
        for c in g.black_coords() {
            let hidden = (0..c[axis]).any(|y| {
                let mut e = c.clone();
                e[axis] = y;
                g.get(&e)
            });
            if !hidden {
                want.set(&c, true);
            }
        }
        prop_assert_eq!(remove_hidden(&t, axis, d).unwrap(), tree_from_grid(&want));
    }

    #[test]
    fn projection_matches_the_grid(seed in any::<u64>(), axis in 0..3usize) {
        let (g, t) = grid_and_tree(seed, 3, 2);
        let d = Depth::new(3, 2).unwrap();
        let mut want = Grid::empty(2, 2);
        for c in g.black_coords() {
            let rest: Vec<usize> = (0..3).filter(|&a| a != axis).map(|a| c[a]).collect();
            want.set(&rest, true);
        }
        prop_assert_eq!(project(&t, axis, d).unwrap(), tree_from_grid(&want));
    }

    #[test]
    fn halves_tile_the_polytope(angle in 0.0..6.3f64, s in 0.3..1.4f64, axis in 0..2usize) {
        let m = similarity(angle, s, [0.1, -0.05]);
        let p = transform_polytope_of(&m).unwrap();
        let (l, r) = split(&p, axis);
        // the halves of the image-space split are the preimages of the
        // unit-cube halves
        let inv = m.inverse().unwrap();
        for (i, v) in l.vertices().enumerate() {
            let mut corner: Vec<f64> = (0..2).map(|a| (i >> a & 1) as f64).collect();
            corner[axis] *= 0.5;
            let want = inv.apply(&corner).unwrap();
            prop_assert!((v[0] - want[0]).abs() < 1e-12 && (v[1] - want[1]).abs() < 1e-12);
        }
        for (i, v) in r.vertices().enumerate() {
            let mut corner: Vec<f64> = (0..2).map(|a| (i >> a & 1) as f64).collect();
            corner[axis] = 0.5 + 0.5 * corner[axis];
            let want = inv.apply(&corner).unwrap();
            prop_assert!((v[0] - want[0]).abs() < 1e-12 && (v[1] - want[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn fast_and_slow_agree_across_precisions(seed in any::<u64>(), angle in 0.0..6.3f64, s in 0.5..1.5f64,
                                             ra in 2..=4u32, rb in 2..=4u32) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(&mut rng, Depth::new(2, ra).unwrap());
        let m = similarity(angle, s, [0.05, 0.1]);
        let p = transform_polytope_of(&m).unwrap();
        prop_assert_eq!(
            homographic_transform_fast(&t, &m, ra, rb).unwrap(),
            homographic_transform(&t, &p, 2, ra, rb).unwrap()
        );
    }

    #[test]
    fn transforms_distribute_over_union(seed in any::<u64>(), angle in 0.0..6.3f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = Depth::new(2, 3).unwrap();
        let a = random_tree(&mut rng, d);
        let b = random_tree(&mut rng, d);
        let m = similarity(angle, 0.9, [0.0, 0.0]);
        let ta = homographic_transform_fast(&a, &m, 3, 3).unwrap();
        let tb = homographic_transform_fast(&b, &m, 3, 3).unwrap();
        let tu = homographic_transform_fast(&union(&a, &b, d), &m, 3, 3).unwrap();
        prop_assert_eq!(tu, union(&ta, &tb, d));
    }
}

fn similarity(angle: f64, s: f64, shift: [f64; 2]) -> HomogeneousMatrix {
    let (c, sn) = (angle.cos(), angle.sin());
    let m = HomogeneousMatrix::from_row_slice(
        2,
        &[s * c, -s * sn, 0.0, s * sn, s * c, 0.0, 0.0, 0.0, 1.0],
    )
    .unwrap();
    HomogeneousMatrix::translation(&shift).then_after(&m.about(&[0.5, 0.5]))
}

#[test]
fn doubling_scale_matches_the_grid() {
    // x -> 2x sends cell (i, j) of the lower-left quadrant onto the 2x2
    // block at (2i, 2j)
    let (g, t) = grid_and_tree(5, 2, 3);
    let m = HomogeneousMatrix::scaling(&[2.0, 2.0]);
    let got = homographic_transform_fast(&t, &m, 3, 3).unwrap();
    let mut want = Grid::empty(2, 3);
    for c in g.black_coords() {
        if c[0] < 4 && c[1] < 4 {
            for q in 0..4 {
                want.set(&[2 * c[0] + q % 2, 2 * c[1] + q / 2], true);
            }
        }
    }
    assert_eq!(got, tree_from_grid(&want));
}

#[test]
fn coarser_output_is_the_hull() {
    let (_, t) = grid_and_tree(6, 2, 4);
    let id = HomogeneousMatrix::identity(2);
    let coarse = homographic_transform_fast(&t, &id, 4, 2).unwrap();
    assert_eq!(coarse, assert_tree(&t, Depth::new(2, 2).unwrap()));
}

#[test]
fn perspective_matrix_keeps_working() {
    // a mild projective map with positive weight over the unit square
    let m = HomogeneousMatrix::from_row_slice(2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.2, 0.1, 1.0])
        .unwrap();
    let p = transform_polytope_of(&m).unwrap();
    let (_, t) = grid_and_tree(7, 2, 3);
    let fast = homographic_transform_fast(&t, &m, 3, 3).unwrap();
    let slow = homographic_transform(&t, &p, 2, 3, 3).unwrap();
    assert_eq!(fast, slow);
    // the full square maps into itself
    assert!(polytope_tree(&p, Depth::new(2, 4).unwrap())
        .unwrap()
        .is_black());
}

#[test]
fn overlap_flags() {
    let a = Polytope::aabb(&[0.0, 0.0], &[0.5, 0.5]);
    let inner = Polytope::aabb(&[0.1, 0.1], &[0.2, 0.3]);
    let touching = Polytope::aabb(&[0.5, 0.0], &[1.0, 0.5]);
    let ov = intersect_convex(&a, &inner);
    assert!(ov.intersects && ov.second_in_first && !ov.first_in_second);
    let ov = intersect_convex(&inner, &a);
    assert!(ov.intersects && ov.first_in_second && !ov.second_in_first);
    let ov = intersect_convex(&a, &touching);
    assert!(!ov.intersects && !ov.first_in_second && !ov.second_in_first);
    assert!(intersect_convex(&a, &a).first_in_second);
}

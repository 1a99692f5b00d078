mod common;

use std::collections::BTreeSet;

use common::*;
use hypertree::segmentation::{label_components, search_adjacencies, segment_forest, Metric};
use hypertree::{intersect, union, Depth, Tree};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Unit cells covered by the node at `path` (an `L`/`R` string).
fn cells_of(path: &str, k: usize, r: u32) -> Vec<Vec<usize>> {
    let mut lo = vec![0usize; k];
    let mut size = vec![1usize << r; k];
    for (level, turn) in path.chars().enumerate() {
        let a = level % k;
        size[a] /= 2;
        if turn == 'R' {
            lo[a] += size[a];
        }
    }
    let mut out = vec![vec![]];
    for a in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (lo[a]..lo[a] + size[a]).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn touching(a: &[Vec<usize>], b: &[Vec<usize>], diagonal: bool) -> bool {
    a.iter().any(|p| {
        b.iter().any(|q| {
            let d: Vec<usize> = p.iter().zip(q).map(|(&x, &y)| x.abs_diff(y)).collect();
            let cheb = d.iter().copied().max().unwrap_or(0);
            let manh: usize = d.iter().sum();
            if diagonal {
                cheb == 1
            } else {
                manh == 1
            }
        })
    })
}

fn tree(seed: u64, k: u32, r: u32) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree(&mut rng, Depth::new(k, r).unwrap())
}

proptest! {
    #[test]
    fn edges_match_brute_force(seed in any::<u64>(), k in 1..=3u32, r in 1..=2u32) {
        let d = Depth::new(k, r).unwrap();
        let t = tree(seed, k, r);
        for (metric, diagonal) in [(Metric::D1, false), (Metric::Dinf, true)] {
            let g = search_adjacencies(&t, metric, d);
            let blocks: Vec<_> = g.cells.iter().map(|c| {
                let s = c.to_string();
                cells_of(if s == "-" { "" } else { &s }, k as usize, r)
            }).collect();
            let mut want = BTreeSet::new();
            for i in 0..blocks.len() {
                for j in i + 1..blocks.len() {
                    if touching(&blocks[i], &blocks[j], diagonal) {
                        want.insert((i, j));
                    }
                }
            }
            prop_assert_eq!(&g.edges, &want);
        }
    }

    #[test]
    fn d1_edges_are_dinf_edges(seed in any::<u64>()) {
        let d = Depth::new(2, 4).unwrap();
        let t = tree(seed, 2, 4);
        let g1 = search_adjacencies(&t, Metric::D1, d);
        let gi = search_adjacencies(&t, Metric::Dinf, d);
        prop_assert_eq!(&g1.cells, &gi.cells);
        prop_assert!(g1.edges.is_subset(&gi.edges));
        prop_assert!(gi.edges.iter().all(|&(a, b)| a < b));
    }

    #[test]
    fn forest_partitions_the_tree(seed in any::<u64>(), k in 2..=3u32) {
        let r = if k == 2 { 4 } else { 2 };
        let d = Depth::new(k, r).unwrap();
        let t = tree(seed, k, r);
        for metric in [Metric::D1, Metric::Dinf] {
            let (lt, n) = label_components(&t, metric, d);
            let forest = segment_forest(&lt, n);
            prop_assert_eq!(forest.len(), n as usize);
            let mut all = Tree::white();
            for (i, a) in forest.iter().enumerate() {
                prop_assert!(a.is_canonical());
                prop_assert!(!a.is_white());
                for b in &forest[i + 1..] {
                    prop_assert!(intersect(a, b, d).is_white());
                }
                all = union(&all, a, d);
            }
            prop_assert_eq!(&all, &t);
            // the oracle's partition, in three dimensions as well
            let (want, m) = flood_fill(&expand(&t, k as usize, r), metric == Metric::Dinf);
            prop_assert_eq!(m, n as usize);
            prop_assert!(same_partition(&want, &expand_labels(&lt, k as usize, r)));
        }
    }
}

#[test]
fn labels_follow_depth_first_order() {
    let d = Depth::new(2, 3).unwrap();
    let t = tree_of(2, 3, &[vec![7, 7], vec![0, 0], vec![3, 4]]);
    let (lt, n) = label_components(&t, Metric::Dinf, d);
    assert_eq!(n, 3);
    let labels = expand_labels(&lt, 2, 3);
    let at = |x: usize, y: usize| labels[y * 8 + x];
    assert_eq!((at(0, 0), at(3, 4), at(7, 7)), (1, 2, 3));
}

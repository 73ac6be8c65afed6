mod common;

use common::{array, range, rng, variants, Shape};
use rand::Rng;
use topk_core::{oracle_distinct_count, oracle_topk, ChunkedTopK, OptimalTopK, QuerySpec, TopKIndex};

fn check(n: usize, sigma: u32, shape: Shape, queries: usize, seed: u64) {
    let mut rng = rng(seed);
    let arr = array(&mut rng, n, sigma, shape);
    let ixs = variants(&arr);
    for _ in 0..queries {
        let (a, b) = range(&mut rng, n);
        let distinct = oracle_distinct_count(&arr, a, b).unwrap();
        let k = match rng.random_range(0..4) {
            0 => rng.random_range(1..=8),
            1 => distinct.max(1),
            2 => rng.random_range(1..=distinct + 1),
            _ => n,
        };
        let q = QuerySpec::new(a, b, k);
        let want = oracle_topk(&arr, q).unwrap();
        for (name, ix) in &ixs {
            assert_eq!(ix.topk(q).unwrap(), want, "{name} {shape:?} n={n} sigma={sigma} q={q:?}");
        }
    }
}

#[test]
fn uniform_medium() {
    check(5_000, 300, Shape::Uniform, 2_000, 1);
}

#[test]
fn skewed_large_alphabet() {
    check(20_000, 4_000, Shape::Skewed, 1_000, 2);
}

#[test]
fn long_runs() {
    check(30_000, 50, Shape::Runs, 1_000, 3);
}

#[test]
fn tiny_alphabet_long_array() {
    check(70_000, 3, Shape::Uniform, 200, 4);
}

#[test]
fn alphabet_larger_than_array() {
    check(2_000, 10_000, Shape::Uniform, 1_000, 5);
}

#[test]
fn optimal_structure_grows_with_n() {
    let mut rng = rng(6);
    let small = OptimalTopK::new(&array(&mut rng, 1 << 10, 64, Shape::Uniform));
    let large = OptimalTopK::new(&array(&mut rng, 1 << 16, 64, Shape::Uniform));
    assert!(large.levels() >= small.levels());
    // strides shrink level by level
    for w in large.strides().windows(2) {
        assert!(w[1] <= w[0], "{:?}", large.strides());
    }
}

#[test]
fn two_colors_use_pieces() {
    check(50_000, 2, Shape::Runs, 500, 8);
    let mut rng = rng(8);
    assert!(ChunkedTopK::new(&array(&mut rng, 50_000, 2, Shape::Runs)).uses_pieces());
}

#[test]
fn chunked_engages_chunks_on_long_arrays() {
    let mut rng = rng(7);
    let arr = array(&mut rng, 60_000, 4, Shape::Uniform);
    let ix = ChunkedTopK::new(&arr);
    assert!(ix.chunk_count() > 1, "chunk_len={}", ix.chunk_len());
    assert!(!ix.uses_pieces());
    let mut out = Vec::new();
    for _ in 0..200 {
        let (a, b) = range(&mut rng, arr.len());
        ix.topk_ranks(a - 1, b - 1, 4, &mut out);
        let want: Vec<u32> = oracle_topk(&arr, QuerySpec::new(a, b, 4))
            .unwrap()
            .entries
            .iter()
            .map(|e| arr.palette().rank_of(e.color))
            .collect();
        assert_eq!(out, want);
    }
}

mod common;

use common::{array, rng, variants, Shape};
use rand::Rng;
use topk_core::{oracle_topk, ColorStream, OptimalTopK, QuerySpec, TopKIndex};

#[test]
fn every_variant_streams_the_full_order() {
    let mut rng = rng(21);
    for shape in [Shape::Uniform, Shape::Skewed, Shape::Runs] {
        let arr = array(&mut rng, 3_000, 200, shape);
        let full = |a, b| oracle_topk(&arr, QuerySpec::new(a, b, arr.sigma())).unwrap().entries;
        for (name, ix) in variants(&arr) {
            for _ in 0..40 {
                let (a, b) = common::range(&mut rng, arr.len());
                let mut s = ColorStream::open(ix.as_ref(), a, b).unwrap();
                let got: Vec<_> = s.by_ref().collect();
                assert_eq!(got, full(a, b), "{name} {shape:?} [{a},{b}]");
                assert!(s.requested() <= 8 * got.len().max(1) + 16);
                assert_eq!(s.next(), None);
            }
        }
    }
}

#[test]
fn early_stop_bounds_work() {
    let mut rng = rng(22);
    let arr = array(&mut rng, 50_000, 5_000, Shape::Uniform);
    let ix = OptimalTopK::new(&arr);
    for _ in 0..200 {
        let (a, b) = common::range(&mut rng, arr.len());
        let stop = rng.random_range(1..=300);
        let mut s = ColorStream::open(&ix, a, b).unwrap();
        let got: Vec<_> = s.by_ref().take(stop).collect();
        assert_eq!(got, oracle_topk(&arr, QuerySpec::new(a, b, stop)).unwrap().entries);
        assert!(s.requested() <= 8 * got.len() + 16, "k={} requested={}", got.len(), s.requested());
    }
}

#[test]
fn open_rejects_bad_ranges() {
    let mut rng = rng(23);
    let arr = array(&mut rng, 10, 3, Shape::Uniform);
    let ix = OptimalTopK::new(&arr);
    assert!(ColorStream::open(&ix, 0, 3).is_err());
    assert!(ColorStream::open(&ix, 4, 3).is_err());
    assert!(ColorStream::open(&ix, 1, 11).is_err());
    assert_eq!(ix.len(), 10);
}

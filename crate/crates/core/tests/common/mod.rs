// shared by several test binaries; not every binary uses every helper
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topk_core::{ChunkedTopK, ColorArray, OptimalTopK, SparseTopK, TopKIndex, WaveletTopK};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub enum Shape {
    Uniform,
    /// Low ids dominate.
    Skewed,
    /// Long runs of one color.
    Runs,
}

pub fn colors(rng: &mut ChaCha8Rng, n: usize, sigma: u32, shape: Shape) -> Vec<u32> {
    match shape {
        Shape::Uniform => (0..n).map(|_| rng.random_range(0..sigma)).collect(),
        Shape::Skewed => (0..n)
            .map(|_| {
                let x: f64 = rng.random();
                ((x * x * x * x) * sigma as f64) as u32 % sigma
            })
            .collect(),
        Shape::Runs => {
            let mut v = Vec::with_capacity(n);
            while v.len() < n {
                let c = rng.random_range(0..sigma);
                let run = rng.random_range(1..=64).min(n - v.len());
                v.extend(std::iter::repeat_n(c, run));
            }
            v
        }
    }
}

pub fn array(rng: &mut ChaCha8Rng, n: usize, sigma: u32, shape: Shape) -> ColorArray {
    let c = colors(rng, n, sigma, shape);
    // small priority pool forces ties
    let p = (0..sigma).map(|_| rng.random_range(1..=sigma as u64 / 2 + 2)).collect();
    ColorArray::from_priorities(c, p).unwrap()
}

pub fn variants(arr: &ColorArray) -> Vec<(&'static str, Box<dyn TopKIndex>)> {
    vec![
        ("wavelet", Box::new(WaveletTopK::new(arr))),
        ("sparse-f2", Box::new(SparseTopK::new(arr, 2).unwrap())),
        ("sparse-f3", Box::new(SparseTopK::new(arr, 3).unwrap())),
        ("optimal", Box::new(OptimalTopK::new(arr))),
        ("chunked", Box::new(ChunkedTopK::new(arr))),
    ]
}

/// A random 1-based range, biased toward short ones half the time.
pub fn range(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let a = rng.random_range(1..=n);
    let b = if rng.random_bool(0.5) {
        (a + rng.random_range(0..64)).min(n)
    } else {
        rng.random_range(a..=n)
    };
    (a, b)
}

mod common;

use common::{colors, rng, Shape};
use rand::Rng;
use topk_core::bits::RankSelectBits;
use topk_core::primitives::ColorRangeIndex;

#[test]
fn rank_select_on_long_vectors() {
    let mut rng = rng(11);
    for density in [0.01, 0.5, 0.97] {
        let bits: Vec<bool> = (0..100_000).map(|_| rng.random_bool(density)).collect();
        let rs = RankSelectBits::from_bools(bits.iter().copied());
        let mut ones = 0;
        for (i, &b) in bits.iter().enumerate() {
            assert_eq!(rs.rank1(i), ones);
            // select is 1-based in both k and the returned position
            if b {
                ones += 1;
                assert_eq!(rs.select1(ones), Some(i + 1));
            } else {
                assert_eq!(rs.select0(i + 1 - ones), Some(i + 1));
            }
        }
        assert_eq!(rs.rank1(bits.len()), ones);
        assert_eq!(rs.count_ones(), ones);
        assert_eq!(rs.select1(ones + 1), None);
        assert_eq!(rs.select1(0), None);
    }
}

#[test]
fn report_and_count_match_scan() {
    let mut rng = rng(12);
    for (n, sigma, shape) in [(40_000, 1_000, Shape::Uniform), (40_000, 20, Shape::Runs), (40_000, 5_000, Shape::Skewed)] {
        let c = colors(&mut rng, n, sigma, shape);
        let ix = ColorRangeIndex::new(&c);
        for _ in 0..500 {
            let (a, b) = common::range(&mut rng, n);
            let mut want: Vec<u32> = c[a - 1..b].to_vec();
            want.sort_unstable();
            want.dedup();
            let mut got = ix.report_colors(a, b).unwrap();
            got.sort_unstable();
            assert_eq!(got, want, "{shape:?} [{a},{b}]");
            assert_eq!(ix.count_colors(a, b).unwrap(), want.len());
            let cap = rng.random_range(1..=want.len() + 1);
            let (part, more) = ix.report_colors_capped(a, b, cap).unwrap();
            assert_eq!(part.len(), cap.min(want.len()));
            assert_eq!(more, cap < want.len());
        }
    }
}

#[test]
fn witnesses_are_first_occurrences() {
    let mut rng = rng(13);
    let c = colors(&mut rng, 10_000, 300, Shape::Skewed);
    let ix = ColorRangeIndex::new(&c);
    let mut w = Vec::new();
    for _ in 0..300 {
        let (a, b) = common::range(&mut rng, c.len());
        w.clear();
        ix.reporter().witnesses(a - 1, b - 1, usize::MAX, &mut w);
        for &p in &w {
            assert!(ix.reporter().pred(p) < a as u64);
            assert!(!c[a - 1..p].contains(&c[p]));
        }
    }
}

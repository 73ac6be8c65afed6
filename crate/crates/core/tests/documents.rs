use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topk_core::docs::relevance::{scored_ranges, Metric};
use topk_core::docs::{oracle_merge, oracle_ranked_list, oracle_t_mine, DocOptions, DocumentCollection, DocumentIndex, RangeHeapMerger};
use topk_core::Error;

fn corpus(rng: &mut ChaCha8Rng, docs: usize, max_len: usize, alphabet: u8) -> DocumentCollection {
    let d = (0..docs)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            (0..len).map(|_| b'a' + rng.random_range(0..alphabet)).collect()
        })
        .collect();
    let ranks = (0..docs).map(|_| rng.random_range(1..=docs as u64)).collect();
    DocumentCollection::new(d, ranks).unwrap()
}

fn pattern(rng: &mut ChaCha8Rng, c: &DocumentCollection, alphabet: u8) -> Vec<u8> {
    let doc = &c.docs()[rng.random_range(0..c.len())];
    if doc.is_empty() || rng.random_ratio(1, 5) {
        let len = rng.random_range(1..=4);
        return (0..len).map(|_| b'a' + rng.random_range(0..alphabet)).collect();
    }
    let s = rng.random_range(0..doc.len());
    let len = rng.random_range(1..=(doc.len() - s).min(8));
    doc[s..s + len].to_vec()
}

#[test]
fn larger_corpora_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (docs, max_len, alphabet) in [(200, 300, 2), (60, 2_000, 4), (500, 40, 26)] {
        let c = corpus(&mut rng, docs, max_len, alphabet);
        let ix = DocumentIndex::with_options(c.clone(), &DocOptions { max_t: Some(16), ..Default::default() }).unwrap();
        for _ in 0..150 {
            let p = pattern(&mut rng, &c, alphabet);
            let k = rng.random_range(1..=docs);
            assert_eq!(ix.ranked_list(&p, k), oracle_ranked_list(&c, &p, k), "{p:?} k={k}");
            for t in [2, 3, 5, 8, 16] {
                assert_eq!(ix.t_mine(&p, t, k).unwrap(), oracle_t_mine(&c, &p, t, k), "{p:?} t={t} k={k}");
            }
        }
        assert!(matches!(ix.t_mine(b"a", 17, 1), Err(Error::UnsupportedT { .. })));
    }
}

#[test]
fn pattern_range_counts_every_occurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let c = corpus(&mut rng, 100, 200, 3);
    let ix = DocumentIndex::new(c.clone()).unwrap();
    for _ in 0..200 {
        let p = pattern(&mut rng, &c, 3);
        let total: usize = c.docs().iter().map(|d| topk_core::docs::count_occurrences(d, &p)).sum();
        match ix.pattern_range(&p) {
            Some((lo, hi)) => assert_eq!(hi + 1 - lo, total),
            None => assert_eq!(total, 0),
        }
    }
}

#[test]
fn relevance_merging_matches_sort() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let c = corpus(&mut rng, 80, 400, 3);
    for metric in [Metric::Freq, Metric::MinDist] {
        for _ in 0..40 {
            let pats: Vec<Vec<u8>> = (0..rng.random_range(1..=5)).map(|_| pattern(&mut rng, &c, 3)).collect();
            let refs: Vec<&[u8]> = pats.iter().map(|p| p.as_slice()).collect();
            let (entries, ranges) = scored_ranges(&c, &refs, metric);
            if entries.is_empty() {
                continue;
            }
            let merger = RangeHeapMerger::new(&entries).unwrap();
            let k = rng.random_range(1..=entries.len() + 2);
            assert_eq!(merger.topk(&ranges, k).unwrap(), oracle_merge(&entries, &ranges, k), "{metric:?}");
        }
    }
}

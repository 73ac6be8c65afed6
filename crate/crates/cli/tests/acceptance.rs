//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topk_cli::stats::StatsReport;
use topk_cli::{Kind, Params, Payload, Snapshot};
use topk_core::docs::{oracle_merge, oracle_ranked_list, oracle_t_mine, DocOptions, DocumentCollection, DocumentIndex, RangeHeapMerger};
use topk_core::{
    oracle_distinct_count, oracle_topk, BuildOptions, ChunkedTopK, ColorArray, ColorStream, OptimalTopK, QuerySpec,
    SparseTopK, TopKIndex, WaveletTopK,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn variants(arr: &ColorArray) -> Vec<(&'static str, Box<dyn TopKIndex>)> {
    vec![
        ("wavelet", Box::new(WaveletTopK::new(arr))),
        ("sparse-f2", Box::new(SparseTopK::new(arr, 2).unwrap())),
        ("sparse-f3", Box::new(SparseTopK::new(arr, 3).unwrap())),
        ("optimal", Box::new(OptimalTopK::new(arr))),
        ("chunked", Box::new(ChunkedTopK::new(arr))),
    ]
}

fn query_sizes(sigma: usize, n: usize) -> Vec<usize> {
    let mut ks = vec![1, 2, (sigma / 2).max(1), n];
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn oracle_ranks(arr: &ColorArray, a: usize, b: usize, k: usize) -> Vec<u32> {
    let list = oracle_topk(arr, QuerySpec::new(a, b, k)).unwrap();
    list.entries.iter().map(|e| arr.palette().rank_of(e.color)).collect()
}

/// Colors drawn uniformly, or skewed toward low ids.
fn random_colors(rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> Vec<u32> {
    let skewed = rng.random_bool(0.5);
    (0..n)
        .map(|_| {
            if skewed {
                let x: f64 = rng.random();
                ((x * x * x) * sigma as f64) as u32 % sigma
            } else {
                rng.random_range(0..sigma)
            }
        })
        .collect()
}

fn random_array(rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> ColorArray {
    let colors = random_colors(rng, n, sigma);
    let prios = (0..sigma).map(|_| rng.random_range(0..1000)).collect();
    ColorArray::from_priorities(colors, prios).unwrap()
}

fn nth_permutation(sigma: usize, mut i: usize) -> Vec<u64> {
    let mut pool: Vec<u64> = (0..sigma as u64).collect();
    let mut out = Vec::with_capacity(sigma);
    for left in (1..=sigma).rev() {
        out.push(pool.remove(i % left));
        i /= left;
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut instances = 0usize;
    let mut queries = 0usize;
    let mut mismatches = 0usize;
    let mut first = None;
    let mut out = Vec::new();

    for sigma in [1usize, 2, 4] {
        let mut count = 0usize;
        'sizes: for n in 1..=64usize {
            let total = (sigma as u128).pow(n as u32);
            for code in 0..total {
                if count == 10_000 {
                    break 'sizes;
                }
                let mut c = code;
                let colors = (0..n)
                    .map(|_| {
                        let d = (c % sigma as u128) as u32;
                        c /= sigma as u128;
                        d
                    })
                    .collect();
                let arr = ColorArray::from_priorities(colors, nth_permutation(sigma, count)).unwrap();
                count += 1;
                for (name, ix) in variants(&arr) {
                    for a in 1..=n {
                        for b in a..=n {
                            for &k in &query_sizes(sigma, n) {
                                queries += 1;
                                ix.topk_ranks(a - 1, b - 1, k, &mut out);
                                if out != oracle_ranks(&arr, a, b, k) {
                                    mismatches += 1;
                                    first.get_or_insert(format!("{name} sigma={sigma} n={n} code={code} ({a},{b},{k})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        instances += count;
    }

    let exhaustive_secs = start.elapsed().as_secs_f64();

    // random arrays: a sweep over b keeps the sorted distinct ranks of
    // [a, b]; samples of it are checked against oracle_topk
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let mut seen = Vec::new();
    let mut sorted: Vec<u32> = Vec::new();
    for _ in 0..1000 {
        let n = rng.random_range(1..=512usize);
        let sigma = rng.random_range(1..=64u32);
        let arr = random_array(&mut rng, n, sigma);
        instances += 1;
        let ks = query_sizes(sigma as usize, n);
        let ixs = variants(&arr);
        for a in 0..n {
            seen.clear();
            seen.resize(sigma as usize, false);
            sorted.clear();
            for b in a..n {
                let r = arr.ranks()[b];
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    let at = sorted.partition_point(|&x| x > r);
                    sorted.insert(at, r);
                }
                let spot_check = rng.random_ratio(1, 64);
                for &k in &ks {
                    let want = &sorted[..k.min(sorted.len())];
                    if spot_check && want != oracle_ranks(&arr, a + 1, b + 1, k) {
                        mismatches += 1;
                        first.get_or_insert(format!("sweep oracle disagrees at ({},{},{k})", a + 1, b + 1));
                    }
                    for (name, ix) in &ixs {
                        queries += 1;
                        ix.topk_ranks(a, b, k, &mut out);
                        if out != want {
                            mismatches += 1;
                            first.get_or_insert(format!("{name} random n={n} sigma={sigma} ({},{},{k})", a + 1, b + 1));
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && elapsed < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "{instances} arrays, {queries} queries, {mismatches} mismatches, {:.1}s ({exhaustive_secs:.1}s exhaustive){}",
            elapsed.as_secs_f64(),
            first.map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut violations = 0usize;
    let mut queries = 0usize;
    let mut first = None;
    while queries < 100_000 {
        let n = rng.random_range(1..=4096usize);
        let sigma = *[2u32, 16, 300, 5000].choose(&mut rng).unwrap();
        let arr = random_array(&mut rng, n, sigma);
        for (name, ix) in variants(&arr) {
            for _ in 0..500 {
                let a = rng.random_range(1..=n);
                let b = rng.random_range(a..=n);
                let k = rng.random_range(1..=sigma as usize + 2);
                queries += 1;
                let list = ix.topk(QuerySpec::new(a, b, k)).unwrap();
                let distinct = oracle_distinct_count(&arr, a, b).unwrap();
                if !list.is_well_formed() || list.len() != k.min(distinct) {
                    violations += 1;
                    first.get_or_insert(format!("{name} n={n} ({a},{b},{k})"));
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{queries} queries, {violations} violations{}",
            first.map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let mut violations = 0usize;
    let mut work_violations = 0usize;
    let mut emitted_total = 0usize;
    let mut out = Vec::new();
    for _ in 0..10 {
        let n = rng.random_range(1000..=6000usize);
        let sigma = rng.random_range(1..=256u32);
        let arr = random_array(&mut rng, n, sigma);
        let ix = OptimalTopK::new(&arr);
        for _ in 0..100 {
            let a = rng.random_range(1..=n);
            let b = rng.random_range(a..=n);
            let mut stream = ColorStream::open(&ix, a, b).unwrap();
            let mut prefix = Vec::new();
            while let Some(r) = stream.next_rank() {
                prefix.push(r);
                let k = prefix.len();
                ix.topk_ranks(a - 1, b - 1, k, &mut out);
                if out != prefix {
                    violations += 1;
                }
                if stream.requested() > 8 * k + 16 {
                    work_violations += 1;
                }
            }
            ix.topk_ranks(a - 1, b - 1, n, &mut out);
            if out.len() != prefix.len() {
                violations += 1;
            }
            emitted_total += prefix.len();
        }
    }
    outcome(
        violations == 0 && work_violations == 0,
        format!("1000 streams, {emitted_total} entries, {violations} prefix violations, {work_violations} work-bound violations"),
    )
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let n = 1usize << 20;
    let sigma = 1u32 << 10;
    let colors = (0..n).map(|_| rng.random_range(0..sigma)).collect();
    let prios = (0..sigma as u64).map(|_| rng.random_range(0..1 << 40)).collect();
    let arr = ColorArray::from_priorities(colors, prios).unwrap();
    let ix = OptimalTopK::new(&arr);
    let ranges: Vec<(usize, usize)> = (0..400)
        .map(|_| {
            let lo = rng.random_range(0..n);
            (lo, rng.random_range(lo..n))
        })
        .collect();
    let mut out = Vec::with_capacity(4096);
    let mut per_color = |k: usize| {
        for &(lo, hi) in &ranges[..50] {
            ix.topk_ranks(lo, hi, k, &mut out);
        }
        let samples: Vec<f64> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let t = Instant::now();
                ix.topk_ranks(lo, hi, k, &mut out);
                t.elapsed().as_nanos() as f64 / out.len() as f64
            })
            .collect();
        median(samples)
    };
    let small = per_color(64);
    let large = per_color(4096);
    let elapsed = start.elapsed();
    outcome(
        large <= 3.0 * small && elapsed < Duration::from_secs(120),
        format!(
            "per-color median K=64 {small:.1} ns, K=4096 {large:.1} ns, ratio {:.2} (limit 3), 400 samples each, {:.1}s",
            large / small,
            elapsed.as_secs_f64()
        ),
    )
}

fn chunked_bpe(n: usize, sigma: u32, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = (0..n).map(|_| rng.random_range(0..sigma)).collect();
    let prios = (0..sigma as u64).collect();
    let arr = ColorArray::from_priorities(colors, prios).unwrap();
    let snap = Snapshot::new(Kind::Chunked, Params::default(), Payload::Array(arr)).unwrap();
    let (_, report) = StatsReport::measure(&snap, &BuildOptions::default(), 10, seed).unwrap();
    report.bits_per_element()
}

fn criterion_5() -> Outcome {
    let small_n = chunked_bpe(1 << 12, 16, 51);
    let large_n = chunked_bpe(1 << 16, 16, 52);
    let few = chunked_bpe(1 << 16, 4, 53);
    let many = chunked_bpe(1 << 16, 256, 54);
    let n_ratio = large_n / small_n;
    let sigma_ratio = many / few;
    outcome(
        n_ratio <= 2.0 && sigma_ratio <= 4.0,
        format!(
            "bits/element sigma=16: N=2^12 {small_n:.1}, N=2^16 {large_n:.1} (ratio {n_ratio:.2}, limit 2); \
             N=2^16: sigma=4 {few:.1}, sigma=256 {many:.1} (ratio {sigma_ratio:.2}, limit 4)"
        ),
    )
}

fn random_corpus(rng: &mut ChaCha8Rng) -> DocumentCollection {
    let s = rng.random_range(1..=32usize);
    let alphabet = rng.random_range(1..=4u8);
    let budget = 4096 / s - 1;
    let docs = (0..s)
        .map(|_| {
            let len = rng.random_range(0..=budget.min(300));
            (0..len).map(|_| b'a' + rng.random_range(0..alphabet)).collect()
        })
        .collect();
    let ranks = (0..s).map(|_| rng.random_range(0..50)).collect();
    DocumentCollection::new(docs, ranks).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let mut mismatches = 0usize;
    let mut checks = 0usize;
    let mut first = None;
    for _ in 0..50 {
        let coll = random_corpus(&mut rng);
        let opts = DocOptions {
            max_t: Some(8),
            ..DocOptions::default()
        };
        let ix = DocumentIndex::with_options(coll.clone(), &opts).unwrap();
        for _ in 0..20 {
            let p: Vec<u8> = {
                let d = coll.doc(rng.random_range(1..=coll.len() as u32));
                if d.is_empty() || rng.random_ratio(1, 5) {
                    (0..rng.random_range(1..=3)).map(|_| b'a' + rng.random_range(0..4)).collect()
                } else {
                    let st = rng.random_range(0..d.len());
                    d[st..(st + rng.random_range(1..=5)).min(d.len())].to_vec()
                }
            };
            let k = rng.random_range(1..=coll.len() + 1);
            for t in [1, 2, 4, 8] {
                checks += 1;
                let (got, want) = if t == 1 {
                    (ix.ranked_list(&p, k), oracle_ranked_list(&coll, &p, k))
                } else {
                    (ix.t_mine(&p, t, k).unwrap(), oracle_t_mine(&coll, &p, t, k))
                };
                if got != want {
                    mismatches += 1;
                    first.get_or_insert(format!("pattern {:?} t={t} k={k}", String::from_utf8_lossy(&p)));
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!(
            "50 corpora, 1000 patterns, {checks} checks, {mismatches} mismatches{}",
            first.map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);
    let mut mismatches = 0usize;
    for _ in 0..1000 {
        let n = rng.random_range(1..=400usize);
        let entries: Vec<(u32, u64)> = (0..n).map(|_| (rng.random_range(1..=40), rng.random_range(0..60))).collect();
        let mut cuts: Vec<usize> = (0..rng.random_range(0..20)).map(|_| rng.random_range(0..=n)).collect();
        cuts.extend([0, n]);
        cuts.sort_unstable();
        cuts.dedup();
        let mut ranges: Vec<(usize, usize)> = cuts
            .windows(2)
            .filter(|_| rng.random_bool(0.7))
            .map(|w| (w[0] + 1, w[1]))
            .collect();
        if ranges.is_empty() {
            ranges.push((1, n));
        }
        ranges.shuffle(&mut rng);
        let k = rng.random_range(1..=n + 5);
        let merger = RangeHeapMerger::new(&entries).unwrap();
        if merger.topk(&ranges, k).unwrap() != oracle_merge(&entries, &ranges, k) {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("1000 instances, {mismatches} mismatches"))
}

fn build_secs(n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = 1u32 << 10;
    let colors = (0..n).map(|_| rng.random_range(0..sigma)).collect();
    let prios = (0..sigma as u64).collect();
    let arr = ColorArray::from_priorities(colors, prios).unwrap();
    let t = Instant::now();
    let ix = OptimalTopK::new(&arr);
    let secs = t.elapsed().as_secs_f64();
    drop(ix);
    secs
}

fn criterion_8() -> Outcome {
    let half = build_secs(1 << 19, 81).min(build_secs(1 << 19, 82));
    let full = build_secs(1 << 20, 83).min(build_secs(1 << 20, 84));
    let ratio = full / half;
    outcome(
        full < 60.0 && ratio <= 3.0,
        format!("build N=2^19 {half:.2}s, N=2^20 {full:.2}s (limit 60s), ratio {ratio:.2} (limit 3)"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle equivalence, exhaustive small", criterion_1),
        ("sortedness and distinctness", criterion_2),
        ("online prefix property", criterion_3),
        ("O(K) scaling smoke", criterion_4),
        ("space trend", criterion_5),
        ("document retrieval oracle equivalence", criterion_6),
        ("heap-merge equivalence", criterion_7),
        ("construction smoke", criterion_8),
    ];
    // optional criterion numbers select a subset
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {id} [{name}]: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

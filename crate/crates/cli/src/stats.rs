//! Space and timing accounting.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topk_core::BuildOptions;

use crate::error::Result;
use crate::snapshot::{Engine, Kind, Payload, Snapshot};

/// Query sizes timed by [`StatsReport::measure`].
pub const TIMED_K: [usize; 3] = [1, 16, 256];

#[derive(Clone, Debug, PartialEq)]
pub struct Timing {
    pub k: usize,
    pub samples: usize,
    pub median_ns: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsReport {
    pub kind: Kind,
    pub n: usize,
    pub sigma: usize,
    pub payload_bits: u64,
    pub build_ms: f64,
    pub timings: Vec<Timing>,
}

impl StatsReport {
    pub fn bits_per_element(&self) -> f64 {
        self.payload_bits as f64 / self.n as f64
    }

    /// Builds the index of `snap`, then times `samples` random queries for
    /// each size in [`TIMED_K`].
    pub fn measure(snap: &Snapshot, opts: &BuildOptions, samples: usize, seed: u64) -> Result<(Engine, Self)> {
        let start = Instant::now();
        let engine = snap.build(opts)?;
        let build_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let timings = TIMED_K
            .iter()
            .map(|&k| {
                let mut ns: Vec<u64> = (0..samples).map(|_| time_one(snap, &engine, k, &mut rng)).collect();
                ns.sort_unstable();
                Timing {
                    k,
                    samples,
                    median_ns: ns.get(samples / 2).copied().unwrap_or(0),
                }
            })
            .collect();
        let report = Self {
            kind: snap.kind,
            n: snap.len(),
            sigma: snap.sigma(),
            payload_bits: engine.space_bits(),
            build_ms,
            timings,
        };
        Ok((engine, report))
    }

    /// Human-readable table followed by `#stat key=value` lines.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "kind            {}", self.kind);
        let _ = writeln!(s, "elements        {}", self.n);
        let _ = writeln!(s, "colors          {}", self.sigma);
        let _ = writeln!(s, "payload bits    {}", self.payload_bits);
        let _ = writeln!(s, "bits/element    {:.3}", self.bits_per_element());
        let _ = writeln!(s, "build ms        {:.3}", self.build_ms);
        for t in &self.timings {
            let _ = writeln!(s, "query K={:<6}  {} ns median over {} samples", t.k, t.median_ns, t.samples);
        }
        let _ = writeln!(s, "#stat kind={}", self.kind);
        let _ = writeln!(s, "#stat n={}", self.n);
        let _ = writeln!(s, "#stat sigma={}", self.sigma);
        let _ = writeln!(s, "#stat payload_bits={}", self.payload_bits);
        let _ = writeln!(s, "#stat bits_per_element={:.6}", self.bits_per_element());
        let _ = writeln!(s, "#stat build_ms={:.3}", self.build_ms);
        for t in &self.timings {
            let _ = writeln!(s, "#stat query_k{}_median_ns={}", t.k, t.median_ns);
            let _ = writeln!(s, "#stat query_k{}_samples={}", t.k, t.samples);
        }
        s
    }
}

fn time_one(snap: &Snapshot, engine: &Engine, k: usize, rng: &mut ChaCha8Rng) -> u64 {
    match (engine, &snap.payload) {
        (Engine::Range(ix), _) => {
            let n = ix.len();
            let lo = rng.random_range(0..n);
            let hi = rng.random_range(lo..n);
            let mut out = Vec::with_capacity(k);
            let t = Instant::now();
            ix.topk_ranks(lo, hi, k, &mut out);
            t.elapsed().as_nanos() as u64
        }
        (Engine::Docs(ix), Payload::Corpus(c)) => {
            let p = crate::verify::sample_pattern(c, rng);
            let t = Instant::now();
            let hits = ix.ranked_list(&p, k);
            let ns = t.elapsed().as_nanos() as u64;
            std::hint::black_box(hits);
            ns
        }
        (Engine::Docs(_), Payload::Array(_)) => unreachable!("kind checked on construction"),
    }
}

/// Extracts the value of a `#stat key=value` line.
pub fn scrape(output: &str, key: &str) -> Option<String> {
    output
        .lines()
        .filter_map(|l| l.strip_prefix("#stat "))
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('=').map(str::to_owned))
}

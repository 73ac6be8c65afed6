//! Random queries checked against brute-force oracles.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topk_core::docs::{oracle_ranked_list, oracle_t_mine, DocumentCollection, DocumentIndex};
use topk_core::{oracle_topk, ColorArray, QuerySpec};

use crate::snapshot::{Engine, Payload, RangeIndex, Snapshot};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub mismatches: usize,
    /// Description of the first failing query.
    pub first_mismatch: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn render(&self) -> String {
        let mut s = format!("trials={}\nmismatches={}\n", self.trials, self.mismatches);
        if let Some(m) = &self.first_mismatch {
            s += &format!("first_mismatch={m}\n");
        }
        s += if self.passed() { "result=pass\n" } else { "result=fail\n" };
        s
    }
}

/// Runs `trials` seeded random queries against `engine`.
pub fn verify(snap: &Snapshot, engine: &Engine, trials: usize, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport {
        trials,
        mismatches: 0,
        first_mismatch: None,
    };
    for _ in 0..trials {
        let failure = match (engine, &snap.payload) {
            (Engine::Range(ix), Payload::Array(arr)) => range_trial(ix.as_ref(), arr, &mut rng),
            (Engine::Docs(ix), Payload::Corpus(c)) => doc_trial(ix, c, &mut rng),
            _ => Some("engine does not match the payload".into()),
        };
        if let Some(f) = failure {
            report.mismatches += 1;
            report.first_mismatch.get_or_insert(f);
        }
    }
    report
}

fn range_trial(ix: &dyn RangeIndex, arr: &ColorArray, rng: &mut ChaCha8Rng) -> Option<String> {
    let n = arr.len();
    let a = rng.random_range(1..=n);
    let b = rng.random_range(a..=n);
    let sigma = arr.sigma();
    let k = *[1, 2, (sigma / 2).max(1), n, rng.random_range(1..=sigma + 1)].choose(rng).unwrap();
    let q = QuerySpec::new(a, b, k);
    let got = ix.topk(q).ok()?;
    let want = oracle_topk(arr, q).ok()?;
    (got != want).then(|| format!("range {a} {b} {k}"))
}

/// A pattern drawn from the corpus text, or occasionally random bytes.
pub fn sample_pattern(c: &DocumentCollection, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let nonempty: Vec<&Vec<u8>> = c.docs().iter().filter(|d| !d.is_empty()).collect();
    if nonempty.is_empty() || rng.random_ratio(1, 8) {
        let len = rng.random_range(1..=3);
        return (0..len).map(|_| rng.random_range(b'a'..=b'd')).collect();
    }
    let d = nonempty.choose(rng).unwrap();
    let start = rng.random_range(0..d.len());
    let len = rng.random_range(1..=(d.len() - start).min(6));
    d[start..start + len].to_vec()
}

fn doc_trial(ix: &DocumentIndex, c: &DocumentCollection, rng: &mut ChaCha8Rng) -> Option<String> {
    let p = sample_pattern(c, rng);
    let k = rng.random_range(1..=c.len() + 1);
    let ts: Vec<usize> = [1, 2, 4, 8].into_iter().filter(|&t| t <= ix.max_t()).collect();
    let t = *ts.choose(rng).unwrap();
    let (got, want) = if t == 1 {
        (ix.ranked_list(&p, k), oracle_ranked_list(c, &p, k))
    } else {
        (ix.t_mine(&p, t, k).ok()?, oracle_t_mine(c, &p, t, k))
    };
    (got != want).then(|| format!("pattern {:?} k={k} t={t}", String::from_utf8_lossy(&p)))
}

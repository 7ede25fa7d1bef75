//! Wall-clock comparison of brute-force and dynamic-programming counting.

use std::time::Instant;

use serde::Serialize;

use khole_core::generators::gen_random;
use khole_core::holes::{count_chain_dp, enumerate_brute};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub count: u64,
    /// `None` when `n` exceeds the brute-force limit.
    pub brute_ms: Option<f64>,
    pub dp_ms: f64,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// One row per size: a random set of `n` points from `seed`, counted both
/// ways when `n <= brute_limit`.
pub fn bench(sizes: &[usize], k: usize, seed: u64, brute_limit: usize) -> CliResult<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&n| {
            let ps = gen_random(n, seed, 100_000)?;
            let start = Instant::now();
            let count = count_chain_dp(&ps, k)?;
            let dp_ms = millis(start);
            let brute_ms = if n <= brute_limit {
                let start = Instant::now();
                let brute = enumerate_brute(&ps, k)?.len() as u64;
                if brute != count {
                    return Err(CliError::Failure(format!("n = {n}: brute {brute} != dp {count}")));
                }
                Some(millis(start))
            } else {
                None
            };
            Ok(BenchRow {
                n,
                k,
                count,
                brute_ms,
                dp_ms,
            })
        })
        .collect()
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>6} {:>3} {:>12} {:>12} {:>12}\n",
        "n", "k", "count", "brute_ms", "dp_ms"
    );
    for r in rows {
        let brute = r.brute_ms.map_or("-".to_string(), |t| format!("{t:.3}"));
        out.push_str(&format!(
            "{:>6} {:>3} {:>12} {:>12} {:>12.3}\n",
            r.n, r.k, r.count, brute, r.dp_ms
        ));
    }
    out
}

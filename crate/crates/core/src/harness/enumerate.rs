//! Decides every normalized triple of one size and writes one record per
//! triple, in enumeration order.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::records::{RecordVerdict, ResultRecord};
use super::HarnessError;
use crate::decider::{decide_full, DeciderOptions, SearchStats, SubpatternCache};
use crate::model::{enumerate_normalized_triples, Triple};

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub size: usize,
    pub short_circuit: bool,
    /// Store measured times; otherwise `runtime_ms` is 0 and the output is
    /// reproducible byte for byte.
    pub timing: bool,
    pub threads: usize,
    /// Largest size of the forbidden-subpattern tables; 0 disables them.
    pub cache_size: usize,
    pub incremental: bool,
    /// Number of leading triples already written by an earlier run.
    pub skip: usize,
}

impl EnumerationConfig {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            short_circuit: true,
            timing: false,
            threads: 1,
            cache_size: size.saturating_sub(1).min(4),
            incremental: true,
            skip: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub realizable: usize,
    pub unrealizable: usize,
    pub stats: SearchStats,
}

const CHUNK: usize = 256;

/// Runs the decider on all normalized triples of `cfg.size`. Every
/// certificate is checked by the verifier before it is written.
pub fn run_enumeration<W: Write>(cfg: &EnumerationConfig, out: &mut W) -> Result<Summary, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .expect("thread pool");
    let cache = if cfg.cache_size > 0 {
        let (c, _) = pool.install(|| SubpatternCache::build(cfg.cache_size))?;
        Some(Arc::new(c))
    } else {
        None
    };
    let opts = DeciderOptions {
        incremental: cfg.incremental,
        cache,
        short_circuit: cfg.short_circuit,
    };
    let triples: Vec<Triple> = enumerate_normalized_triples(cfg.size).skip(cfg.skip).collect();
    let mut summary = Summary::default();
    for chunk in triples.chunks(CHUNK) {
        let results: Vec<Result<(ResultRecord, SearchStats), HarnessError>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|t| {
                    let start = Instant::now();
                    let (verdict, stats) = decide_full(t, &opts)?;
                    let ms = if cfg.timing {
                        start.elapsed().as_millis() as u64
                    } else {
                        0
                    };
                    let rec = ResultRecord::new(t, &verdict, ms);
                    if !rec.verify()? {
                        return Err(HarnessError::Unverified(t.to_string()));
                    }
                    Ok((rec, stats))
                })
                .collect()
        });
        for r in results {
            let (rec, stats) = r?;
            writeln!(out, "{}", rec.to_line())?;
            summary.total += 1;
            match rec.verdict {
                RecordVerdict::Realizable => summary.realizable += 1,
                RecordVerdict::Unrealizable => summary.unrealizable += 1,
            }
            summary.stats.add(&stats);
        }
        out.flush()?;
    }
    Ok(summary)
}

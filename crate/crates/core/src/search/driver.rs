//! Splits `[s_min, s_max]` into fixed blocks, runs them on a rayon pool and
//! concatenates per-block output in block order, so results never depend on
//! the worker count.

use rayon::prelude::*;

use super::checkpoint::{append_checkpoint, read_checkpoint};
use super::SearchConfig;
use crate::error::{Error, Result};

/// Blocks per checkpoint wave, per worker.
const WAVE_FACTOR: usize = 4;

pub(crate) fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

pub(crate) fn run_blocks<T, S, I, F>(cfg: &SearchConfig, init: I, per_block: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64, u64) -> Vec<T> + Sync + Send,
{
    cfg.validate()?;
    let mut start = cfg.s_min;
    if let Some(path) = &cfg.checkpoint {
        if let Some(done) = read_checkpoint(path)? {
            start = start.max(done.saturating_add(1));
        }
    }
    if start > cfg.s_max {
        return Ok(Vec::new());
    }
    let blocks: Vec<(u64, u64)> = (0..)
        .map(|i| start + i * cfg.block_size)
        .take_while(|&lo| lo <= cfg.s_max)
        .map(|lo| (lo, (lo + cfg.block_size - 1).min(cfg.s_max)))
        .collect();

    let pool = thread_pool(cfg.threads)?;
    pool.install(|| {
        let wave = match cfg.checkpoint {
            Some(_) => pool.current_num_threads() * WAVE_FACTOR,
            None => blocks.len(),
        };
        let mut out = Vec::new();
        for chunk in blocks.chunks(wave.max(1)) {
            let results: Vec<Vec<T>> = chunk
                .par_iter()
                .map_init(&init, |scratch, &(lo, hi)| per_block(scratch, lo, hi))
                .collect();
            out.extend(results.into_iter().flatten());
            if let Some(path) = &cfg.checkpoint {
                append_checkpoint(path, chunk[chunk.len() - 1].1)?;
            }
        }
        Ok(out)
    })
}

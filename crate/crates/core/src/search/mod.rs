//! Constructive searches: n = 3 from three squares, n = 4 from three
//! two-square representations of the same sum, divisor-based extension
//! n → n+1 (exact or near-solution), and the ranked pipelines for n = 5 and
//! for positive triple-square sets.
//!
//! The S loops run over fixed blocks of the sum range; each block is searched
//! independently and the merged output is sorted canonically, so output is
//! identical for every thread count and block size.

mod checkpoint;
mod driver;
mod kernel;

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

pub use checkpoint::{append_checkpoint, read_checkpoint};

use crate::arith::{divisor_pairs, factorize_u64, square_root_i128, Integer};
use crate::error::{Error, Result};
use crate::sets::{verify_pairs, PairReport, SquareSet};
use kernel::{quads_for_sum, rank_and_truncate, Extender, Quad, Quint, RepBuckets};

/// Largest searchable sum. Keeps every kernel intermediate well inside i128
/// and the factor table small.
pub const MAX_SEARCH_SUM: u64 = 1 << 40;

/// Zero-based indices `(i, j)`, `i < j`, of the two base elements whose sums
/// with a new element are forced to be squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Anchor(pub usize, pub usize);

impl Default for Anchor {
    fn default() -> Self {
        Anchor(0, 1)
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Inclusive bounds on the represented sum S (the 4-set sum).
    pub s_min: u64,
    pub s_max: u64,
    pub positive_only: bool,
    pub top_k: usize,
    /// Minimum square pairs for extension candidates; `None` means all.
    pub require_pairs: Option<usize>,
    pub anchor: Anchor,
    /// Worker threads; 0 picks the number of CPUs.
    pub threads: usize,
    /// Width of one unit of work along the S axis.
    pub block_size: u64,
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    /// Unbounded ranking over `[1, s_max]`.
    pub fn new(s_max: u64) -> Self {
        SearchConfig {
            s_min: 1,
            s_max,
            positive_only: false,
            top_k: usize::MAX,
            require_pairs: None,
            anchor: Anchor::default(),
            threads: 0,
            block_size: 1 << 15,
            checkpoint: None,
        }
    }

    pub fn with_top_k(mut self, top_k: usize) -> Self {
        self.top_k = top_k;
        self
    }

    pub fn positive(mut self, positive_only: bool) -> Self {
        self.positive_only = positive_only;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_min < 1 || self.s_min > self.s_max {
            return Err(Error::Config(format!(
                "need 1 <= s_min <= s_max, got [{}, {}]",
                self.s_min, self.s_max
            )));
        }
        if self.s_max > MAX_SEARCH_SUM {
            return Err(Error::Config(format!("s_max above {MAX_SEARCH_SUM}")));
        }
        if self.top_k == 0 {
            return Err(Error::Config("top_k must be at least 1".into()));
        }
        if self.block_size == 0 {
            return Err(Error::Config("block_size must be at least 1".into()));
        }
        if self.anchor.0 >= self.anchor.1 {
            return Err(Error::Config(format!(
                "anchor {:?} must have i < j",
                self.anchor
            )));
        }
        Ok(())
    }
}

/// A new element `c` for a base set with `x_i + c = w²` and `x_j + c = y²`
/// at the anchor `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCandidate {
    pub base: SquareSet,
    pub new_element: Integer,
    pub anchor: Anchor,
    pub w: Integer,
    pub y: Integer,
    pub extended: SquareSet,
    pub report: PairReport,
}

impl ExtensionCandidate {
    pub fn square_pairs(&self) -> usize {
        self.report.square_pairs
    }
}

fn to_set<const N: usize>(xs: &[i128; N]) -> SquareSet {
    SquareSet::new(xs.iter().map(|&x| Integer::from(x))).expect("kernel emits valid sets")
}

/// The 3-set with pair sums `p², q², r²`, scaled by 4 when the halves are
/// not integral.
pub fn solve_three(p: &Integer, q: &Integer, r: &Integer) -> Result<SquareSet> {
    if p.is_negative() || q.is_negative() || r.is_negative() {
        return Err(Error::domain(
            "solve_three",
            format!("({p}, {q}, {r})"),
            "p, q, r >= 0",
        ));
    }
    let (p2, q2, r2) = (p * p, q * q, r * r);
    let doubled = [&p2 + &q2 - &r2, &p2 - &q2 + &r2, &q2 + &r2 - &p2];
    let values: Vec<Integer> = if doubled[0].is_even() {
        doubled.iter().map(|v| v / 2).collect()
    } else {
        doubled.iter().map(|v| v * 2).collect()
    };
    SquareSet::new(values)
        .map_err(|e| Error::Degenerate(format!("squares ({p}², {q}², {r}²): {e}")))
}

fn block_quads(buckets: &mut RepBuckets, lo: u64, hi: u64, positive_only: bool) -> Vec<Quad> {
    buckets.fill(lo, hi);
    let mut quads = Vec::new();
    for (s, reps) in buckets.iter() {
        if reps.len() >= 3 {
            quads_for_sum(s, reps, positive_only, &mut quads);
        }
    }
    quads
}

/// Every pair-square 4-set whose sum lies in `[s_min, s_max]`, ranked by
/// l1 norm and truncated to `top_k`.
pub fn search_n4(cfg: &SearchConfig) -> Result<Vec<SquareSet>> {
    let top_k = cfg.top_k;
    let mut quads = driver::run_blocks(cfg, RepBuckets::new, |buckets, lo, hi| {
        let mut quads = block_quads(buckets, lo, hi, cfg.positive_only);
        rank_and_truncate(&mut quads, top_k);
        quads
    })?;
    rank_and_truncate(&mut quads, top_k);
    Ok(quads.iter().map(to_set).collect())
}

struct ExtendScratch {
    buckets: RepBuckets,
    extender: Extender,
}

fn extend_scratch(cfg: &SearchConfig) -> impl Fn() -> ExtendScratch + Sync + Send {
    let s_max = cfg.s_max;
    move || ExtendScratch {
        buckets: RepBuckets::new(),
        extender: Extender::new(s_max),
    }
}

fn sorted_quint(quad: &Quad, c: i128) -> Quint {
    let mut quint = [quad[0], quad[1], quad[2], quad[3], c];
    quint.sort_unstable();
    quint
}

/// Pair-square 5-sets: every 4-set with sum in range, extended exactly at
/// its two smallest elements. Every 5-set whose four smallest elements sum
/// into `[s_min, s_max]` is found.
pub fn search_n5(cfg: &SearchConfig) -> Result<Vec<SquareSet>> {
    let top_k = cfg.top_k;
    let positive_only = cfg.positive_only;
    let mut quints = driver::run_blocks(cfg, extend_scratch(cfg), |scratch, lo, hi| {
        let quads = block_quads(&mut scratch.buckets, lo, hi, positive_only);
        let lower = if positive_only { 0 } else { i128::MIN };
        let mut quints = Vec::new();
        for quad in &quads {
            scratch.extender.extend(quad, lower, i128::MAX, |c| {
                quints.push(sorted_quint(quad, c))
            });
        }
        rank_and_truncate(&mut quints, top_k);
        quints
    })?;
    rank_and_truncate(&mut quints, top_k);
    Ok(quints.iter().map(to_set).collect())
}

/// `{S/3 − x}` or `{3S − 9x}`, divided by the largest square dividing all
/// elements.
fn reduced_triple_set(quint: &Quint) -> Quint {
    let s: i128 = quint.iter().sum();
    let mut z = if s % 3 == 0 {
        quint.map(|x| s / 3 - x)
    } else {
        quint.map(|x| 3 * s - 9 * x)
    };
    let g = z.iter().fold(0u128, |g, &v| g.gcd(&v.unsigned_abs()));
    if let Ok(g) = u64::try_from(g) {
        let k: i128 = factorize_u64(g)
            .iter()
            .map(|&(p, e)| (p as i128).pow(e / 2))
            .product();
        if k > 1 {
            z.iter_mut().for_each(|v| *v /= k * k);
        }
    }
    z.sort_unstable();
    z
}

/// Positive 5-sets whose every triple sums to a square, obtained from the
/// pair-square 5-set pipeline (all signs) through the z-transform and
/// reduced by their largest common square factor. Ranked by l1 of the
/// triple set.
pub fn search_triples_positive(cfg: &SearchConfig) -> Result<Vec<SquareSet>> {
    let top_k = cfg.top_k;
    let mut triples = driver::run_blocks(cfg, extend_scratch(cfg), |scratch, lo, hi| {
        let quads = block_quads(&mut scratch.buckets, lo, hi, false);
        let mut triples = Vec::new();
        for quad in &quads {
            let s4: i128 = quad.iter().sum();
            // All z positive iff S5 > 3·max: needs x4 < S4/2, and the new
            // element c must satisfy 3·x4 − S4 < c < S4/2.
            if 2 * quad[3] >= s4 {
                continue;
            }
            let lower = 3 * quad[3] - s4;
            let upper = (s4 + 1) / 2;
            scratch.extender.extend(quad, lower, upper, |c| {
                let quint = sorted_quint(quad, c);
                let total: i128 = quint.iter().sum();
                if total > 3 * quint[4] {
                    let z = reduced_triple_set(&quint);
                    debug_assert!(z[0] > 0);
                    triples.push(z);
                }
            });
        }
        rank_and_truncate(&mut triples, top_k);
        triples
    })?;
    rank_and_truncate(&mut triples, top_k);
    for z in &triples {
        let ok = (0..5).all(|i| {
            (i + 1..5).all(|j| (j + 1..5).all(|k| square_root_i128(z[i] + z[j] + z[k]).is_some()))
        });
        assert!(ok, "triple-square transform identity violated for {z:?}");
    }
    Ok(triples.iter().map(to_set).collect())
}

/// Every new element `c` with `x_i + c` and `x_j + c` square at the anchor
/// `(i, j)` whose extended set has at least `require_pairs` square pairs
/// (all pairs when `None`), in ascending order of the divisor `y − w`.
///
/// Complete: `x_j − x_i = (y − w)(y + w)` ranges over all divisor pairs of
/// the difference.
pub fn extend_set(
    set: &SquareSet,
    anchor: Anchor,
    require_pairs: Option<usize>,
) -> Result<Vec<ExtensionCandidate>> {
    let n = set.len();
    if n > 6 {
        return Err(Error::domain("extend_set", n, "n <= 6"));
    }
    let Anchor(i, j) = anchor;
    if i >= j || j >= n {
        return Err(Error::domain(
            "extend_set",
            format!("anchor ({i}, {j})"),
            "i < j < n",
        ));
    }
    let total = (n + 1) * n / 2;
    let require = require_pairs.unwrap_or(total);
    if require > total {
        return Err(Error::Config(format!(
            "require_pairs {require} above {total}"
        )));
    }
    let (xi, xj) = (&set.elements()[i], &set.elements()[j]);
    let diff = xj - xi;
    let mut out = Vec::new();
    for (d, e) in divisor_pairs(&diff)? {
        if (&e - &d).is_odd() {
            continue;
        }
        let y: Integer = (&e + &d) / 2;
        let w: Integer = (&e - &d) / 2;
        let c = &w * &w - xi;
        if c.is_zero() || set.contains(&c) {
            continue;
        }
        let extended = set.with_element(c.clone())?;
        let report = verify_pairs(&extended);
        if report.square_pairs >= require {
            out.push(ExtensionCandidate {
                base: set.clone(),
                new_element: c,
                anchor,
                w,
                y,
                extended,
                report,
            });
        }
    }
    Ok(out)
}

/// Extends each complete base at every anchor pair, keeping candidates with
/// at least `target_pairs` square pairs. Output is grouped by base (input
/// order) and ascending by new element; each candidate keeps the witness of
/// its first anchor.
pub fn near_solution_scan(
    bases: &[SquareSet],
    target_pairs: usize,
) -> Result<Vec<ExtensionCandidate>> {
    for base in bases {
        if !verify_pairs(base).is_complete() {
            return Err(Error::domain(
                "near_solution_scan",
                format!("{{{base}}}"),
                "base pair sums all square",
            ));
        }
    }
    let per_base: Vec<Vec<ExtensionCandidate>> = bases
        .par_iter()
        .map(|base| {
            let n = base.len();
            let mut merged: BTreeMap<Integer, ExtensionCandidate> = BTreeMap::new();
            for i in 0..n {
                for j in i + 1..n {
                    for cand in extend_set(base, Anchor(i, j), Some(target_pairs))? {
                        merged.entry(cand.new_element.clone()).or_insert(cand);
                    }
                }
            }
            Ok(merged.into_values().collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_base.into_iter().flatten().collect())
}

/// Checks the anchor witnesses and every root in the candidate's report.
pub fn candidate_is_consistent(c: &ExtensionCandidate) -> bool {
    let Anchor(i, j) = c.anchor;
    let xs = c.base.elements();
    &c.w * &c.w == &xs[i] + &c.new_element
        && &c.y * &c.y == &xs[j] + &c.new_element
        && c.report.entries.iter().all(|e| match &e.root {
            Some(r) => r * r == e.sum,
            None => true,
        })
}

#[cfg(test)]
mod tests;

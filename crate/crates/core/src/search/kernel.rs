//! Machine-word kernels behind the searches. Elements are `i128`; the search
//! bound keeps every intermediate far below overflow.

use crate::arith::{divisors_from_u64_factors, isqrt_u64, square_root_i128};

pub(crate) type Quad = [i128; 4];
pub(crate) type Quint = [i128; 5];

/// Representations `s = a² + b²`, `a ≤ b`, bucketed by `s` over one block.
pub(crate) struct RepBuckets {
    lo: u64,
    buckets: Vec<Vec<(u32, u32)>>,
}

impl RepBuckets {
    pub(crate) fn new() -> Self {
        RepBuckets {
            lo: 0,
            buckets: Vec::new(),
        }
    }

    /// Fills the buckets for `s` in `[lo, hi]`.
    pub(crate) fn fill(&mut self, lo: u64, hi: u64) {
        let width = (hi - lo + 1) as usize;
        if self.buckets.len() < width {
            self.buckets.resize_with(width, Vec::new);
        }
        self.buckets.truncate(width);
        self.buckets.iter_mut().for_each(Vec::clear);
        self.lo = lo;
        let mut a = 0u64;
        while 2 * a * a <= hi {
            let a2 = a * a;
            let mut b = if a2 >= lo {
                a
            } else {
                // smallest b with a² + b² ≥ lo
                let need = lo - a2;
                let r = isqrt_u64(need);
                if r * r == need {
                    r
                } else {
                    r + 1
                }
            }
            .max(a);
            while a2 + b * b <= hi {
                self.buckets[(a2 + b * b - lo) as usize].push((a as u32, b as u32));
                b += 1;
            }
            a += 1;
        }
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = (u64, &[(u32, u32)])> {
        self.buckets
            .iter()
            .enumerate()
            .map(move |(offset, reps)| (self.lo + offset as u64, reps.as_slice()))
    }
}

/// All 4-sets with element sum `s` built from three of the given
/// representations of `s`.
///
/// Each 4-set splits into three complementary pairs, one per
/// representation. Fixing the representation order and the orientation of
/// the first one leaves four orientation choices, which meet both
/// relabelling classes of assignments, so every set is produced at least
/// once. Output is sorted and duplicate-free.
pub(crate) fn quads_for_sum(s: u64, reps: &[(u32, u32)], positive_only: bool, out: &mut Vec<Quad>) {
    let start = out.len();
    let s = s as i128;
    let n = reps.len();
    for i in 0..n {
        let p2 = reps[i].0 as i128 * reps[i].0 as i128;
        for j in i + 1..n {
            let (qa, qb) = (reps[j].0 as i128, reps[j].1 as i128);
            for q2 in [qa * qa, qb * qb] {
                for &(ra, rb) in &reps[j + 1..] {
                    let (ra, rb) = (ra as i128, rb as i128);
                    for r2 in [ra * ra, rb * rb] {
                        if let Some(quad) = solve_quad(s, p2, q2, r2, positive_only) {
                            out.push(quad);
                        }
                    }
                }
            }
        }
    }
    let found = &mut out[start..];
    found.sort_unstable();
    let mut write = start;
    for read in start..out.len() {
        if read == start || out[read] != out[write - 1] {
            out[write] = out[read];
            write += 1;
        }
    }
    out.truncate(write);
}

/// `x1 + x2 = p²`, `x1 + x3 = q²`, `x2 + x3 = r²`, `x4 = s − (x1 + x2 + x3)`.
#[inline]
pub(crate) fn solve_quad(
    s: i128,
    p2: i128,
    q2: i128,
    r2: i128,
    positive_only: bool,
) -> Option<Quad> {
    let total = p2 + q2 + r2;
    if total % 2 != 0 {
        return None;
    }
    let mut quad = [
        (p2 + q2 - r2) / 2,
        (p2 - q2 + r2) / 2,
        (q2 + r2 - p2) / 2,
        s - total / 2,
    ];
    quad.sort_unstable();
    if quad[0] == 0 || quad[1] == 0 || quad[2] == 0 || quad[3] == 0 {
        return None;
    }
    if quad[0] == quad[1] || quad[1] == quad[2] || quad[2] == quad[3] {
        return None;
    }
    if positive_only && quad[0] < 0 {
        return None;
    }
    Some(quad)
}

/// Divisor-based extension of pair-square sets whose pair sums are bounded
/// by a known limit, anchored at the two smallest elements.
///
/// `x2 − x1 = (x2 + xm) − (x1 + xm) = (q − p)(q + p)`, so factoring the two
/// small factors with a smallest-prime-factor table factors the difference.
pub(crate) struct Extender {
    spf: Vec<u32>,
    factors: Vec<(u64, u32)>,
    divisors: Vec<u64>,
}

impl Extender {
    /// Table covers factors up to `2·√(max_pair_sum) + 2`.
    pub(crate) fn new(max_pair_sum: u64) -> Self {
        let limit = (2 * isqrt_u64(max_pair_sum) + 3) as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                for j in (i..=limit).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        Extender {
            spf,
            factors: Vec::new(),
            divisors: Vec::new(),
        }
    }

    fn push_factors(&mut self, mut n: u64) {
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            self.factors.push((p, 1));
        }
    }

    /// Calls `emit` with every `c` such that `xs ∪ {c}` is pair-square,
    /// `c ∉ xs`, `c ≠ 0`, and `lower < c < upper`. `xs` must be sorted and
    /// pair-square with every pair sum inside the table bound.
    pub(crate) fn extend(
        &mut self,
        xs: &[i128],
        lower: i128,
        upper: i128,
        mut emit: impl FnMut(i128),
    ) {
        let (x1, x2, xm) = (xs[0], xs[1], xs[xs.len() - 1]);
        let p = square_root_i128(x1 + xm).expect("pair sum is square");
        let q = square_root_i128(x2 + xm).expect("pair sum is square");
        let n = (x2 - x1) as u64;

        self.factors.clear();
        self.push_factors((q - p) as u64);
        self.push_factors((q + p) as u64);
        self.factors.sort_unstable();
        let mut merged = 0;
        for read in 0..self.factors.len() {
            if merged > 0 && self.factors[merged - 1].0 == self.factors[read].0 {
                self.factors[merged - 1].1 += 1;
            } else {
                self.factors[merged] = self.factors[read];
                merged += 1;
            }
        }
        self.factors.truncate(merged);
        let mut divisors = std::mem::take(&mut self.divisors);
        divisors_from_u64_factors(&self.factors, &mut divisors);

        for &d in &divisors {
            let e = n / d;
            if d > e || !(e - d).is_multiple_of(2) {
                continue;
            }
            let w = ((e - d) / 2) as i128;
            let c = w * w - x1;
            if c <= lower || c >= upper || c == 0 {
                continue;
            }
            if !xs.contains(&c) && xs[2..].iter().all(|&x| square_root_i128(x + c).is_some()) {
                emit(c);
            }
        }
        self.divisors = divisors;
    }
}

pub(crate) fn l1<const N: usize>(xs: &[i128; N]) -> i128 {
    xs.iter().map(|x| x.abs()).sum()
}

/// Sorts by (l1, elements), removes duplicates, keeps the first `top_k`.
pub(crate) fn rank_and_truncate<const N: usize>(sets: &mut Vec<[i128; N]>, top_k: usize) {
    sets.sort_unstable_by_key(|s| (l1(s), *s));
    sets.dedup();
    sets.truncate(top_k);
}

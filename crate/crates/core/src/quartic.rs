//! Square values of the antisymmetric binary quartic
//! `f(G, H) = a·G⁴ + b·G³H + c·G²H² − b·GH³ + a·H⁴`, the four-square
//! identity that seeds square-sum 6-sets, and the published record sets.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::arith::{square_root, square_root_i128, Integer};
use crate::error::{Error, Result};
use crate::sets::{parse_integer_list, verify_pairs, PairReport, SquareSet};

/// Coefficients `(a, b, c)`; the `GH³` coefficient is `−b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuarticCoeffs {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
}

impl QuarticCoeffs {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>, c: impl Into<Integer>) -> Self {
        QuarticCoeffs {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    fn small(&self) -> Option<[i128; 3]> {
        Some([self.a.to_i128()?, self.b.to_i128()?, self.c.to_i128()?])
    }
}

impl FromStr for QuarticCoeffs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_integer_list(s)?;
        match <[Integer; 3]>::try_from(values) {
            Ok([a, b, c]) => Ok(QuarticCoeffs { a, b, c }),
            Err(v) => Err(Error::Parse(format!(
                "expected a,b,c, got {} values",
                v.len()
            ))),
        }
    }
}

impl fmt::Display for QuarticCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

/// A primitive point `g, h > 0`, `gcd(g, h) = 1`, with `f(g, h) = f_root²`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuarticPoint {
    pub g: u64,
    pub h: u64,
    pub f_root: Integer,
}

pub fn eval_quartic(q: &QuarticCoeffs, g: &Integer, h: &Integer) -> Integer {
    let (g2, h2) = (g * g, h * h);
    let gh = g * h;
    &q.a * (&g2 * &g2 + &h2 * &h2) + &q.b * &gh * (&g2 - &h2) + &q.c * &g2 * &h2
}

fn eval_small(coeffs: [i128; 3], g: u64, h: u64) -> Option<i128> {
    let [a, b, c] = coeffs;
    let (g, h) = (g as i128, h as i128);
    let (g2, h2) = (g * g, h * h);
    let quartic_sum = g2.checked_mul(g2)?.checked_add(h2.checked_mul(h2)?)?;
    let cross = g.checked_mul(h)?.checked_mul(g2 - h2)?;
    a.checked_mul(quartic_sum)?
        .checked_add(b.checked_mul(cross)?)?
        .checked_add(c.checked_mul(g2.checked_mul(h2)?)?)
}

fn square_value_at(q: &QuarticCoeffs, small: Option<[i128; 3]>, g: u64, h: u64) -> Option<Integer> {
    if let Some(value) = small.and_then(|coeffs| eval_small(coeffs, g, h)) {
        return square_root_i128(value).map(Integer::from);
    }
    square_root(&eval_quartic(q, &Integer::from(g), &Integer::from(h)))
}

fn check_bound(op: &'static str, bound: u64) -> Result<()> {
    if bound == 0 {
        return Err(Error::domain(op, bound, "bound >= 1"));
    }
    Ok(())
}

/// Every primitive point with `0 < g, h ≤ bound` at which `f` is a perfect
/// square, ordered by `(g, h)`. Rows of `g` run in parallel on the current
/// rayon pool.
pub fn quartic_square_points(q: &QuarticCoeffs, bound: u64) -> Result<Vec<QuarticPoint>> {
    check_bound("quartic_square_points", bound)?;
    let small = q.small();
    let rows: Vec<Vec<QuarticPoint>> = (1..=bound)
        .into_par_iter()
        .map(|g| {
            (1..=bound)
                .filter(|&h| g.gcd(&h) == 1)
                .filter_map(|h| {
                    square_value_at(q, small, g, h).map(|f_root| QuarticPoint { g, h, f_root })
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Points of [`quartic_square_points`] for `q1` at which `q2` is also a
/// square, with the second root.
pub fn joint_square_points(
    q1: &QuarticCoeffs,
    q2: &QuarticCoeffs,
    bound: u64,
) -> Result<Vec<(QuarticPoint, Integer)>> {
    check_bound("joint_square_points", bound)?;
    let small = q2.small();
    Ok(quartic_square_points(q1, bound)?
        .into_par_iter()
        .filter_map(|point| {
            let root = square_value_at(q2, small, point.g, point.h)?;
            Some((point, root))
        })
        .collect())
}

/// `s = t² + u² + v² + w²` and nonnegative `parts` with
/// `parts₀² + parts₁² + parts₂² = s²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourSquareSplit {
    pub s: Integer,
    pub parts: [Integer; 3],
}

/// `(t²+u²+v²+w²)² = (t²+u²−v²−w²)² + (2(tw−uv))² + (2(tv+uw))²`
pub fn lagrange_identity(t: &Integer, u: &Integer, v: &Integer, w: &Integer) -> FourSquareSplit {
    let (t2, u2, v2, w2) = (t * t, u * u, v * v, w * w);
    let cross_a: Integer = (t * w - u * v) * 2;
    let cross_b: Integer = (t * v + u * w) * 2;
    FourSquareSplit {
        s: &t2 + &u2 + &v2 + &w2,
        parts: [(&t2 + &u2 - &v2 - &w2).abs(), cross_a.abs(), cross_b.abs()],
    }
}

/// One line of a fixture file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub set: SquareSet,
    pub expect_pairs: usize,
    /// The set's element sum is expected to be a perfect square.
    pub square_sum: bool,
}

/// The published record sets: four 6-sets with all 15 pair sums square and
/// two 7-sets with 18 of 21.
pub const PUBLISHED_SETS: &str = include_str!("../data/published_sets.txt");

/// Parses fixture text: `n=<count> expect=<pairs> [sum=square] <set>` per
/// line; blank lines and `#` comments are ignored.
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| Error::Fixture {
            line: index + 1,
            reason,
        };
        let mut n = None;
        let mut expect = None;
        let mut square_sum = false;
        let mut literal = None;
        for token in line.split_whitespace() {
            match token.split_once('=') {
                Some(("n", v)) => {
                    n = Some(
                        v.parse::<usize>()
                            .map_err(|_| bad(format!("bad n {v:?}")))?,
                    )
                }
                Some(("expect", v)) => {
                    expect = Some(
                        v.parse::<usize>()
                            .map_err(|_| bad(format!("bad expect {v:?}")))?,
                    )
                }
                Some(("sum", "square")) => square_sum = true,
                Some((key, _)) => return Err(bad(format!("unknown header {key:?}"))),
                None if literal.is_none() => literal = Some(token),
                None => return Err(bad(format!("unexpected token {token:?}"))),
            }
        }
        let set: SquareSet = literal
            .ok_or_else(|| bad("missing set literal".into()))?
            .parse()
            .map_err(|e: Error| bad(e.to_string()))?;
        let n = n.ok_or_else(|| bad("missing n=".into()))?;
        let expect_pairs = expect.ok_or_else(|| bad("missing expect=".into()))?;
        if n != set.len() {
            return Err(bad(format!("n={n} but set has {} elements", set.len())));
        }
        out.push(Fixture {
            set,
            expect_pairs,
            square_sum,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub fixture: Fixture,
    pub report: PairReport,
    pub sum_root: Option<Integer>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.report.square_pairs == self.fixture.expect_pairs
            && (!self.fixture.square_sum || self.sum_root.is_some())
    }

    /// Human-readable reason for a failed fixture, naming the failing pairs.
    pub fn failure(&self) -> Option<String> {
        if self.passed() {
            return None;
        }
        let failing: Vec<String> = self
            .report
            .failing()
            .map(|e| format!("({},{})", e.i + 1, e.j + 1))
            .collect();
        let mut msg = format!(
            "{{{}}}: {} of {} square pairs, expected {}; non-square pairs {}",
            self.fixture.set,
            self.report.square_pairs,
            self.report.total_pairs,
            self.fixture.expect_pairs,
            failing.join(" ")
        );
        if self.fixture.square_sum && self.sum_root.is_none() {
            msg.push_str("; element sum is not a square");
        }
        Some(msg)
    }
}

pub fn verify_fixtures(fixtures: &[Fixture]) -> Vec<FixtureOutcome> {
    fixtures
        .iter()
        .map(|fixture| FixtureOutcome {
            report: verify_pairs(&fixture.set),
            sum_root: square_root(fixture.set.sum()),
            fixture: fixture.clone(),
        })
        .collect()
}

/// Verifies the built-in [`PUBLISHED_SETS`].
pub fn verify_published_sets() -> Vec<FixtureOutcome> {
    let fixtures = parse_fixtures(PUBLISHED_SETS).expect("built-in fixture file parses");
    verify_fixtures(&fixtures)
}

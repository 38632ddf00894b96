//! The set data model, pair and triple verification with root witnesses,
//! the l1 size ordering, and the pair-to-triple z-transform.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::arith::{square_root, Integer};
use crate::error::{Error, Result};

pub const MIN_SET_SIZE: usize = 2;
pub const MAX_SET_SIZE: usize = 7;

/// Distinct nonzero integers held in ascending order, with cached sum and
/// l1 norm.
///
/// The natural ordering is by l1 norm, ties broken by lexicographic
/// comparison of the elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareSet {
    elements: Vec<Integer>,
    sum: Integer,
    l1: Integer,
}

impl SquareSet {
    /// Validates and sorts `values`. Fails on a zero, a duplicate, or a size
    /// outside `[2, 7]`.
    pub fn new<I>(values: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Integer>,
    {
        let mut elements: Vec<Integer> = values.into_iter().map(Into::into).collect();
        if !(MIN_SET_SIZE..=MAX_SET_SIZE).contains(&elements.len()) {
            return Err(Error::Size(elements.len()));
        }
        if elements.iter().any(Zero::is_zero) {
            return Err(Error::ZeroElement);
        }
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate(w[0].clone()));
        }
        let sum = elements.iter().sum();
        let l1 = elements.iter().map(Signed::abs).sum();
        Ok(SquareSet { elements, sum, l1 })
    }

    pub fn elements(&self) -> &[Integer] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; sets hold at least two elements.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sum(&self) -> &Integer {
        &self.sum
    }

    /// `Σ |x_i|`
    pub fn l1_norm(&self) -> &Integer {
        &self.l1
    }

    pub fn smallest(&self) -> &Integer {
        &self.elements[0]
    }

    pub fn largest(&self) -> &Integer {
        &self.elements[self.elements.len() - 1]
    }

    pub fn contains(&self, value: &Integer) -> bool {
        self.elements.binary_search(value).is_ok()
    }

    pub fn negative_count(&self) -> usize {
        self.elements.iter().filter(|x| x.is_negative()).count()
    }

    pub fn odd_count(&self) -> usize {
        self.elements.iter().filter(|x| x.is_odd()).count()
    }

    /// Copy of this set with one more element.
    pub fn with_element(&self, value: Integer) -> Result<SquareSet> {
        SquareSet::new(self.elements.iter().cloned().chain(std::iter::once(value)))
    }
}

/// Validates and sorts a list of values into a [`SquareSet`].
pub fn make_set(values: &[Integer]) -> Result<SquareSet> {
    SquareSet::new(values.iter().cloned())
}

/// `Σ |x_i|`
pub fn l1_norm(set: &SquareSet) -> Integer {
    set.l1.clone()
}

/// Total order used for every "smallest sets" ranking.
pub fn compare_sets(a: &SquareSet, b: &SquareSet) -> Ordering {
    a.l1.cmp(&b.l1).then_with(|| a.elements.cmp(&b.elements))
}

impl Ord for SquareSet {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_sets(self, other)
    }
}

impl PartialOrd for SquareSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SquareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Parses a comma-separated list of signed decimal integers, e.g.
/// `-40, 65,104,296`. The error names the first malformed token.
pub fn parse_integer_list(text: &str) -> Result<Vec<Integer>> {
    text.split(',')
        .map(|token| {
            let token = token.trim();
            let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(token.to_string()));
            }
            token
                .parse::<Integer>()
                .map_err(|_| Error::Parse(token.to_string()))
        })
        .collect()
}

impl FromStr for SquareSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SquareSet::new(parse_integer_list(s)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub sum: Integer,
    /// Present iff `sum` is a perfect square.
    pub root: Option<Integer>,
}

impl PairEntry {
    pub fn is_square(&self) -> bool {
        self.root.is_some()
    }
}

/// Every unordered pair `i < j` of a set, in lexicographic order, with its
/// sum and square-root witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub entries: Vec<PairEntry>,
    pub square_pairs: usize,
    pub total_pairs: usize,
}

impl PairReport {
    pub fn is_complete(&self) -> bool {
        self.square_pairs == self.total_pairs
    }

    pub fn failing(&self) -> impl Iterator<Item = &PairEntry> {
        self.entries.iter().filter(|e| !e.is_square())
    }
}

pub fn verify_pairs(set: &SquareSet) -> PairReport {
    let x = set.elements();
    let mut entries = Vec::with_capacity(x.len() * (x.len() - 1) / 2);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let sum = &x[i] + &x[j];
            let root = square_root(&sum);
            entries.push(PairEntry { i, j, sum, root });
        }
    }
    let square_pairs = entries.iter().filter(|e| e.is_square()).count();
    PairReport {
        total_pairs: entries.len(),
        square_pairs,
        entries,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sum: Integer,
    pub root: Option<Integer>,
}

impl TripleEntry {
    pub fn is_square(&self) -> bool {
        self.root.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleReport {
    pub entries: Vec<TripleEntry>,
    pub square_triples: usize,
    pub total_triples: usize,
}

impl TripleReport {
    pub fn is_complete(&self) -> bool {
        self.square_triples == self.total_triples
    }
}

/// Checks every unordered triple of a 5-element set.
pub fn verify_triples(set: &SquareSet) -> Result<TripleReport> {
    if set.len() != 5 {
        return Err(Error::domain("verify_triples", set.len(), "n = 5"));
    }
    let x = set.elements();
    let mut entries = Vec::with_capacity(10);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            for k in j + 1..x.len() {
                let sum = &x[i] + &x[j] + &x[k];
                let root = square_root(&sum);
                entries.push(TripleEntry { i, j, k, sum, root });
            }
        }
    }
    let square_triples = entries.iter().filter(|e| e.is_square()).count();
    Ok(TripleReport {
        total_triples: entries.len(),
        square_triples,
        entries,
    })
}

/// Maps a 5-set to `{S/3 − x_i}`, or to `{3S − 9x_i}` when `3 ∤ S`.
///
/// Each output triple sums to the complementary input pair sum (times 9 in
/// the scaled branch), so a pair-square set becomes a triple-square set.
pub fn pairs_to_triples(set: &SquareSet) -> Result<SquareSet> {
    if set.len() != 5 {
        return Err(Error::domain("pairs_to_triples", set.len(), "n = 5"));
    }
    let s = set.sum();
    let three = Integer::from(3);
    let mapped: Vec<Integer> = if (s % &three).is_zero() {
        let third = s / &three;
        set.elements().iter().map(|x| &third - x).collect()
    } else {
        let s3 = s * &three;
        set.elements().iter().map(|x| &s3 - x * 9).collect()
    };
    SquareSet::new(mapped).map_err(|e| Error::Degenerate(format!("z-transform of {{{set}}}: {e}")))
}

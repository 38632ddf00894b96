use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::{factorize, Factorization};
#[cfg(test)]
use super::sqrt::isqrt;
use super::sqrt::square_root;
use super::Integer;
use crate::error::{Error, Result};

/// A representation `target = small² + large²` with `0 ≤ small ≤ large`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoSquareRep {
    small: Integer,
    large: Integer,
    target: Integer,
}

impl TwoSquareRep {
    pub fn small(&self) -> &Integer {
        &self.small
    }

    pub fn large(&self) -> &Integer {
        &self.large
    }

    pub fn target(&self) -> &Integer {
        &self.target
    }
}

/// Number of representations `n = a² + b²` with `0 ≤ a ≤ b`.
///
/// With `B = ∏ (m + 1)` over primes `≡ 1 (mod 4)`, the count is `⌊B/2⌋`,
/// plus one when `n` is a square or twice a square, and zero whenever a
/// prime `≡ 3 (mod 4)` has an odd exponent. The frequently quoted
/// `(B + δ)/2` with `δ = 1` when every `m` is odd is not an integer for
/// `n = 25`; this form agrees with direct enumeration for every `n`.
pub fn two_square_count(f: &Factorization) -> u64 {
    let mut product = 1u64;
    let mut square_part = true;
    for (prime, exponent) in f.factors() {
        let residue = (prime % 4u32).to_u32().unwrap_or(0);
        match residue {
            3 if exponent % 2 == 1 => return 0,
            1 => {
                product *= *exponent as u64 + 1;
                square_part &= exponent % 2 == 0;
            }
            // 2 and primes ≡ 3 (mod 4) with even exponent leave the count
            // alone; n is a square or twice a square iff every m is even.
            _ => {}
        }
    }
    product / 2 + u64::from(square_part)
}

#[derive(Clone)]
struct Gaussian {
    re: Integer,
    im: Integer,
}

impl Gaussian {
    fn mul(&self, other: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn conj(&self) -> Gaussian {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn pow(&self, mut exp: u32) -> Gaussian {
        let mut acc = Gaussian {
            re: Integer::one(),
            im: Integer::zero(),
        };
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }
}

/// Writes a prime `p ≡ 1 (mod 4)` as `a² + b²` (Hermite-Serret).
fn prime_as_gaussian(p: &Integer) -> Gaussian {
    let minus_one = p - 1u32;
    let quarter = &minus_one >> 2u32;
    let mut c = Integer::from(2);
    let root = loop {
        let t = c.modpow(&quarter, p);
        if (&t * &t) % p == minus_one {
            break t;
        }
        c += 1;
    };
    let (mut a, mut b) = (p.clone(), root);
    while &b * &b > *p {
        let r = a.mod_floor(&b);
        a = b;
        b = r;
    }
    let other = square_root(&(p - &b * &b)).expect("Hermite-Serret yields a square remainder");
    Gaussian { re: b, im: other }
}

/// All representations `n = small² + large²` with `0 ≤ small ≤ large`,
/// ascending by `small`.
///
/// Built from the Gaussian-integer factorization of `n`, so the cost is
/// that of factoring `n` plus one product per representation.
pub fn two_square_reps(n: &Integer) -> Result<Vec<TwoSquareRep>> {
    if n < &Integer::one() {
        return Err(Error::domain("two_square_reps", n, "n >= 1"));
    }
    let f = factorize(n)?;
    let mut base = Gaussian {
        re: Integer::one(),
        im: Integer::zero(),
    };
    let mut split_primes = Vec::new();
    for (prime, exponent) in f.factors() {
        match (prime % 4u32).to_u32().unwrap_or(0) {
            2 => {
                let one_plus_i = Gaussian {
                    re: Integer::one(),
                    im: Integer::one(),
                };
                base = base.mul(&one_plus_i.pow(*exponent));
            }
            3 => {
                if exponent % 2 == 1 {
                    return Ok(Vec::new());
                }
                let scale = prime.pow(exponent / 2);
                base.re *= &scale;
                base.im *= &scale;
            }
            _ => split_primes.push((prime_as_gaussian(prime), *exponent)),
        }
    }

    let mut products = vec![base];
    for (pi, exponent) in &split_primes {
        let conj = pi.conj();
        let mut next = Vec::with_capacity(products.len() * (*exponent as usize + 1));
        for k in 0..=*exponent {
            let factor = pi.pow(k).mul(&conj.pow(exponent - k));
            next.extend(products.iter().map(|z| z.mul(&factor)));
        }
        products = next;
    }

    let reps: BTreeSet<(Integer, Integer)> = products
        .into_iter()
        .map(|z| {
            let (a, b) = (z.re.abs(), z.im.abs());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    Ok(reps
        .into_iter()
        .map(|(small, large)| TwoSquareRep {
            small,
            large,
            target: n.clone(),
        })
        .collect())
}

/// Direct enumeration over `small ≤ isqrt(n/2)`; test oracle.
#[cfg(test)]
pub(crate) fn brute_force_reps(n: u64) -> Vec<(u64, u64)> {
    let limit = isqrt(&Integer::from(n / 2)).unwrap().to_u64().unwrap();
    (0..=limit)
        .filter_map(|a| {
            let rest = n - a * a;
            let b = (rest as f64).sqrt().round() as u64;
            (b * b == rest && a <= b).then_some((a, b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reps(n: i64) -> Vec<(i64, i64)> {
        two_square_reps(&Integer::from(n))
            .unwrap()
            .iter()
            .map(|r| (r.small().to_i64().unwrap(), r.large().to_i64().unwrap()))
            .collect()
    }

    fn count(n: i64) -> u64 {
        two_square_count(&factorize(&Integer::from(n)).unwrap())
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(425), 3);
        assert_eq!(count(3), 0);
        assert_eq!(count(25), 2);
        assert_eq!(count(5), 1);
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 1);
    }

    #[test]
    fn reps_examples() {
        assert_eq!(reps(425), vec![(5, 20), (8, 19), (13, 16)]);
        assert_eq!(reps(625), vec![(0, 25), (7, 24), (15, 20)]);
        assert_eq!(reps(2), vec![(1, 1)]);
        assert_eq!(reps(1), vec![(0, 1)]);
        assert!(reps(21).is_empty());
        assert!(two_square_reps(&Integer::from(0)).is_err());
    }

    #[test]
    fn count_matches_enumeration() {
        for n in 1..=100_000u64 {
            let oracle = brute_force_reps(n);
            let f = factorize(&Integer::from(n)).unwrap();
            assert_eq!(two_square_count(&f), oracle.len() as u64, "n = {n}");
        }
    }

    #[test]
    fn reps_match_enumeration() {
        for n in 1..=20_000u64 {
            let got: Vec<(u64, u64)> = two_square_reps(&Integer::from(n))
                .unwrap()
                .iter()
                .map(|r| (r.small().to_u64().unwrap(), r.large().to_u64().unwrap()))
                .collect();
            assert_eq!(got, brute_force_reps(n), "n = {n}");
        }
    }

    #[test]
    fn reps_of_large_target() {
        // 5^3 * 13^2 * 17 * 10^16 + nothing fancy: every rep must round-trip
        let n = Integer::from(5u64.pow(3) * 13u64.pow(2) * 17) * Integer::from(10u64).pow(16);
        let all = two_square_reps(&n).unwrap();
        assert_eq!(all.len() as u64, two_square_count(&factorize(&n).unwrap()));
        for r in &all {
            assert_eq!(r.small() * r.small() + r.large() * r.large(), n);
        }
    }
}

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Integer;
use crate::error::{Error, Result};

/// Prime factorization of a positive integer.
///
/// Primes are strictly ascending with positive exponents and their product
/// is `value`. The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: Integer,
    factors: Vec<(Integer, u32)>,
}

impl Factorization {
    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn factors(&self) -> &[(Integer, u32)] {
        &self.factors
    }

    /// Number of positive divisors.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<Integer> {
        let mut divisors = vec![Integer::one()];
        for (prime, exponent) in &self.factors {
            let len = divisors.len();
            let mut power = Integer::one();
            for _ in 0..*exponent {
                power *= prime;
                for i in 0..len {
                    divisors.push(&divisors[i] * &power);
                }
            }
        }
        divisors.sort();
        divisors
    }
}

/// Primes below 1000, used for trial division before switching to rho.
fn small_primes() -> &'static [u64] {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 1000usize;
        let mut composite = vec![false; limit];
        let mut primes = Vec::new();
        for i in 2..limit {
            if !composite[i] {
                primes.push(i as u64);
                for j in (i * i..limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        primes
    })
}

const TRIAL_LIMIT: u64 = 1000;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent rho; `n` must be an odd composite.
fn rho_u64(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1..n {
        let step = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let (mut r, mut q, mut g) = (1u64, 1u64, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho failed on composite {n}")
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if n < TRIAL_LIMIT * TRIAL_LIMIT || is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn run_length(mut primes: Vec<u64>) -> Vec<(u64, u32)> {
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    factors
}

/// Factorization of a machine-word integer `n ≥ 1` as (prime, exponent)
/// pairs with primes ascending. Returns an empty list for 1 and for 0.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    if n == 0 {
        return Vec::new();
    }
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    split_u64(n, &mut primes);
    run_length(primes)
}

/// Appends every divisor of the number with the given factorization to `out`
/// (unsorted).
pub fn divisors_from_u64_factors(factors: &[(u64, u32)], out: &mut Vec<u64>) {
    out.clear();
    out.push(1);
    for &(prime, exponent) in factors {
        let len = out.len();
        let mut power = 1u64;
        for _ in 0..exponent {
            power *= prime;
            for i in 0..len {
                out.push(out[i] * power);
            }
        }
    }
}

fn pow_mod_big(base: &Integer, exp: &Integer, m: &Integer) -> Integer {
    base.modpow(exp, m)
}

/// Miller-Rabin with the first 24 prime bases; deterministic below 3.3e24 and
/// overwhelmingly reliable above.
fn is_probable_prime_big(n: &Integer) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = Integer::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in small_primes().iter().take(24) {
        let a = Integer::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = pow_mod_big(&a, &d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &Integer) -> Integer {
    let mut c = Integer::one();
    loop {
        let step = |x: &Integer| (x * x + &c) % n;
        let mut x = Integer::from(2);
        let mut y = x.clone();
        let mut g = Integer::one();
        let mut r = 1u64;
        let mut q = Integer::one();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = step(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = step(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn split_big(n: Integer, out: &mut Vec<Integer>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        out.extend(
            factorize_u64(small)
                .into_iter()
                .flat_map(|(p, e)| std::iter::repeat_n(Integer::from(p), e as usize)),
        );
        return;
    }
    if is_probable_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

/// Prime factorization of `n ≥ 1`: trial division, then Miller-Rabin and
/// Pollard-Brent rho for cofactors above 10⁶.
pub fn factorize(n: &Integer) -> Result<Factorization> {
    if n < &Integer::one() {
        return Err(Error::domain("factorize", n, "n >= 1"));
    }
    let factors = match n.to_u64() {
        Some(small) => factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (Integer::from(p), e))
            .collect(),
        None => {
            let mut rest = n.clone();
            let mut primes = Vec::new();
            for &p in small_primes() {
                let p = Integer::from(p);
                while (&rest % &p).is_zero() {
                    rest /= &p;
                    primes.push(p.clone());
                }
            }
            split_big(rest, &mut primes);
            primes.sort();
            let mut factors: Vec<(Integer, u32)> = Vec::new();
            for p in primes {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
            factors
        }
    };
    Ok(Factorization {
        value: n.clone(),
        factors,
    })
}

/// All `(d, e)` with `d · e = n` and `d ≤ e`, `d` ascending.
pub fn divisor_pairs(n: &Integer) -> Result<Vec<(Integer, Integer)>> {
    if n < &Integer::one() {
        return Err(Error::domain("divisor_pairs", n, "n >= 1"));
    }
    let divisors = factorize(n)?.divisors();
    Ok(divisors
        .iter()
        .take_while(|d| *d * *d <= *n)
        .map(|d| (d.clone(), n / d))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(i64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_i64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(&int(1)).unwrap().factors().is_empty());
        assert_eq!(pairs(&factorize(&int(425)).unwrap()), vec![(5, 2), (17, 1)]);
        assert_eq!(pairs(&factorize(&int(625)).unwrap()), vec![(5, 4)]);
        assert!(factorize(&int(0)).is_err());
        assert!(factorize(&int(-6)).is_err());
    }

    #[test]
    fn factorize_large_semiprimes() {
        // 999999000001 = 10^12 - 10^6 + 1 is prime
        let p = 999_999_000_001u64;
        let q = 1_000_000_007u64;
        assert!(is_prime_u64(p));
        let n = Integer::from(p) * Integer::from(q);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors(), &[(Integer::from(q), 1), (Integer::from(p), 1)]);
        let n = Integer::from(4_294_967_291u64) * Integer::from(4_294_967_279u64);
        assert_eq!(factorize(&n).unwrap().factors().len(), 2);
    }

    #[test]
    fn factorize_beyond_u64() {
        // (2^61 - 1) * (2^31 - 1)^2 * 3
        let m61 = Integer::from((1u64 << 61) - 1);
        let m31 = Integer::from((1u64 << 31) - 1);
        let n = &m61 * &m31 * &m31 * 3;
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors(), &[(int(3), 1), (m31, 2), (m61, 1)]);
        let product: Integer = f.factors().iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(product, n);
    }

    #[test]
    fn divisor_pair_examples() {
        assert_eq!(divisor_pairs(&int(1)).unwrap(), vec![(int(1), int(1))]);
        assert_eq!(
            divisor_pairs(&int(12)).unwrap(),
            vec![(int(1), int(12)), (int(2), int(6)), (int(3), int(4))]
        );
        assert!(divisor_pairs(&int(9856))
            .unwrap()
            .contains(&(int(28), int(352))));
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 20_000u64;
        for n in 0..limit {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), naive, "n = {n}");
        }
        // strong pseudoprimes to several small bases
        for n in [3215031751u64, 2152302898747, 3474749660383, 341550071728321] {
            assert!(!is_prime_u64(n));
        }
    }
}

use std::cmp::Ordering;

use num_bigint::BigInt;
use pairsquare::arith::{divisor_pairs, factorize, isqrt, isqrt_u128, isqrt_u64, two_square_reps};
use pairsquare::prob::{cube_sphere_volume, monte_carlo};
use pairsquare::search::{search_n4, search_n5, SearchConfig};
use pairsquare::sets::{compare_sets, pairs_to_triples, verify_pairs};
use pairsquare::{Integer, SquareSet};
use proptest::prelude::*;

fn sorted_sums(values: &[Integer], k: usize) -> Vec<Integer> {
    let n = values.len();
    let mut sums = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == k {
            sums.push(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| &values[i])
                    .sum(),
            );
        }
    }
    sums.sort();
    sums
}

fn distinct_nonzero(len: usize) -> impl Strategy<Value = SquareSet> {
    proptest::collection::btree_set(
        (-10i64.pow(12)..10i64.pow(12)).prop_filter("nonzero", |v| *v != 0),
        len,
    )
    .prop_map(|values| SquareSet::new(values).unwrap())
}

proptest! {
    #[test]
    fn isqrt_brackets(n in any::<u64>(), wide in any::<u128>()) {
        let r = isqrt_u64(n) as u128;
        prop_assert!(r * r <= n as u128 && (r + 1) * (r + 1) > n as u128);
        let r = isqrt_u128(wide);
        prop_assert!(r.checked_mul(r).is_some_and(|sq| sq <= wide));
        prop_assert!((r + 1).checked_mul(r + 1).is_none_or(|sq| sq > wide));
        let big = BigInt::from(wide) * BigInt::from(wide) + BigInt::from(n);
        let root = isqrt(&big).unwrap();
        prop_assert!(&root * &root <= big && (&root + 1) * (&root + 1) > big);
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..u64::MAX) {
        let f = factorize(&Integer::from(n)).unwrap();
        let product: Integer = f.factors().iter().map(|(p, e)| p.pow(*e)).product();
        prop_assert_eq!(product, Integer::from(n));
        let pairs = divisor_pairs(&Integer::from(n)).unwrap();
        prop_assert_eq!(pairs.len() as u64, f.divisor_count().div_ceil(2));
    }

    #[test]
    fn two_square_reps_round_trip(a in 0u64..1 << 30, b in 0u64..1 << 30) {
        let n = Integer::from(a) * a + Integer::from(b) * b;
        prop_assume!(n > Integer::from(0));
        let reps = two_square_reps(&n).unwrap();
        prop_assert!(reps.iter().any(|r| *r.small() == a.min(b).into() && *r.large() == a.max(b).into()));
        for w in reps.windows(2) {
            prop_assert!(w[0].small() < w[1].small());
        }
        for r in &reps {
            prop_assert!(r.small() <= r.large());
            prop_assert_eq!(r.small() * r.small() + r.large() * r.large(), n.clone());
        }
    }

    #[test]
    fn transform_maps_pair_sums_to_triple_sums(set in distinct_nonzero(5)) {
        let Ok(z) = pairs_to_triples(&set) else { return Ok(()) };
        let scale = if (set.sum() % 3u32) == Integer::from(0) { 1 } else { 9 };
        let pairs: Vec<Integer> = sorted_sums(set.elements(), 2).into_iter().map(|s| s * scale).collect();
        prop_assert_eq!(sorted_sums(z.elements(), 3), pairs);
    }

    #[test]
    fn compare_sets_is_a_total_order(a in distinct_nonzero(3), b in distinct_nonzero(3), c in distinct_nonzero(3)) {
        prop_assert_eq!(compare_sets(&a, &b), compare_sets(&b, &a).reverse());
        prop_assert_eq!(compare_sets(&a, &a), Ordering::Equal);
        let mut sorted = [a, b, c];
        sorted.sort_by(compare_sets);
        prop_assert!(compare_sets(&sorted[0], &sorted[2]) != Ordering::Greater);
    }
}

#[test]
fn search_outputs_are_exact_and_bounded() {
    let mut sets = search_n4(&SearchConfig::new(20_000)).unwrap();
    sets.extend(search_n5(&SearchConfig::new(150_000)).unwrap());
    sets.extend(search_n5(&SearchConfig::new(500_000).positive(true)).unwrap());
    assert!(sets.len() > 100);
    for set in &sets {
        let report = verify_pairs(set);
        assert!(report.is_complete(), "{set}");
        assert!(set.negative_count() <= 1 && set.odd_count() <= 1, "{set}");
        assert!(set.l1_norm() >= set.sum(), "{set}");
        for entry in &report.entries {
            let root = entry.root.as_ref().unwrap();
            assert!(*root >= Integer::from(0) && root * root == entry.sum);
        }
    }
}

#[test]
fn monte_carlo_volume_matches() {
    let mc = monte_carlo(2_000_000, 42).unwrap();
    let z = (mc.inside.value - cube_sphere_volume()).abs() / mc.inside.std_error;
    assert!(z < 4.0, "{z}");
}

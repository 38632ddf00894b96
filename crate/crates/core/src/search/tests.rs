use super::*;
use crate::sets::verify_pairs;

fn set(text: &str) -> SquareSet {
    text.parse().unwrap()
}

fn int(v: i64) -> Integer {
    Integer::from(v)
}

fn literal(sets: &[SquareSet]) -> Vec<String> {
    sets.iter().map(ToString::to_string).collect()
}

/// All 4-subsets of [-limit, limit] \ {0} with square pair sums and element
/// sum in [1, s_max], by clique enumeration on the square-sum graph.
fn brute_force_quads(limit: i64, s_max: i64) -> Vec<SquareSet> {
    let is_sq = |v: i64| v >= 0 && ((v as f64).sqrt().round() as i64).pow(2) == v;
    let values: Vec<i64> = (-limit..=limit).filter(|&v| v != 0).collect();
    let partners = |a: i64| -> Vec<i64> {
        values
            .iter()
            .copied()
            .filter(|&b| b > a && is_sq(a + b))
            .collect()
    };
    let mut out = Vec::new();
    for &a in &values {
        let pa = partners(a);
        for (ib, &b) in pa.iter().enumerate() {
            for (ic, &c) in pa.iter().enumerate().skip(ib + 1) {
                if !is_sq(b + c) {
                    continue;
                }
                for &d in &pa[ic + 1..] {
                    let s = a + b + c + d;
                    if (1..=s_max).contains(&s) && is_sq(b + d) && is_sq(c + d) {
                        out.push(SquareSet::new([a, b, c, d]).unwrap());
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn solve_three_examples() {
    assert_eq!(
        solve_three(&int(2), &int(4), &int(8)).unwrap(),
        set("-22,26,38")
    );
    assert_eq!(
        solve_three(&int(1), &int(2), &int(3)).unwrap(),
        set("-2,3,6")
    );
    assert!(matches!(
        solve_three(&int(1), &int(1), &int(1)),
        Err(Error::Degenerate(_))
    ));
    assert!(solve_three(&int(-1), &int(1), &int(1)).is_err());
}

#[test]
fn solve_three_scales_half_integers() {
    // 1 + 4 + 16 is odd: halves are non-integral, so the set is scaled by 4,
    // giving the same set as (2, 4, 8)
    let s = solve_three(&int(1), &int(2), &int(4)).unwrap();
    assert_eq!(s, set("-22,26,38"));
    assert!(verify_pairs(&s).is_complete());
}

#[test]
fn smallest_quads() {
    let cfg = SearchConfig::new(1500).with_top_k(5);
    assert_eq!(
        literal(&search_n4(&cfg).unwrap()),
        [
            "-40,65,104,296",
            "-94,95,130,194",
            "-88,88,137,488",
            "-94,98,263,578",
            "-190,239,290,386",
        ]
    );
}

#[test]
fn smallest_positive_quads() {
    let cfg = SearchConfig::new(8000).with_top_k(5).positive(true);
    assert_eq!(
        literal(&search_n4(&cfg).unwrap()),
        [
            "2,359,482,3362",
            "8,1016,1288,3473",
            "162,567,1282,4194",
            "2,167,674,6722",
            "98,863,1346,5378",
        ]
    );
}

#[test]
fn small_range_contains_425_set() {
    let all = search_n4(&SearchConfig::new(425)).unwrap();
    assert!(all.contains(&set("-40,65,104,296")));
    let none = search_n4(&SearchConfig::new(100)).unwrap();
    assert!(none.iter().all(|s| s.sum() <= &int(100)));
}

#[test]
fn search_n4_matches_clique_oracle() {
    let found = search_n4(&SearchConfig::new(700)).unwrap();
    let mut sorted = found.clone();
    sorted.sort();
    assert_eq!(found, sorted);
    assert_eq!(found, brute_force_quads(700, 700));
}

#[test]
fn output_independent_of_threads_and_blocks() {
    let base = SearchConfig::new(30_000).with_top_k(50);
    let reference = search_n5(&base).unwrap();
    for (threads, block) in [(1, 1 << 15), (3, 777), (8, 4096)] {
        let cfg = SearchConfig {
            threads,
            block_size: block,
            ..base.clone()
        };
        assert_eq!(search_n5(&cfg).unwrap(), reference);
        assert_eq!(search_n4(&cfg).unwrap(), search_n4(&base).unwrap());
    }
}

#[test]
fn extend_finds_known_fifth_element() {
    let base = set("-4878,4978,6903,12978");
    let cands = extend_set(&base, Anchor(0, 1), None).unwrap();
    let hit = cands
        .iter()
        .find(|c| c.new_element == int(31122))
        .expect("31122 found");
    assert_eq!((hit.w.clone(), hit.y.clone()), (int(162), int(190)));
    assert!(hit.report.is_complete());
    assert!(cands.iter().all(candidate_is_consistent));
}

#[test]
fn extend_collision_is_skipped() {
    assert!(extend_set(&set("-2,3,6"), Anchor(0, 1), None)
        .unwrap()
        .is_empty());
    assert!(extend_set(&set("-2,3,6"), Anchor(1, 3), None).is_err());
    assert!(extend_set(&set("-2,3,6"), Anchor(0, 1), Some(7)).is_err());
}

#[test]
fn extend_lagrange_six_set() {
    let lagrange = set("-15863902,17798783,21126338,49064546,82221218,447422978");
    let cands = extend_set(&lagrange, Anchor(0, 1), Some(18)).unwrap();
    let hit = cands
        .iter()
        .find(|c| c.new_element == int(15945698))
        .unwrap();
    assert_eq!(hit.report.square_pairs, 18);
}

#[test]
fn near_scan_with_full_threshold_equals_exact_extension() {
    let base = set("-4878,4978,6903,12978");
    let exact: Vec<Integer> = extend_set(&base, Anchor(0, 1), None)
        .unwrap()
        .into_iter()
        .map(|c| c.new_element)
        .collect();
    let mut exact_sorted = exact.clone();
    exact_sorted.sort();
    let scanned: Vec<Integer> = near_solution_scan(std::slice::from_ref(&base), 10)
        .unwrap()
        .into_iter()
        .map(|c| c.new_element)
        .collect();
    assert_eq!(scanned, exact_sorted);

    let five = set("-4878,4978,6903,12978,31122");
    let exact = extend_set(&five, Anchor(0, 1), None).unwrap();
    let scanned = near_solution_scan(std::slice::from_ref(&five), 15).unwrap();
    assert_eq!(scanned.len(), exact.len());
}

#[test]
fn near_scan_matches_brute_force_on_small_base() {
    let base = set("-2,3,6");
    let scanned: Vec<i64> = near_solution_scan(std::slice::from_ref(&base), 5)
        .unwrap()
        .iter()
        .map(|c| i64::try_from(&c.new_element).unwrap())
        .filter(|c| c.abs() < 10_000)
        .collect();
    let is_sq = |v: i64| v >= 0 && ((v as f64).sqrt().round() as i64).pow(2) == v;
    let oracle: Vec<i64> = (-10_000i64..10_000)
        .filter(|c| ![0, -2, 3, 6].contains(c))
        .filter(|c| [-2, 3, 6].iter().filter(|&&x| is_sq(x + c)).count() >= 2)
        .collect();
    assert_eq!(scanned, oracle);
}

#[test]
fn near_scan_rejects_incomplete_base() {
    assert!(near_solution_scan(&[set("1,2,3")], 3).is_err());
}

#[test]
fn planted_extension_is_discovered() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        // x_i + c = w², x_j + c = y² for a random c
        let c: i64 = rng.random_range(-5000..5000);
        let w: i64 = rng.random_range(0..200);
        let y: i64 = rng.random_range(w + 1..w + 300);
        let (xi, xj) = (w * w - c, y * y - c);
        let extra: i64 = rng.random_range(-3000..3000);
        let Ok(base) = SquareSet::new([xi, xj, extra]) else {
            continue;
        };
        if base.contains(&int(c)) || c == 0 {
            continue;
        }
        let i = base.elements().iter().position(|v| *v == int(xi)).unwrap();
        let j = base.elements().iter().position(|v| *v == int(xj)).unwrap();
        let anchor = Anchor(i.min(j), i.max(j));
        let extended_pairs = verify_pairs(&base.with_element(int(c)).unwrap()).square_pairs;
        let cands = extend_set(&base, anchor, Some(extended_pairs)).unwrap();
        assert!(
            cands.iter().any(|cand| cand.new_element == int(c)),
            "c = {c} missing for base {{{base}}}"
        );
    }
}

#[test]
fn kernel_extension_agrees_with_exact_extension() {
    let quads = search_n4(&SearchConfig::new(6000)).unwrap();
    let mut ext = kernel::Extender::new(6000);
    for quad in quads.iter().take(300) {
        let xs: Vec<i128> = quad
            .elements()
            .iter()
            .map(|x| i128::try_from(x).unwrap())
            .collect();
        let mut fast = Vec::new();
        ext.extend(&xs, i128::MIN, i128::MAX, |c| fast.push(Integer::from(c)));
        fast.sort();
        let mut exact: Vec<Integer> = extend_set(quad, Anchor(0, 1), None)
            .unwrap()
            .into_iter()
            .map(|c| c.new_element)
            .collect();
        exact.sort();
        assert_eq!(fast, exact, "base {{{quad}}}");
    }
}

#[test]
fn emitted_sets_obey_parity_and_sign_limits() {
    let cfg = SearchConfig::new(20_000);
    for s in search_n4(&cfg)
        .unwrap()
        .iter()
        .chain(&search_n5(&cfg).unwrap())
    {
        assert!(verify_pairs(s).is_complete());
        assert!(s.negative_count() <= 1, "{s}");
        assert!(s.odd_count() <= 1, "{s}");
        assert!(s.l1_norm() >= s.sum());
    }
}

#[test]
fn config_validation() {
    let mut cfg = SearchConfig::new(10);
    cfg.s_min = 11;
    assert!(search_n4(&cfg).is_err());
    assert!(search_n4(&SearchConfig::new(10).with_top_k(0)).is_err());
    assert!(search_n4(&SearchConfig::new(MAX_SEARCH_SUM + 1)).is_err());
}

#[test]
fn checkpoint_resume_skips_processed_sums() {
    let dir = std::env::temp_dir().join(format!("pairsquare-resume-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ck");
    let _ = std::fs::remove_file(&path);
    let cfg = SearchConfig {
        checkpoint: Some(path.clone()),
        block_size: 100,
        ..SearchConfig::new(1500)
    };
    let first = search_n4(&cfg).unwrap();
    assert_eq!(first, search_n4(&SearchConfig::new(1500)).unwrap());
    assert_eq!(read_checkpoint(&path).unwrap(), Some(1500));
    assert!(search_n4(&cfg).unwrap().is_empty());

    std::fs::write(&path, "1000\n").unwrap();
    let resumed = search_n4(&cfg).unwrap();
    assert!(!resumed.is_empty());
    assert!(resumed.iter().all(|s| s.sum() > &int(1000)));
    std::fs::remove_dir_all(&dir).unwrap();
}

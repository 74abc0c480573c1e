//! The acceptance gate: ten numbered criteria covering enumeration,
//! distribution, series, recurrence, total, avoider, and bijection claims.
//! Each criterion is one test, so the harness prints one pass/fail line per
//! criterion; run with `--nocapture` for a one-line summary of each as well.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use flatcat::counts;
use flatcat::enumerate::{iter_catalan, iter_flattened};
use flatcat::verify::{run_suite, Suite, VerifyReport};
use flatcat::words::Pattern;
use num_bigint::BigInt;

fn require_pass(criterion: usize, report: &VerifyReport, blurb: &str) {
    assert!(
        report.passed(),
        "criterion {criterion}: FAIL\n{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
    println!("criterion {criterion}: pass — {blurb}");
}

/// Number of words of each occurrence count of `pattern` among flattened
/// Catalan words of length `n` — the raw shape of the distribution.
fn occurrence_histogram(n: usize, pattern: &Pattern) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for w in iter_flattened(n) {
        *hist.entry(w.count_pattern(pattern)).or_insert(0u64) += 1;
    }
    hist
}

#[test]
fn criterion_01_cardinality_to_length_fourteen() {
    let start = Instant::now();
    for n in 1..=14usize {
        let counted = iter_flattened(n).count_words();
        let expected = (BigInt::from(3u32).pow(n as u32 - 1) + 1u32) / 2u32;
        assert_eq!(
            BigInt::from(counted),
            expected,
            "cardinality mismatch at length {n}"
        );
        if n == 14 {
            assert_eq!(counted, 797_162);
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "sequential count took {elapsed:?}, budget is one minute"
    );
    println!(
        "criterion 1: pass — sequential counts match (3^(n-1)+1)/2 for lengths 1..=14 in {:.2}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_length_six_census() {
    let flattened: BTreeSet<String> = iter_flattened(6).map(|w| w.to_string()).collect();
    assert_eq!(
        flattened.len(),
        122,
        "expected exactly 122 words of length 6"
    );

    let catalan: BTreeSet<String> = iter_catalan(6).map(|w| w.to_string()).collect();
    assert!(flattened.is_subset(&catalan));
    let rejected: Vec<String> = catalan.difference(&flattened).cloned().collect();
    let expected: Vec<String> = [
        "1,1,2,3,2,1",
        "1,2,2,3,2,1",
        "1,2,3,2,1,1",
        "1,2,3,2,1,2",
        "1,2,3,2,2,1",
        "1,2,3,2,3,1",
        "1,2,3,3,2,1",
        "1,2,3,4,2,1",
        "1,2,3,4,3,1",
        "1,2,3,4,3,2",
    ]
    .into_iter()
    .map(str::to_string)
    .collect();
    assert_eq!(
        rejected, expected,
        "Catalan words of length 6 that fail the flatness test"
    );
    println!(
        "criterion 2: pass — 122 flattened words at length 6; the 10 excluded Catalan words match the frozen list"
    );
}

#[test]
fn criterion_03_pattern_distributions_to_twelve() {
    require_pass(
        3,
        &run_suite(Suite::Table1, Some(12)),
        "all 13 single-pattern distributions match brute force through length 12",
    );
}

#[test]
fn criterion_04_joint_distributions_to_ten() {
    require_pass(
        4,
        &run_suite(Suite::Theorems, Some(10)),
        "all five joint four-variable distributions match brute force through length 10",
    );
}

#[test]
fn criterion_05_functional_equations_to_order_twenty() {
    require_pass(
        5,
        &run_suite(Suite::Functional, Some(20)),
        "all five functional-equation residuals vanish through order 20",
    );
}

#[test]
fn criterion_06_recurrence_arrays() {
    require_pass(
        6,
        &run_suite(Suite::Recurrences, Some(10)),
        "arrays match brute force through length 10; double series and auxiliary sequences agree through order 20",
    );
}

#[test]
fn criterion_07_occurrence_totals() {
    require_pass(
        7,
        &run_suite(Suite::Totals, Some(12)),
        "totals match brute force through length 12 and series derivatives through order 20",
    );
}

#[test]
fn criterion_08_avoider_counts() {
    require_pass(
        8,
        &run_suite(Suite::Avoiders, Some(12)),
        "avoider formulas match brute force through length 12 and series at q=0 through order 20",
    );
}

#[test]
fn criterion_09_bijections() {
    require_pass(
        9,
        &run_suite(Suite::Bijections, Some(12)),
        "all seven maps verified exhaustively on their stated ranges",
    );
}

#[test]
fn criterion_10_equidistribution_and_the_211_212_split() {
    let p = |s: &str| s.parse::<Pattern>().expect("pattern literal");
    let (p112, p122) = (p("112"), p("122"));
    let (p211, p212, p221, p231) = (p("211"), p("212"), p("221"), p("231"));

    for n in 1..=12usize {
        let d112 = occurrence_histogram(n, &p112);
        assert_eq!(
            d112,
            occurrence_histogram(n, &p122),
            "112 and 122 histograms differ at length {n}"
        );
        let d211 = occurrence_histogram(n, &p211);
        assert_eq!(
            d211,
            occurrence_histogram(n, &p221),
            "211 and 221 histograms differ at length {n}"
        );
        assert_eq!(
            d211,
            occurrence_histogram(n, &p231),
            "211 and 231 histograms differ at length {n}"
        );
    }

    for n in 3..=20u64 {
        assert_eq!(
            counts::tot(&p211, n).expect("closed form"),
            counts::tot(&p212, n).expect("closed form"),
            "211 and 212 totals differ at length {n}"
        );
    }

    let witness = (1..=12usize)
        .find(|&n| occurrence_histogram(n, &p211) != occurrence_histogram(n, &p212))
        .expect("211 and 212 should not be equidistributed");
    println!(
        "criterion 10: pass — 112~122 and 211~221~231 equidistributed through length 12; \
         211 and 212 share totals through length 20 yet their histograms first differ at length {witness}"
    );
}

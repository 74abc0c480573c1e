//! Randomized invariants. Words are generated by walking the one-step
//! extension rule (from a word ending in letter `a` whose terminal run has
//! `m` distinct letters, the legal next letters are exactly `a-m+1..=a+1`),
//! so arbitrary-length inputs are covered without exhaustive enumeration.

use proptest::prelude::*;

use flatcat::bijections::{
    hat_involution, prime_inverse, prime_map, swap_231_221, tilde_involution, trun_map,
    trun_map_inverse,
};
use flatcat::catalog::{self, CatalogId};
use flatcat::enumerate::{iter_flattened, partitioned};
use flatcat::poly::Var;
use flatcat::words::{BinaryWord, CatalanWord, Pattern};

/// Fold free choices into a flattened word via the extension rule.
fn walk(choices: &[u32]) -> CatalanWord {
    let mut letters = vec![1u32];
    let (mut last, mut m) = (1u32, 1u32);
    for &c in choices {
        let next = last - m + 1 + (c % (m + 1));
        letters.push(next);
        m = match next.cmp(&last) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Equal => m,
            std::cmp::Ordering::Greater => m + 1,
        };
        last = next;
    }
    CatalanWord::new(letters).expect("walk yields Catalan words")
}

fn flattened_word() -> impl Strategy<Value = CatalanWord> {
    prop::collection::vec(any::<u32>(), 0..40).prop_map(|c| walk(&c))
}

fn count(w: &CatalanWord, pat: &str) -> usize {
    w.count_pattern(&pat.parse::<Pattern>().expect("pattern literal"))
}

proptest! {
    #[test]
    fn walk_produces_flattened_words(w in flattened_word()) {
        prop_assert!(w.is_flattened());
    }

    #[test]
    fn steps_partition_into_ascents_descents_levels(w in flattened_word()) {
        let s = w.statistics();
        prop_assert_eq!(s.asc + s.des + s.lev, w.len() - 1);
        prop_assert_eq!(s.asc, count(&w, "12"));
        prop_assert_eq!(s.des, count(&w, "21"));
        prop_assert_eq!(s.lev, count(&w, "11"));
        prop_assert_eq!(s.trun, w.trun());
    }

    #[test]
    fn skeleton_is_an_idempotent_level_eraser(w in flattened_word()) {
        let sk = w.skeleton();
        prop_assert!(sk.is_flattened());
        prop_assert_eq!(sk.statistics().lev, 0);
        prop_assert_eq!(sk.skeleton(), sk.clone());
        // Erasing repeats keeps one letter per maximal level block.
        let blocks = w
            .letters()
            .windows(2)
            .filter(|p| p[0] != p[1])
            .count()
            + 1;
        prop_assert_eq!(sk.len(), blocks);
    }

    #[test]
    fn tilde_is_an_involution_exchanging_112_and_122(w in flattened_word()) {
        let t = tilde_involution(&w).expect("flattened input");
        prop_assert!(t.is_flattened());
        prop_assert_eq!(tilde_involution(&t).expect("flattened image"), w.clone());
        prop_assert_eq!(count(&t, "112"), count(&w, "122"));
        prop_assert_eq!(count(&t, "122"), count(&w, "112"));
    }

    #[test]
    fn hat_is_an_involution_exchanging_211_and_221(w in flattened_word()) {
        let h = hat_involution(&w).expect("flattened input");
        prop_assert!(h.is_flattened());
        prop_assert_eq!(hat_involution(&h).expect("flattened image"), w.clone());
        prop_assert_eq!(count(&h, "211"), count(&w, "221"));
        prop_assert_eq!(count(&h, "221"), count(&w, "211"));
        prop_assert_eq!(h.statistics().des, w.statistics().des);
    }

    #[test]
    fn swap_is_an_involution_exchanging_231_and_221(w in flattened_word()) {
        let s = swap_231_221(&w).expect("flattened input");
        prop_assert!(s.is_flattened());
        prop_assert_eq!(swap_231_221(&s).expect("flattened image"), w.clone());
        prop_assert_eq!(count(&s, "231"), count(&w, "221"));
        prop_assert_eq!(count(&s, "221"), count(&w, "231"));
    }

    #[test]
    fn prime_map_round_trips_and_lands_on_level_free_words(
        tail in prop::collection::vec(prop::bool::ANY, 0..24)
    ) {
        let mut bits = vec![0u8];
        bits.extend(tail.iter().map(|&b| u8::from(b)));
        let b = BinaryWord::new(bits).expect("starts with 0");
        let image = prime_map(&b);
        prop_assert!(image.is_flattened());
        prop_assert_eq!(image.statistics().lev, 0);
        prop_assert_eq!(image.len(), b.len() + 1);
        prop_assert_eq!(prime_inverse(&image).expect("image is level-free"), b);
    }

    #[test]
    fn trun_designation_round_trips(w in flattened_word()) {
        // Defined whenever the terminal run has a non-minimal letter, i.e.
        // the word is not constant.
        prop_assume!(w.letters().iter().any(|&l| l != 1));
        let marked = trun_map_inverse(&w).expect("non-constant word");
        prop_assert_eq!(trun_map(&marked).expect("marked image"), w);
    }

    #[test]
    fn partitions_cover_every_word_exactly_once(
        (n, depth) in (2usize..=9).prop_flat_map(|n| (Just(n), 1usize..n)),
    ) {
        let mut from_parts: Vec<String> = Vec::new();
        for part in partitioned(n, depth) {
            part.visit(|letters| {
                from_parts.push(
                    letters
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                );
            });
        }
        from_parts.sort();
        let mut direct: Vec<String> = iter_flattened(n).map(|w| w.to_string()).collect();
        direct.sort();
        prop_assert_eq!(from_parts, direct);
    }

    #[test]
    fn series_expansion_commutes_with_substitution(
        idx in 0usize..CatalogId::ALL.len(),
        var_idx in 0usize..Var::ALL.len(),
        value in -2i64..=2,
    ) {
        let gf = catalog::entry(CatalogId::ALL[idx]).gf;
        let var = Var::ALL[var_idx];
        let expanded = gf.expand(8).expect("catalog entries expand");
        if let Ok(sub_first) = gf.substitute(&[(var, value)]).expand(8) {
            prop_assert_eq!(sub_first, expanded.substitute(&[(var, value)]));
        }
    }
}

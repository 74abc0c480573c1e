//! Exhaustive generation of Catalan and flattened Catalan words in
//! lexicographic order.
//!
//! Generation exploits the closure property of flattened words: if a
//! flattened word ends in letter `a` and its terminal run holds `m` distinct
//! letters, the letters that may follow are exactly the contiguous range
//! `a−m+1 ..= a+1` (descents down to `a−m+1`, the level `a`, the ascent
//! `a+1`). The iterator is therefore a simple odometer over that range at
//! each position, tracking `m` incrementally, and never constructs a
//! non-flattened prefix. Pattern-avoiding streams prune a branch the moment
//! the window ending at the new letter realizes the pattern — every
//! extension would keep that occurrence.
//!
//! [`partitioned`] splits the stream for length `n` into independent
//! sub-streams by length-`depth` prefix (every flattened word extends, so no
//! sub-stream is empty); [`scan_flattened`] runs a map/reduce over those
//! sub-streams, in parallel when the `parallel` feature is enabled.

use crate::words::{window_matches, CatalanWord, Pattern};
use crate::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Iterator over all Catalan words of length `n`, lexicographic order.
pub struct CatalanIter {
    n: usize,
    letters: Vec<u32>,
    state: State,
}

#[derive(PartialEq)]
enum State {
    Fresh,
    Running,
    Done,
}

pub fn iter_catalan(n: usize) -> CatalanIter {
    assert!(n >= 1, "words have length at least 1");
    CatalanIter {
        n,
        letters: vec![1; n],
        state: State::Fresh,
    }
}

impl CatalanIter {
    /// Advances to the next word in place; `false` when exhausted. The
    /// minimal word (all ones) is prepared by the constructor.
    fn advance(&mut self) -> bool {
        for i in (1..self.n).rev() {
            if self.letters[i] <= self.letters[i - 1] {
                self.letters[i] += 1;
                for j in i + 1..self.n {
                    self.letters[j] = 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for CatalanIter {
    type Item = CatalanWord;

    fn next(&mut self) -> Option<CatalanWord> {
        match self.state {
            State::Fresh => {
                self.state = State::Running;
                Some(CatalanWord::from_raw(self.letters.clone()))
            }
            State::Running => {
                if self.advance() {
                    Some(CatalanWord::from_raw(self.letters.clone()))
                } else {
                    self.state = State::Done;
                    None
                }
            }
            State::Done => None,
        }
    }
}

/// Iterator over flattened Catalan words of length `n` (optionally avoiding
/// a pattern), lexicographic order.
pub struct FlattenedIter {
    n: usize,
    /// Length of the fixed prefix; positions below `base` never change.
    base: usize,
    letters: Vec<u32>,
    /// `truns[i]` = number of distinct letters in the terminal run of the
    /// prefix ending at position `i`.
    truns: Vec<u32>,
    avoid: Option<Pattern>,
    state: State,
}

pub fn iter_flattened(n: usize) -> FlattenedIter {
    FlattenedIter::with_prefix(n, &[1]).expect("the one-letter prefix is always valid")
}

/// Members of `F_n` avoiding `τ` as a consecutive pattern.
pub fn iter_avoiders(n: usize, pat: &Pattern) -> FlattenedIter {
    let mut it = iter_flattened(n);
    it.avoid = Some(pat.clone());
    it
}

/// Members of `F_n` whose terminal run has exactly `m` distinct letters.
pub fn iter_flattened_by_trun(n: usize, m: usize) -> ByTrun {
    assert!((1..=n).contains(&m), "trun must lie in 1..=n");
    ByTrun {
        inner: iter_flattened(n),
        m: m as u32,
    }
}

impl FlattenedIter {
    /// A stream over the length-`n` flattened words extending `prefix`
    /// (which must itself be a flattened word of length ≤ n).
    pub fn with_prefix(n: usize, prefix: &[u32]) -> Result<FlattenedIter, Error> {
        assert!(n >= 1, "words have length at least 1");
        if prefix.is_empty() || prefix.len() > n {
            return Err(Error::InvalidInput(format!(
                "prefix length must lie in 1..={n}"
            )));
        }
        let word = CatalanWord::new(prefix.to_vec())?;
        if !word.is_flattened() {
            return Err(Error::InvalidInput(format!(
                "prefix {word} is not flattened"
            )));
        }
        let mut letters = vec![0; n];
        let mut truns = vec![0; n];
        letters[..prefix.len()].copy_from_slice(prefix);
        truns[0] = 1;
        for i in 1..prefix.len() {
            truns[i] = next_trun(letters[i - 1], truns[i - 1], letters[i]);
        }
        Ok(FlattenedIter {
            n,
            base: prefix.len(),
            letters,
            truns,
            avoid: None,
            state: State::Fresh,
        })
    }

    /// Whether letter `b` may be written at position `i` without realizing
    /// the avoided pattern in the window that ends at `i`.
    fn admissible(&self, i: usize, b: u32) -> bool {
        let Some(pat) = &self.avoid else { return true };
        let m = pat.len();
        if i + 1 < m {
            return true;
        }
        let start = i + 1 - m;
        let mut window = [0u32; 8];
        debug_assert!(m <= 8, "avoidance pruning supports patterns up to length 8");
        window[..m - 1].copy_from_slice(&self.letters[start..i]);
        window[m - 1] = b;
        !window_matches(&window[..m], pat.letters())
    }

    /// Depth-first search for the next word ≥ the current state.
    ///
    /// `i` is the position being assigned; `fresh` means position `i` has no
    /// value yet (start from the low end of its range), otherwise the stored
    /// value is bumped. Positions `0..i` always hold a valid prefix.
    fn search(&mut self, mut i: usize, mut fresh: bool) -> bool {
        loop {
            if i == self.n {
                return true;
            }
            if i < self.base {
                // bumping would change the fixed prefix: exhausted
                return false;
            }
            let a = self.letters[i - 1];
            let m = self.truns[i - 1];
            let hi = a + 1;
            let mut b = if fresh {
                a + 1 - m
            } else {
                self.letters[i] + 1
            };
            let mut placed = false;
            while b <= hi {
                if self.admissible(i, b) {
                    self.letters[i] = b;
                    self.truns[i] = next_trun(a, m, b);
                    placed = true;
                    break;
                }
                b += 1;
            }
            if placed {
                i += 1;
                fresh = true;
            } else {
                if i == 0 {
                    return false;
                }
                i -= 1;
                fresh = false;
            }
        }
    }

    fn advance(&mut self) -> bool {
        match self.state {
            State::Fresh => {
                self.state = State::Running;
                // Check the prefix itself against the avoided pattern: the
                // search below only inspects windows ending at new positions.
                if let Some(pat) = &self.avoid {
                    if self.base >= pat.len()
                        && crate::words::count_pattern(&self.letters[..self.base], pat) > 0
                    {
                        self.state = State::Done;
                        return false;
                    }
                }
                if self.search(self.base, true) {
                    true
                } else {
                    self.state = State::Done;
                    false
                }
            }
            State::Running => {
                if self.n == self.base {
                    // the prefix was the single word in this stream
                    self.state = State::Done;
                    return false;
                }
                if self.search(self.n - 1, false) {
                    true
                } else {
                    self.state = State::Done;
                    false
                }
            }
            State::Done => false,
        }
    }

    /// trun of the current word (valid right after a successful advance).
    fn current_trun(&self) -> u32 {
        self.truns[self.n - 1]
    }

    /// Visits every remaining word without materializing it.
    pub fn visit(mut self, mut f: impl FnMut(&[u32])) {
        while self.advance() {
            f(&self.letters);
        }
    }

    /// Count of the remaining words, without allocation per word.
    pub fn count_words(mut self) -> u64 {
        let mut c = 0;
        while self.advance() {
            c += 1;
        }
        c
    }
}

impl Iterator for FlattenedIter {
    type Item = CatalanWord;

    fn next(&mut self) -> Option<CatalanWord> {
        if self.advance() {
            Some(CatalanWord::from_raw(self.letters.clone()))
        } else {
            None
        }
    }
}

/// See [`iter_flattened_by_trun`].
pub struct ByTrun {
    inner: FlattenedIter,
    m: u32,
}

impl Iterator for ByTrun {
    type Item = CatalanWord;

    fn next(&mut self) -> Option<CatalanWord> {
        while self.inner.advance() {
            if self.inner.current_trun() == self.m {
                return Some(CatalanWord::from_raw(self.inner.letters.clone()));
            }
        }
        None
    }
}

fn next_trun(a: u32, m: u32, b: u32) -> u32 {
    match b.cmp(&a) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => m,
        std::cmp::Ordering::Greater => m + 1,
    }
}

/// Splits the stream of `F_n` into independent sub-streams keyed by their
/// length-`depth` prefix, in lexicographic order of prefix. The union of the
/// sub-streams is exactly `iter_flattened(n)`.
pub fn partitioned(n: usize, depth: usize) -> Vec<FlattenedIter> {
    assert!(
        (1..n).contains(&depth),
        "partition depth must satisfy 1 <= depth < n"
    );
    iter_flattened(depth)
        .map(|w| FlattenedIter::with_prefix(n, w.letters()).expect("enumerated prefixes are valid"))
        .collect()
}

fn partition_depth(n: usize) -> usize {
    // |F_4| = 14, |F_5| = 41 sub-streams: enough to balance a desktop's
    // cores without making tiny streams dominate.
    match n {
        0..=6 => 1,
        7..=9 => 4,
        _ => 5,
    }
}

/// Sequential map/reduce over all of `F_n`.
pub fn scan_flattened_seq<T>(
    n: usize,
    map: impl Fn(&[u32]) -> T,
    identity: T,
    reduce: impl Fn(T, T) -> T,
) -> T {
    let mut acc = Some(identity);
    iter_flattened(n).visit(|w| {
        let prev = acc.take().unwrap();
        acc = Some(reduce(prev, map(w)));
    });
    acc.unwrap()
}

/// Map/reduce over all of `F_n`: data-parallel over prefix partitions when
/// the `parallel` feature is enabled, sequential otherwise. Results are
/// identical either way (`reduce` must be associative with `identity` as
/// neutral element).
#[cfg(feature = "parallel")]
pub fn scan_flattened<T>(
    n: usize,
    map: impl Fn(&[u32]) -> T + Sync + Send,
    identity: T,
    reduce: impl Fn(T, T) -> T + Sync + Send,
) -> T
where
    T: Clone + Send + Sync,
{
    let depth = partition_depth(n);
    if depth == 1 || n <= depth {
        return scan_flattened_seq(n, map, identity, reduce);
    }
    partitioned(n, depth)
        .into_par_iter()
        .map(|mut stream| {
            let mut acc = Some(identity.clone());
            while stream.advance() {
                let prev = acc.take().unwrap();
                acc = Some(reduce(prev, map(&stream.letters)));
            }
            acc.unwrap()
        })
        .reduce(|| identity.clone(), &reduce)
}

/// Sequential fallback with the same signature (the `parallel` feature is
/// disabled).
#[cfg(not(feature = "parallel"))]
pub fn scan_flattened<T>(
    n: usize,
    map: impl Fn(&[u32]) -> T + Sync + Send,
    identity: T,
    reduce: impl Fn(T, T) -> T + Sync + Send,
) -> T
where
    T: Clone + Send + Sync,
{
    scan_flattened_seq(n, map, identity, reduce)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::count_pattern;

    /// |F_1..F_8| computed independently: (3^(n−1)+1)/2.
    const COUNTS: [u64; 8] = [1, 2, 5, 14, 41, 122, 365, 1094];

    #[test]
    fn catalan_counts_match_catalan_numbers() {
        // C_1..C_7 = 1, 2, 5, 14, 42, 132, 429
        let catalan = [1usize, 2, 5, 14, 42, 132, 429];
        for (i, &c) in catalan.iter().enumerate() {
            assert_eq!(iter_catalan(i + 1).count(), c);
        }
    }

    #[test]
    fn flattened_counts() {
        for (i, &c) in COUNTS.iter().enumerate() {
            assert_eq!(iter_flattened(i + 1).count_words(), c);
        }
    }

    #[test]
    fn flattened_equals_filtered_catalan() {
        for n in 1..=7 {
            let filtered: Vec<CatalanWord> =
                iter_catalan(n).filter(CatalanWord::is_flattened).collect();
            let direct: Vec<CatalanWord> = iter_flattened(n).collect();
            assert_eq!(direct, filtered, "n = {n}");
        }
    }

    #[test]
    fn f3_verbatim() {
        let words: Vec<String> = iter_flattened(3).map(|w| w.to_string()).collect();
        assert_eq!(words, ["1,1,1", "1,1,2", "1,2,1", "1,2,2", "1,2,3"]);
    }

    #[test]
    fn lexicographic_and_flattened() {
        for n in 1..=8 {
            let mut prev: Option<CatalanWord> = None;
            for w in iter_flattened(n) {
                assert!(w.is_flattened());
                if let Some(p) = &prev {
                    assert!(p < &w, "stream must be strictly increasing");
                }
                prev = Some(w);
            }
        }
    }

    #[test]
    fn no_two_consecutive_descents() {
        for n in 1..=10 {
            iter_flattened(n).visit(|w| {
                for i in 2..w.len() {
                    assert!(
                        !(w[i - 1] < w[i - 2] && w[i] < w[i - 1]),
                        "consecutive descents in {w:?}"
                    );
                }
            });
        }
    }

    #[test]
    fn descent_range_is_exactly_the_legal_one() {
        // from a word ending at a with trun m, appending b keeps it
        // flattened iff a−m+1 ≤ b ≤ a+1
        for n in 1..=8 {
            iter_flattened(n).visit(|w| {
                let a = *w.last().unwrap();
                let m = crate::words::trun(w) as u32;
                for b in 1..=a + 2 {
                    let mut ext = w.to_vec();
                    ext.push(b);
                    let ok = CatalanWord::new(ext)
                        .map(|e| e.is_flattened())
                        .unwrap_or(false);
                    assert_eq!(ok, (a + 1 - m..=a + 1).contains(&b), "w={w:?} b={b}");
                }
            });
        }
    }

    #[test]
    fn by_trun_splits_the_stream() {
        for n in 1..=8 {
            let total: u64 = (1..=n)
                .map(|m| iter_flattened_by_trun(n, m).count() as u64)
                .sum();
            assert_eq!(total, COUNTS[n - 1]);
        }
        // spot-check F_{4,2} membership
        let f42: Vec<String> = iter_flattened_by_trun(4, 2)
            .map(|w| w.to_string())
            .collect();
        assert_eq!(f42, ["1,1,1,2", "1,1,2,2", "1,2,1,2", "1,2,2,2"]);
    }

    #[test]
    fn avoiders_match_filtering() {
        let pats = [
            "11", "12", "21", "111", "112", "121", "122", "123", "211", "212", "221", "231", "312",
        ];
        for ps in pats {
            let pat: Pattern = ps.parse().unwrap();
            for n in 1..=7 {
                let pruned: Vec<CatalanWord> = iter_avoiders(n, &pat).collect();
                let filtered: Vec<CatalanWord> = iter_flattened(n)
                    .filter(|w| w.count_pattern(&pat) == 0)
                    .collect();
                assert_eq!(pruned, filtered, "τ = {ps}, n = {n}");
            }
        }
    }

    #[test]
    fn avoider_examples() {
        let p121: Pattern = "121".parse().unwrap();
        assert_eq!(iter_avoiders(3, &p121).count(), 4);
        let p11: Pattern = "11".parse().unwrap();
        assert_eq!(iter_avoiders(5, &p11).count(), 8); // 2^(5-2)
        let p111: Pattern = "111".parse().unwrap();
        assert_eq!(iter_avoiders(2, &p111).count(), 2); // pattern can't fit
    }

    #[test]
    fn partitions_cover_the_stream() {
        for depth in 1..5 {
            let mut words = Vec::new();
            for stream in partitioned(5, depth) {
                words.extend(stream.map(|w| w.to_string()));
            }
            let direct: Vec<String> = iter_flattened(5).map(|w| w.to_string()).collect();
            assert_eq!(words, direct, "depth = {depth}");
        }
    }

    #[test]
    fn partitioned_stream_counts() {
        assert_eq!(partitioned(3, 1).len(), 1);
        assert_eq!(partitioned(3, 2).len(), 2);
        let total: u64 = partitioned(10, 4)
            .into_iter()
            .map(FlattenedIter::count_words)
            .sum();
        assert_eq!(total, 9841 + 1); // (3^9+1)/2
    }

    #[test]
    fn with_prefix_validates() {
        assert!(FlattenedIter::with_prefix(4, &[]).is_err());
        assert!(FlattenedIter::with_prefix(4, &[2]).is_err());
        assert!(FlattenedIter::with_prefix(2, &[1, 2, 1]).is_err());
        // 1,2,1,2,3 is flattened; the only completion of length 5 is itself
        let mut it = FlattenedIter::with_prefix(5, &[1, 2, 1, 2, 3]).unwrap();
        assert_eq!(it.next().map(|w| w.to_string()), Some("1,2,1,2,3".into()));
        assert!(it.next().is_none());
    }

    #[test]
    fn scan_matches_direct_iteration() {
        for n in [1, 4, 8, 10] {
            let count = scan_flattened(n, |_| 1u64, 0, |a, b| a + b);
            assert_eq!(count, iter_flattened(n).count_words());
            let seq = scan_flattened_seq(n, |_| 1u64, 0, |a, b| a + b);
            assert_eq!(seq, count);
        }
        // a non-trivial map: total occurrences of 11 across F_6
        let p11: Pattern = "11".parse().unwrap();
        let total = scan_flattened(6, |w| count_pattern(w, &p11) as u64, 0, |a, b| a + b);
        let direct: u64 = iter_flattened(6)
            .map(|w| w.count_pattern(&p11) as u64)
            .sum();
        assert_eq!(total, direct);
    }
}

//! Catalan words, the flattened property, and word-level statistics.
//!
//! A [`CatalanWord`] starts at 1 and never climbs by more than one step:
//! `letters[0] == 1` and `letters[i+1] <= letters[i] + 1`. Splitting a word
//! at its strict descents yields its maximal weakly increasing *runs*; the
//! word is *flattened* when the first letters of those runs are weakly
//! increasing left to right.
//!
//! The statistic functions ([`count_pattern`], [`trun`], [`skeleton`],
//! [`statistics`]) are defined on arbitrary nonempty words over the positive
//! integers, not just Catalan words, and are exposed both as free functions
//! on `&[u32]` and as methods on [`CatalanWord`].

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::Serialize;

use crate::Error;

/// A validated Catalan word. Immutable after construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CatalanWord {
    letters: Vec<u32>,
}

impl CatalanWord {
    pub fn new(letters: Vec<u32>) -> Result<CatalanWord, Error> {
        if is_catalan(&letters)? {
            Ok(CatalanWord { letters })
        } else {
            Err(Error::InvalidInput(format!(
                "{} is not a Catalan word (must start at 1 and never step up by more than 1)",
                join(&letters)
            )))
        }
    }

    /// Constructor for callers that maintain the invariants themselves (the
    /// enumerator, the bijections). Checked in debug builds only.
    pub(crate) fn from_raw(letters: Vec<u32>) -> CatalanWord {
        debug_assert!(matches!(is_catalan(&letters), Ok(true)));
        CatalanWord { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length ≥ 1 by construction
    }

    pub fn is_flattened(&self) -> bool {
        let heads: Vec<u32> = runs(&self.letters)
            .into_iter()
            .map(|r| self.letters[r.start])
            .collect();
        heads.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn runs(&self) -> Vec<Range<usize>> {
        runs(&self.letters)
    }

    pub fn trun(&self) -> usize {
        trun(&self.letters)
    }

    /// The skeleton is again a Catalan word: adjacent run heads differ by at
    /// most one upward step because the step out of a constant run does.
    pub fn skeleton(&self) -> CatalanWord {
        CatalanWord::from_raw(skeleton(&self.letters))
    }

    pub fn statistics(&self) -> Statistics {
        statistics(&self.letters)
    }

    pub fn count_pattern(&self, pat: &Pattern) -> usize {
        count_pattern(&self.letters, pat)
    }
}

impl fmt::Display for CatalanWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.letters))
    }
}

impl FromStr for CatalanWord {
    type Err = Error;

    /// Parses the canonical comma-separated form, e.g. `1,2,3,3,2`.
    fn from_str(s: &str) -> Result<CatalanWord, Error> {
        CatalanWord::new(parse_letters(s)?)
    }
}

/// Whether `letters` forms a valid Catalan word. Errors only on the empty
/// sequence; merely non-Catalan input is a `false`, not an error.
pub fn is_catalan(letters: &[u32]) -> Result<bool, Error> {
    if letters.is_empty() {
        return Err(Error::InvalidInput("empty letter sequence".into()));
    }
    if letters[0] != 1 {
        return Ok(false);
    }
    Ok(letters.windows(2).all(|w| w[1] >= 1 && w[1] <= w[0] + 1))
}

/// Maximal weakly increasing runs, as index ranges partitioning the word.
pub fn runs(word: &[u32]) -> Vec<Range<usize>> {
    assert!(!word.is_empty(), "empty word");
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..word.len() {
        if word[i] < word[i - 1] {
            out.push(start..i);
            start = i;
        }
    }
    out.push(start..word.len());
    out
}

/// Number of distinct letters in the terminal weakly increasing run.
pub fn trun(word: &[u32]) -> usize {
    assert!(!word.is_empty(), "empty word");
    let last = runs(word).pop().unwrap();
    // within a run letters are nondecreasing, so distinct = strict steps + 1
    1 + word[last].windows(2).filter(|w| w[1] > w[0]).count()
}

/// Keeps only the first letter of each maximal constant run.
pub fn skeleton(word: &[u32]) -> Vec<u32> {
    assert!(!word.is_empty(), "empty word");
    let mut out = vec![word[0]];
    for &a in &word[1..] {
        if a != *out.last().unwrap() {
            out.push(a);
        }
    }
    out
}

/// Ascent/descent/level/trun record for a word.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Statistics {
    pub asc: usize,
    pub des: usize,
    pub lev: usize,
    pub trun: usize,
}

pub fn statistics(word: &[u32]) -> Statistics {
    assert!(!word.is_empty(), "empty word");
    let mut s = Statistics {
        asc: 0,
        des: 0,
        lev: 0,
        trun: trun(word),
    };
    for w in word.windows(2) {
        match w[1].cmp(&w[0]) {
            std::cmp::Ordering::Greater => s.asc += 1,
            std::cmp::Ordering::Less => s.des += 1,
            std::cmp::Ordering::Equal => s.lev += 1,
        }
    }
    s
}

/// A consecutive pattern: a word over `{1..ℓ}` using every value at least
/// once, of length ≥ 2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Pattern {
    letters: Vec<u32>,
}

impl Pattern {
    pub fn new(letters: Vec<u32>) -> Result<Pattern, Error> {
        if letters.len() < 2 {
            return Err(Error::InvalidInput(
                "a pattern must have at least two letters".into(),
            ));
        }
        let max = *letters.iter().max().unwrap();
        let ok = max >= 1 && (1..=max).all(|v| letters.contains(&v));
        if !ok {
            return Err(Error::InvalidInput(format!(
                "pattern letters must cover 1..={max} with no gaps"
            )));
        }
        Ok(Pattern { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length ≥ 2 by construction
    }

    /// Alphabet size ℓ: the number of distinct letters.
    pub fn alphabet_size(&self) -> u32 {
        *self.letters.iter().max().unwrap()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.letters {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses the compact digit form used for patterns, e.g. `121` or `312`.
    fn from_str(s: &str) -> Result<Pattern, Error> {
        let letters = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| Error::InvalidInput(format!("bad pattern digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<u32>, Error>>()?;
        Pattern::new(letters)
    }
}

/// Whether `window` is order-isomorphic to `pat` with equalities significant:
/// `window[i] < window[j]` iff `pat[i] < pat[j]`, and likewise for `=`.
pub(crate) fn window_matches(window: &[u32], pat: &[u32]) -> bool {
    debug_assert_eq!(window.len(), pat.len());
    for i in 0..pat.len() {
        for j in i + 1..pat.len() {
            if window[i].cmp(&window[j]) != pat[i].cmp(&pat[j]) {
                return false;
            }
        }
    }
    true
}

/// Number of occurrences of `τ` as a consecutive pattern: indices `i` such
/// that `word[i..i+m]` is order-isomorphic (equalities significant) to `τ`.
pub fn count_pattern(word: &[u32], pat: &Pattern) -> usize {
    assert!(!word.is_empty(), "empty word");
    let m = pat.len();
    if m > word.len() {
        return 0;
    }
    word.windows(m)
        .filter(|w| window_matches(w, &pat.letters))
        .count()
}

pub(crate) fn join(letters: &[u32]) -> String {
    letters
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn parse_letters(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad letter {t:?} in word {s:?}")))
        })
        .collect()
}

/// A binary word of length `n−1` over `{0,1}` starting with 0, the domain of
/// the bijection with level-free flattened words of length `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BinaryWord {
    bits: Vec<u8>,
}

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<BinaryWord, Error> {
        if bits.is_empty() {
            return Err(Error::InvalidInput("empty binary word".into()));
        }
        if bits[0] != 0 {
            return Err(Error::InvalidInput("binary word must start with 0".into()));
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidInput(format!("bit {b} is not 0 or 1")));
        }
        Ok(BinaryWord { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length ≥ 1 by construction
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .bits
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{s}")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<BinaryWord, Error> {
        let bits = s
            .split(',')
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::InvalidInput(format!("bad bit {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<u8>, Error>>()?;
        BinaryWord::new(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u32> {
        parse_letters(s).unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn is_catalan_examples() {
        assert!(is_catalan(&w("1,2,3,3,2,3,2,3,4,3,3,4")).unwrap());
        assert!(is_catalan(&[1]).unwrap());
        assert!(!is_catalan(&w("2,1")).unwrap());
        assert!(!is_catalan(&w("1,3")).unwrap());
        assert!(!is_catalan(&w("1,2,0")).unwrap());
        assert!(is_catalan(&[]).is_err());
    }

    #[test]
    fn is_flattened_examples() {
        let yes: CatalanWord = "1,2,3,3,2,3,2,3,4,3,3,4".parse().unwrap();
        assert!(yes.is_flattened());
        let no: CatalanWord = "1,2,1,2,3,2,3,4,1,2,2,3".parse().unwrap();
        assert!(!no.is_flattened());
        // the unique member of C_5 − F_5
        let peak: CatalanWord = "1,2,3,2,1".parse().unwrap();
        assert!(!peak.is_flattened());
    }

    #[test]
    fn count_pattern_examples() {
        let word = w("4,1,3,5,7,5,3,3,4,6");
        assert_eq!(count_pattern(&word, &pat("123")), 3); // 135, 357, 346
        assert_eq!(count_pattern(&word, &pat("121")), 1); // 575
        assert_eq!(count_pattern(&word, &pat("132")), 0);
        assert_eq!(count_pattern(&[1], &pat("12")), 0); // pattern longer than word
    }

    #[test]
    fn trun_examples() {
        assert_eq!(trun(&w("3,4,7,6,5,5,8,9,5,2,4,4")), 2); // terminal run 2,4,4
        assert_eq!(trun(&[1]), 1);
        assert_eq!(trun(&w("1,2,3")), 3);
        assert_eq!(trun(&w("1,2,2,3")), 3);
    }

    #[test]
    fn skeleton_examples() {
        assert_eq!(skeleton(&w("1,1,2,2,3")), w("1,2,3"));
        assert_eq!(skeleton(&w("1,2,3")), w("1,2,3"));
        assert_eq!(skeleton(&w("1,2,2,1,1,2")), w("1,2,1,2"));
    }

    #[test]
    fn statistics_examples() {
        assert_eq!(
            statistics(&w("1,2,1")),
            Statistics {
                asc: 1,
                des: 1,
                lev: 0,
                trun: 1
            }
        );
        assert_eq!(
            statistics(&w("1,1,1")),
            Statistics {
                asc: 0,
                des: 0,
                lev: 2,
                trun: 1
            }
        );
        let s = statistics(&w("1,2,3,3,2,3,2,3,4,3,3,4"));
        assert_eq!(s.des, 3);
        assert_eq!(s.asc + s.des + s.lev, 11);
    }

    #[test]
    fn runs_partition_the_word() {
        let word = w("3,4,7,6,5,5,8,9,5,2,4,4");
        let rs = runs(&word);
        assert_eq!(rs, vec![0..3, 3..4, 4..8, 8..9, 9..12]);
    }

    #[test]
    fn pattern_validation() {
        assert!(Pattern::new(vec![1, 3]).is_err()); // gap: missing 2
        assert!(Pattern::new(vec![1]).is_err()); // too short
        assert!("312".parse::<Pattern>().is_ok());
        assert_eq!(pat("212").alphabet_size(), 2);
        assert_eq!(pat("11").len(), 2);
    }

    #[test]
    fn word_roundtrip_text_form() {
        let word: CatalanWord = "1,2,3,3,2".parse().unwrap();
        assert_eq!(word.to_string(), "1,2,3,3,2");
        assert!("1,3".parse::<CatalanWord>().is_err());
        assert!("1,x".parse::<CatalanWord>().is_err());
    }

    #[test]
    fn binary_word_validation() {
        assert!("0,1,0".parse::<BinaryWord>().is_ok());
        assert!("1,0".parse::<BinaryWord>().is_err());
        assert!("0,2".parse::<BinaryWord>().is_err());
        assert!(BinaryWord::new(vec![]).is_err());
    }
}

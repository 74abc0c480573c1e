//! Structure-preserving bijections between families of flattened Catalan
//! words.
//!
//! Each map in this module either comes with an explicit inverse or is an
//! involution, so every one of them can be checked for bijectivity by
//! exhaustive round-tripping (the [`crate::verify`] suites do exactly that).
//! The maps are:
//!
//! - [`prime_map`] / [`prime_inverse`]: binary words of length `n−1` starting
//!   with 0 ↔ level-free flattened words of length `n`;
//! - [`trun_map`] / [`trun_map_inverse`]: words of length `n` with a
//!   designated non-minimal distinct letter in the terminal run ↔ words of
//!   length `n` other than the all-ones word;
//! - [`tilde_involution`]: exchanges the subword statistics `112` and `122`
//!   by reversing the multiplicity profile of every maximal weakly
//!   increasing run;
//! - [`hat_involution`]: exchanges the subword statistics `211` and `221` by
//!   transposing the block lengths around every descent;
//! - [`swap_231_221`]: exchanges the subword statistics `231` and `221` by
//!   toggling the middle letter of every occurrence of either pattern;
//! - [`valley_map`] / [`valley_map_inverse`]: words of length `n` with a
//!   marked occurrence of `312` ↔ words of length `n−1` with a marked
//!   valley (an occurrence of a strict descent followed by a plateau and a
//!   single step up).
//!
//! All maps validate their input and return [`Error::InvalidInput`] when a
//! precondition fails; none of them panic on malformed marks.

use std::fmt;
use std::str::FromStr;

use crate::words::{self, BinaryWord, CatalanWord};
use crate::Error;

/// A flattened Catalan word together with a marked position (a 0-based index
/// into the word).
///
/// The meaning of the mark depends on the map consuming it: for
/// [`valley_map`] it is the start index of an occurrence of `312`, for
/// [`valley_map_inverse`] the start index of a valley, and for [`trun_map`]
/// the index of an occurrence of the designated terminal-run letter.
///
/// The textual form is the comma-separated word followed by `@` and the mark,
/// e.g. `1,2,3,1,2@2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MarkedWord {
    word: CatalanWord,
    mark: usize,
}

impl MarkedWord {
    /// Creates a marked word, requiring the mark to be a valid index.
    pub fn new(word: CatalanWord, mark: usize) -> Result<MarkedWord, Error> {
        if mark >= word.len() {
            return Err(Error::InvalidInput(format!(
                "mark {mark} out of range for a word of length {}",
                word.len()
            )));
        }
        Ok(MarkedWord { word, mark })
    }

    pub fn word(&self) -> &CatalanWord {
        &self.word
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn into_parts(self) -> (CatalanWord, usize) {
        (self.word, self.mark)
    }
}

impl fmt::Display for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.word, self.mark)
    }
}

impl FromStr for MarkedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<MarkedWord, Error> {
        let (word, mark) = s.split_once('@').ok_or_else(|| {
            Error::InvalidInput(format!(
                "expected \"letters@mark\" (e.g. \"1,2,3,1,2@2\"), got {s:?}"
            ))
        })?;
        let word: CatalanWord = word.parse()?;
        let mark: usize = mark
            .trim()
            .parse()
            .map_err(|e| Error::InvalidInput(format!("mark {mark:?} is not an index: {e}")))?;
        MarkedWord::new(word, mark)
    }
}

/// Maximal constant blocks of `letters` as `(letter, length)` pairs.
fn blocks(letters: &[u32]) -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = Vec::new();
    for &x in letters {
        match out.last_mut() {
            Some((l, n)) if *l == u64::from(x) => *n += 1,
            _ => out.push((u64::from(x), 1)),
        }
    }
    out
}

/// Same, but for bits.
fn bit_blocks(bits: &[u8]) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &b in bits {
        match out.last_mut() {
            Some((l, n)) if *l == b => *n += 1,
            _ => out.push((b, 1)),
        }
    }
    out
}

fn require_flattened(word: &CatalanWord) -> Result<(), Error> {
    if word.is_flattened() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{word} is not flattened")))
    }
}

/// Maps a binary word `b` of length `n−1` starting with 0 to a level-free
/// flattened word of length `n`.
///
/// Write `b = 0^{k_1−ℓ_1} 1^{ℓ_1} ⋯ 0^{k_r−ℓ_r} 1^{ℓ_r} 0^t` (every maximal
/// 1-block is preceded by the 0-block that, together with it, contributes one
/// strictly increasing run; `t ≥ 0` trailing zeros remain). With
/// `s_a = Σ_{j≤a}(k_j−ℓ_j)`, the image is the concatenation of the strictly
/// increasing runs
///
/// ```text
/// I_0 = 1⋯k_1,
/// I_a = (s_a−a+1)⋯(s_a−a+k_{a+1})   for 1 ≤ a ≤ r−1,
/// I_r = (s_r−r+1)⋯(s_r−r+t+1).
/// ```
///
/// The image has `r` descents — one per maximal 1-block of `b` — and its
/// number of occurrences of the pattern `123` is `n−1` minus the number of
/// maximal constant blocks of `b`. The all-zero word maps to `1,2,…,n`.
pub fn prime_map(b: &BinaryWord) -> CatalanWord {
    let blk = bit_blocks(b.bits());
    // Blocks alternate 0,1,0,1,… starting with 0. Pair each 0-block with the
    // 1-block after it; a final unpaired 0-block is the tail 0^t.
    let mut c: Vec<usize> = Vec::new(); // k_a − ℓ_a
    let mut d: Vec<usize> = Vec::new(); // ℓ_a
    let mut t = 0usize;
    let mut i = 0;
    while i < blk.len() {
        debug_assert_eq!(blk[i].0, 0);
        if i + 1 < blk.len() {
            debug_assert_eq!(blk[i + 1].0, 1);
            c.push(blk[i].1);
            d.push(blk[i + 1].1);
            i += 2;
        } else {
            t = blk[i].1;
            i += 1;
        }
    }
    let r = c.len();
    let k: Vec<usize> = (0..r).map(|a| c[a] + d[a]).collect();
    let mut letters: Vec<u32> = Vec::with_capacity(b.len() + 1);
    let mut push_run = |start: usize, len: usize| {
        for j in 0..len {
            letters.push((start + j) as u32);
        }
    };
    if r == 0 {
        push_run(1, t + 1);
    } else {
        push_run(1, k[0]);
        // s holds s_a = c_1 + ⋯ + c_a; run I_a uses k_{a+1} and starts at
        // s_a − a + 1.
        let mut s = c[0];
        for a in 1..r {
            push_run(s - a + 1, k[a]);
            s += c[a];
        }
        push_run(s - r + 1, t + 1);
    }
    debug_assert_eq!(letters.len(), b.len() + 1);
    let word = CatalanWord::from_raw(letters);
    debug_assert!(word.is_flattened());
    word
}

/// Inverse of [`prime_map`]: maps a level-free flattened word of length
/// `n ≥ 2` back to its binary word of length `n−1`.
///
/// Returns an error if the word contains a level (two equal adjacent
/// letters), is not flattened, or has length 1 (the corresponding binary
/// word would be empty).
pub fn prime_inverse(word: &CatalanWord) -> Result<BinaryWord, Error> {
    require_flattened(word)?;
    let l = word.letters();
    if l.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::InvalidInput(format!(
            "{word} contains a level; the map is defined on level-free words"
        )));
    }
    if l.len() < 2 {
        return Err(Error::InvalidInput(
            "a length-1 word has no binary-word counterpart (it would be empty)".into(),
        ));
    }
    let rs = word.runs();
    let r = rs.len() - 1;
    if r == 0 {
        return BinaryWord::new(vec![0; l.len() - 1]);
    }
    // k_a = |I_{a−1}| for 1 ≤ a ≤ r; t = |I_r| − 1; s_a = first(I_a) + a − 1.
    let mut bits: Vec<u8> = Vec::with_capacity(l.len() - 1);
    let mut s_prev = 0usize;
    for a in 1..=r {
        let k_a = rs[a - 1].len();
        let s_a = l[rs[a].start] as usize + a - 1;
        debug_assert!(s_a > s_prev, "run heads must make s strictly increase");
        let zeros = s_a - s_prev;
        debug_assert!(zeros < k_a, "each increasing run must contribute a 1-block");
        bits.extend(std::iter::repeat_n(0, zeros));
        bits.extend(std::iter::repeat_n(1, k_a - zeros));
        s_prev = s_a;
    }
    let t = rs[r].len() - 1;
    bits.extend(std::iter::repeat_n(0, t));
    debug_assert_eq!(bits.len(), l.len() - 1);
    BinaryWord::new(bits)
}

/// Maps a word with a designated distinct letter in its terminal run to a
/// word that is not the all-ones word, preserving length.
///
/// Let the terminal (weakly increasing) run of `α = J_1 ⋯ J_s` be
/// `J_s = a_1^{k_1} ⋯ a_t^{k_t}` with `a_1 < ⋯ < a_t` consecutive, and let
/// the mark designate `a_p`. The designation must not pick the smallest
/// letter, so `2 ≤ p ≤ t`. Writing `w′` for `w` with every letter increased
/// by 1:
///
/// - if `p = t`:    `f(α) = 1^{k_t} (J_1 ⋯ J_{s−1} (J_s − a_t^{k_t}))′`
///   (the image has exactly one maximal block of 1s);
/// - if `p ≤ t−1`:  `f(α) = 1^{k_p} 2^{k_{p+1}} ⋯ (t−p+1)^{k_t}
///   J_1 ⋯ J_{s−1} (J_s − a_p^{k_p} ⋯ a_t^{k_t})`
///   (the image has at least two maximal blocks of 1s).
///
/// The mark may point at any occurrence of the designated letter inside the
/// terminal run; all such marks act identically.
pub fn trun_map(mw: &MarkedWord) -> Result<CatalanWord, Error> {
    let word = mw.word();
    require_flattened(word)?;
    let l = word.letters();
    let n = l.len();
    let rs = word.runs();
    let last = rs.last().expect("words are nonempty").clone();
    let mark = mw.mark();
    if mark < last.start {
        return Err(Error::InvalidInput(format!(
            "mark {mark} lies before the terminal run of {word} (it starts at {})",
            last.start
        )));
    }
    let blks = blocks(&l[last.clone()]);
    let t = blks.len();
    let designated = u64::from(l[mark]);
    let p = blks
        .iter()
        .position(|&(a, _)| a == designated)
        .expect("marked letter occurs in the terminal run")
        + 1;
    if p == 1 {
        return Err(Error::InvalidInput(format!(
            "the designated letter must not be the smallest distinct letter ({}) of the terminal run",
            blks[0].0
        )));
    }
    let mut out: Vec<u32> = Vec::with_capacity(n);
    if p == t {
        let k_t = blks[t - 1].1;
        out.extend(std::iter::repeat_n(1, k_t));
        for &x in &l[..last.end - k_t] {
            out.push(x + 1);
        }
    } else {
        for (i, &(_, k)) in blks[p - 1..].iter().enumerate() {
            out.extend(std::iter::repeat_n((i + 1) as u32, k));
        }
        out.extend_from_slice(&l[..last.start]);
        let keep: usize = blks[..p - 1].iter().map(|&(_, k)| k).sum();
        out.extend_from_slice(&l[last.start..last.start + keep]);
    }
    debug_assert_eq!(out.len(), n);
    let image = CatalanWord::from_raw(out);
    debug_assert!(image.is_flattened());
    Ok(image)
}

/// Inverse of [`trun_map`]: recovers the word with designated terminal-run
/// letter from any flattened word other than the all-ones word.
///
/// The branch is read off the number of maximal blocks of the letter 1:
/// exactly one block inverts the `p = t` branch, two or more invert the
/// other. The returned mark points at the first occurrence of the designated
/// letter.
pub fn trun_map_inverse(word: &CatalanWord) -> Result<MarkedWord, Error> {
    require_flattened(word)?;
    let l = word.letters();
    let n = l.len();
    if l.iter().all(|&x| x == 1) {
        return Err(Error::InvalidInput(format!(
            "{word} is outside the range of the map (every image contains a letter other than 1)"
        )));
    }
    let one_blocks = blocks(l).iter().filter(|&&(a, _)| a == 1).count();
    let (out, mark) = if one_blocks == 1 {
        // Image was 1^{k_t} (J_1 ⋯ (J_s − a_t^{k_t}))′: strip the 1s, shift
        // down, and re-append the top block.
        let m = l.iter().take_while(|&&x| x == 1).count();
        let mut rest: Vec<u32> = l[m..].iter().map(|&x| x - 1).collect();
        let top = *rest.last().expect("word is not all ones");
        rest.extend(std::iter::repeat_n(top + 1, m));
        (rest, n - m)
    } else {
        // Image was 1^{k_p} ⋯ (t−p+1)^{k_t} J_1 ⋯ (J_s − a_p^{k_p} ⋯ a_t^{k_t}):
        // the first increasing run carries the multiplicities of the removed
        // blocks, the rest is the truncated word.
        let rs = words::runs(l);
        let prefix = rs[0].clone();
        let q = &l[prefix.end..];
        debug_assert!(
            !q.is_empty(),
            "a second block of 1s lies after the first run"
        );
        let p_blocks = blocks(&l[prefix]);
        let a_prev = *q.last().expect("q is nonempty");
        let mut out = q.to_vec();
        for (i, &(_, g)) in p_blocks.iter().enumerate() {
            out.extend(std::iter::repeat_n(a_prev + 1 + i as u32, g));
        }
        (out, q.len())
    };
    debug_assert_eq!(out.len(), n);
    let image = CatalanWord::from_raw(out);
    debug_assert!(image.is_flattened());
    MarkedWord::new(image, mark)
}

/// Involution exchanging the subword statistics `112` and `122`.
///
/// Every maximal weakly increasing run `a_1^{r_1} a_2^{r_2} ⋯ a_k^{r_k}`
/// (with `a_1 < a_2 < ⋯` consecutive) is replaced by
/// `a_1^{r_k} a_2^{r_{k−1}} ⋯ a_k^{r_1}`: the letters stay, the multiplicity
/// profile is reversed. Run boundaries, run heads, run tops, and therefore
/// flattenedness and the number of distinct terminal-run letters are all
/// preserved; the counts of `112` and `122` trade places, and `1,1,2` maps
/// to `1,2,2`.
pub fn tilde_involution(word: &CatalanWord) -> Result<CatalanWord, Error> {
    require_flattened(word)?;
    let l = word.letters();
    let mut out: Vec<u32> = Vec::with_capacity(l.len());
    for run in word.runs() {
        let blks = blocks(&l[run]);
        let k = blks.len();
        for j in 0..k {
            let letter = blks[j].0 as u32;
            let mult = blks[k - 1 - j].1;
            out.extend(std::iter::repeat_n(letter, mult));
        }
    }
    let image = CatalanWord::from_raw(out);
    debug_assert!(image.is_flattened());
    Ok(image)
}

/// Involution exchanging the subword statistics `211` and `221`.
///
/// Around every descent, the maximal two-letter string `a^x b^y` with
/// `a > b` becomes `a^y b^x`. No two descents in a flattened word are close
/// enough for these strings to overlap, so the replacements are independent.
/// Lengths, descent counts, and flattenedness are preserved; the counts of
/// `211` and `221` trade places, and `1,2,2,1` maps to `1,2,1,1`.
pub fn hat_involution(word: &CatalanWord) -> Result<CatalanWord, Error> {
    require_flattened(word)?;
    let l = word.letters();
    let blks = blocks(l);
    let mut out: Vec<u32> = Vec::with_capacity(l.len());
    let mut i = 0;
    while i < blks.len() {
        if i + 1 < blks.len() && blks[i].0 > blks[i + 1].0 {
            out.extend(std::iter::repeat_n(blks[i].0 as u32, blks[i + 1].1));
            out.extend(std::iter::repeat_n(blks[i + 1].0 as u32, blks[i].1));
            i += 2;
        } else {
            out.extend(std::iter::repeat_n(blks[i].0 as u32, blks[i].1));
            i += 1;
        }
    }
    let image = CatalanWord::from_raw(out);
    debug_assert!(image.is_flattened());
    Ok(image)
}

/// Involution exchanging the subword statistics `231` and `221`.
///
/// In a Catalan word every occurrence of `231` reads `a, a+1, b` with
/// `a > b`, and every occurrence of `221` reads `a, a, b` with `a > b`; the
/// map toggles the middle letter of each occurrence (`a+1 ↔ a`). Distinct
/// occurrences cannot share letters in a flattened word, so all toggles are
/// applied simultaneously. Length, flattenedness, and the number of distinct
/// terminal-run letters are preserved; `1,2,3,1` maps to `1,2,2,1`.
pub fn swap_231_221(word: &CatalanWord) -> Result<CatalanWord, Error> {
    require_flattened(word)?;
    let l = word.letters();
    let mut out = l.to_vec();
    for i in 0..l.len().saturating_sub(2) {
        let (x, y, z) = (l[i], l[i + 1], l[i + 2]);
        if y > z && x > z {
            if y == x + 1 {
                out[i + 1] = x;
            } else if y == x {
                out[i + 1] = x + 1;
            }
        }
    }
    let image = CatalanWord::from_raw(out);
    debug_assert!(image.is_flattened());
    Ok(image)
}

/// Maps a word of length `n` with a marked occurrence of `312` to a word of
/// length `n−1` with a marked valley.
///
/// An occurrence of `312` in a Catalan word reads `a, b, b+1` with
/// `a ≥ b+2`. The letter `a` closes a maximal block `a^ℓ` that is always
/// preceded by `a−1`, so the word contains the string `(a−1) a^ℓ b (b+1)`
/// ending at the occurrence. The map shortens it to `(a−1) b^ℓ (b+1)` —
/// a valley of depth `ℓ` — and marks the valley's first letter `a−1`.
/// The mark of the input is the start index of the `312` occurrence;
/// `1,2,3,1,2@2` maps to `1,2,1,2@1`.
pub fn valley_map(mw: &MarkedWord) -> Result<MarkedWord, Error> {
    let word = mw.word();
    require_flattened(word)?;
    let l = word.letters();
    let n = l.len();
    let i = mw.mark();
    let ok = i + 2 < n && l[i] >= l[i + 1] + 2 && l[i + 2] == l[i + 1] + 1;
    if !ok {
        return Err(Error::InvalidInput(format!(
            "mark {i} does not address an occurrence of 312 in {word}"
        )));
    }
    let a = l[i];
    let b = l[i + 1];
    let mut start = i;
    while start > 0 && l[start - 1] == a {
        start -= 1;
    }
    let ell = i - start + 1;
    debug_assert!(
        start > 0 && l[start - 1] == a - 1,
        "in a flattened word the block of {a} is preceded by {}",
        a - 1
    );
    let mut out: Vec<u32> = Vec::with_capacity(n - 1);
    out.extend_from_slice(&l[..start]);
    out.extend(std::iter::repeat_n(b, ell));
    out.push(b + 1);
    out.extend_from_slice(&l[i + 3..]);
    let image = CatalanWord::from_raw(out);
    debug_assert!(image.is_flattened());
    MarkedWord::new(image, start - 1)
}

/// Inverse of [`valley_map`]: maps a word of length `n−1` with a marked
/// valley back to a word of length `n` with a marked occurrence of `312`.
///
/// A valley is a string `c b^ℓ (b+1)` with `c > b`; its mark is the index of
/// `c`. The map restores `c (c+1)^ℓ b (b+1)` and marks the `312` occurrence
/// starting at the last letter of the block `(c+1)^ℓ`.
pub fn valley_map_inverse(mw: &MarkedWord) -> Result<MarkedWord, Error> {
    let word = mw.word();
    require_flattened(word)?;
    let l = word.letters();
    let n = l.len();
    let i = mw.mark();
    if i + 1 >= n || l[i] <= l[i + 1] {
        return Err(Error::InvalidInput(format!(
            "mark {i} does not address a valley in {word} (no descent there)"
        )));
    }
    let c = l[i];
    let b = l[i + 1];
    let mut j = i + 1;
    while j < n && l[j] == b {
        j += 1;
    }
    let ell = j - i - 1;
    if j >= n || l[j] != b + 1 {
        return Err(Error::InvalidInput(format!(
            "mark {i} does not address a valley in {word} (the plateau of {b} is not followed by {})",
            b + 1
        )));
    }
    let mut out: Vec<u32> = Vec::with_capacity(n + 1);
    out.extend_from_slice(&l[..=i]);
    out.extend(std::iter::repeat_n(c + 1, ell));
    out.push(b);
    out.push(b + 1);
    out.extend_from_slice(&l[j + 1..]);
    let image = CatalanWord::from_raw(out);
    debug_assert!(image.is_flattened());
    MarkedWord::new(image, i + ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::iter_flattened;
    use crate::words::{count_pattern, Pattern};
    use std::collections::BTreeSet;

    fn w(s: &str) -> CatalanWord {
        s.parse().expect("valid word")
    }

    fn mw(s: &str) -> MarkedWord {
        s.parse().expect("valid marked word")
    }

    fn b(s: &str) -> BinaryWord {
        s.parse().expect("valid binary word")
    }

    fn pat(s: &str) -> Pattern {
        s.parse().expect("valid pattern")
    }

    #[test]
    fn prime_map_small_cases() {
        assert_eq!(prime_map(&b("0")), w("1,2"));
        assert_eq!(prime_map(&b("0,0")), w("1,2,3"));
        assert_eq!(prime_map(&b("0,1")), w("1,2,1"));
        assert_eq!(prime_map(&b("0,1,0")), w("1,2,1,2"));
        assert_eq!(prime_map(&b("0,1,1")), w("1,2,3,1"));
        for n in 2..=9usize {
            let all_zero = BinaryWord::new(vec![0; n - 1]).unwrap();
            let staircase: Vec<u32> = (1..=n as u32).collect();
            assert_eq!(prime_map(&all_zero).letters(), &staircase[..]);
        }
        assert_eq!(prime_inverse(&w("1,2,1")).unwrap(), b("0,1"));
    }

    #[test]
    fn prime_map_is_a_bijection_with_the_stated_statistics() {
        let p123 = pat("123");
        for n in 2..=10usize {
            let mut images = BTreeSet::new();
            let mut count = 0usize;
            for bits in all_binary_words(n - 1) {
                let word = prime_map(&bits);
                assert_eq!(word.len(), n);
                assert!(word.is_flattened());
                assert!(
                    word.letters().windows(2).all(|p| p[0] != p[1]),
                    "image {word} of {bits} has a level"
                );
                // descents of the image = maximal 1-blocks of the bits
                let des = word.statistics().des;
                let one_blocks = bit_blocks(bits.bits())
                    .iter()
                    .filter(|&&(v, _)| v == 1)
                    .count();
                assert_eq!(des, one_blocks, "descents of {word} vs 1-blocks of {bits}");
                // occurrences of 123 = n−1 − number of maximal blocks
                let run_count = bit_blocks(bits.bits()).len();
                assert_eq!(
                    word.count_pattern(&p123),
                    n - 1 - run_count,
                    "123-count of {word} vs block count of {bits}"
                );
                assert_eq!(prime_inverse(&word).unwrap(), bits, "round trip failed");
                images.insert(word);
                count += 1;
            }
            // The images are exactly the level-free members of the family.
            let level_free: BTreeSet<CatalanWord> = iter_flattened(n)
                .filter(|w| w.letters().windows(2).all(|p| p[0] != p[1]))
                .collect();
            assert_eq!(images, level_free, "n = {n}");
            assert_eq!(count, 1usize << (n - 2));
        }
    }

    fn all_binary_words(len: usize) -> Vec<BinaryWord> {
        let mut out = Vec::new();
        // First bit is fixed to 0.
        for mask in 0..(1u32 << (len - 1)) {
            let mut bits = vec![0u8];
            for j in 0..len - 1 {
                bits.push(((mask >> j) & 1) as u8);
            }
            out.push(BinaryWord::new(bits).unwrap());
        }
        out
    }

    #[test]
    fn prime_inverse_rejects_out_of_domain_words() {
        assert!(prime_inverse(&w("1,1,2")).is_err(), "word with a level");
        assert!(prime_inverse(&w("1")).is_err(), "length-1 word");
    }

    #[test]
    fn trun_map_small_cases() {
        // Designations in the terminal run 1,2,3 of 1,2,3 itself:
        assert_eq!(trun_map(&mw("1,2,3@2")).unwrap(), w("1,2,3")); // p = t
        assert_eq!(trun_map(&mw("1,2,3@1")).unwrap(), w("1,2,1")); // p = 2 < t
        assert_eq!(trun_map(&mw("1,1,2@2")).unwrap(), w("1,2,2"));
        assert_eq!(trun_map(&mw("1,2,2@1")).unwrap(), w("1,1,2"));
        assert_eq!(trun_map(&mw("1,2,2@2")).unwrap(), w("1,1,2"));
        // Designating the smallest distinct letter is rejected, as is a mark
        // before the terminal run.
        assert!(trun_map(&mw("1,2,3@0")).is_err());
        assert!(trun_map(&mw("1,2,1@2")).is_err());
        assert!(trun_map(&mw("1,2,1,2@1")).is_err());
    }

    #[test]
    fn trun_map_inverse_small_cases() {
        let back = trun_map_inverse(&w("1,2,3")).unwrap();
        assert_eq!(back, mw("1,2,3@2"));
        let back = trun_map_inverse(&w("1,2,1")).unwrap();
        assert_eq!(back, mw("1,2,3@1"));
        let back = trun_map_inverse(&w("1,1,2")).unwrap();
        assert_eq!(back, mw("1,2,2@1"));
        let back = trun_map_inverse(&w("1,2,2")).unwrap();
        assert_eq!(back, mw("1,1,2@2"));
        assert!(trun_map_inverse(&w("1,1,1")).is_err());
        assert!(trun_map_inverse(&w("1")).is_err());
    }

    #[test]
    fn trun_map_is_a_bijection_onto_the_nonconstant_words() {
        for n in 1..=9usize {
            let mut images: Vec<CatalanWord> = Vec::new();
            for word in iter_flattened(n) {
                // Designate each non-minimal distinct letter of the terminal
                // run once, marking its first occurrence.
                let rs = word.runs();
                let last = rs.last().unwrap().clone();
                let blks = blocks(&word.letters()[last.clone()]);
                let mut offset = last.start + blks[0].1;
                for blk in &blks[1..] {
                    let marked = MarkedWord::new(word.clone(), offset).unwrap();
                    let image = trun_map(&marked).unwrap();
                    assert_eq!(image.len(), n);
                    let back = trun_map_inverse(&image).unwrap();
                    assert_eq!(back, marked, "round trip failed for {marked}");
                    images.push(image);
                    offset += blk.1;
                }
            }
            let mut expected: Vec<CatalanWord> = iter_flattened(n)
                .filter(|w| w.letters().iter().any(|&x| x != 1))
                .collect();
            images.sort();
            expected.sort();
            assert_eq!(images, expected, "n = {n}");
        }
    }

    #[test]
    fn tilde_involution_small_cases() {
        assert_eq!(tilde_involution(&w("1,1,2")).unwrap(), w("1,2,2"));
        assert_eq!(tilde_involution(&w("1,2,2")).unwrap(), w("1,1,2"));
        assert_eq!(tilde_involution(&w("1,2,1,2")).unwrap(), w("1,2,1,2"));
        assert_eq!(
            tilde_involution(&w("1,1,2,2,3,1")).unwrap(),
            w("1,2,2,3,3,1")
        );
    }

    #[test]
    fn tilde_involution_exchanges_112_and_122() {
        let (p112, p122) = (pat("112"), pat("122"));
        for n in 1..=9usize {
            for word in iter_flattened(n) {
                let image = tilde_involution(&word).unwrap();
                assert_eq!(image.len(), word.len());
                assert_eq!(tilde_involution(&image).unwrap(), word);
                assert_eq!(
                    count_pattern(word.letters(), &p112),
                    count_pattern(image.letters(), &p122),
                    "word {word} → {image}"
                );
                assert_eq!(word.trun(), image.trun());
                // Run boundaries are preserved exactly.
                assert_eq!(word.runs(), image.runs());
            }
        }
    }

    #[test]
    fn hat_involution_small_cases() {
        assert_eq!(hat_involution(&w("1,2,2,1")).unwrap(), w("1,2,1,1"));
        assert_eq!(hat_involution(&w("1,2,1,1")).unwrap(), w("1,2,2,1"));
        assert_eq!(hat_involution(&w("1,2,3")).unwrap(), w("1,2,3"));
        assert_eq!(hat_involution(&w("1,2,1,2,1")).unwrap(), w("1,2,1,2,1"));
    }

    #[test]
    fn hat_involution_exchanges_211_and_221() {
        let (p211, p221) = (pat("211"), pat("221"));
        for n in 1..=9usize {
            for word in iter_flattened(n) {
                let image = hat_involution(&word).unwrap();
                assert_eq!(image.len(), word.len());
                assert_eq!(hat_involution(&image).unwrap(), word);
                assert_eq!(
                    count_pattern(word.letters(), &p211),
                    count_pattern(image.letters(), &p221),
                    "word {word} → {image}"
                );
                assert_eq!(
                    word.statistics().des,
                    image.statistics().des,
                    "descent count must be preserved by {word} → {image}"
                );
            }
        }
    }

    #[test]
    fn swap_231_221_small_cases() {
        assert_eq!(swap_231_221(&w("1,2,3,1")).unwrap(), w("1,2,2,1"));
        assert_eq!(swap_231_221(&w("1,2,2,1")).unwrap(), w("1,2,3,1"));
        assert_eq!(swap_231_221(&w("1,2,1")).unwrap(), w("1,2,1"));
        assert_eq!(swap_231_221(&w("1,1,1")).unwrap(), w("1,1,1"));
    }

    #[test]
    fn swap_231_221_exchanges_the_two_patterns() {
        let (p231, p221) = (pat("231"), pat("221"));
        for n in 1..=9usize {
            for word in iter_flattened(n) {
                let image = swap_231_221(&word).unwrap();
                assert_eq!(image.len(), word.len());
                assert_eq!(swap_231_221(&image).unwrap(), word);
                assert_eq!(
                    count_pattern(word.letters(), &p231),
                    count_pattern(image.letters(), &p221),
                    "word {word} → {image}"
                );
                assert_eq!(
                    count_pattern(word.letters(), &p221),
                    count_pattern(image.letters(), &p231),
                    "word {word} → {image}"
                );
                assert_eq!(word.trun(), image.trun());
            }
        }
    }

    #[test]
    fn valley_map_small_cases() {
        assert_eq!(valley_map(&mw("1,2,3,1,2@2")).unwrap(), mw("1,2,1,2@1"));
        assert_eq!(
            valley_map_inverse(&mw("1,2,1,2@1")).unwrap(),
            mw("1,2,3,1,2@2")
        );
        // Longer plateau: 2,3,3,1,2 inside a word.
        assert_eq!(valley_map(&mw("1,2,3,3,1,2@3")).unwrap(), mw("1,2,1,1,2@1"));
        assert_eq!(
            valley_map_inverse(&mw("1,2,1,1,2@1")).unwrap(),
            mw("1,2,3,3,1,2@3")
        );
        assert!(valley_map(&mw("1,2,3,1,2@1")).is_err());
        assert!(valley_map(&mw("1,2,1@0")).is_err(), "1,2 ascent is not 312");
        assert!(valley_map_inverse(&mw("1,2,1,2@0")).is_err());
    }

    #[test]
    fn valley_map_is_a_bijection_between_marked_families() {
        let p312 = pat("312");
        for n in 3..=9usize {
            let mut images: Vec<MarkedWord> = Vec::new();
            let mut domain = 0usize;
            for word in iter_flattened(n) {
                let l = word.letters().to_vec();
                for i in 0..l.len() - 2 {
                    if l[i] >= l[i + 1] + 2 && l[i + 2] == l[i + 1] + 1 {
                        let marked = MarkedWord::new(word.clone(), i).unwrap();
                        let image = valley_map(&marked).unwrap();
                        assert_eq!(image.word().len(), n - 1);
                        let back = valley_map_inverse(&image).unwrap();
                        assert_eq!(back, marked, "round trip failed for {marked}");
                        images.push(image);
                        domain += 1;
                    }
                }
            }
            // The marked-312 count equals the total number of occurrences.
            let total: usize = iter_flattened(n).map(|w| w.count_pattern(&p312)).sum();
            assert_eq!(domain, total);
            // The images are exactly the marked valleys at length n−1.
            let mut valleys: Vec<MarkedWord> = Vec::new();
            for word in iter_flattened(n - 1) {
                let l = word.letters().to_vec();
                for i in 0..l.len().saturating_sub(2) {
                    if l[i] > l[i + 1] {
                        let b = l[i + 1];
                        let mut j = i + 1;
                        while j < l.len() && l[j] == b {
                            j += 1;
                        }
                        if j < l.len() && l[j] == b + 1 {
                            valleys.push(MarkedWord::new(word.clone(), i).unwrap());
                        }
                    }
                }
            }
            images.sort();
            valleys.sort();
            assert_eq!(images, valleys, "n = {n}");
        }
    }

    #[test]
    fn marked_word_parsing_round_trips() {
        let m = mw("1,2,3,1,2@2");
        assert_eq!(m.word(), &w("1,2,3,1,2"));
        assert_eq!(m.mark(), 2);
        assert_eq!(m.to_string(), "1,2,3,1,2@2");
        assert_eq!(m.to_string().parse::<MarkedWord>().unwrap(), m);
        assert!("1,2,3".parse::<MarkedWord>().is_err(), "missing mark");
        assert!("1,2,3@7".parse::<MarkedWord>().is_err(), "mark too large");
        assert!("1,3@0".parse::<MarkedWord>().is_err(), "not a Catalan word");
    }
}

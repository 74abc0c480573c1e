//! Exact closed-form counting formulas.
//!
//! Everything here evaluates in arbitrary-precision integer arithmetic with
//! division performed last and checked for exactness, so a misremembered
//! constant cannot round itself invisible.  The formulas:
//!
//! * [`cardinality`]: `|F_n| = (3^{n−1}+1)/2`;
//! * [`trun_sum`]: `Σ_{w ∈ F_n} (trun(w)−1) = (3^{n−1}−1)/2`;
//! * [`tot`]: the total number of occurrences of a consecutive pattern over
//!   all of `F_n`, for every pattern of length two or three;
//! * [`avoiders`]: the number of members of `F_n` containing no occurrence
//!   of a given pattern, as binomial sums.
//!
//! Some sequences match entries in the OEIS; [`oeis_label`] exposes those
//! identifiers for labelling command-line output.

use crate::words::Pattern;
use crate::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Binomial coefficient with the usual vanishing convention:
/// zero when `k < 0`, `n < 0`, or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        BigInt::zero()
    } else {
        num_integer::binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// Divides exactly, panicking on a nonzero remainder: the formulas guarantee
/// divisibility, so a remainder means a transcription error.
fn div_exact(num: BigInt, d: i64) -> BigInt {
    let (quot, rem) = num.div_rem(&BigInt::from(d));
    assert!(rem.is_zero(), "{num} is not divisible by {d}");
    quot
}

/// `3^k`.
fn pow3(k: u64) -> BigInt {
    BigInt::from(3).pow(u32::try_from(k).expect("exponent fits in u32"))
}

/// The number of flattened Catalan words of length `n`: `(3^{n−1}+1)/2`.
///
/// # Errors
///
/// [`Error::InvalidInput`] if `n = 0` (there is no word of length zero).
pub fn cardinality(n: u64) -> Result<BigInt, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("word counts start at length 1".into()));
    }
    Ok(div_exact(pow3(n - 1) + 1, 2))
}

/// The sum of `trun − 1` over all flattened Catalan words of length `n`:
/// `(3^{n−1}−1)/2`.
///
/// # Errors
///
/// [`Error::InvalidInput`] if `n = 0`.
pub fn trun_sum(n: u64) -> Result<BigInt, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("word counts start at length 1".into()));
    }
    Ok(div_exact(pow3(n - 1) - 1, 2))
}

/// The total number of occurrences of `tau` over all flattened Catalan words
/// of length `n`.
///
/// Patterns sharing a distribution share a total; in addition the length-3
/// totals reduce to shifted length-2 totals where such an identity holds
/// (`111 → 11`, `112/122 → 12`, `211/221/231 → 21`, all at length `n−1`),
/// while `121`, `123`, `212` and `312` have their own explicit formulas.
///
/// Length-2 formulas are valid for `n ≥ 2` and length-3 formulas for
/// `n ≥ 3`: below those bounds some expressions would involve fractional
/// powers of 3 (the `312` formula at `n = 2`, for instance), so the
/// evaluator refuses rather than extrapolating.  A length-2 word trivially
/// contains zero occurrences of any length-3 pattern; that brute-force fact
/// is not folded into the formulas.
///
/// # Errors
///
/// [`Error::InvalidInput`] if `n` is below the pattern's validity bound or
/// if `tau` is not one of the thirteen supported patterns.
pub fn tot(tau: &Pattern, n: u64) -> Result<BigInt, Error> {
    let min_n = if tau.len() == 3 { 3 } else { 2 };
    if n < min_n {
        return Err(Error::InvalidInput(format!(
            "the total-occurrence formula for {tau} is stated for n >= {min_n}, got n = {n}"
        )));
    }
    let n_i = n as i64;
    let value = match tau.letters() {
        // (n−1)(3^{n−2}+1)/2
        [1, 1] => div_exact((pow3(n - 2) + 1) * (n_i - 1), 2),
        // (n−1)(3^{n−1}+1)/4
        [1, 2] => div_exact((pow3(n - 1) + 1) * (n_i - 1), 4),
        // (n−1)(3^{n−2}−1)/4
        [2, 1] => div_exact((pow3(n - 2) - 1) * (n_i - 1), 4),
        [1, 1, 1] => tot(&Pattern::new(vec![1, 1]).unwrap(), n - 1)?,
        [1, 1, 2] | [1, 2, 2] => tot(&Pattern::new(vec![1, 2]).unwrap(), n - 1)?,
        [2, 1, 1] | [2, 2, 1] | [2, 3, 1] => tot(&Pattern::new(vec![2, 1]).unwrap(), n - 1)?,
        // ((n+1)·3^{n−3} + n − 3)/4
        [1, 2, 1] => div_exact(pow3(n - 3) * (n_i + 1) + (n_i - 3), 4),
        // (n−2)·3^{n−3}
        [1, 2, 3] => pow3(n - 3) * (n_i - 2),
        // (n−2)(3^{n−3}−1)/4 — equal to the shifted 21 total, kept explicit
        // so the shift identity remains an independent check.
        [2, 1, 2] => div_exact((pow3(n - 3) - 1) * (n_i - 2), 4),
        // ((n−5)·3^{n−3} + n − 1)/4
        [3, 1, 2] => div_exact(pow3(n - 3) * (n_i - 5) + (n_i - 1), 4),
        _ => {
            return Err(Error::InvalidInput(format!(
                "pattern {tau} has no total-occurrence formula; supported patterns: \
                 11, 12, 21, 111, 112, 121, 122, 123, 211, 212, 221, 231, 312"
            )))
        }
    };
    Ok(value)
}

/// The number of flattened Catalan words of length `n` avoiding `tau`
/// (containing no occurrence of it), by the exact binomial-sum formulas.
///
/// Supported patterns: `11`, `111`, `121`, `122`, `123`, `211`, `212`,
/// `221`, `231`, `312`; the patterns `221` and `231` share the `211` formula
/// through their equidistribution.
///
/// # Errors
///
/// [`Error::InvalidInput`] if `n = 0`, if `tau` has no avoider formula, or
/// if `tau = 111` and `n < 3` (that formula's stated range is `n ≥ 3`).
pub fn avoiders(tau: &Pattern, n: u64) -> Result<BigInt, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("word counts start at length 1".into()));
    }
    let n_i = n as i64;
    let value = match tau.letters() {
        // 1 for n = 1, else 2^{n−2}: level-free words are determined by
        // their strictly-increasing-run skeleton.
        [1, 1] => {
            if n == 1 {
                BigInt::from(1)
            } else {
                BigInt::from(2).pow(u32::try_from(n - 2).unwrap())
            }
        }
        // Σ_k C(n−k, k)·2^{n−k−2} for n ≥ 3.
        [1, 1, 1] => {
            if n < 3 {
                return Err(Error::InvalidInput(format!(
                    "the 111-avoider formula is stated for n >= 3, got n = {n}"
                )));
            }
            let mut acc = BigInt::zero();
            for k in 0..=n_i / 2 {
                acc +=
                    binomial(n_i - k, k) * BigInt::from(2).pow(u32::try_from(n_i - k - 2).unwrap());
            }
            acc
        }
        // Σ_r C(n+r, 3r+1).
        [1, 2, 2] => {
            let mut acc = BigInt::zero();
            for r in 0..=(n_i - 1) / 2 {
                acc += binomial(n_i + r, 3 * r + 1);
            }
            acc
        }
        // Σ_j Σ_r C(j−1, 2r)·C(n−r−1, j−r−1).
        [2, 1, 1] | [2, 2, 1] | [2, 3, 1] => {
            let mut acc = BigInt::zero();
            for j in 1..=n_i {
                for r in 0..=(j - 1) / 2 {
                    acc += binomial(j - 1, 2 * r) * binomial(n_i - r - 1, j - r - 1);
                }
            }
            acc
        }
        // Σ_j Σ_p Σ_r C(p, r)·C(j−p−1, 2p−r)·C(n−r−1, j−1).
        [1, 2, 1] => {
            let mut acc = BigInt::zero();
            for j in 1..=n_i {
                for p in 0..=(j - 1) / 2 {
                    for r in 0..=p {
                        acc += binomial(p, r)
                            * binomial(j - p - 1, 2 * p - r)
                            * binomial(n_i - r - 1, j - 1);
                    }
                }
            }
            acc
        }
        // 1 + Σ_j Σ_ℓ C(j−2, ℓ−1)·C(n−j+ℓ, j−1).
        [1, 2, 3] => {
            let mut acc = BigInt::from(1);
            for j in 2..=n_i {
                for l in 1..=j - 1 {
                    acc += binomial(j - 2, l - 1) * binomial(n_i - j + l, j - 1);
                }
            }
            acc
        }
        // 1 + Σ_j Σ_p Σ_r C(p−1, r)·C(j−p, p+r)·C(n−p+r, j−1).
        [2, 1, 2] => {
            let mut acc = BigInt::from(1);
            for j in 2..=n_i {
                for p in 1..=j / 2 {
                    for r in 0..=p - 1 {
                        acc += binomial(p - 1, r)
                            * binomial(j - p, p + r)
                            * binomial(n_i - p + r, j - 1);
                    }
                }
            }
            acc
        }
        // 1 + Σ_j Σ_p Σ_r C(p−1, r)·C(j−p, p+r)·C(n−r−1, j−1).
        [3, 1, 2] => {
            let mut acc = BigInt::from(1);
            for j in 2..=n_i {
                for p in 1..=j / 2 {
                    for r in 0..=p - 1 {
                        acc += binomial(p - 1, r)
                            * binomial(j - p, p + r)
                            * binomial(n_i - r - 1, j - 1);
                    }
                }
            }
            acc
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "pattern {tau} has no avoider formula; supported patterns: \
                 11, 111, 121, 122, 123, 211, 212, 221, 231, 312"
            )))
        }
    };
    Ok(value)
}

/// The identifier this counting sequence carries in the OEIS, when it has
/// one.  Pass `None` for the cardinality sequence itself, or `Some(τ)` for
/// the sequence `n ↦ tot(τ, n)`.  Used purely for labelling output.
pub fn oeis_label(tot_pattern: Option<&Pattern>) -> Option<&'static str> {
    match tot_pattern {
        None => Some("A007051"),
        Some(tau) => match tau.letters() {
            [1, 1] => Some("A082133"),
            [2, 1] => Some("A261064"),
            [1, 2, 3] => Some("A027471"),
            [3, 1, 2] => Some("A212337"),
            _ => None,
        },
    }
}

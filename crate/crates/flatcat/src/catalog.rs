//! Catalog of closed-form generating functions for flattened Catalan words.
//!
//! Every entry is a [`RationalGF`] in `x` whose coefficient of `x^n` encodes a
//! joint distribution over the flattened Catalan words of length `n`.  The
//! catalog covers:
//!
//! * five joint families ([`Family::A`] … [`Family::E`]), each tracking
//!   `trun − 1` (marked by `y`) together with three consecutive patterns
//!   (marked by `p`, `q`, `r`);
//! * the single-statistic `trun − 1` distribution (`trun`);
//! * the thirteen single-pattern distributions `F_τ(x; q)` for every
//!   consecutive pattern `τ` of length two or three (`F_11` … `F_312`),
//!   where `q` marks the number of occurrences of `τ`;
//! * the distribution of short valleys, i.e. occurrences of `212` or `312`
//!   combined (`shortValley`);
//! * the auxiliary functions `U`, `V`, `W` attached to each family, where for
//!   a family generating function `S(x, y)` the auxiliaries are
//!   `U = ∂S/∂y at y=1` (each word weighted by `trun − 1`),
//!   `V = S(x, 1)` (plain sum over all words), and
//!   `W = S(x, 0)` (sum over words with `trun = 1`).
//!
//! Formulas are stored exactly as derived — no algebraic simplification is
//! applied — so any transcription slip is caught by the brute-force
//! verification suites rather than silently cancelled.

use crate::poly::{int, p, q, r, y, MultiPoly, Var};
use crate::series::{RationalGF, XPoly, XSeries};
use crate::words::{count_pattern, trun, Pattern};
use crate::Error;
use std::fmt;
use std::str::FromStr;

/// The five joint-distribution families.
///
/// Each family tracks word length (`x`), `trun − 1` (`y`), and a trio of
/// consecutive patterns (`p`, `q`, `r`); see [`Family::markers`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `p ↦ #12`, `q ↦ #21`, `r ↦ #11` (ascents, descents, levels).
    A,
    /// `p ↦ #122`, `q ↦ #211`, `r ↦ #111`.
    B,
    /// `p ↦ #112`, `q ↦ #121`, `r ↦ #221`.
    C,
    /// `p ↦ #123`, `q ↦ #231`, `r ↦ #221`.
    D,
    /// `p ↦ #112`, `q ↦ #212`, `r ↦ #312`.
    E,
}

/// What a marking variable counts on a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Marker {
    /// The number of distinct letters in the terminal weakly increasing run,
    /// minus one.
    TrunMinusOne,
    /// The number of occurrences of one consecutive pattern.
    Subword(Pattern),
    /// The total number of occurrences over several consecutive patterns.
    SubwordSum(Vec<Pattern>),
}

impl Marker {
    /// Evaluates the marked statistic on a word given by its letters.
    pub fn evaluate(&self, word: &[u32]) -> u64 {
        match self {
            Marker::TrunMinusOne => trun(word) as u64 - 1,
            Marker::Subword(pat) => count_pattern(word, pat) as u64,
            Marker::SubwordSum(pats) => {
                pats.iter().map(|pat| count_pattern(word, pat) as u64).sum()
            }
        }
    }
}

/// One catalog entry: an identifier, its generating function stored exactly
/// as derived, and the role played by each marking variable.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Which catalog member this is.
    pub id: CatalogId,
    /// The rational generating function, unsimplified.
    pub gf: RationalGF,
    /// Which variable marks which statistic.  Auxiliary `U`/`V`/`W` entries
    /// list only their pattern markers; the `y`-dependence has been
    /// differentiated or specialized away.
    pub roles: Vec<(Var, Marker)>,
}

/// Identifier of a catalog entry, usable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(missing_docs)]
pub enum CatalogId {
    A,
    B,
    C,
    D,
    E,
    /// Distribution of `trun − 1` alone (`y` marks it).
    Trun,
    F11,
    F12,
    F21,
    F111,
    F112,
    F121,
    F122,
    F123,
    F211,
    F212,
    F221,
    F231,
    F312,
    /// Combined count of `212` and `312` occurrences (`q` marks the sum).
    ShortValley,
    UA,
    VA,
    UB,
    UC,
    VC,
    UD,
    VD,
    WD,
    UE,
    VE,
    WE,
}

impl CatalogId {
    /// Every identifier in the catalog, in display order.
    pub const ALL: [CatalogId; 31] = [
        CatalogId::A,
        CatalogId::B,
        CatalogId::C,
        CatalogId::D,
        CatalogId::E,
        CatalogId::Trun,
        CatalogId::F11,
        CatalogId::F12,
        CatalogId::F21,
        CatalogId::F111,
        CatalogId::F112,
        CatalogId::F121,
        CatalogId::F122,
        CatalogId::F123,
        CatalogId::F211,
        CatalogId::F212,
        CatalogId::F221,
        CatalogId::F231,
        CatalogId::F312,
        CatalogId::ShortValley,
        CatalogId::UA,
        CatalogId::VA,
        CatalogId::UB,
        CatalogId::UC,
        CatalogId::VC,
        CatalogId::UD,
        CatalogId::VD,
        CatalogId::WD,
        CatalogId::UE,
        CatalogId::VE,
        CatalogId::WE,
    ];

    /// The textual identifier used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            CatalogId::A => "A",
            CatalogId::B => "B",
            CatalogId::C => "C",
            CatalogId::D => "D",
            CatalogId::E => "E",
            CatalogId::Trun => "trun",
            CatalogId::F11 => "F_11",
            CatalogId::F12 => "F_12",
            CatalogId::F21 => "F_21",
            CatalogId::F111 => "F_111",
            CatalogId::F112 => "F_112",
            CatalogId::F121 => "F_121",
            CatalogId::F122 => "F_122",
            CatalogId::F123 => "F_123",
            CatalogId::F211 => "F_211",
            CatalogId::F212 => "F_212",
            CatalogId::F221 => "F_221",
            CatalogId::F231 => "F_231",
            CatalogId::F312 => "F_312",
            CatalogId::ShortValley => "shortValley",
            CatalogId::UA => "U_A",
            CatalogId::VA => "V_A",
            CatalogId::UB => "U_B",
            CatalogId::UC => "U_C",
            CatalogId::VC => "V_C",
            CatalogId::UD => "U_D",
            CatalogId::VD => "V_D",
            CatalogId::WD => "W_D",
            CatalogId::UE => "U_E",
            CatalogId::VE => "V_E",
            CatalogId::WE => "W_E",
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CatalogId, Error> {
        // The underscore is optional: F11 and U_A name the same entries as
        // F_11 and UA.
        CatalogId::ALL
            .into_iter()
            .find(|id| id.name() == s || id.name().replace('_', "") == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown generating function id {s:?}; expected one of: {}",
                    CatalogId::ALL.map(CatalogId::name).join(", ")
                ))
            })
    }
}

/// Parses a pattern literal that is known to be valid.
fn pat(s: &str) -> Pattern {
    s.parse().expect("valid pattern literal")
}

/// Shorthand: polynomial in `x` from its list of coefficients.
fn xp(coeffs: Vec<MultiPoly>) -> XPoly {
    XPoly::from_coeffs(coeffs)
}

/// Shorthand: the monomial `c·x^k`.
fn xm(k: usize, c: MultiPoly) -> XPoly {
    XPoly::monomial(k, c)
}

/// Shorthand: the monomial `x^k`.
fn xk(k: usize) -> XPoly {
    XPoly::monomial(k, MultiPoly::one())
}

impl Family {
    /// All five families in order.
    pub const ALL: [Family; 5] = [Family::A, Family::B, Family::C, Family::D, Family::E];

    /// The family's letter, as used in catalog identifiers.
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
        }
    }

    /// The statistic marked by each of `y`, `p`, `q`, `r`.
    pub fn markers(self) -> Vec<(Var, Marker)> {
        let trio = |a: &str, b: &str, c: &str| {
            vec![
                (Var::Y, Marker::TrunMinusOne),
                (Var::P, Marker::Subword(pat(a))),
                (Var::Q, Marker::Subword(pat(b))),
                (Var::R, Marker::Subword(pat(c))),
            ]
        };
        match self {
            Family::A => trio("12", "21", "11"),
            Family::B => trio("122", "211", "111"),
            Family::C => trio("112", "121", "221"),
            Family::D => trio("123", "231", "221"),
            Family::E => trio("112", "212", "312"),
        }
    }

    /// The family's joint generating function.
    pub fn gf(self) -> RationalGF {
        match self {
            Family::A => gf_a(),
            Family::B => gf_b(),
            Family::C => gf_c(),
            Family::D => gf_d(),
            Family::E => gf_e(),
        }
    }

    /// The catalog identifier of the family's joint generating function.
    pub fn id(self) -> CatalogId {
        match self {
            Family::A => CatalogId::A,
            Family::B => CatalogId::B,
            Family::C => CatalogId::C,
            Family::D => CatalogId::D,
            Family::E => CatalogId::E,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family, Error> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown family {s:?}; expected one of: A, B, C, D, E"
                ))
            })
    }
}

/// `A(x,y) = x(1−(p+r)x)² / ((1−(r+py)x)(1−2(p+r)x+((p+r)²−pq)x²))`.
///
/// `y` marks `trun − 1`, `p` ascents (`12`), `q` descents (`21`), `r` levels
/// (`11`).
fn gf_a() -> RationalGF {
    let num = xk(1) * xp(vec![int(1), -(p() + r())]).pow(2);
    let d1 = xp(vec![int(1), -(r() + p() * y())]);
    let d2 = xp(vec![
        int(1),
        int(-2) * (p() + r()),
        (p() + r()).pow(2) - p() * q(),
    ]);
    RationalGF::new(num, d1 * d2)
}

/// `B(x,y) = x(1+(1−r)x)β² / ((1−(r+y)x−(p−r)x²y)(β²−x²(1+(p−r)x)(1+(q−r)x)))`
/// with `β = 1−(1+r)x−(p−r)x²`.
///
/// `y` marks `trun − 1`, `p` counts `122`, `q` counts `211`, `r` counts `111`.
fn gf_b() -> RationalGF {
    let beta = xp(vec![int(1), -(int(1) + r()), -(p() - r())]);
    let num = xk(1) * xp(vec![int(1), int(1) - r()]) * beta.pow(2);
    let d1 = xp(vec![int(1), -(r() + y()), -((p() - r()) * y())]);
    let d2 = beta.pow(2) - xk(2) * xp(vec![int(1), p() - r()]) * xp(vec![int(1), q() - r()]);
    RationalGF::new(num, d1 * d2)
}

/// The quintic denominator factor shared by `C`, `U_C` and `V_C`:
/// `1−4x−(2p+q−6)x²+(4p+3q−r−pq−5)x³+(p−1)(p+3q−r−3)x⁴+(p−1)²(q−1)x⁵`.
fn c_alpha() -> XPoly {
    xp(vec![
        int(1),
        int(-4),
        -(int(2) * p() + q() - int(6)),
        int(4) * p() + int(3) * q() - r() - p() * q() - int(5),
        (p() - int(1)) * (p() + int(3) * q() - r() - int(3)),
        (p() - int(1)).pow(2) * (q() - int(1)),
    ])
}

/// `C(x,y) = x(1−2x−(p−1)x²)² / ((1−x(1+y)−(p−1)x²y)·α)` with `α` = [`c_alpha`].
///
/// `y` marks `trun − 1`, `p` counts `112`, `q` counts `121`, `r` counts `221`.
fn gf_c() -> RationalGF {
    let gamma = xp(vec![int(1), int(-2), -(p() - int(1))]);
    let d1 = xp(vec![int(1), -(int(1) + y()), -((p() - int(1)) * y())]);
    RationalGF::new(xk(1) * gamma.pow(2), d1 * c_alpha())
}

/// `1−(p+1)x+(p−1)x²`, the quadratic attached to family `D`.
fn d_phi() -> XPoly {
    xp(vec![int(1), -(p() + int(1)), p() - int(1)])
}

/// `1−x(1+py)+(p−1)x²y`, the `y`-carrying denominator factor of family `D`.
fn d_delta() -> XPoly {
    xp(vec![int(1), -(int(1) + p() * y()), (p() - int(1)) * y()])
}

/// `V_D = D(x,1) = x(1−(p−1)x)φ / (1−2(p+1)x+(p²+4p−2)x²−(2p²+pq−p+r−3)x³+(p−1)(p+q−2)x⁴)`.
fn gf_v_d() -> RationalGF {
    let den = xp(vec![
        int(1),
        int(-2) * (p() + int(1)),
        p().pow(2) + int(4) * p() - int(2),
        -(int(2) * p().pow(2) + p() * q() - p() + r() - int(3)),
        (p() - int(1)) * (p() + q() - int(2)),
    ]);
    RationalGF::new(xk(1) * xp(vec![int(1), -(p() - int(1))]) * d_phi(), den)
}

/// `D(x,y)`, assembled as the two-term sum
/// `x/δ + (x²+(pq−p+r−1)x³−(p−1)(q−1)x⁴−xy(p−1)φ²) / ((1−(p−1)x)·φ·δ) · V_D`
/// with `φ` = [`d_phi`], `δ` = [`d_delta`] and `V_D` = [`gf_v_d`].
///
/// `y` marks `trun − 1`, `p` counts `123`, `q` counts `231`, `r` counts `221`.
fn gf_d() -> RationalGF {
    let head = RationalGF::new(xk(1), d_delta());
    let num = xp(vec![
        MultiPoly::zero(),
        MultiPoly::zero(),
        int(1),
        p() * q() - p() + r() - int(1),
        -((p() - int(1)) * (q() - int(1))),
    ]) - xm(1, y() * (p() - int(1))) * d_phi().pow(2);
    let den = xp(vec![int(1), -(p() - int(1))]) * d_phi() * d_delta();
    head + RationalGF::new(num, den) * gf_v_d()
}

/// `q−1+(r−2q+1)x+(p−1)(r−q)x²`, the numerator quadratic of family `E`.
fn e_g() -> XPoly {
    xp(vec![
        q() - int(1),
        r() - int(2) * q() + int(1),
        (p() - int(1)) * (r() - q()),
    ])
}

/// `1−x−(p−1)x²`, the `y`-free denominator factor of family `E`.
fn e_eps() -> XPoly {
    xp(vec![int(1), int(-1), -(p() - int(1))])
}

/// `1−x−xy−(p−1)x²y`, the `y`-carrying denominator factor of family `E`.
fn e_eta() -> XPoly {
    xp(vec![int(1), -(int(1) + y()), -((p() - int(1)) * y())])
}

/// `V_E = E(x,1) = xα / ((1−x)β)` with
/// `α = 1−3x−(p+q−4)x²+(p+2q−r−2)x³+(p−1)(q−r)x⁴` and
/// `β = 1−4x−(2p+q−6)x²+(3p+2q−r−4)x³+(p−1)(p+q−r−1)x⁴`.
fn gf_v_e() -> RationalGF {
    let alpha = xp(vec![
        int(1),
        int(-3),
        -(p() + q() - int(4)),
        p() + int(2) * q() - r() - int(2),
        (p() - int(1)) * (q() - r()),
    ]);
    let beta = xp(vec![
        int(1),
        int(-4),
        -(int(2) * p() + q() - int(6)),
        int(3) * p() + int(2) * q() - r() - int(4),
        (p() - int(1)) * (p() + q() - r() - int(1)),
    ]);
    RationalGF::new(xk(1) * alpha, xp(vec![int(1), int(-1)]) * beta)
}

/// `E(x,y)`, assembled as the two-term sum
/// `(x−3x²−(p−3)x³+(p−1)x⁴−x³y·g) / ((1−x)εη) + (x−x²+x²y·g) / (εη) · V_E`
/// with `g` = [`e_g`], `ε` = [`e_eps`], `η` = [`e_eta`] and `V_E` = [`gf_v_e`].
///
/// `y` marks `trun − 1`, `p` counts `112`, `q` counts `212`, `r` counts `312`.
fn gf_e() -> RationalGF {
    let head_num = xp(vec![
        MultiPoly::zero(),
        int(1),
        int(-3),
        -(p() - int(3)),
        p() - int(1),
    ]) - xm(3, y()) * e_g();
    let head = RationalGF::new(head_num, xp(vec![int(1), int(-1)]) * e_eps() * e_eta());
    let tail_num = xp(vec![MultiPoly::zero(), int(1), int(-1)]) + xm(2, y()) * e_g();
    head + RationalGF::new(tail_num, e_eps() * e_eta()) * gf_v_e()
}

/// Distribution of `trun − 1` alone:
/// `x(1−2x)² / ((1−x−xy)(1−4x+3x²))`, i.e. `A(x,y)` at `p=q=r=1`.
fn gf_trun() -> RationalGF {
    let num = xk(1) * xp(vec![int(1), int(-2)]).pow(2);
    let den = xp(vec![int(1), -(int(1) + y())]) * xp(vec![int(1), int(-4), int(3)]);
    RationalGF::new(num, den)
}

/// Distribution of short valleys (occurrences of `212` plus occurrences of
/// `312`, marked jointly by `q`):
/// `x(1−2x−(q−1)x²) / ((1−x)(1−3x−(q−1)x²))`.
fn gf_short_valley() -> RationalGF {
    let num = xk(1) * xp(vec![int(1), int(-2), -(q() - int(1))]);
    let den = xp(vec![int(1), int(-1)]) * xp(vec![int(1), int(-3), -(q() - int(1))]);
    RationalGF::new(num, den)
}

/// The single-pattern distribution `F_τ(x; q)` where `q` marks occurrences of
/// the consecutive pattern `τ`.
///
/// Supported patterns: the three of length two and the ten of length three
/// that occur in Catalan words.  Equidistributed patterns share a formula:
/// `112` with `122`, and `211` with `221` and `231`.
///
/// # Errors
///
/// [`Error::InvalidInput`] if `τ` is not one of the thirteen supported
/// patterns.
pub fn pattern_gf(tau: &Pattern) -> Result<RationalGF, Error> {
    let x1 = xk(1);
    let gf = match tau.letters() {
        [1, 1] => RationalGF::new(
            x1 * xp(vec![int(1), -(int(1) + q())]),
            xp(vec![int(1), int(-2) * (int(1) + q()), q() * (int(2) + q())]),
        ),
        [1, 2] => RationalGF::new(
            x1 * xp(vec![int(1), -(int(1) + q())]),
            xp(vec![
                int(1),
                int(-2) * (int(1) + q()),
                int(1) + q() + q().pow(2),
            ]),
        ),
        [2, 1] => RationalGF::new(
            x1 * xp(vec![int(1), int(-2)]),
            xp(vec![int(1), int(-4), int(4) - q()]),
        ),
        [1, 1, 1] => RationalGF::new(
            x1 * xp(vec![int(1), int(1) - q()])
                * xp(vec![int(1), -(int(1) + q()), -(int(1) - q())]),
            xp(vec![
                int(1),
                int(-2) * (int(1) + q()),
                -(int(2) - int(4) * q() - q().pow(2)),
                int(2) * q() * (int(1) - q()),
            ]),
        ),
        [1, 1, 2] | [1, 2, 2] => RationalGF::new(
            x1 * xp(vec![int(1), int(-2), int(1) - q()]),
            xp(vec![
                int(1),
                int(-4),
                int(5) - int(2) * q(),
                int(-3) * (int(1) - q()),
                (int(1) - q()).pow(2),
            ]),
        ),
        [1, 2, 1] => RationalGF::new(
            x1 * xp(vec![int(1), int(-2)]),
            xp(vec![
                int(1),
                int(-4),
                int(4) - q(),
                int(-2) * (int(1) - q()),
            ]),
        ),
        [1, 2, 3] => RationalGF::new(
            x1 * xp(vec![int(1), int(1) - q()])
                * xp(vec![int(1), -(int(1) + q()), -(int(1) - q())]),
            xp(vec![
                int(1),
                int(-2) * (int(1) + q()),
                -(int(2) - int(4) * q() - q().pow(2)),
                int(2) * (int(1) - q().pow(2)),
                (int(1) - q()).pow(2),
            ]),
        ),
        [2, 1, 1] | [2, 2, 1] | [2, 3, 1] => RationalGF::new(
            x1 * xp(vec![int(1), int(-2)]),
            xp(vec![int(1), int(-4), int(3), int(1) - q()]),
        ),
        [2, 1, 2] => RationalGF::new(
            x1 * xp(vec![
                int(1),
                int(-3),
                int(3) - q(),
                int(-2) * (int(1) - q()),
            ]),
            xp(vec![int(1), int(-1)])
                * xp(vec![
                    int(1),
                    int(-4),
                    int(4) - q(),
                    int(-2) * (int(1) - q()),
                ]),
        ),
        [3, 1, 2] => RationalGF::new(
            x1 * xp(vec![int(1), int(-3), int(2), int(1) - q()]),
            xp(vec![int(1), int(-1)]) * xp(vec![int(1), int(-4), int(3), int(1) - q()]),
        ),
        _ => {
            return Err(Error::InvalidInput(format!(
                "pattern {tau} has no catalog entry; supported patterns: \
                 11, 12, 21, 111, 112, 121, 122, 123, 211, 212, 221, 231, 312"
            )))
        }
    };
    Ok(gf)
}

/// The pattern-marker roles of a family, i.e. its markers without the
/// `y ↦ trun − 1` entry.  Used for the auxiliary `U`/`V`/`W` entries.
fn family_pattern_roles(family: Family) -> Vec<(Var, Marker)> {
    family
        .markers()
        .into_iter()
        .filter(|(v, _)| *v != Var::Y)
        .collect()
}

/// Builds the catalog entry for an identifier.
pub fn entry(id: CatalogId) -> CatalogEntry {
    let single = |p: &str| vec![(Var::Q, Marker::Subword(pat(p)))];
    let (gf, roles) = match id {
        CatalogId::A => (gf_a(), Family::A.markers()),
        CatalogId::B => (gf_b(), Family::B.markers()),
        CatalogId::C => (gf_c(), Family::C.markers()),
        CatalogId::D => (gf_d(), Family::D.markers()),
        CatalogId::E => (gf_e(), Family::E.markers()),
        CatalogId::Trun => (gf_trun(), vec![(Var::Y, Marker::TrunMinusOne)]),
        CatalogId::F11 => (pattern_gf(&pat("11")).unwrap(), single("11")),
        CatalogId::F12 => (pattern_gf(&pat("12")).unwrap(), single("12")),
        CatalogId::F21 => (pattern_gf(&pat("21")).unwrap(), single("21")),
        CatalogId::F111 => (pattern_gf(&pat("111")).unwrap(), single("111")),
        CatalogId::F112 => (pattern_gf(&pat("112")).unwrap(), single("112")),
        CatalogId::F121 => (pattern_gf(&pat("121")).unwrap(), single("121")),
        CatalogId::F122 => (pattern_gf(&pat("122")).unwrap(), single("122")),
        CatalogId::F123 => (pattern_gf(&pat("123")).unwrap(), single("123")),
        CatalogId::F211 => (pattern_gf(&pat("211")).unwrap(), single("211")),
        CatalogId::F212 => (pattern_gf(&pat("212")).unwrap(), single("212")),
        CatalogId::F221 => (pattern_gf(&pat("221")).unwrap(), single("221")),
        CatalogId::F231 => (pattern_gf(&pat("231")).unwrap(), single("231")),
        CatalogId::F312 => (pattern_gf(&pat("312")).unwrap(), single("312")),
        CatalogId::ShortValley => (
            gf_short_valley(),
            vec![(Var::Q, Marker::SubwordSum(vec![pat("212"), pat("312")]))],
        ),
        CatalogId::UA => (
            RationalGF::new(
                xm(2, p()),
                xp(vec![
                    int(1),
                    int(-2) * (p() + r()),
                    (p() + r()).pow(2) - p() * q(),
                ]),
            ),
            family_pattern_roles(Family::A),
        ),
        CatalogId::VA => (
            RationalGF::new(
                xk(1) * xp(vec![int(1), -(p() + r())]),
                xp(vec![
                    int(1),
                    int(-2) * (p() + r()),
                    (p() + r()).pow(2) - p() * q(),
                ]),
            ),
            family_pattern_roles(Family::A),
        ),
        CatalogId::UB => {
            let beta = xp(vec![int(1), -(int(1) + r()), -(p() - r())]);
            (
                RationalGF::new(
                    xk(2) * xp(vec![int(1), int(1) - r()]) * xp(vec![int(1), p() - r()]),
                    beta.pow(2) - xk(2) * xp(vec![int(1), p() - r()]) * xp(vec![int(1), q() - r()]),
                ),
                family_pattern_roles(Family::B),
            )
        }
        CatalogId::UC => (
            RationalGF::new(xk(2) * xp(vec![int(1), p() - int(1)]), c_alpha()),
            family_pattern_roles(Family::C),
        ),
        CatalogId::VC => (
            RationalGF::new(
                xk(1) * xp(vec![int(1), int(-2), -(p() - int(1))]),
                c_alpha(),
            ),
            family_pattern_roles(Family::C),
        ),
        CatalogId::UD => (
            RationalGF::new(xk(1), xp(vec![int(1), -(p() - int(1))]) * d_phi()) * gf_v_d(),
            family_pattern_roles(Family::D),
        ),
        CatalogId::VD => (gf_v_d(), family_pattern_roles(Family::D)),
        CatalogId::WD => (
            RationalGF::new(
                d_phi(),
                xp(vec![int(1), int(-1)]) * xp(vec![int(1), -(p() - int(1))]),
            ) * gf_v_d(),
            family_pattern_roles(Family::D),
        ),
        CatalogId::UE => (gf_u_e(), family_pattern_roles(Family::E)),
        CatalogId::VE => (gf_v_e(), family_pattern_roles(Family::E)),
        CatalogId::WE => (
            RationalGF::new(xk(1), xp(vec![int(1), int(-1)]))
                * (RationalGF::from_xpoly(XPoly::one()) + gf_u_e()),
            family_pattern_roles(Family::E),
        ),
    };
    CatalogEntry { id, gf, roles }
}

/// `U_E = ((1−x)V_E − x) / ε` with `ε` = [`e_eps`].
fn gf_u_e() -> RationalGF {
    (RationalGF::from_xpoly(xp(vec![int(1), int(-1)])) * gf_v_e() - RationalGF::from_xpoly(xk(1)))
        * RationalGF::new(XPoly::one(), e_eps())
}

/// Expands a catalog generating function; all catalog denominators have
/// constant term one, so this cannot fail.
fn expand(gf: &RationalGF, order: usize) -> XSeries {
    gf.expand(order)
        .expect("catalog denominators have unit constant term")
}

/// The recurrence the family's joint generating function satisfies, returned
/// as a residual: the left side minus the right side of the identity,
/// truncated at `order`.  A correct catalog yields the zero series.
///
/// Writing `S(x,y)` for the family's generating function and
/// `U = ∂S/∂y at y=1`, `V = S(x,1)`, `W = S(x,0)`, the identities are:
///
/// * `A`: `(1−x(py+r))·A − (x + qx·U)`
/// * `B`: `(1−(r+y)x−(p−r)x²y)·B − (x + x²(1−r) + x(1+(q−r)x)·U)`
/// * `C`: `(1−x(1+y)−(p−1)x²y)·C − (x + x²(r+1+(p−1)x)·U + qx²(1+(p−1)x)·V)`
/// * `D`: `(1−x(1+py)−(1−p)x²y)·D − (x + x²(pq+r+(1−p)qx)·U + x²(p+(1−p)x)·V + (1−p)x(1−x)(x+y)·W)`
/// * `E`: `(1−x−xy−(p−1)x²y)·E − (x + x²y + x(1+rxy)·U + (q−r)x²y·V − xy(1−(r−q+1)x)·W)`
pub fn functional_residual(family: Family, order: usize) -> XSeries {
    let s = expand(&family.gf(), order);
    let u = s.dy_at_1();
    let v = s.set_var(Var::Y, 1);
    let w = s.set_var(Var::Y, 0);
    let x_term = XSeries::from_xpoly(&xk(1), order);
    match family {
        Family::A => {
            let lhs = s.mul_xpoly(&xp(vec![int(1), -(p() * y() + r())]));
            let rhs = x_term.add(&u.mul_xpoly(&xm(1, q())));
            lhs.sub(&rhs)
        }
        Family::B => {
            let lhs = s.mul_xpoly(&xp(vec![int(1), -(r() + y()), -((p() - r()) * y())]));
            let rhs =
                XSeries::from_xpoly(&xp(vec![MultiPoly::zero(), int(1), int(1) - r()]), order)
                    .add(&u.mul_xpoly(&(xk(1) * xp(vec![int(1), q() - r()]))));
            lhs.sub(&rhs)
        }
        Family::C => {
            let lhs = s.mul_xpoly(&xp(vec![int(1), -(int(1) + y()), -((p() - int(1)) * y())]));
            let rhs = x_term
                .add(&u.mul_xpoly(&(xk(2) * xp(vec![r() + int(1), p() - int(1)]))))
                .add(&v.mul_xpoly(&(xm(2, q()) * xp(vec![int(1), p() - int(1)]))));
            lhs.sub(&rhs)
        }
        Family::D => {
            let lhs = s.mul_xpoly(&xp(vec![
                int(1),
                -(int(1) + p() * y()),
                -((int(1) - p()) * y()),
            ]));
            let rhs = x_term
                .add(&u.mul_xpoly(&(xk(2) * xp(vec![p() * q() + r(), (int(1) - p()) * q()]))))
                .add(&v.mul_xpoly(&(xk(2) * xp(vec![p(), int(1) - p()]))))
                .add(&w.mul_xpoly(
                    &(xm(1, int(1) - p()) * xp(vec![int(1), int(-1)]) * xp(vec![y(), int(1)])),
                ));
            lhs.sub(&rhs)
        }
        Family::E => {
            let lhs = s.mul_xpoly(&e_eta());
            let rhs = XSeries::from_xpoly(&xp(vec![MultiPoly::zero(), int(1), y()]), order)
                .add(&u.mul_xpoly(&xp(vec![MultiPoly::zero(), int(1), r() * y()])))
                .add(&v.mul_xpoly(&xm(2, (q() - r()) * y())))
                .sub(&w.mul_xpoly(&(xm(1, y()) * xp(vec![int(1), -(r() - q() + int(1))]))));
            lhs.sub(&rhs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    /// `(3^{n−1}+1)/2`, the number of flattened Catalan words of length `n`.
    fn card(n: u32) -> BigInt {
        (BigInt::from(3).pow(n - 1) + 1) / 2
    }

    fn all_ones(gf: &RationalGF, order: usize) -> Vec<BigInt> {
        expand(
            &gf.substitute(&[(Var::Y, 1), (Var::P, 1), (Var::Q, 1), (Var::R, 1)]),
            order,
        )
        .eval_all_ones()
    }

    #[test]
    fn every_distribution_entry_counts_all_words_when_specialized() {
        let full: Vec<CatalogId> = CatalogId::ALL
            .into_iter()
            .filter(|id| !matches!(id.name().chars().next(), Some('U' | 'V' | 'W')))
            .collect();
        assert_eq!(full.len(), 20);
        for id in full {
            let coeffs = all_ones(&entry(id).gf, 12);
            for (n, coeff) in coeffs.iter().enumerate().skip(1) {
                assert_eq!(
                    *coeff,
                    card(n as u32),
                    "{id} at y=p=q=r=1, coefficient of x^{n}"
                );
            }
        }
    }

    #[test]
    fn plain_sum_auxiliaries_also_count_all_words() {
        for id in [CatalogId::VA, CatalogId::VC, CatalogId::VD, CatalogId::VE] {
            let coeffs = all_ones(&entry(id).gf, 12);
            for (n, coeff) in coeffs.iter().enumerate().skip(1) {
                assert_eq!(*coeff, card(n as u32), "{id} at p=q=r=1, x^{n}");
            }
        }
    }

    #[test]
    fn trun_weighted_auxiliary_matches_closed_count() {
        // Summing trun−1 over all words of length n gives (3^{n−1}−1)/2.
        let coeffs = all_ones(&entry(CatalogId::UA).gf, 12);
        for (n, coeff) in coeffs.iter().enumerate().skip(1) {
            let expected = (BigInt::from(3).pow(n as u32 - 1) - 1) / 2;
            assert_eq!(*coeff, expected, "U_A at p=q=r=1, x^{n}");
        }
    }

    #[test]
    fn joint_distribution_over_length_three_words() {
        // The five words of length 3 are 111, 112, 121, 122, 123 with
        // (trun−1, #12, #21, #11) = (0,0,0,2), (1,1,0,1), (0,1,1,0),
        // (1,1,0,1), (2,2,0,0).
        let coeff = expand(&gf_a(), 3).coeff(3).clone();
        let expected = r().pow(2) + p() * q() + int(2) * y() * p() * r() + y().pow(2) * p().pow(2);
        assert_eq!(coeff, expected);
    }

    #[test]
    fn triple_level_word_is_the_only_111_occurrence_at_length_three() {
        let coeff = expand(
            &gf_b().substitute(&[(Var::Y, 1), (Var::P, 1), (Var::Q, 1)]),
            3,
        )
        .coeff(3)
        .clone();
        assert_eq!(coeff, int(4) + r());
    }

    #[test]
    fn single_valley_word_at_length_four() {
        // Of the 14 words of length 4, only 1,2,1,2 contains the pattern 212.
        let gf = pattern_gf(&pat("212")).unwrap();
        assert_eq!(expand(&gf, 4).coeff(4).clone(), q() + int(13));
        // And only 1,2,1 of the 5 words of length 3 contains 21.
        let gf = pattern_gf(&pat("21")).unwrap();
        assert_eq!(expand(&gf, 3).coeff(3).clone(), q() + int(4));
    }

    #[test]
    fn family_a_specializes_to_each_single_pattern_distribution() {
        for (keep, tau) in [(Var::P, "12"), (Var::Q, "21"), (Var::R, "11")] {
            let others: Vec<(Var, i64)> = [Var::Y, Var::P, Var::Q, Var::R]
                .into_iter()
                .filter(|v| *v != keep)
                .map(|v| (v, 1))
                .collect();
            let specialized = expand(&gf_a().substitute(&others), 15).rename_var(keep, Var::Q);
            let direct = expand(&pattern_gf(&pat(tau)).unwrap(), 15);
            assert!(
                specialized.sub(&direct).is_zero(),
                "A specialized to {tau} disagrees with the direct formula"
            );
        }
    }

    #[test]
    fn family_c_specializes_to_the_terminal_run_distribution() {
        let specialized = expand(
            &gf_c().substitute(&[(Var::P, 1), (Var::Q, 1), (Var::R, 1)]),
            15,
        );
        let direct = expand(&gf_trun(), 15);
        assert!(specialized.sub(&direct).is_zero());
    }

    #[test]
    fn families_sharing_a_pattern_trio_member_agree() {
        // 112 and 122 are equidistributed, jointly with trun−1: B's p marks
        // 122, C's p marks 112.
        let b = expand(&gf_b().substitute(&[(Var::Q, 1), (Var::R, 1)]), 12);
        let c = expand(&gf_c().substitute(&[(Var::Q, 1), (Var::R, 1)]), 12);
        assert!(b.sub(&c).is_zero(), "122 vs 112 joint with trun");

        // 211 and 221 are equidistributed, jointly with trun−1: B's q marks
        // 211, C's r marks 221.
        let b = expand(&gf_b().substitute(&[(Var::P, 1), (Var::R, 1)]), 12);
        let c =
            expand(&gf_c().substitute(&[(Var::P, 1), (Var::Q, 1)]), 12).rename_var(Var::R, Var::Q);
        assert!(b.sub(&c).is_zero(), "211 vs 221 joint with trun");

        // C and E both mark 112 with p.
        let c = expand(&gf_c().substitute(&[(Var::Q, 1), (Var::R, 1)]), 12);
        let e = expand(&gf_e().substitute(&[(Var::Q, 1), (Var::R, 1)]), 12);
        assert!(c.sub(&e).is_zero(), "112 joint with trun via C vs E");

        // C and D both mark 221: C with r, D with r as well.
        let c = expand(&gf_c().substitute(&[(Var::P, 1), (Var::Q, 1)]), 12);
        let d = expand(&gf_d().substitute(&[(Var::P, 1), (Var::Q, 1)]), 12);
        assert!(c.sub(&d).is_zero(), "221 joint with trun via C vs D");
    }

    #[test]
    fn family_d_pattern_pair_is_exchangeable() {
        // With p set to 1, swapping the remaining two pattern marks leaves
        // D(x,1;1,q,r) unchanged, and the specialization has the printed
        // closed form.
        let d = expand(&gf_d().substitute(&[(Var::Y, 1), (Var::P, 1)]), 15);
        let swapped = d
            .rename_var(Var::Q, Var::Y)
            .rename_var(Var::R, Var::Q)
            .rename_var(Var::Y, Var::R);
        assert!(
            d.sub(&swapped).is_zero(),
            "q/r exchange changes D(x,1;1,q,r)"
        );

        let printed = RationalGF::new(
            xk(1) * xp(vec![int(1), int(-2)]),
            xp(vec![int(1), int(-4), int(3), -(q() + r() - int(2))]),
        );
        assert!(d.sub(&expand(&printed, 15)).is_zero());
    }

    #[test]
    fn family_e_with_merged_valley_marks_gives_the_short_valley_distribution() {
        let merged =
            expand(&gf_e().substitute(&[(Var::Y, 1), (Var::P, 1)]), 15).rename_var(Var::R, Var::Q);
        let direct = expand(&gf_short_valley(), 15);
        assert!(merged.sub(&direct).is_zero());
    }

    #[test]
    fn functional_residuals_vanish() {
        for family in Family::ALL {
            let residual = functional_residual(family, 16);
            assert!(
                residual.is_zero(),
                "family {family}: residual {:?}",
                residual
                    .coeffs()
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
            );
        }
    }

    #[test]
    fn identifiers_round_trip_and_all_entries_build() {
        for id in CatalogId::ALL {
            let back: CatalogId = id.name().parse().unwrap();
            assert_eq!(back, id);
            let e = entry(id);
            assert_eq!(e.id, id);
            assert!(!e.roles.is_empty());
            // Expansion succeeds for every entry.
            let _ = expand(&e.gf, 6);
        }
        assert!("F_132".parse::<CatalogId>().is_err());
        assert!(pattern_gf(&pat("132")).is_err());
    }

    #[test]
    fn derivative_of_pattern_distributions_counts_total_occurrences() {
        // Total occurrences of 21 over all words of length 5:
        // (5−1)(3³−1)/4 = 26; of 11 over length 4: 3·(3²+1)/2 = 15.
        let f21 = expand(&pattern_gf(&pat("21")).unwrap(), 5)
            .rename_var(Var::Q, Var::Y)
            .dy_at_1();
        assert_eq!(f21.coeff(5).constant_value(), Some(BigInt::from(26)));
        let f11 = expand(&pattern_gf(&pat("11")).unwrap(), 4)
            .rename_var(Var::Q, Var::Y)
            .dy_at_1();
        assert_eq!(f11.coeff(4).constant_value(), Some(BigInt::from(15)));
    }

    #[test]
    fn marker_evaluation_is_table_driven() {
        let word = [1, 2, 1, 2];
        for (var, marker) in Family::E.markers() {
            let value = marker.evaluate(&word);
            match var {
                Var::Y => assert_eq!(value, 1, "trun(1212) = 2"),
                Var::P => assert_eq!(value, 0, "no 112 in 1212"),
                Var::Q => assert_eq!(value, 1, "one 212 in 1212"),
                Var::R => assert_eq!(value, 0, "no 312 in 1212"),
            }
        }
        let sv = Marker::SubwordSum(vec![pat("212"), pat("312")]);
        assert_eq!(sv.evaluate(&[1, 2, 3, 1, 2]), 1);
        assert_eq!(sv.evaluate(&[1, 2, 1, 2, 1, 2]), 2);
    }
}

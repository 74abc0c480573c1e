//! Self-verification suites.
//!
//! Every closed form, generating function, recurrence, and bijection in this
//! crate is re-checked here against brute-force enumeration (and, where two
//! formulas must agree, against each other). Each [`Suite`] bundles the
//! checks for one module surface and produces a [`VerifyReport`] listing one
//! [`CaseReport`] per check with a pass/fail status and, on failure, the
//! first mismatching value.
//!
//! Exhaustive checks default to words of length at most 10 so that
//! [`run_all`] finishes in seconds; `max_n` widens or narrows that range.
//! Each case also carries its own documented ceiling (the bound beyond which
//! exhaustive enumeration stops being worthwhile), so a large `max_n` is
//! clamped per case. Series-to-series identities run to order 20 regardless,
//! since no enumeration is involved.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arrays::{build_uvw, StatArray};
use crate::bijections::{
    hat_involution, prime_inverse, prime_map, swap_231_221, tilde_involution, trun_map,
    trun_map_inverse, valley_map, valley_map_inverse, MarkedWord,
};
use crate::catalog::{self, CatalogId, Family, Marker};
use crate::counts;
use crate::enumerate::{iter_avoiders, iter_flattened, scan_flattened};
use crate::poly::{Exponents, MultiPoly, Var};
use crate::series::XSeries;
use crate::words::{self, count_pattern, BinaryWord, CatalanWord, Pattern};

/// Outcome of a single verification case.
#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check inside a suite.
#[derive(Serialize, Clone, Debug)]
#[serde(rename_all = "camelCase")]
pub struct CaseReport {
    pub id: String,
    /// The range of word lengths (or series orders) the case covered.
    pub n_range: String,
    pub status: Status,
    /// First mismatch on failure; occasionally an informative note on pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Result of running one suite.
#[derive(Serialize, Clone, Debug)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    /// Wall-clock time. The single nondeterministic field in the report.
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }
}

/// The verification suites, one per module surface.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    /// Single-pattern distributions against the oracle, plus the
    /// equidistribution statements among them.
    Table1,
    /// Joint four-variable distributions of the five statistic families,
    /// plus the cross-family specializations and symmetries.
    Theorems,
    /// The five functional-equation residuals, identically zero as series.
    Functional,
    /// Triangular arrays against the oracle, their double generating
    /// functions, and the u/v/w sequence systems.
    Recurrences,
    /// Closed-form totals against oracle sums, series derivatives, and the
    /// shift identities.
    Totals,
    /// Closed-form avoider counts against oracle enumeration and series
    /// coefficients at q = 0.
    Avoiders,
    /// Exhaustive bijectivity, involution, and statistic-exchange checks.
    Bijections,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Table1,
        Suite::Theorems,
        Suite::Functional,
        Suite::Recurrences,
        Suite::Totals,
        Suite::Avoiders,
        Suite::Bijections,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Theorems => "theorems",
            Suite::Functional => "functional",
            Suite::Recurrences => "recurrences",
            Suite::Totals => "totals",
            Suite::Avoiders => "avoiders",
            Suite::Bijections => "bijections",
        }
    }

    /// Default `max_n` when none is given: series order 20 for the
    /// enumeration-free functional suite, exhaustive bound 10 elsewhere.
    fn default_bound(self) -> usize {
        match self {
            Suite::Functional => 20,
            _ => 10,
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Suite, crate::Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                crate::Error::InvalidInput(format!(
                    "unknown suite {s:?}; expected one of: {}, all",
                    Suite::ALL.map(Suite::name).join(", ")
                ))
            })
    }
}

/// Runs one suite. `max_n` bounds the exhaustive word length (or, for the
/// functional suite, the series order); `None` uses the suite default.
pub fn run_suite(suite: Suite, max_n: Option<usize>) -> VerifyReport {
    let bound = max_n.unwrap_or_else(|| suite.default_bound());
    let start = Instant::now();
    let mut cases = Cases::new();
    match suite {
        Suite::Table1 => suite_table1(&mut cases, bound),
        Suite::Theorems => suite_theorems(&mut cases, bound),
        Suite::Functional => suite_functional(&mut cases, bound),
        Suite::Recurrences => suite_recurrences(&mut cases, bound),
        Suite::Totals => suite_totals(&mut cases, bound),
        Suite::Avoiders => suite_avoiders(&mut cases, bound),
        Suite::Bijections => suite_bijections(&mut cases, bound),
    }
    VerifyReport {
        suite: suite.name().to_string(),
        cases: cases.list,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs every suite in order with the same `max_n` policy.
pub fn run_all(max_n: Option<usize>) -> Vec<VerifyReport> {
    Suite::ALL
        .into_iter()
        .map(|s| run_suite(s, max_n))
        .collect()
}

// ---------------------------------------------------------------------------
// case plumbing

struct Cases {
    list: Vec<CaseReport>,
}

impl Cases {
    fn new() -> Cases {
        Cases { list: Vec::new() }
    }

    /// Records the outcome of one check. `Ok(None)` is a silent pass,
    /// `Ok(Some(note))` a pass with an informative note, `Err(detail)` a
    /// failure carrying the first mismatch.
    fn run(
        &mut self,
        id: impl Into<String>,
        n_range: impl Into<String>,
        body: impl FnOnce() -> Result<Option<String>, String>,
    ) {
        let (status, detail) = match body() {
            Ok(note) => (Status::Pass, note),
            Err(detail) => (Status::Fail, Some(detail)),
        };
        self.list.push(CaseReport {
            id: id.into(),
            n_range: n_range.into(),
            status,
            detail,
        });
    }
}

fn range_str(lo: usize, hi: usize) -> String {
    format!("{lo}..={hi}")
}

fn expand(gf: &crate::series::RationalGF, order: usize) -> XSeries {
    gf.expand(order).expect("catalog formulas expand exactly")
}

// ---------------------------------------------------------------------------
// oracle helpers (brute-force enumeration)

/// All thirteen patterns of length two and three realizable in these words.
fn all_patterns() -> Vec<Pattern> {
    [
        "11", "12", "21", "111", "112", "121", "122", "123", "211", "212", "221", "231", "312",
    ]
    .iter()
    .map(|s| s.parse().expect("valid pattern literal"))
    .collect()
}

fn q_power(count: usize) -> MultiPoly {
    let mut e = Exponents::default();
    e.set(Var::Q, count as u16);
    MultiPoly::monomial(e, BigInt::one())
}

/// Distribution of `#τ` over `F_n` as a polynomial in `q`.
fn oracle_pattern_dist(n: usize, tau: &Pattern) -> MultiPoly {
    scan_flattened(
        n,
        |w| q_power(count_pattern(w, tau)),
        MultiPoly::zero(),
        |a, b| a + b,
    )
}

/// Total occurrences of `τ` over `F_n`.
fn oracle_total(n: usize, tau: &Pattern) -> BigInt {
    BigInt::from(scan_flattened(
        n,
        |w| count_pattern(w, tau) as u64,
        0u64,
        |a, b| a + b,
    ))
}

fn roles_monomial(roles: &[(Var, Marker)], w: &[u32]) -> MultiPoly {
    let mut e = Exponents::default();
    for (v, marker) in roles {
        e.set(*v, marker.evaluate(w) as u16);
    }
    MultiPoly::monomial(e, BigInt::one())
}

/// Joint distribution of a family's four marked statistics over `F_n`.
fn oracle_family_dist(family: Family, n: usize) -> MultiPoly {
    let roles = family.markers();
    scan_flattened(
        n,
        move |w| roles_monomial(&roles, w),
        MultiPoly::zero(),
        |a, b| a + b,
    )
}

/// Per-trun rows of a family's three pattern statistics over `F_n`:
/// `rows[m−1]` is the distribution over the words whose terminal run has
/// exactly `m` distinct letters.
fn oracle_family_rows(family: Family, n: usize) -> Vec<MultiPoly> {
    let roles: Vec<(Var, Marker)> = family
        .markers()
        .into_iter()
        .filter(|(v, _)| *v != Var::Y)
        .collect();
    scan_flattened(
        n,
        move |w| {
            let mut rows = vec![MultiPoly::zero(); n];
            rows[words::trun(w) - 1] = roles_monomial(&roles, w);
            rows
        },
        vec![MultiPoly::zero(); n],
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += &y;
            }
            a
        },
    )
}

/// All binary words of length `len ≥ 1` starting with 0.
fn all_binary_words(len: usize) -> Vec<BinaryWord> {
    (0..(1u64 << (len - 1)))
        .map(|mask| {
            let mut bits = vec![0u8];
            for j in 0..len - 1 {
                bits.push(((mask >> j) & 1) as u8);
            }
            BinaryWord::new(bits).expect("starts with 0")
        })
        .collect()
}

/// All positions in `w` where an occurrence of 312 starts.
fn occurrences_312(l: &[u32]) -> Vec<usize> {
    (0..l.len().saturating_sub(2))
        .filter(|&i| l[i] >= l[i + 1] + 2 && l[i + 2] == l[i + 1] + 1)
        .collect()
}

/// All positions in `w` where a valley (descent, plateau, single step up)
/// starts.
fn valley_positions(l: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..l.len().saturating_sub(2) {
        if l[i] > l[i + 1] {
            let b = l[i + 1];
            let mut j = i + 1;
            while j < l.len() && l[j] == b {
                j += 1;
            }
            if j < l.len() && l[j] == b + 1 {
                out.push(i);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// suite: table1

fn suite_table1(cases: &mut Cases, bound: usize) {
    let hi = bound.min(12);
    for tau in all_patterns() {
        let gf = catalog::pattern_gf(&tau).expect("cataloged pattern");
        let series = expand(&gf, hi);
        cases.run(format!("table1-dist-{tau}"), range_str(1, hi), || {
            for n in 1..=hi {
                let oracle = oracle_pattern_dist(n, &tau);
                if &oracle != series.coeff(n) {
                    return Err(format!(
                        "n = {n}: oracle distribution {oracle} but generating function gives {}",
                        series.coeff(n)
                    ));
                }
            }
            Ok(None)
        });
    }

    cases.run("table1-equidist-112-122", range_str(1, hi), || {
        let (a, b): (Pattern, Pattern) = ("112".parse().unwrap(), "122".parse().unwrap());
        for n in 1..=hi {
            let (da, db) = (oracle_pattern_dist(n, &a), oracle_pattern_dist(n, &b));
            if da != db {
                return Err(format!("n = {n}: #112 gives {da} but #122 gives {db}"));
            }
        }
        Ok(None)
    });

    cases.run("table1-equidist-211-221-231", range_str(1, hi), || {
        let pats: Vec<Pattern> = ["211", "221", "231"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for n in 1..=hi {
            let base = oracle_pattern_dist(n, &pats[0]);
            for p in &pats[1..] {
                let other = oracle_pattern_dist(n, p);
                if base != other {
                    return Err(format!("n = {n}: #211 gives {base} but #{p} gives {other}"));
                }
            }
        }
        Ok(None)
    });

    cases.run("table1-tot-211-eq-212", range_str(3, 20), || {
        let (a, b): (Pattern, Pattern) = ("211".parse().unwrap(), "212".parse().unwrap());
        for n in 3..=20 {
            let (ta, tb) = (
                counts::tot(&a, n as u64).map_err(|e| e.to_string())?,
                counts::tot(&b, n as u64).map_err(|e| e.to_string())?,
            );
            if ta != tb {
                return Err(format!("n = {n}: tot(211) = {ta} but tot(212) = {tb}"));
            }
        }
        Ok(None)
    });

    cases.run("table1-dist-211-vs-212-differ", range_str(3, hi), || {
        let (a, b): (Pattern, Pattern) = ("211".parse().unwrap(), "212".parse().unwrap());
        for n in 3..=hi {
            let (da, db) = (oracle_pattern_dist(n, &a), oracle_pattern_dist(n, &b));
            if da != db {
                return Ok(Some(format!(
                    "equal totals, distinct distributions: first differ at n = {n}, where #211 gives {da} and #212 gives {db}"
                )));
            }
        }
        Err(format!(
            "the distributions of #211 and #212 coincide for every n ≤ {hi}, but they must differ"
        ))
    });
}

// ---------------------------------------------------------------------------
// suite: theorems

fn suite_theorems(cases: &mut Cases, bound: usize) {
    let hi = bound.min(10);
    for family in Family::ALL {
        let series = expand(&family.gf(), hi);
        cases.run(format!("theorem-{family}-joint"), range_str(1, hi), || {
            for n in 1..=hi {
                let oracle = oracle_family_dist(family, n);
                if &oracle != series.coeff(n) {
                    return Err(format!(
                        "n = {n}: oracle joint distribution {oracle} but closed form gives {}",
                        series.coeff(n)
                    ));
                }
            }
            Ok(None)
        });
    }

    let order = 20;
    cases.run("theorem-A-specializations", range_str(0, order), || {
        // Keeping one mark of the ascent/descent/level trio and dropping the
        // rest recovers each single-pattern distribution.
        for (keep, tau) in [(Var::P, "12"), (Var::Q, "21"), (Var::R, "11")] {
            let others: Vec<(Var, i64)> = [Var::Y, Var::P, Var::Q, Var::R]
                .into_iter()
                .filter(|v| *v != keep)
                .map(|v| (v, 1))
                .collect();
            let specialized =
                expand(&Family::A.gf().substitute(&others), order).rename_var(keep, Var::Q);
            let tau: Pattern = tau.parse().unwrap();
            let direct = expand(&catalog::pattern_gf(&tau).unwrap(), order);
            let diff = specialized.sub(&direct);
            if !diff.is_zero() {
                return Err(format!("specialization to #{tau} leaves residual {diff:?}"));
            }
        }
        Ok(None)
    });

    cases.run("theorem-C-trun-specialization", range_str(0, order), || {
        let specialized = expand(
            &Family::C
                .gf()
                .substitute(&[(Var::P, 1), (Var::Q, 1), (Var::R, 1)]),
            order,
        );
        let direct = expand(&catalog::entry(CatalogId::Trun).gf, order);
        let diff = specialized.sub(&direct);
        if diff.is_zero() {
            Ok(None)
        } else {
            Err(format!("residual {diff:?}"))
        }
    });

    cases.run("theorem-B-C-shared-marks", range_str(0, order), || {
        // 122 (marked by B's p) and 112 (marked by C's p) are jointly
        // equidistributed with the terminal-run statistic...
        let b = expand(
            &Family::B.gf().substitute(&[(Var::Q, 1), (Var::R, 1)]),
            order,
        );
        let c = expand(
            &Family::C.gf().substitute(&[(Var::Q, 1), (Var::R, 1)]),
            order,
        );
        let diff = b.sub(&c);
        if !diff.is_zero() {
            return Err(format!("122 vs 112 jointly with trun: residual {diff:?}"));
        }
        // ...and so are 211 (B's q) and 221 (C's r).
        let b = expand(
            &Family::B.gf().substitute(&[(Var::P, 1), (Var::R, 1)]),
            order,
        );
        let c = expand(
            &Family::C.gf().substitute(&[(Var::P, 1), (Var::Q, 1)]),
            order,
        )
        .rename_var(Var::R, Var::Q);
        let diff = b.sub(&c);
        if !diff.is_zero() {
            return Err(format!("211 vs 221 jointly with trun: residual {diff:?}"));
        }
        Ok(None)
    });

    cases.run("theorem-D-q-r-symmetry", range_str(0, order), || {
        let d = expand(
            &Family::D.gf().substitute(&[(Var::Y, 1), (Var::P, 1)]),
            order,
        );
        let swapped = d
            .rename_var(Var::Q, Var::Y)
            .rename_var(Var::R, Var::Q)
            .rename_var(Var::Y, Var::R);
        let diff = d.sub(&swapped);
        if diff.is_zero() {
            Ok(None)
        } else {
            Err(format!(
                "exchanging the 231 and 221 marks changes the distribution: residual {diff:?}"
            ))
        }
    });

    cases.run("theorem-E-short-valley", range_str(0, order), || {
        let merged = expand(&Family::E.gf().substitute(&[(Var::Y, 1), (Var::P, 1)]), order)
            .rename_var(Var::R, Var::Q);
        let direct = expand(&catalog::entry(CatalogId::ShortValley).gf, order);
        let diff = merged.sub(&direct);
        if diff.is_zero() {
            Ok(None)
        } else {
            Err(format!(
                "merging the 212 and 312 marks does not give the short-valley distribution: residual {diff:?}"
            ))
        }
    });
}

// ---------------------------------------------------------------------------
// suite: functional

fn suite_functional(cases: &mut Cases, order: usize) {
    for family in Family::ALL {
        cases.run(
            format!("functional-{family}-residual"),
            range_str(0, order),
            || {
                let residual = catalog::functional_residual(family, order);
                match residual
                    .coeffs()
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
                {
                    None => Ok(None),
                    Some((n, c)) => Err(format!("residual is nonzero at x^{n}: {c}")),
                }
            },
        );
    }
}

// ---------------------------------------------------------------------------
// suite: recurrences

fn suite_recurrences(cases: &mut Cases, bound: usize) {
    let hi = bound.min(10);
    let order = 20;
    for family in Family::ALL {
        cases.run(
            format!("recurrence-{family}-array-vs-oracle"),
            range_str(1, hi),
            || {
                let arr = StatArray::build(family, hi);
                for n in 1..=hi {
                    let rows = oracle_family_rows(family, n);
                    for m in 1..=n {
                        if arr.entry(n, m) != &rows[m - 1] {
                            return Err(format!(
                                "entry (n = {n}, m = {m}): recurrence gives {} but oracle gives {}",
                                arr.entry(n, m),
                                rows[m - 1]
                            ));
                        }
                    }
                }
                Ok(None)
            },
        );

        cases.run(
            format!("recurrence-{family}-double-gf"),
            range_str(0, order),
            || {
                let arr = StatArray::build(family, order);
                let from_rows = arr.double_gf();
                let direct = expand(&family.gf(), order);
                let diff = from_rows.sub(&direct);
                match diff.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) {
                    None => Ok(None),
                    Some((n, c)) => Err(format!(
                        "row generating function differs from the closed form at x^{n}: {c}"
                    )),
                }
            },
        );

        cases.run(
            format!("recurrence-{family}-uvw"),
            range_str(0, order),
            || {
                // build_uvw computes every sequence twice (definitional sums
                // vs the recurrence system) and errors on any disagreement.
                let seqs = build_uvw(family, order).map_err(|e| e.to_string())?;
                let closed: &[(CatalogId, &str)] = match family {
                    Family::A => &[(CatalogId::UA, "u"), (CatalogId::VA, "v")],
                    Family::B => &[(CatalogId::UB, "u")],
                    Family::C => &[(CatalogId::UC, "u"), (CatalogId::VC, "v")],
                    Family::D => &[
                        (CatalogId::UD, "u"),
                        (CatalogId::VD, "v"),
                        (CatalogId::WD, "w"),
                    ],
                    Family::E => &[
                        (CatalogId::UE, "u"),
                        (CatalogId::VE, "v"),
                        (CatalogId::WE, "w"),
                    ],
                };
                for &(id, which) in closed {
                    let series = expand(&catalog::entry(id).gf, order);
                    for n in 0..=order {
                        let from_seq = match which {
                            "u" => seqs.u(n),
                            "v" => seqs.v(n),
                            _ => seqs.w(n),
                        };
                        if from_seq != series.coeff(n) {
                            return Err(format!(
                                "{which}_{n} = {from_seq} but the closed form {id} gives {}",
                                series.coeff(n)
                            ));
                        }
                    }
                }
                Ok(None)
            },
        );
    }
}

// ---------------------------------------------------------------------------
// suite: totals

/// Smallest length at which a pattern's total formula is defined: patterns of
/// length three need n ≥ 3 (all totals at n = 2 are zero, which the formulas
/// do not extend to), length-two patterns need n ≥ 2.
fn total_min_n(tau: &Pattern) -> usize {
    if tau.len() == 3 {
        3
    } else {
        2
    }
}

fn suite_totals(cases: &mut Cases, bound: usize) {
    let hi = bound.min(12);
    let order = 20;

    for tau in all_patterns() {
        let lo = total_min_n(&tau);
        cases.run(
            format!("totals-{tau}-formula-vs-oracle"),
            range_str(lo, hi),
            || {
                for n in lo..=hi {
                    let formula = counts::tot(&tau, n as u64).map_err(|e| e.to_string())?;
                    let oracle = oracle_total(n, &tau);
                    if formula != oracle {
                        return Err(format!(
                            "n = {n}: formula gives {formula} but the words hold {oracle} occurrences"
                        ));
                    }
                }
                Ok(None)
            },
        );

        cases.run(
            format!("totals-{tau}-formula-vs-gf"),
            range_str(lo, order),
            || {
                let gf = catalog::pattern_gf(&tau).expect("cataloged pattern");
                let derivative = expand(&gf, order).rename_var(Var::Q, Var::Y).dy_at_1();
                for n in lo..=order {
                    let formula = counts::tot(&tau, n as u64).map_err(|e| e.to_string())?;
                    let coeff = derivative.coeff(n);
                    if coeff.constant_value() != Some(formula.clone()) {
                        return Err(format!(
                            "n = {n}: formula gives {formula} but the series derivative gives {coeff}"
                        ));
                    }
                }
                Ok(None)
            },
        );
    }

    cases.run("totals-shift-identities", range_str(3, order), || {
        // Each length-three total collapses to a length-two total one letter
        // shorter: 111 → 11, 112 and 122 → 12, 211/221/231 → 21; 212 agrees
        // with 211 without a matching collapse of its distribution.
        let shifts: [(&str, &str); 6] = [
            ("111", "11"),
            ("112", "12"),
            ("122", "12"),
            ("211", "21"),
            ("221", "21"),
            ("231", "21"),
        ];
        for (three, two) in shifts {
            let three: Pattern = three.parse().unwrap();
            let two: Pattern = two.parse().unwrap();
            for n in 3..=order {
                let left = counts::tot(&three, n as u64).map_err(|e| e.to_string())?;
                let right = counts::tot(&two, n as u64 - 1).map_err(|e| e.to_string())?;
                if left != right {
                    return Err(format!(
                        "n = {n}: tot({three}) = {left} but tot({two}) at n−1 = {right}"
                    ));
                }
            }
        }
        Ok(None)
    });

    cases.run("totals-cardinality", range_str(1, hi), || {
        for n in 1..=hi {
            let formula = counts::cardinality(n as u64).map_err(|e| e.to_string())?;
            let oracle = BigInt::from(scan_flattened(n, |_| 1u64, 0u64, |a, b| a + b));
            if formula != oracle {
                return Err(format!(
                    "n = {n}: closed form gives {formula} but enumeration finds {oracle} words"
                ));
            }
        }
        // Against the series: the terminal-run distribution at y = 1.
        let gf = catalog::entry(CatalogId::Trun)
            .gf
            .substitute(&[(Var::Y, 1)]);
        let series = expand(&gf, order);
        for n in 1..=order {
            let formula = counts::cardinality(n as u64).map_err(|e| e.to_string())?;
            if series.coeff(n).constant_value() != Some(formula.clone()) {
                return Err(format!(
                    "n = {n}: closed form gives {formula} but the series gives {}",
                    series.coeff(n)
                ));
            }
        }
        Ok(None)
    });

    cases.run("totals-trun-sum", range_str(1, hi), || {
        for n in 1..=hi {
            let formula = counts::trun_sum(n as u64).map_err(|e| e.to_string())?;
            let oracle = BigInt::from(scan_flattened(
                n,
                |w| (words::trun(w) - 1) as u64,
                0u64,
                |a, b| a + b,
            ));
            if formula != oracle {
                return Err(format!(
                    "n = {n}: closed form gives {formula} but the words sum to {oracle}"
                ));
            }
        }
        let derivative = expand(&catalog::entry(CatalogId::Trun).gf, order).dy_at_1();
        for n in 1..=order {
            let formula = counts::trun_sum(n as u64).map_err(|e| e.to_string())?;
            if derivative.coeff(n).constant_value() != Some(formula.clone()) {
                return Err(format!(
                    "n = {n}: closed form gives {formula} but the series derivative gives {}",
                    derivative.coeff(n)
                ));
            }
        }
        Ok(None)
    });
}

// ---------------------------------------------------------------------------
// suite: avoiders

fn suite_avoiders(cases: &mut Cases, bound: usize) {
    let hi = bound.min(12);
    let order = 20;
    let supported = [
        "11", "111", "121", "122", "123", "211", "212", "221", "231", "312",
    ];

    for name in supported {
        let tau: Pattern = name.parse().unwrap();
        // The 111 formula's binomial sum starts making sense at n = 3.
        let lo = if name == "111" { 3 } else { 1 };

        cases.run(
            format!("avoid-{tau}-formula-vs-oracle"),
            range_str(lo, hi),
            || {
                for n in lo..=hi {
                    let formula = counts::avoiders(&tau, n as u64).map_err(|e| e.to_string())?;
                    let oracle = BigInt::from(iter_avoiders(n, &tau).count());
                    if formula != oracle {
                        return Err(format!(
                            "n = {n}: formula gives {formula} but enumeration finds {oracle} avoiders"
                        ));
                    }
                }
                Ok(None)
            },
        );

        cases.run(
            format!("avoid-{tau}-formula-vs-gf"),
            range_str(lo, order),
            || {
                let gf = catalog::pattern_gf(&tau)
                    .expect("cataloged pattern")
                    .substitute(&[(Var::Q, 0)]);
                let series = expand(&gf, order);
                for n in lo..=order {
                    let formula = counts::avoiders(&tau, n as u64).map_err(|e| e.to_string())?;
                    if series.coeff(n).constant_value() != Some(formula.clone()) {
                        return Err(format!(
                            "n = {n}: formula gives {formula} but the series at q = 0 gives {}",
                            series.coeff(n)
                        ));
                    }
                }
                Ok(None)
            },
        );
    }

    cases.run("avoid-11-power-of-two", range_str(2, 14), || {
        let tau: Pattern = "11".parse().unwrap();
        for n in 2..=14u64 {
            let formula = counts::avoiders(&tau, n).map_err(|e| e.to_string())?;
            let expected = BigInt::from(1u64) << (n - 2);
            if formula != expected {
                return Err(format!(
                    "n = {n}: got {formula}, expected 2^(n−2) = {expected}"
                ));
            }
        }
        Ok(None)
    });
}

// ---------------------------------------------------------------------------
// suite: bijections

fn suite_bijections(cases: &mut Cases, bound: usize) {
    let prime_hi = bound.min(12);
    cases.run("bijection-prime", range_str(2, prime_hi), || {
        let p123: Pattern = "123".parse().unwrap();
        for n in 2..=prime_hi {
            let mut images: Vec<CatalanWord> = Vec::new();
            for bits in all_binary_words(n - 1) {
                let word = prime_map(&bits);
                if word.len() != n || !word.is_flattened() {
                    return Err(format!("image {word} of {bits} is malformed"));
                }
                if word.letters().windows(2).any(|p| p[0] == p[1]) {
                    return Err(format!("image {word} of {bits} contains a level"));
                }
                let des = word.statistics().des;
                let one_blocks = bits.bits().windows(2).filter(|p| p == &[0, 1]).count()
                    + usize::from(bits.bits()[0] == 1);
                if des != one_blocks {
                    return Err(format!(
                        "image {word} has {des} descents but {bits} has {one_blocks} blocks of 1s"
                    ));
                }
                let block_count = 1 + bits.bits().windows(2).filter(|p| p[0] != p[1]).count();
                if word.count_pattern(&p123) != n - 1 - block_count {
                    return Err(format!(
                        "image {word} has {} occurrences of 123 but {bits} has {block_count} blocks",
                        word.count_pattern(&p123)
                    ));
                }
                let back = prime_inverse(&word).map_err(|e| e.to_string())?;
                if back != bits {
                    return Err(format!("round trip failed: {bits} → {word} → {back}"));
                }
                images.push(word);
            }
            images.sort();
            let mut level_free: Vec<CatalanWord> = iter_flattened(n)
                .filter(|w| w.letters().windows(2).all(|p| p[0] != p[1]))
                .collect();
            level_free.sort();
            if images != level_free {
                return Err(format!(
                    "n = {n}: the images are not exactly the level-free words ({} vs {})",
                    images.len(),
                    level_free.len()
                ));
            }
        }
        Ok(None)
    });

    let trun_hi = bound.min(10);
    cases.run("bijection-trun", range_str(1, trun_hi), || {
        for n in 1..=trun_hi {
            let mut images: Vec<CatalanWord> = Vec::new();
            for word in iter_flattened(n) {
                // Designate each non-minimal distinct letter of the terminal
                // run once, at its first occurrence.
                let last = word.runs().last().expect("nonempty").clone();
                let letters = word.letters();
                let mut seen = letters[last.start];
                #[allow(clippy::needless_range_loop)] // the index becomes the mark
                for i in last.start + 1..last.end {
                    if letters[i] == seen {
                        continue;
                    }
                    seen = letters[i];
                    let marked = MarkedWord::new(word.clone(), i).expect("index in range");
                    let image = trun_map(&marked).map_err(|e| e.to_string())?;
                    if image.len() != n {
                        return Err(format!("image {image} of {marked} changed length"));
                    }
                    let back = trun_map_inverse(&image).map_err(|e| e.to_string())?;
                    if back != marked {
                        return Err(format!("round trip failed: {marked} → {image} → {back}"));
                    }
                    images.push(image);
                }
            }
            images.sort();
            let mut expected: Vec<CatalanWord> = iter_flattened(n)
                .filter(|w| w.letters().iter().any(|&x| x != 1))
                .collect();
            expected.sort();
            if images != expected {
                return Err(format!(
                    "n = {n}: designations map to {} words, the non-constant words number {}",
                    images.len(),
                    expected.len()
                ));
            }
        }
        Ok(None)
    });

    let tilde_hi = bound.min(12);
    cases.run("bijection-tilde", range_str(1, tilde_hi), || {
        let (p112, p122): (Pattern, Pattern) = ("112".parse().unwrap(), "122".parse().unwrap());
        for n in 1..=tilde_hi {
            for word in iter_flattened(n) {
                let image = tilde_involution(&word).map_err(|e| e.to_string())?;
                if tilde_involution(&image).map_err(|e| e.to_string())? != word {
                    return Err(format!("not an involution at {word}"));
                }
                if word.runs() != image.runs() {
                    return Err(format!("{word} → {image} changed the run structure"));
                }
                if count_pattern(word.letters(), &p112) != count_pattern(image.letters(), &p122) {
                    return Err(format!("{word} → {image} does not exchange #112 and #122"));
                }
            }
        }
        Ok(None)
    });

    let hat_hi = bound.min(12);
    cases.run("bijection-hat", range_str(1, hat_hi), || {
        let (p211, p221): (Pattern, Pattern) = ("211".parse().unwrap(), "221".parse().unwrap());
        for n in 1..=hat_hi {
            for word in iter_flattened(n) {
                let image = hat_involution(&word).map_err(|e| e.to_string())?;
                if hat_involution(&image).map_err(|e| e.to_string())? != word {
                    return Err(format!("not an involution at {word}"));
                }
                if word.statistics().des != image.statistics().des {
                    return Err(format!("{word} → {image} changed the descent count"));
                }
                if count_pattern(word.letters(), &p211) != count_pattern(image.letters(), &p221) {
                    return Err(format!("{word} → {image} does not exchange #211 and #221"));
                }
            }
        }
        Ok(None)
    });

    let swap_hi = bound.min(10);
    cases.run("bijection-swap", range_str(1, swap_hi), || {
        let (p231, p221): (Pattern, Pattern) = ("231".parse().unwrap(), "221".parse().unwrap());
        for n in 1..=swap_hi {
            for word in iter_flattened(n) {
                let image = swap_231_221(&word).map_err(|e| e.to_string())?;
                if swap_231_221(&image).map_err(|e| e.to_string())? != word {
                    return Err(format!("not an involution at {word}"));
                }
                if word.trun() != image.trun() {
                    return Err(format!(
                        "{word} → {image} changed the terminal run statistic"
                    ));
                }
                if count_pattern(word.letters(), &p231) != count_pattern(image.letters(), &p221)
                    || count_pattern(word.letters(), &p221) != count_pattern(image.letters(), &p231)
                {
                    return Err(format!("{word} → {image} does not exchange #231 and #221"));
                }
            }
        }
        Ok(None)
    });

    let valley_hi = bound.min(11);
    cases.run("bijection-valley", range_str(3, valley_hi), || {
        let p312: Pattern = "312".parse().unwrap();
        for n in 3..=valley_hi {
            let mut images: Vec<MarkedWord> = Vec::new();
            let mut domain = 0usize;
            for word in iter_flattened(n) {
                for i in occurrences_312(word.letters()) {
                    let marked = MarkedWord::new(word.clone(), i).expect("index in range");
                    let image = valley_map(&marked).map_err(|e| e.to_string())?;
                    if image.word().len() != n - 1 {
                        return Err(format!("image {image} of {marked} has the wrong length"));
                    }
                    let back = valley_map_inverse(&image).map_err(|e| e.to_string())?;
                    if back != marked {
                        return Err(format!("round trip failed: {marked} → {image} → {back}"));
                    }
                    images.push(image);
                    domain += 1;
                }
            }
            // Marking every occurrence realizes the total-occurrence count…
            let total = oracle_total(n, &p312);
            if BigInt::from(domain) != total {
                return Err(format!(
                    "n = {n}: {domain} marked words but {total} total occurrences of 312"
                ));
            }
            // …and the images are exactly the marked valleys one letter
            // shorter.
            let mut valleys: Vec<MarkedWord> = Vec::new();
            for word in iter_flattened(n - 1) {
                for i in valley_positions(word.letters()) {
                    valleys.push(MarkedWord::new(word.clone(), i).expect("index in range"));
                }
            }
            images.sort();
            valleys.sort();
            if images != valleys {
                return Err(format!(
                    "n = {n}: {} images vs {} marked valleys",
                    images.len(),
                    valleys.len()
                ));
            }
        }
        // Spot value: a single occurrence of 312 across all words of
        // length 5, in the word 1,2,3,1,2.
        if valley_hi >= 5 {
            let total = oracle_total(5, &p312);
            if total != BigInt::one() {
                return Err(format!(
                    "total occurrences of 312 at n = 5 is {total}, not 1"
                ));
            }
        }
        Ok(None)
    });
}

//! Sparse exact polynomials in the four statistic-marking variables `y`, `p`,
//! `q`, `r`.
//!
//! [`MultiPoly`] maps exponent vectors to arbitrary-precision integer
//! coefficients. The variable set is fixed: `y` conventionally marks one less
//! than the number of distinct letters in a word's terminal run, while `p`,
//! `q`, `r` mark subword-pattern occurrences (which patterns depends on the
//! generating function at hand). Substitution binds variables to integers;
//! [`MultiPoly::dy_at_1`] applies `∂/∂y` followed by `y := 1`, the standard
//! device for turning a distribution into a sum of statistic values.
//!
//! Terms are kept in a `BTreeMap`, so iteration order — and therefore display
//! and JSON output — is the lexicographic order of `(y, p, q, r)` exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// One of the four marking variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Var {
    Y,
    P,
    Q,
    R,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Y, Var::P, Var::Q, Var::R];

    pub fn symbol(self) -> char {
        match self {
            Var::Y => 'y',
            Var::P => 'p',
            Var::Q => 'q',
            Var::R => 'r',
        }
    }

    /// Parses the one-letter variable name used on the command line.
    pub fn parse(s: &str) -> Result<Var, Error> {
        match s {
            "y" => Ok(Var::Y),
            "p" => Ok(Var::P),
            "q" => Ok(Var::Q),
            "r" => Ok(Var::R),
            other => Err(Error::InvalidInput(format!(
                "unknown variable {other:?}; expected one of y, p, q, r"
            ))),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Exponent vector of a single term, ordered lexicographically by
/// `(y, p, q, r)`.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize,
)]
pub struct Exponents {
    pub y: u16,
    pub p: u16,
    pub q: u16,
    pub r: u16,
}

impl Exponents {
    pub fn get(self, v: Var) -> u16 {
        match v {
            Var::Y => self.y,
            Var::P => self.p,
            Var::Q => self.q,
            Var::R => self.r,
        }
    }

    pub fn set(&mut self, v: Var, e: u16) {
        match v {
            Var::Y => self.y = e,
            Var::P => self.p = e,
            Var::Q => self.q = e,
            Var::R => self.r = e,
        }
    }

    pub fn is_constant(self) -> bool {
        self == Exponents::default()
    }

    fn checked_add(self, other: Exponents) -> Option<Exponents> {
        Some(Exponents {
            y: self.y.checked_add(other.y)?,
            p: self.p.checked_add(other.p)?,
            q: self.q.checked_add(other.q)?,
            r: self.r.checked_add(other.r)?,
        })
    }
}

/// A single term in the JSON polynomial encoding: four exponents plus the
/// coefficient as a decimal string (coefficients can exceed machine width).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JsonTerm {
    pub y: u16,
    pub p: u16,
    pub q: u16,
    pub r: u16,
    pub coef: String,
}

/// Sparse polynomial in `y, p, q, r` with `BigInt` coefficients.
///
/// Invariant: no stored coefficient is zero, so `terms.is_empty()` iff the
/// polynomial is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

static ZERO: MultiPoly = MultiPoly {
    terms: BTreeMap::new(),
};

/// Shared reference to the zero polynomial, for contexts that hand out
/// references to coefficients that are absent.
pub fn zero_ref() -> &'static MultiPoly {
    &ZERO
}

/// The variable `y` as a polynomial.
pub fn y() -> MultiPoly {
    MultiPoly::var(Var::Y)
}

/// The variable `p` as a polynomial.
pub fn p() -> MultiPoly {
    MultiPoly::var(Var::P)
}

/// The variable `q` as a polynomial.
pub fn q() -> MultiPoly {
    MultiPoly::var(Var::Q)
}

/// The variable `r` as a polynomial.
pub fn r() -> MultiPoly {
    MultiPoly::var(Var::R)
}

/// The constant polynomial `n`.
pub fn int(n: i64) -> MultiPoly {
    MultiPoly::constant(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> MultiPoly {
        MultiPoly::monomial(Exponents::default(), c)
    }

    pub fn var(v: Var) -> MultiPoly {
        let mut e = Exponents::default();
        e.set(v, 1);
        MultiPoly::monomial(e, BigInt::one())
    }

    pub fn monomial(e: Exponents, c: BigInt) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value of the polynomial if it is a constant (including zero),
    /// `None` if any variable actually appears.
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in lexicographic `(y, p, q, r)` exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// Adds `c` to the coefficient of `e`, dropping the term if it cancels.
    pub fn add_term(&mut self, e: Exponents, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &MultiPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c);
        }
    }

    pub fn sub_assign_ref(&mut self, rhs: &MultiPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, &-c.clone());
        }
    }

    pub fn mul_ref(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                let e = ea
                    .checked_add(*eb)
                    .expect("polynomial exponent overflowed u16");
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..k {
            out = out.mul_ref(self);
        }
        out
    }

    /// Binds the listed variables to integer values; unbound variables stay
    /// symbolic. Binding the same variable twice is rejected as a caller bug.
    pub fn substitute(&self, bindings: &[(Var, i64)]) -> MultiPoly {
        for (i, (v, _)) in bindings.iter().enumerate() {
            assert!(
                bindings[i + 1..].iter().all(|(w, _)| w != v),
                "variable {v} bound twice"
            );
        }
        let mut out = MultiPoly::zero();
        for (e, c) in self.terms.iter() {
            let mut e2 = *e;
            let mut c2 = c.clone();
            for &(v, val) in bindings {
                let exp = e2.get(v);
                if exp > 0 {
                    c2 *= BigInt::from(val).pow(u32::from(exp));
                    e2.set(v, 0);
                }
            }
            out.add_term(e2, &c2);
        }
        out
    }

    pub fn set_var(&self, v: Var, val: i64) -> MultiPoly {
        self.substitute(&[(v, val)])
    }

    /// `∂/∂y` followed by `y := 1`: each term `c·y^k·m` becomes `k·c·m`.
    pub fn dy_at_1(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in self.terms.iter() {
            if e.y == 0 {
                continue;
            }
            let mut e2 = *e;
            e2.y = 0;
            out.add_term(e2, &(c * BigInt::from(e.y)));
        }
        out
    }

    /// Moves every exponent of `from` onto `to` (adding when `to` already
    /// appears). Used to line up generating functions that mark the same
    /// statistic with different letters.
    pub fn rename_var(&self, from: Var, to: Var) -> MultiPoly {
        if from == to {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        for (e, c) in self.terms.iter() {
            let mut e2 = *e;
            let moved = e2.get(from);
            e2.set(from, 0);
            e2.set(
                to,
                e2.get(to)
                    .checked_add(moved)
                    .expect("polynomial exponent overflowed u16"),
            );
            out.add_term(e2, c);
        }
        out
    }

    /// Sum of all coefficients, i.e. the value at `y = p = q = r = 1`.
    pub fn eval_all_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Divides every coefficient by `d` exactly, or returns `None` if any
    /// division leaves a remainder.
    pub fn div_exact(&self, d: &BigInt) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero");
        let mut out = MultiPoly::zero();
        for (e, c) in self.terms.iter() {
            let (quot, rem) = num_integer::Integer::div_rem(c, d);
            if !rem.is_zero() {
                return None;
            }
            out.add_term(*e, &quot);
        }
        Some(out)
    }

    /// The polynomial in the JSON term encoding, lexicographic term order.
    pub fn json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(e, c)| JsonTerm {
                y: e.y,
                p: e.p,
                q: e.q,
                r: e.r,
                coef: c.to_string(),
            })
            .collect()
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> MultiPoly {
        int(n)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.add_assign_ref(rhs);
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.sub_assign_ref(rhs);
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        MultiPoly { terms }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || e.is_constant() {
                factors.push(mag.to_string());
            }
            for v in Var::ALL {
                let exp = e.get(v);
                match exp {
                    0 => {}
                    1 => factors.push(v.symbol().to_string()),
                    _ => factors.push(format!("{}^{}", v.symbol(), exp)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

// Debug defers to Display: raw term-map dumps are unreadable in assertion
// failures.
impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Polynomials and truncated power series in `x` whose coefficients are the
//! exact multivariate polynomials of [`crate::poly`], plus rational
//! generating functions.
//!
//! [`XPoly`] is dense in `x` and exact. [`XSeries`] carries an explicit
//! truncation order; arithmetic on series truncates to the smaller order of
//! the operands. [`RationalGF`] is a numerator/denominator pair of `XPoly`s;
//! [`RationalGF::expand`] normalizes the denominator to constant term 1 (by
//! an exact integer division, refusing anything else) and then runs the
//! linear recurrence induced by the denominator — ordinary long division of
//! power series. No rational simplification is ever attempted; cross
//! multiplication keeps everything exact.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{self, MultiPoly, Var};
use crate::Error;

/// Dense polynomial in `x` over [`MultiPoly`] coefficients.
///
/// Invariant: the last stored coefficient is nonzero (the zero polynomial
/// stores nothing).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct XPoly {
    coeffs: Vec<MultiPoly>,
}

impl XPoly {
    pub fn zero() -> XPoly {
        XPoly::default()
    }

    pub fn one() -> XPoly {
        XPoly::constant(MultiPoly::one())
    }

    /// The monomial `x`.
    pub fn x() -> XPoly {
        XPoly::monomial(1, MultiPoly::one())
    }

    pub fn constant(c: MultiPoly) -> XPoly {
        XPoly::from_coeffs(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(k: usize, c: MultiPoly) -> XPoly {
        let mut coeffs = vec![MultiPoly::zero(); k + 1];
        coeffs[k] = c;
        XPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<MultiPoly>) -> XPoly {
        while coeffs.last().is_some_and(MultiPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> &MultiPoly {
        self.coeffs.get(k).unwrap_or_else(|| poly::zero_ref())
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn pow(&self, k: u32) -> XPoly {
        let mut out = XPoly::one();
        for _ in 0..k {
            out = out * self.clone();
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> XPoly {
        XPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn substitute(&self, bindings: &[(Var, i64)]) -> XPoly {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    pub fn rename_var(&self, from: Var, to: Var) -> XPoly {
        self.map_coeffs(|c| c.rename_var(from, to))
    }

    /// Divides every coefficient exactly by `d`, or `None` on any remainder.
    fn div_exact(&self, d: &BigInt) -> Option<XPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.div_exact(d)?);
        }
        Some(XPoly::from_coeffs(out))
    }
}

impl Add for XPoly {
    type Output = XPoly;
    fn add(self, rhs: XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![MultiPoly::zero(); n];
        for (k, c) in self.coeffs.into_iter().enumerate() {
            out[k].add_assign_ref(&c);
        }
        for (k, c) in rhs.coeffs.into_iter().enumerate() {
            out[k].add_assign_ref(&c);
        }
        XPoly::from_coeffs(out)
    }
}

impl Sub for XPoly {
    type Output = XPoly;
    fn sub(self, rhs: XPoly) -> XPoly {
        self + (-rhs)
    }
}

impl Neg for XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for XPoly {
    type Output = XPoly;
    fn mul(self, rhs: XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![MultiPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        XPoly::from_coeffs(out)
    }
}

/// Power series in `x` truncated at an explicit order: exactly the
/// coefficients of `x^0 .. x^order` are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XSeries {
    coeffs: Vec<MultiPoly>,
}

impl XSeries {
    pub fn zero(order: usize) -> XSeries {
        XSeries {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    /// Truncates (or zero-pads) a polynomial to a series of the given order.
    pub fn from_xpoly(p: &XPoly, order: usize) -> XSeries {
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        for (k, c) in p.coeffs().iter().enumerate().take(order + 1) {
            coeffs[k] = c.clone();
        }
        XSeries { coeffs }
    }

    pub(crate) fn from_raw(coeffs: Vec<MultiPoly>) -> XSeries {
        assert!(!coeffs.is_empty());
        XSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^k`; `k` must not exceed the truncation order.
    pub fn coeff(&self, k: usize) -> &MultiPoly {
        assert!(
            k <= self.order(),
            "coefficient x^{k} requested beyond truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Truncates to a (possibly) smaller order.
    pub fn truncated(&self, order: usize) -> XSeries {
        assert!(order <= self.order());
        XSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn zip_with(&self, rhs: &XSeries, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> XSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| f(&self.coeffs[k], &rhs.coeffs[k]))
            .collect();
        XSeries { coeffs }
    }

    pub fn add(&self, rhs: &XSeries) -> XSeries {
        self.zip_with(rhs, |a, b| {
            let mut s = a.clone();
            s.add_assign_ref(b);
            s
        })
    }

    pub fn sub(&self, rhs: &XSeries) -> XSeries {
        self.zip_with(rhs, |a, b| {
            let mut s = a.clone();
            s.sub_assign_ref(b);
            s
        })
    }

    /// Product truncated to the smaller order of the operands.
    pub fn mul(&self, rhs: &XSeries) -> XSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![MultiPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j].add_assign_ref(&self.coeffs[i].mul_ref(&rhs.coeffs[j]));
            }
        }
        XSeries { coeffs: out }
    }

    /// Multiplies by a polynomial, keeping this series' truncation order.
    pub fn mul_xpoly(&self, p: &XPoly) -> XSeries {
        let order = self.order();
        let mut out = vec![MultiPoly::zero(); order + 1];
        for (j, b) in p.coeffs().iter().enumerate() {
            if b.is_zero() || j > order {
                continue;
            }
            for i in 0..=order - j {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                out[i + j].add_assign_ref(&self.coeffs[i].mul_ref(b));
            }
        }
        XSeries { coeffs: out }
    }

    pub fn scale(&self, c: &MultiPoly) -> XSeries {
        self.map_coeffs(|a| a.mul_ref(c))
    }

    fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> XSeries {
        XSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, bindings: &[(Var, i64)]) -> XSeries {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    pub fn set_var(&self, v: Var, val: i64) -> XSeries {
        self.map_coeffs(|c| c.set_var(v, val))
    }

    pub fn rename_var(&self, from: Var, to: Var) -> XSeries {
        self.map_coeffs(|c| c.rename_var(from, to))
    }

    /// Coefficient-wise `∂/∂y` at `y = 1`.
    pub fn dy_at_1(&self) -> XSeries {
        self.map_coeffs(MultiPoly::dy_at_1)
    }

    /// All coefficients with every variable set to 1.
    pub fn eval_all_ones(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(MultiPoly::eval_all_ones).collect()
    }
}

/// A rational generating function `num/den` in `x`, kept unreduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalGF {
    num: XPoly,
    den: XPoly,
}

impl RationalGF {
    pub fn new(num: XPoly, den: XPoly) -> RationalGF {
        assert!(
            !den.is_zero(),
            "rational generating function with zero denominator"
        );
        RationalGF { num, den }
    }

    pub fn from_xpoly(p: XPoly) -> RationalGF {
        RationalGF::new(p, XPoly::one())
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn substitute(&self, bindings: &[(Var, i64)]) -> RationalGF {
        RationalGF::new(self.num.substitute(bindings), self.den.substitute(bindings))
    }

    pub fn rename_var(&self, from: Var, to: Var) -> RationalGF {
        RationalGF::new(self.num.rename_var(from, to), self.den.rename_var(from, to))
    }

    /// Expands to a truncated power series.
    ///
    /// The denominator must have a nonzero integer constant term; when that
    /// constant is not 1, both numerator and denominator are divided by it,
    /// and the expansion is refused if either division is inexact. The
    /// coefficients then satisfy the linear recurrence read off from the
    /// denominator, which is evaluated directly (long division).
    pub fn expand(&self, order: usize) -> Result<XSeries, Error> {
        let d0 = self.den.coeff(0);
        let c = d0.constant_value().ok_or_else(|| {
            Error::NonExpandable(format!("denominator constant term {d0} is not an integer"))
        })?;
        if c.is_zero() {
            return Err(Error::NonExpandable(
                "denominator has zero constant term".into(),
            ));
        }
        let (num_adj, den_adj);
        let (num, den) = if c.is_one() {
            (&self.num, &self.den)
        } else {
            num_adj = self.num.div_exact(&c).ok_or_else(|| {
                Error::NonExpandable(format!(
                    "numerator is not exactly divisible by the denominator constant {c}"
                ))
            })?;
            den_adj = self.den.div_exact(&c).ok_or_else(|| {
                Error::NonExpandable(format!(
                    "denominator is not exactly divisible by its constant term {c}"
                ))
            })?;
            (&num_adj, &den_adj)
        };
        let ddeg = den.degree().unwrap_or(0);
        let mut out: Vec<MultiPoly> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut c_k = num.coeff(k).clone();
            for j in 1..=ddeg.min(k) {
                c_k.sub_assign_ref(&den.coeff(j).mul_ref(&out[k - j]));
            }
            out.push(c_k);
        }
        Ok(XSeries::from_raw(out))
    }
}

impl Add for RationalGF {
    type Output = RationalGF;
    fn add(self, rhs: RationalGF) -> RationalGF {
        RationalGF::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for RationalGF {
    type Output = RationalGF;
    fn sub(self, rhs: RationalGF) -> RationalGF {
        self + (-rhs)
    }
}

impl Neg for RationalGF {
    type Output = RationalGF;
    fn neg(self) -> RationalGF {
        RationalGF::new(-self.num, self.den)
    }
}

impl Mul for RationalGF {
    type Output = RationalGF;
    fn mul(self, rhs: RationalGF) -> RationalGF {
        RationalGF::new(self.num * rhs.num, self.den * rhs.den)
    }
}

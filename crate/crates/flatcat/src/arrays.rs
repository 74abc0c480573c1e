//! Triangular arrays of joint-distribution polynomials.
//!
//! For a family `S` with pattern markers `p`, `q`, `r` (see
//! [`Family::markers`]), the array entry at `(n, m)` is the polynomial
//!
//! ```text
//! s_{n,m} = Σ_{w ∈ F_{n,m}}  p^{#α(w)} q^{#β(w)} r^{#γ(w)}
//! ```
//!
//! summed over the flattened Catalan words of length `n` whose terminal run
//! contains exactly `m` distinct letters.  The arrays are filled from the
//! recurrences each family satisfies, row by row; rows with `n ≤ 0` are
//! treated as zero wherever a recurrence reaches below the seeds.
//!
//! From the rows, three auxiliary sequences are derived for each `n`:
//! `u_n = Σ_m (m−1)·s_{n,m}` (the terminal-run weighted sum),
//! `v_n = Σ_m s_{n,m}` (the plain row sum), and `w_n = s_{n,1}`.  These also
//! satisfy standalone recurrence systems; [`build_uvw`] computes the
//! sequences both ways and insists on agreement, so a transcription slip in
//! either set of recurrences surfaces as an error instead of propagating.

use crate::catalog::Family;
use crate::poly::{int, p, q, r, zero_ref, Exponents, MultiPoly};
use crate::series::XSeries;
use crate::Error;
use num_bigint::BigInt;

/// A triangular array of joint-distribution polynomials for one family.
#[derive(Debug, Clone)]
pub struct StatArray {
    family: Family,
    /// `rows[n−1]` holds the entries for `m = 1..=n`.
    rows: Vec<Vec<MultiPoly>>,
}

/// Reads `rows` with virtual zeros outside the triangle (`n ≤ 0`, `m ≤ 0`,
/// or `m > n`).
fn get(rows: &[Vec<MultiPoly>], n: isize, m: isize) -> MultiPoly {
    if n < 1 || m < 1 || m > n {
        MultiPoly::zero()
    } else {
        rows[(n - 1) as usize][(m - 1) as usize].clone()
    }
}

/// `Σ_{j=lo..=hi} (j−shift)·rows[k][j]` — the weighted sums the first-column
/// recurrences use.  Out-of-triangle terms contribute zero.
fn weighted_sum(rows: &[Vec<MultiPoly>], k: isize, lo: isize, hi: isize, shift: i64) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for j in lo..=hi {
        acc += &(int(j as i64 - shift) * get(rows, k, j));
    }
    acc
}

impl StatArray {
    /// Builds the family's array for `1 ≤ n ≤ max_n` from its recurrences.
    ///
    /// # Panics
    ///
    /// If `max_n` is zero.
    pub fn build(family: Family, max_n: usize) -> StatArray {
        assert!(max_n >= 1, "array needs at least one row");
        let rows = match family {
            Family::A => build_a(max_n),
            Family::B => build_b(max_n),
            Family::C => build_c(max_n),
            Family::D => build_d(max_n),
            Family::E => build_e(max_n),
        };
        StatArray { family, rows }
    }

    /// The family whose statistics the entries carry.
    pub fn family(&self) -> Family {
        self.family
    }

    /// The largest row index built.
    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    /// The entry at row `n`, column `m` (both 1-based, `1 ≤ m ≤ n ≤ max_n`).
    pub fn entry(&self, n: usize, m: usize) -> &MultiPoly {
        assert!(
            (1..=self.max_n()).contains(&n) && (1..=n).contains(&m),
            "array entry ({n}, {m}) out of range"
        );
        &self.rows[n - 1][m - 1]
    }

    /// Row `n` as the slice of entries for `m = 1..=n`.
    pub fn row(&self, n: usize) -> &[MultiPoly] {
        assert!(
            (1..=self.max_n()).contains(&n),
            "array row {n} out of range"
        );
        &self.rows[n - 1]
    }

    /// The double generating function `Σ_{n,m} s_{n,m} x^n y^{m−1}`,
    /// truncated at `x^max_n`.  Matches the family's catalog entry.
    pub fn double_gf(&self) -> XSeries {
        let mut coeffs = vec![MultiPoly::zero()];
        for row in &self.rows {
            let mut c = MultiPoly::zero();
            for (m1, entry) in row.iter().enumerate() {
                let mut e = Exponents::default();
                e.set(crate::poly::Var::Y, m1 as u16);
                c += &entry.mul_ref(&MultiPoly::monomial(e, BigInt::from(1)));
            }
            coeffs.push(c);
        }
        XSeries::from_raw(coeffs)
    }

    /// `u_n = Σ_m (m−1)·s_{n,m}` computed from the stored rows, `n = 0..=max_n`.
    fn definitional_u(&self) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero()];
        for n in 1..=self.max_n() {
            out.push(weighted_sum(&self.rows, n as isize, 2, n as isize, 1));
        }
        out
    }

    /// `v_n = Σ_m s_{n,m}` computed from the stored rows, `n = 0..=max_n`.
    fn definitional_v(&self) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero()];
        for n in 1..=self.max_n() {
            let mut acc = MultiPoly::zero();
            for entry in self.row(n) {
                acc += entry;
            }
            out.push(acc);
        }
        out
    }

    /// `w_n = s_{n,1}` from the stored rows, `n = 0..=max_n`.
    fn definitional_w(&self) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero()];
        for n in 1..=self.max_n() {
            out.push(self.entry(n, 1).clone());
        }
        out
    }
}

/// `a_{n,m} = p·a_{n−1,m−1} + r·a_{n−1,m}` for `m ≥ 2`;
/// `a_{n,1} = r·a_{n−1,1} + q·Σ_{j=2}^{n−1}(j−1)a_{n−1,j}`; seed `a_{1,1} = 1`.
fn build_a(max_n: usize) -> Vec<Vec<MultiPoly>> {
    let mut rows: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one()]];
    for n in 2..=max_n as isize {
        let mut row = Vec::with_capacity(n as usize);
        row.push(r() * get(&rows, n - 1, 1) + q() * weighted_sum(&rows, n - 1, 2, n - 1, 1));
        for m in 2..=n {
            row.push(p() * get(&rows, n - 1, m - 1) + r() * get(&rows, n - 1, m));
        }
        rows.push(row);
    }
    rows
}

/// `b_{n,m} = r·b_{n−1,m} + b_{n−1,m−1} + (p−r)·b_{n−2,m−1}` for `m ≥ 2`;
/// `b_{n,1} = r·b_{n−1,1} + u_{n−1} + (q−r)·u_{n−2}` where
/// `u_k = Σ_j (j−1)·b_{k,j}`; seeds `b_{1,1} = b_{2,1} = b_{2,2} = 1`.
fn build_b(max_n: usize) -> Vec<Vec<MultiPoly>> {
    let mut rows = vec![vec![MultiPoly::one()]];
    if max_n >= 2 {
        rows.push(vec![MultiPoly::one(), MultiPoly::one()]);
    }
    for n in 3..=max_n as isize {
        let mut row = Vec::with_capacity(n as usize);
        row.push(
            r() * get(&rows, n - 1, 1)
                + weighted_sum(&rows, n - 1, 2, n - 1, 1)
                + (q() - r()) * weighted_sum(&rows, n - 2, 2, n - 2, 1),
        );
        for m in 2..=n {
            row.push(
                r() * get(&rows, n - 1, m)
                    + get(&rows, n - 1, m - 1)
                    + (p() - r()) * get(&rows, n - 2, m - 1),
            );
        }
        rows.push(row);
    }
    rows
}

/// `c_{n,m} = c_{n−1,m} + c_{n−1,m−1} + (p−1)·c_{n−2,m−1}` for `m ≥ 2`;
/// `c_{n,1} = c_{n−1,1} + r·Σ_{j=2}^{n−2}(j−1)c_{n−2,j}
///            + Σ_{j=2}^{n−1}(j−2+q)(c_{n−2,j−1} + (p−1)c_{n−3,j−1})`;
/// seeds `c_{1,1} = c_{2,1} = c_{2,2} = 1`.
fn build_c(max_n: usize) -> Vec<Vec<MultiPoly>> {
    let mut rows = vec![vec![MultiPoly::one()]];
    if max_n >= 2 {
        rows.push(vec![MultiPoly::one(), MultiPoly::one()]);
    }
    for n in 3..=max_n as isize {
        let mut row = Vec::with_capacity(n as usize);
        let mut first = get(&rows, n - 1, 1) + r() * weighted_sum(&rows, n - 2, 2, n - 2, 1);
        for j in 2..n {
            let inner = get(&rows, n - 2, j - 1) + (p() - int(1)) * get(&rows, n - 3, j - 1);
            first += &((int(j as i64 - 2) + q()) * inner);
        }
        row.push(first);
        for m in 2..=n {
            row.push(
                get(&rows, n - 1, m)
                    + get(&rows, n - 1, m - 1)
                    + (p() - int(1)) * get(&rows, n - 2, m - 1),
            );
        }
        rows.push(row);
    }
    rows
}

/// `d_{n,m} = d_{n−1,m} + p·d_{n−1,m−1} + (1−p)·d_{n−2,m−1}` for `m ≥ 3`;
/// `d_{n,2} = d_{n−1,2} + d_{n−1,1}`;
/// `d_{n,1} = d_{n−1,1} + (1−p)(d_{n−2,1} − d_{n−3,1})
///            + (pq+r)·Σ_{j=2}^{n−2}(j−1)d_{n−2,j}
///            + (1−p)q·Σ_{j=2}^{n−3}(j−1)d_{n−3,j}
///            + Σ_{j=1}^{n−2}(p·d_{n−2,j} + (1−p)·d_{n−3,j})`;
/// seeds `d_{1,1} = d_{2,1} = d_{2,2} = 1`.
fn build_d(max_n: usize) -> Vec<Vec<MultiPoly>> {
    let mut rows = vec![vec![MultiPoly::one()]];
    if max_n >= 2 {
        rows.push(vec![MultiPoly::one(), MultiPoly::one()]);
    }
    for n in 3..=max_n as isize {
        let mut row = Vec::with_capacity(n as usize);
        let mut first = get(&rows, n - 1, 1)
            + (int(1) - p()) * (get(&rows, n - 2, 1) - get(&rows, n - 3, 1))
            + (p() * q() + r()) * weighted_sum(&rows, n - 2, 2, n - 2, 1)
            + (int(1) - p()) * q() * weighted_sum(&rows, n - 3, 2, n - 3, 1);
        for j in 1..=n - 2 {
            first += &(p() * get(&rows, n - 2, j) + (int(1) - p()) * get(&rows, n - 3, j));
        }
        row.push(first);
        row.push(get(&rows, n - 1, 2) + get(&rows, n - 1, 1));
        for m in 3..=n {
            row.push(
                get(&rows, n - 1, m)
                    + p() * get(&rows, n - 1, m - 1)
                    + (int(1) - p()) * get(&rows, n - 2, m - 1),
            );
        }
        rows.push(row);
    }
    rows
}

/// `e_{n,m} = e_{n−1,m} + e_{n−1,m−1} + (p−1)·e_{n−2,m−1}` for `m ≥ 3`;
/// `e_{n,2} = e_{n−1,2} + p·e_{n−2,1} + Σ_{j=2}^{n−2}(r(j−2)+q)·e_{n−2,j}`;
/// `e_{n,1} = e_{n−1,1} + Σ_{j=2}^{n−1}(j−1)·e_{n−1,j}`;
/// seeds `e_{1,1} = e_{2,1} = e_{2,2} = 1`.
fn build_e(max_n: usize) -> Vec<Vec<MultiPoly>> {
    let mut rows = vec![vec![MultiPoly::one()]];
    if max_n >= 2 {
        rows.push(vec![MultiPoly::one(), MultiPoly::one()]);
    }
    for n in 3..=max_n as isize {
        let mut row = Vec::with_capacity(n as usize);
        row.push(get(&rows, n - 1, 1) + weighted_sum(&rows, n - 1, 2, n - 1, 1));
        let mut second = get(&rows, n - 1, 2) + p() * get(&rows, n - 2, 1);
        for j in 2..=n - 2 {
            second += &((r() * int(j as i64 - 2) + q()) * get(&rows, n - 2, j));
        }
        row.push(second);
        for m in 3..=n {
            row.push(
                get(&rows, n - 1, m)
                    + get(&rows, n - 1, m - 1)
                    + (p() - int(1)) * get(&rows, n - 2, m - 1),
            );
        }
        rows.push(row);
    }
    rows
}

/// The three auxiliary sequences of a family, indexed `0..=max_n`.
#[derive(Debug, Clone)]
pub struct UvwSeq {
    family: Family,
    u: Vec<MultiPoly>,
    v: Vec<MultiPoly>,
    w: Vec<MultiPoly>,
}

impl UvwSeq {
    /// The family the sequences belong to.
    pub fn family(&self) -> Family {
        self.family
    }

    /// The largest index computed.
    pub fn max_n(&self) -> usize {
        self.u.len() - 1
    }

    /// `u_n = Σ_m (m−1)·s_{n,m}` for `n ≤ max_n`.
    pub fn u(&self, n: usize) -> &MultiPoly {
        &self.u[n]
    }

    /// `v_n = Σ_m s_{n,m}` for `n ≤ max_n`.
    pub fn v(&self, n: usize) -> &MultiPoly {
        &self.v[n]
    }

    /// `w_n = s_{n,1}` for `n ≤ max_n`.
    pub fn w(&self, n: usize) -> &MultiPoly {
        &self.w[n]
    }
}

/// Reads a sequence with virtual zeros below index 0.
fn seq(s: &[MultiPoly], n: isize) -> &MultiPoly {
    if n < 0 {
        zero_ref()
    } else {
        &s[n as usize]
    }
}

/// Computes the family's `u`/`v`/`w` sequences up to `max_n` twice — once
/// from the standalone recurrence system, once from the array rows — and
/// returns them only if both computations agree.
///
/// The `w` sequence has a standalone recurrence only in families `D` and
/// `E`; for the others it is taken from the array (where it still
/// participates in the returned sequence and the definitional identity).
///
/// # Errors
///
/// [`Error::Inconsistent`] if the recurrence system and the array disagree
/// anywhere — the signature of a transcription slip in one of them.
pub fn build_uvw(family: Family, max_n: usize) -> Result<UvwSeq, Error> {
    let array = StatArray::build(family, max_n.max(2));
    let def_u = array.definitional_u();
    let def_v = array.definitional_v();
    let def_w = array.definitional_w();

    // Shared initial values: u_0 = v_0 = w_0 = u_1 = 0, v_1 = w_1 = 1; the
    // B–E systems start at n = 3 and additionally seed u_2 = w_2 = 1, v_2 = 2.
    let mut u = vec![MultiPoly::zero(), MultiPoly::zero()];
    let mut v = vec![MultiPoly::zero(), MultiPoly::one()];
    let mut w = vec![MultiPoly::zero(), MultiPoly::one()];
    if max_n >= 2 && family != Family::A {
        u.push(MultiPoly::one());
        v.push(int(2));
        w.push(MultiPoly::one());
    }

    let start = u.len();
    for n in start as isize..=max_n as isize {
        let (un, vn, wn) = match family {
            // u_n = (p+r)u_{n−1} + p·v_{n−1};  v_n = (p+r)v_{n−1} + q·u_{n−1}.
            Family::A => (
                (p() + r()) * seq(&u, n - 1).clone() + p() * seq(&v, n - 1).clone(),
                (p() + r()) * seq(&v, n - 1).clone() + q() * seq(&u, n - 1).clone(),
                def_w[n as usize].clone(),
            ),
            // u_n = (1+r)u_{n−1} + v_{n−1} + (p−r)(u_{n−2} + v_{n−2});
            // v_n = u_{n−1} + (1+r)v_{n−1} + (q−r)u_{n−2} + (p−r)v_{n−2}.
            Family::B => (
                (int(1) + r()) * seq(&u, n - 1).clone()
                    + seq(&v, n - 1).clone()
                    + (p() - r()) * (seq(&u, n - 2).clone() + seq(&v, n - 2).clone()),
                seq(&u, n - 1).clone()
                    + (int(1) + r()) * seq(&v, n - 1).clone()
                    + (q() - r()) * seq(&u, n - 2).clone()
                    + (p() - r()) * seq(&v, n - 2).clone(),
                def_w[n as usize].clone(),
            ),
            // u_n = 2u_{n−1} + v_{n−1} + (p−1)(u_{n−2} + v_{n−2});
            // v_n = 2v_{n−1} + (r+1)u_{n−2} + (p+q−1)v_{n−2}
            //       + (p−1)(u_{n−3} + q·v_{n−3}).
            Family::C => (
                int(2) * seq(&u, n - 1).clone()
                    + seq(&v, n - 1).clone()
                    + (p() - int(1)) * (seq(&u, n - 2).clone() + seq(&v, n - 2).clone()),
                int(2) * seq(&v, n - 1).clone()
                    + (r() + int(1)) * seq(&u, n - 2).clone()
                    + (p() + q() - int(1)) * seq(&v, n - 2).clone()
                    + (p() - int(1)) * (seq(&u, n - 3).clone() + q() * seq(&v, n - 3).clone()),
                def_w[n as usize].clone(),
            ),
            // w_n = (pq+r)u_{n−2} + (1−p)q·u_{n−3} + p·v_{n−2} + w_{n−1}
            //       + (1−p)(v_{n−3} + w_{n−2} − w_{n−3});
            // u_n = (1+p)u_{n−1} + p·v_{n−1}
            //       + (1−p)(u_{n−2} + v_{n−2} + w_{n−1} − w_{n−2});
            // v_n = (1+p)v_{n−1} + w_n − p·w_{n−1} + (1−p)(v_{n−2} − w_{n−2}).
            Family::D => {
                let wn = (p() * q() + r()) * seq(&u, n - 2).clone()
                    + (int(1) - p()) * q() * seq(&u, n - 3).clone()
                    + p() * seq(&v, n - 2).clone()
                    + seq(&w, n - 1).clone()
                    + (int(1) - p())
                        * (seq(&v, n - 3).clone() + seq(&w, n - 2).clone()
                            - seq(&w, n - 3).clone());
                let un = (int(1) + p()) * seq(&u, n - 1).clone()
                    + p() * seq(&v, n - 1).clone()
                    + (int(1) - p())
                        * (seq(&u, n - 2).clone()
                            + seq(&v, n - 2).clone()
                            + seq(&w, n - 1).clone()
                            - seq(&w, n - 2).clone());
                let vn = (int(1) + p()) * seq(&v, n - 1).clone() + wn.clone()
                    - p() * seq(&w, n - 1).clone()
                    + (int(1) - p()) * (seq(&v, n - 2).clone() - seq(&w, n - 2).clone());
                (un, vn, wn)
            }
            // w_n = u_{n−1} + w_{n−1};
            // v_n = u_{n−1} + r·u_{n−2} + 2v_{n−1} + (p+q−r−1)v_{n−2}
            //       − w_{n−1} + (r−q+1)w_{n−2};
            // u_n = u_{n−1} + (p−1)u_{n−2} + v_n − v_{n−1}.
            Family::E => {
                let wn = seq(&u, n - 1).clone() + seq(&w, n - 1).clone();
                let vn = seq(&u, n - 1).clone()
                    + r() * seq(&u, n - 2).clone()
                    + int(2) * seq(&v, n - 1).clone()
                    + (p() + q() - r() - int(1)) * seq(&v, n - 2).clone()
                    - seq(&w, n - 1).clone()
                    + (r() - q() + int(1)) * seq(&w, n - 2).clone();
                let un =
                    seq(&u, n - 1).clone() + (p() - int(1)) * seq(&u, n - 2).clone() + vn.clone()
                        - seq(&v, n - 1).clone();
                (un, vn, wn)
            }
        };
        u.push(un);
        v.push(vn);
        w.push(wn);
    }
    u.truncate(max_n + 1);
    v.truncate(max_n + 1);
    w.truncate(max_n + 1);

    for n in 0..=max_n {
        for (name, got, want) in [
            ("u", &u[n], &def_u[n]),
            ("v", &v[n], &def_v[n]),
            ("w", &w[n], &def_w[n]),
        ] {
            if got != want {
                return Err(Error::Inconsistent(format!(
                    "family {family}: {name}_{n} from the recurrence system is {got}, \
                     but the array rows give {want}"
                )));
            }
        }
    }
    Ok(UvwSeq { family, u, v, w })
}

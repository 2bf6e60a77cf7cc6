//! Truncated univariate power series over a polynomial coefficient ring.
//!
//! A [`TruncSeries`] with truncation order `N` stores the coefficients of
//! `X^0 .. X^{N-1}`; everything from `X^N` on is unknown. Binary operations
//! return the minimum of the input truncations and never claim more precision
//! than that, even when vanishing low-order terms would justify a sharper
//! bound. Equality likewise compares coefficients up to the smaller
//! truncation only.
//!
//! Composition requires the inner series to have zero constant term.
//! Reversion (compositional inverse) is implemented by the Lagrange inversion
//! coefficient formula and demands a linear coefficient of exactly 1; no
//! attempt is made to divide out a unit. Square roots of constant-term-1
//! series use the formal binomial expansion with exponent 1/2.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::ring::{GeneratorTable, Polynomial};

#[derive(Clone)]
pub struct TruncSeries {
    table: Arc<GeneratorTable>,
    coeffs: Vec<Polynomial>,
}

fn same_table(a: &TruncSeries, b: &TruncSeries) {
    assert!(
        Arc::ptr_eq(&a.table, &b.table) || a.table == b.table,
        "cannot combine series over different generator tables"
    );
}

impl TruncSeries {
    /// Wraps an explicit coefficient list; `coeffs[k]` is the coefficient of
    /// `X^k` and the truncation order is `coeffs.len()`.
    pub fn new(table: &Arc<GeneratorTable>, coeffs: Vec<Polynomial>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be at least 1");
        for c in &coeffs {
            assert!(
                c.table() == table,
                "series coefficient over a different generator table"
            );
        }
        TruncSeries {
            table: Arc::clone(table),
            coeffs,
        }
    }

    pub fn zero(table: &Arc<GeneratorTable>, n: usize) -> Self {
        assert!(n >= 1);
        TruncSeries {
            table: Arc::clone(table),
            coeffs: vec![Polynomial::zero(table); n],
        }
    }

    /// The identity series `X` (as far as the truncation can see it).
    pub fn x(table: &Arc<GeneratorTable>, n: usize) -> Self {
        let mut s = TruncSeries::zero(table, n);
        if n > 1 {
            s.coeffs[1] = Polynomial::one(table);
        }
        s
    }

    /// The single term `c * X^k`.
    pub fn monomial(table: &Arc<GeneratorTable>, c: Polynomial, k: usize, n: usize) -> Self {
        let mut s = TruncSeries::zero(table, n);
        if k < n {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: Polynomial, n: usize) -> Self {
        TruncSeries::monomial(table, c, 0, n)
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut Polynomial {
        &mut self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Shrinks to truncation `n` (never extends knowledge).
    pub fn truncated(&self, n: usize) -> TruncSeries {
        assert!(n >= 1);
        let n = n.min(self.coeffs.len());
        TruncSeries {
            table: Arc::clone(&self.table),
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        same_table(self, other);
        let n = self.truncation().min(other.truncation());
        let mut out = self.truncated(n);
        for k in 0..n {
            out.coeffs[k].add_assign_ref(&other.coeffs[k]);
        }
        out
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        same_table(self, other);
        let n = self.truncation().min(other.truncation());
        let mut out = self.truncated(n);
        for k in 0..n {
            out.coeffs[k].sub_assign_ref(&other.coeffs[k]);
        }
        out
    }

    pub fn neg(&self) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        TruncSeries {
            table: Arc::clone(&self.table),
            coeffs,
        }
    }

    pub fn scale(&self, c: &Rat) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|p| p.scale(c)).collect();
        TruncSeries {
            table: Arc::clone(&self.table),
            coeffs,
        }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|c| c * p).collect();
        TruncSeries {
            table: Arc::clone(&self.table),
            coeffs,
        }
    }

    /// Cauchy product, truncated to the smaller input truncation.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        same_table(self, other);
        let n = self.truncation().min(other.truncation());
        let mut out = TruncSeries::zero(&self.table, n);
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j].add_mul_assign(a, b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut acc = TruncSeries::constant(&self.table, Polynomial::one(&self.table), self.truncation());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `g` for the variable; `g` must have zero constant term so
    /// that the result is well-defined to the shared truncation.
    pub fn compose(&self, g: &TruncSeries) -> Result<TruncSeries> {
        same_table(self, g);
        if !g.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero("composition"));
        }
        let n = self.truncation().min(g.truncation());
        let mut acc = TruncSeries::zero(&self.table, n);
        for k in (0..n).rev() {
            acc = acc.mul(g);
            acc.coeffs[0].add_assign_ref(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Termwise derivative; the truncation drops by one (a series known mod
    /// `X^N` has a derivative known only mod `X^{N-1}`). For `N = 1` the
    /// result stays at order 1.
    pub fn derivative(&self) -> TruncSeries {
        let n = self.truncation();
        if n == 1 {
            return TruncSeries::zero(&self.table, 1);
        }
        let mut coeffs = Vec::with_capacity(n - 1);
        for k in 1..n {
            coeffs.push(self.coeffs[k].scale(&Rat::int(k as i64)));
        }
        TruncSeries {
            table: Arc::clone(&self.table),
            coeffs,
        }
    }

    /// Multiplies by `X^k`; the result is known mod `X^{N+k}`.
    pub fn shift_up(&self, k: usize) -> TruncSeries {
        let mut coeffs = vec![Polynomial::zero(&self.table); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries {
            table: Arc::clone(&self.table),
            coeffs,
        }
    }

    /// Divides by `X^k`; requires the low-order coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> Result<TruncSeries> {
        if self.truncation() <= k {
            return Err(Error::PrecisionTooSmall {
                needed: k + 1,
                have: self.truncation(),
            });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::ConstantTermNotZero("division by a power of X"));
        }
        Ok(TruncSeries {
            table: Arc::clone(&self.table),
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Substitutes `-X` for `X`.
    pub fn alternate(&self) -> TruncSeries {
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = -&*c;
            }
        }
        out
    }

    /// The odd part `(f(X) - f(-X)) / 2`.
    pub fn odd_part(&self) -> TruncSeries {
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if k % 2 == 0 {
                *c = Polynomial::zero(&self.table);
            }
        }
        out
    }

    /// The even part `(f(X) + f(-X)) / 2`.
    pub fn even_part(&self) -> TruncSeries {
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = Polynomial::zero(&self.table);
            }
        }
        out
    }

    pub fn is_odd_series(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    pub fn is_even_series(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Multiplicative inverse; the constant term must be an invertible
    /// rational. Uses the standard triangular recurrence, O(N^2) coefficient
    /// products.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c0 = self.coeffs[0].as_constant().ok_or(Error::NonUnitConstant)?;
        let c0_inv = c0.recip().map_err(|_| Error::NonUnitConstant)?;
        let n = self.truncation();
        let mut out = TruncSeries::zero(&self.table, n);
        out.coeffs[0] = Polynomial::constant(&self.table, c0_inv.clone());
        for k in 1..n {
            let mut s = Polynomial::zero(&self.table);
            for j in 1..=k {
                s.add_mul_assign(&self.coeffs[j], &out.coeffs[k - j]);
            }
            out.coeffs[k] = s.scale(&-&c0_inv);
        }
        Ok(out)
    }

    /// The unique square root with constant term 1, by the binomial series
    /// `(1 + w)^{1/2} = sum binom(1/2, k) w^k` applied to `w = f - 1`.
    pub fn sqrt(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne("square root"));
        }
        let n = self.truncation();
        let mut w = self.clone();
        w.coeffs[0] = Polynomial::zero(&self.table);
        let mut acc = TruncSeries::constant(&self.table, Polynomial::one(&self.table), n);
        let mut p = TruncSeries::constant(&self.table, Polynomial::one(&self.table), n);
        let mut b = Rat::one();
        for k in 1..n as i64 {
            b = &(&b * &(Rat::frac(1, 2) - Rat::int(k - 1))) / &Rat::int(k);
            p = p.mul(&w);
            acc = acc.add(&p.scale(&b));
        }
        Ok(acc)
    }

    /// Compositional inverse of a series `X + a_2 X^2 + ...` via the Lagrange
    /// inversion formula: the degree-k coefficient of the inverse is
    /// `[X^{k-1}] (X/f)^k / k`.
    pub fn revert(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero("reversion"));
        }
        let n = self.truncation();
        if n < 2 || !self.coeffs[1].is_one() {
            return Err(Error::NotStrict("reversion"));
        }
        let u = self.shift_down(1)?; // f / X, constant term 1, order n - 1
        let v = u.inverse()?;
        let mut out = TruncSeries::zero(&self.table, n);
        out.coeffs[1] = Polynomial::one(&self.table);
        let mut p = v.clone();
        for k in 2..n {
            p = p.mul(&v); // v^k
            out.coeffs[k] = p.coeff(k - 1).scale(&Rat::frac(1, k as i64));
        }
        Ok(out)
    }

    /// Compositional inverse of a series whose linear coefficient is any
    /// invertible rational `c` (not just 1): with `u(Y) = f(Y/c)` strict,
    /// the solution of `f(g) = X` is `revert(u) / c`.
    pub fn compose_inverse(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero("composition inverse"));
        }
        if self.truncation() < 2 {
            return Err(Error::NotStrict("composition inverse"));
        }
        let c = self.coeffs[1].as_constant().ok_or(Error::NonUnitLeading)?;
        if c.is_zero() {
            return Err(Error::ZeroLeading);
        }
        let c_inv = c.recip().expect("nonzero rational");
        let mut u = self.clone();
        let mut pw = Rat::one();
        for k in 1..u.truncation() {
            pw = &pw * &c_inv;
            u.coeffs[k] = self.coeffs[k].scale(&pw);
        }
        Ok(u.revert()?.scale(&c_inv))
    }

    /// Compositional inverse by direct degree-by-degree solution of
    /// `f(g(X)) = X`. Slower than [`TruncSeries::revert`]; kept as an
    /// independent route for cross-checking.
    pub fn revert_stepwise(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero("reversion"));
        }
        let n = self.truncation();
        if n < 2 || !self.coeffs[1].is_one() {
            return Err(Error::NotStrict("reversion"));
        }
        let mut g = TruncSeries::x(&self.table, n);
        for k in 2..n {
            // With g correct below degree k, [X^k] f(g) depends on g_k with
            // unit coefficient.
            let r = self.compose(&g)?;
            g.coeffs[k].sub_assign_ref(&r.coeffs[k]);
        }
        Ok(g)
    }

    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pow = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let body = if c.term_count() > 1 {
                if pow.is_empty() {
                    c.render()
                } else {
                    format!("({})*{}", c.render(), pow)
                }
            } else {
                // single term: fold sign and coefficient into the text
                let rendered = c.render();
                if pow.is_empty() {
                    rendered
                } else if rendered == "1" {
                    pow.clone()
                } else if rendered == "-1" {
                    format!("-{pow}")
                } else {
                    format!("{rendered}*{pow}")
                }
            };
            if out.is_empty() {
                out.push_str(&body);
            } else if let Some(stripped) = body.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        let tail = format!("O({var}^{})", self.truncation());
        if out.is_empty() {
            tail
        } else {
            format!("{out} + {tail}")
        }
    }

    /// Reads `{"truncation": N, "coeffs": [...]}`.
    pub fn from_json(v: &serde_json::Value, table: &Arc<GeneratorTable>) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::BadJson("series must be an object".into()))?;
        let n = obj
            .get("truncation")
            .and_then(|t| t.as_u64())
            .filter(|&t| t >= 1)
            .ok_or_else(|| Error::BadJson("series needs a positive integer truncation".into()))?
            as usize;
        let arr = obj
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::BadJson("series needs a coefficient list".into()))?;
        if arr.len() > n {
            return Err(Error::BadJson(format!(
                "series lists {} coefficients but claims truncation {n}",
                arr.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(n);
        for item in arr {
            coeffs.push(Polynomial::from_json(item, table)?);
        }
        coeffs.resize(n, Polynomial::zero(table));
        Ok(TruncSeries::new(table, coeffs))
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TruncSeries", 2)?;
        st.serialize_field("truncation", &self.truncation())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

/// Coefficients agree up to the smaller truncation. Deliberately not `Eq`:
/// the relation is reflexive and symmetric but compares only shared
/// precision.
impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        if !(Arc::ptr_eq(&self.table, &other.table) || self.table == other.table) {
            return false;
        }
        let n = self.truncation().min(other.truncation());
        self.coeffs[..n] == other.coeffs[..n]
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("X"))
    }
}

//! Truncated bivariate power series, the representation of a group law
//! itself.
//!
//! A [`BiSeries`] truncated at total degree `N` stores the coefficients of
//! `X^i Y^j` for `i + j < N` in a sorted sparse map. All operations truncate
//! to the minimum total degree of their inputs, mirroring the univariate
//! conventions in [`crate::series`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::ring::{GeneratorTable, Polynomial};
use crate::series::TruncSeries;

#[derive(Clone)]
pub struct BiSeries {
    table: Arc<GeneratorTable>,
    trunc: usize,
    coeffs: BTreeMap<(u32, u32), Polynomial>, // no zero entries
}

impl BiSeries {
    pub fn zero(table: &Arc<GeneratorTable>, trunc: usize) -> Self {
        assert!(trunc >= 1);
        BiSeries {
            table: Arc::clone(table),
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: Polynomial, trunc: usize) -> Self {
        let mut s = BiSeries::zero(table, trunc);
        s.set_coeff(0, 0, c);
        s
    }

    /// The sum of the two variables, `X + Y`.
    pub fn sum_of_vars(table: &Arc<GeneratorTable>, trunc: usize) -> Self {
        let mut s = BiSeries::zero(table, trunc);
        if trunc > 1 {
            s.set_coeff(1, 0, Polynomial::one(table));
            s.set_coeff(0, 1, Polynomial::one(table));
        }
        s
    }

    /// A univariate series placed on the first variable.
    pub fn of_x(f: &TruncSeries, trunc: usize) -> Self {
        let mut s = BiSeries::zero(f.table(), trunc.min(f.truncation()));
        for (i, c) in f.coeffs().iter().enumerate().take(s.trunc) {
            s.set_coeff(i as u32, 0, c.clone());
        }
        s
    }

    /// A univariate series placed on the second variable.
    pub fn of_y(f: &TruncSeries, trunc: usize) -> Self {
        let mut s = BiSeries::zero(f.table(), trunc.min(f.truncation()));
        for (j, c) in f.coeffs().iter().enumerate().take(s.trunc) {
            s.set_coeff(0, j as u32, c.clone());
        }
        s
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `X^i Y^j`. Panics beyond the truncation: those
    /// coefficients are unknown, not zero.
    pub fn coeff(&self, i: u32, j: u32) -> Polynomial {
        assert!(
            ((i + j) as usize) < self.trunc,
            "coefficient beyond truncation"
        );
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.table))
    }

    pub fn set_coeff(&mut self, i: u32, j: u32, c: Polynomial) {
        assert!(((i + j) as usize) < self.trunc);
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncated(&self, n: usize) -> BiSeries {
        assert!(n >= 1);
        let n = n.min(self.trunc);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((i, j), _)| ((i + j) as usize) < n)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        BiSeries {
            table: Arc::clone(&self.table),
            trunc: n,
            coeffs,
        }
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let mut out = self.truncated(other.trunc);
        for (&(i, j), c) in &other.coeffs {
            if ((i + j) as usize) < out.trunc {
                let mut v = out.coeff(i, j);
                v.add_assign_ref(c);
                out.set_coeff(i, j, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiSeries {
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, -v)).collect();
        BiSeries {
            table: Arc::clone(&self.table),
            trunc: self.trunc,
            coeffs,
        }
    }

    pub fn scale(&self, c: &Rat) -> BiSeries {
        if c.is_zero() {
            return BiSeries::zero(&self.table, self.trunc);
        }
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v.scale(c))).collect();
        BiSeries {
            table: Arc::clone(&self.table),
            trunc: self.trunc,
            coeffs,
        }
    }

    /// Adds `p * other` into `self` in place (matching truncations assumed).
    pub fn add_mul_poly(&mut self, other: &BiSeries, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        for (&(i, j), c) in &other.coeffs {
            if ((i + j) as usize) < self.trunc {
                let mut v = self.coeff(i, j);
                v.add_mul_assign(c, p);
                self.set_coeff(i, j, v);
            }
        }
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let n = self.trunc.min(other.trunc);
        let mut acc: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        for (&(i1, j1), a) in &self.coeffs {
            let d1 = (i1 + j1) as usize;
            if d1 >= n {
                continue;
            }
            for (&(i2, j2), b) in &other.coeffs {
                let d2 = (i2 + j2) as usize;
                if d1 + d2 >= n {
                    continue;
                }
                acc.entry((i1 + i2, j1 + j2))
                    .or_insert_with(|| Polynomial::zero(&self.table))
                    .add_mul_assign(a, b);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiSeries {
            table: Arc::clone(&self.table),
            trunc: n,
            coeffs: acc,
        }
    }

    /// Applies a univariate series to this one (`f` of `self`); requires
    /// zero constant term so the truncation is honest.
    pub fn compose_uni(&self, f: &TruncSeries) -> Result<BiSeries> {
        if self.coeffs.contains_key(&(0, 0)) {
            return Err(Error::ConstantTermNotZero("bivariate composition"));
        }
        let n = self.trunc.min(f.truncation());
        let inner = self.truncated(n);
        let mut acc = BiSeries::zero(&self.table, n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            let mut c0 = acc.coeff(0, 0);
            c0.add_assign_ref(f.coeff(k));
            acc.set_coeff(0, 0, c0);
        }
        Ok(acc)
    }

    /// Substitutes univariate series for the two variables, producing the
    /// univariate series `sum a_ij f^i g^j`. Both must have zero constant
    /// term.
    pub fn eval(&self, f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
        if !f.coeff(0).is_zero() || !g.coeff(0).is_zero() {
            return Err(Error::ConstantTermNotZero("bivariate evaluation"));
        }
        let n = self.trunc.min(f.truncation()).min(g.truncation());
        let f = f.truncated(n);
        let g = g.truncated(n);
        // Row accumulation: group the coefficients by X-power, evaluate each
        // row against powers of g, then fold rows against powers of f.
        let mut rows: BTreeMap<u32, TruncSeries> = BTreeMap::new();
        let mut gpow: Vec<TruncSeries> = vec![TruncSeries::constant(
            &self.table,
            Polynomial::one(&self.table),
            n,
        )];
        for (&(i, j), c) in &self.coeffs {
            if ((i + j) as usize) >= n {
                continue;
            }
            while gpow.len() <= j as usize {
                let next = gpow.last().unwrap().mul(&g);
                gpow.push(next);
            }
            let term = gpow[j as usize].scale_poly(c);
            rows.entry(i)
                .and_modify(|r| *r = r.add(&term))
                .or_insert(term);
        }
        let mut out = TruncSeries::zero(&self.table, n);
        let mut fpow = TruncSeries::constant(&self.table, Polynomial::one(&self.table), n);
        let mut last_i = 0u32;
        for (i, row) in rows {
            for _ in last_i..i {
                fpow = fpow.mul(&f);
            }
            last_i = i;
            out = out.add(&fpow.mul(&row));
        }
        Ok(out)
    }

    /// Substitutes separate univariate series for the two variables while
    /// staying bivariate: the result is `sum a_ij gx(X)^i gy(Y)^j`.
    pub fn substitute_separate(&self, gx: &TruncSeries, gy: &TruncSeries) -> Result<BiSeries> {
        if !gx.coeff(0).is_zero() || !gy.coeff(0).is_zero() {
            return Err(Error::ConstantTermNotZero("bivariate substitution"));
        }
        let n = self.trunc.min(gx.truncation()).min(gy.truncation());
        let gx = gx.truncated(n);
        let gy = gy.truncated(n);
        let one = TruncSeries::constant(&self.table, Polynomial::one(&self.table), n);
        let mut xpow: Vec<TruncSeries> = vec![one.clone()];
        let mut ypow: Vec<TruncSeries> = vec![one];
        let mut out = BiSeries::zero(&self.table, n);
        for (&(i, j), c) in &self.coeffs {
            if ((i + j) as usize) >= n {
                continue;
            }
            while xpow.len() <= i as usize {
                let next = xpow.last().unwrap().mul(&gx);
                xpow.push(next);
            }
            while ypow.len() <= j as usize {
                let next = ypow.last().unwrap().mul(&gy);
                ypow.push(next);
            }
            let (xi, yj) = (&xpow[i as usize], &ypow[j as usize]);
            for (p, a) in xi.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (q, b) in yj.coeffs().iter().enumerate().take(n - p) {
                    if b.is_zero() {
                        continue;
                    }
                    let mut v = out.coeff(p as u32, q as u32);
                    let ab = a * b;
                    v.add_mul_assign(&ab, c);
                    out.set_coeff(p as u32, q as u32, v);
                }
            }
        }
        Ok(out)
    }

    /// Swaps the two variables.
    pub fn transpose(&self) -> BiSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&(i, j), v)| ((j, i), v.clone()))
            .collect();
        BiSeries {
            table: Arc::clone(&self.table),
            trunc: self.trunc,
            coeffs,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&(i, j), v)| self.coeffs.get(&(j, i)) == Some(v))
    }

    pub fn render(&self, var_x: &str, var_y: &str) -> String {
        let mut out = String::new();
        for (&(i, j), c) in &self.coeffs {
            let mut pow = String::new();
            for (v, e) in [(var_x, i), (var_y, j)] {
                if e == 0 {
                    continue;
                }
                if !pow.is_empty() {
                    pow.push('*');
                }
                if e == 1 {
                    pow.push_str(v);
                } else {
                    pow.push_str(&format!("{v}^{e}"));
                }
            }
            let rendered = c.render();
            let body = if pow.is_empty() {
                rendered
            } else if c.term_count() > 1 {
                format!("({rendered})*{pow}")
            } else if rendered == "1" {
                pow
            } else if rendered == "-1" {
                format!("-{pow}")
            } else {
                format!("{rendered}*{pow}")
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
        let tail = format!("O(deg {})", self.trunc);
        if out.is_empty() {
            tail
        } else {
            format!("{out} + {tail}")
        }
    }
}

/// Coefficients agree up to the smaller total-degree truncation.
impl PartialEq for BiSeries {
    fn eq(&self, other: &Self) -> bool {
        if !(Arc::ptr_eq(&self.table, &other.table) || self.table == other.table) {
            return false;
        }
        let n = self.trunc.min(other.trunc);
        fn within(
            m: &BTreeMap<(u32, u32), Polynomial>,
            n: usize,
        ) -> Vec<(&(u32, u32), &Polynomial)> {
            m.iter()
                .filter(|((i, j), _)| ((i + j) as usize) < n)
                .collect()
        }
        within(&self.coeffs, n) == within(&other.coeffs, n)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("X", "Y"))
    }
}

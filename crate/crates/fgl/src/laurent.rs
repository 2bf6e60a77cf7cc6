//! Truncated Laurent series with finitely many negative-exponent terms.
//!
//! A [`LaurentSeries`] stores coefficients for exponents `min_exp .. trunc`
//! (half-open). Exponents below `min_exp` are exactly zero; exponents at or
//! above `trunc` are unknown. Multiplication keeps the window honest: the
//! product of series known mod `Z^{Na}` and `Z^{Nb}` with tails at `n0a`,
//! `n0b` is known mod `Z^{min(Na + n0b, Nb + n0a)}`.
//!
//! [`LaurentSeries::residue`] extracts the coefficient of `Z^{-1}`. A residue
//! request is answerable when the exponent -1 lies below the truncation: if
//! it is inside the stored window the stored value is returned, and if it is
//! below `min_exp` the residue is exactly 0. Only a window that has already
//! truncated away `Z^{-1}` is an error.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::ring::{GeneratorTable, Polynomial};
use crate::series::TruncSeries;

#[derive(Clone, Debug)]
pub struct LaurentSeries {
    table: Arc<GeneratorTable>,
    min_exp: i64,
    coeffs: Vec<Polynomial>, // coefficient of Z^{min_exp + k}
}

impl LaurentSeries {
    pub fn new(table: &Arc<GeneratorTable>, min_exp: i64, coeffs: Vec<Polynomial>) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient window");
        LaurentSeries {
            table: Arc::clone(table),
            min_exp,
            coeffs,
        }
    }

    /// Promotes a power series (tail at exponent 0).
    pub fn from_series(s: &TruncSeries) -> Self {
        LaurentSeries {
            table: Arc::clone(s.table()),
            min_exp: 0,
            coeffs: s.coeffs().to_vec(),
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// One past the largest stored exponent.
    pub fn truncation(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64
    }

    /// Coefficient of `Z^e`; exact zero below the window, panic at or above
    /// the truncation (that coefficient is unknown, not zero).
    pub fn coeff(&self, e: i64) -> Polynomial {
        assert!(e < self.truncation(), "coefficient beyond truncation");
        if e < self.min_exp {
            Polynomial::zero(&self.table)
        } else {
            self.coeffs[(e - self.min_exp) as usize].clone()
        }
    }

    /// Drops exact zeros at the low end of the window (never changes the
    /// series, only sharpens `min_exp`). A series of all zeros normalizes to
    /// a single zero coefficient at exponent `trunc - 1`.
    pub fn normalized(&self) -> LaurentSeries {
        let mut lo = 0;
        while lo + 1 < self.coeffs.len() && self.coeffs[lo].is_zero() {
            lo += 1;
        }
        LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp: self.min_exp + lo as i64,
            coeffs: self.coeffs[lo..].to_vec(),
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let min_exp = self.min_exp.min(other.min_exp);
        let trunc = self.truncation().min(other.truncation());
        assert!(trunc > min_exp, "empty window after alignment");
        let mut coeffs = vec![Polynomial::zero(&self.table); (trunc - min_exp) as usize];
        for part in [self, other] {
            for (k, p) in part.coeffs.iter().enumerate() {
                let exp = part.min_exp + k as i64;
                if exp < trunc {
                    coeffs[(exp - min_exp) as usize].add_assign_ref(p);
                }
            }
        }
        LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp,
            coeffs,
        }
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> LaurentSeries {
        LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> LaurentSeries {
        LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let a = self.normalized();
        let b = other.normalized();
        let min_exp = a.min_exp + b.min_exp;
        let trunc = (a.truncation() + b.min_exp).min(b.truncation() + a.min_exp);
        let mut coeffs = vec![Polynomial::zero(&self.table); (trunc - min_exp) as usize];
        for (i, p) in a.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in b.coeffs.iter().enumerate() {
                let exp = min_exp + (i + j) as i64;
                if exp >= trunc {
                    break;
                }
                if q.is_zero() {
                    continue;
                }
                coeffs[(i + j) as usize].add_mul_assign(p, q);
            }
        }
        LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp,
            coeffs,
        }
    }

    /// Integer power. Negative exponents require the lowest-order coefficient
    /// (after normalization) to be an invertible rational: the series is
    /// written as `c Z^d (1 + w)` and the geometric expansion of
    /// `(1 + w)^{-1}` is raised to the positive power.
    pub fn pow(&self, e: i64) -> Result<LaurentSeries> {
        if e == 0 {
            // The zeroth power is exactly 1; give it the operand's window
            // length so multiplying by it never narrows a window.
            let mut coeffs = vec![Polynomial::zero(&self.table); self.coeffs.len().max(1)];
            coeffs[0] = Polynomial::one(&self.table);
            return Ok(LaurentSeries {
                table: Arc::clone(&self.table),
                min_exp: 0,
                coeffs,
            });
        }
        if e > 0 {
            let mut acc = self.clone();
            for _ in 1..e {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        let n = self.normalized();
        let lead = n.coeffs[0].as_constant().ok_or(Error::NonUnitLeading)?;
        if lead.is_zero() {
            return Err(Error::ZeroLeading);
        }
        let lead_inv = lead.recip().map_err(|_| Error::ZeroLeading)?;
        // u = series / (lead Z^d) has constant term 1 and window length
        // equal to the original; invert it as an ordinary power series.
        let u = TruncSeries::new(&self.table, n.coeffs.iter().map(|c| c.scale(&lead_inv)).collect());
        let u_inv = u.inverse().expect("constant term is 1");
        let base = LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp: -n.min_exp,
            coeffs: u_inv.coeffs().to_vec(),
        }
        .scale(&lead_inv);
        base.pow(-e)
    }

    /// Coefficient of `Z^{-1}`. Exactly 0 when the tail starts above -1;
    /// an error only when the truncation window has already discarded it.
    pub fn residue(&self) -> Result<Polynomial> {
        if self.truncation() <= -1 {
            return Err(Error::ResidueWindow {
                lo: self.min_exp,
                hi: self.truncation(),
            });
        }
        if -1 < self.min_exp {
            return Ok(Polynomial::zero(&self.table));
        }
        Ok(self.coeffs[(-1 - self.min_exp) as usize].clone())
    }

    /// Termwise formal derivative `d/dZ`.
    pub fn derivative(&self) -> LaurentSeries {
        let min_exp = self.min_exp - 1;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&Rat::int(self.min_exp + k as i64)))
            .collect();
        LaurentSeries {
            table: Arc::clone(&self.table),
            min_exp,
            coeffs,
        }
    }

    /// Substitute a strict series `h = Z + ...` for the variable:
    /// `sum_e f_e h(Z)^e` over the window, negative exponents included.
    /// The result's window is whatever the products preserve exactly.
    pub fn compose_strict(&self, h: &TruncSeries) -> Result<LaurentSeries> {
        if h.truncation() < 2
            || !h.coeff(0).is_zero()
            || !h.coeff(1).is_one()
        {
            return Err(Error::NotStrict("change of variable"));
        }
        let base = LaurentSeries::from_series(h);
        let mut out: Option<LaurentSeries> = None;
        let mut p = base.pow(self.min_exp)?;
        for e in self.min_exp..self.truncation() {
            let c = self.coeff(e);
            if !c.is_zero() {
                let term = p.scale_poly(&c);
                out = Some(match out {
                    None => term,
                    Some(acc) => acc.add(&term),
                });
            }
            if e + 1 < self.truncation() {
                p = p.mul(&base);
            }
        }
        Ok(out.unwrap_or_else(|| self.clone()))
    }
}

/// Coefficients of `f` rewritten as a series in `h`, where `h` is a strict
/// series (`h = Z + ...`): for each `n` in `range`, the coefficient
/// `c_n = res(f h' h^{-n-1})`, so that `f = sum c_n h^n` term by term. This
/// is the change-of-variable form of Lagrange inversion; with `f = Z` it
/// recovers the compositional inverse of `h` coefficient by coefficient.
/// Laurent `f` is allowed, in which case the range may include negative `n`.
pub fn lagrange_coeffs(
    f: &LaurentSeries,
    h: &TruncSeries,
    range: std::ops::Range<i64>,
) -> Result<Vec<Polynomial>> {
    if range.is_empty() {
        return Err(Error::EmptyWindow);
    }
    if h.truncation() < 2 || !h.coeff(0).is_zero() || !h.coeff(1).is_one() {
        return Err(Error::NotStrict("change of variable"));
    }
    let hl = LaurentSeries::from_series(h).normalized();
    let dh = hl.derivative();
    let base = f.mul(&dh);
    let mut out = Vec::with_capacity((range.end - range.start).max(0) as usize);
    for n in range {
        let c = base.mul(&hl.pow(-n - 1)?).residue()?;
        out.push(c);
    }
    Ok(out)
}

/// Evaluates `sum c_n h^n` over the same index range, the reconstruction side
/// of [`lagrange_coeffs`].
pub fn lagrange_reconstruct(
    coeffs: &[Polynomial],
    h: &TruncSeries,
    start: i64,
) -> Result<LaurentSeries> {
    if coeffs.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let hl = LaurentSeries::from_series(h).normalized();
    let mut acc: Option<LaurentSeries> = None;
    for (k, c) in coeffs.iter().enumerate() {
        let term = hl.pow(start + k as i64)?.scale_poly(c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.expect("nonempty coefficient list"))
}

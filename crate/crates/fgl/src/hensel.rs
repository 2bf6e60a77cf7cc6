//! Hensel's lemma for polynomial equations over truncated power series.
//!
//! An [`EPoly`] is a polynomial in one unknown `E` whose coefficients are
//! series in `T`. Given a seed `z0` with `f(z0) = 0 mod (T)` and `f'(z0)` a
//! unit, the simplified Newton iteration `z <- z - f(z) / f'(z0)` converges
//! `(T)`-adically: each step is exact series arithmetic and gains at least
//! one known-correct degree, so `N` steps suffice at truncation `N`.

use crate::error::{Error, Result};
use crate::series::TruncSeries;

/// Polynomial in `E` with `TruncSeries` coefficients; `coeffs[k]` multiplies
/// `E^k`.
#[derive(Clone, Debug)]
pub struct EPoly {
    coeffs: Vec<TruncSeries>,
}

impl EPoly {
    pub fn new(coeffs: Vec<TruncSeries>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        EPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.coeffs
    }

    /// Horner evaluation at a series value.
    pub fn eval(&self, z: &TruncSeries) -> TruncSeries {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    /// Formal derivative with respect to `E`.
    pub fn derivative(&self) -> EPoly {
        if self.coeffs.len() == 1 {
            let zero = TruncSeries::zero(self.coeffs[0].table(), self.coeffs[0].truncation());
            return EPoly::new(vec![zero]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&crate::rat::Rat::int(k as i64)))
            .collect();
        EPoly::new(coeffs)
    }
}

/// Solves `f(z) = 0` from the seed `z0` by the simplified Newton iteration
/// with the constant multiplier `1 / f'(z0)`.
///
/// Requirements checked up front: the residual `f(z0)` must vanish modulo
/// `(T)` (zero constant term) and `f'(z0)` must have an invertible rational
/// constant term. The iteration runs at most `N` times (the working
/// truncation) and the final residual must vanish identically.
pub fn hensel_solve(f: &EPoly, z0: &TruncSeries) -> Result<TruncSeries> {
    let r0 = f.eval(z0);
    if !r0.coeff(0).is_zero() {
        return Err(Error::ConstantTermNotZero("Hensel seed residual"));
    }
    let d0 = f.derivative().eval(z0);
    let lead = d0.coeff(0).as_constant().ok_or(Error::NonUnitDerivative)?;
    if lead.is_zero() {
        return Err(Error::NonUnitDerivative);
    }
    let d0_inv = d0.inverse().map_err(|_| Error::NonUnitDerivative)?;
    let n = z0.truncation();
    let mut z = z0.clone();
    for _ in 0..n {
        let r = f.eval(&z);
        if r.is_zero() {
            return Ok(z);
        }
        z = z.sub(&r.mul(&d0_inv));
    }
    if f.eval(&z).is_zero() {
        Ok(z)
    } else {
        Err(Error::NoConvergence)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use crate::ring::{GeneratorTable, Polynomial};
    use std::sync::Arc;

    fn qtable() -> Arc<GeneratorTable> {
        GeneratorTable::empty()
    }

    fn si(coeffs: &[i64]) -> TruncSeries {
        let t = qtable();
        TruncSeries::new(&t, coeffs.iter().map(|&p| Polynomial::int(&t, p)).collect())
    }

    #[test]
    fn linear_equation() {
        // E - T = 0 from seed 0.
        let t = si(&[0, 1, 0, 0, 0]);
        let f = EPoly::new(vec![t.neg(), si(&[1, 0, 0, 0, 0])]);
        let z = hensel_solve(&f, &si(&[0, 0, 0, 0, 0])).unwrap();
        assert_eq!(z, t);
    }

    #[test]
    fn square_root_equation() {
        // E^2 - (1 + T) = 0 from seed 1 matches the formal square root.
        let n = 8;
        let tb = qtable();
        let mut one_plus_t = TruncSeries::zero(&tb, n);
        *one_plus_t.coeff_mut(0) = Polynomial::one(&tb);
        *one_plus_t.coeff_mut(1) = Polynomial::one(&tb);
        let one = TruncSeries::constant(&tb, Polynomial::one(&tb), n);
        let zero = TruncSeries::zero(&tb, n);
        let f = EPoly::new(vec![one_plus_t.neg(), zero, one.clone()]);
        let z = hensel_solve(&f, &one).unwrap();
        assert_eq!(z, one_plus_t.sqrt().unwrap());
    }

    #[test]
    fn seed_must_vanish_mod_t() {
        // E - 1 = 0 from seed 0: residual has constant term -1.
        let n = 4;
        let tb = qtable();
        let one = TruncSeries::constant(&tb, Polynomial::one(&tb), n);
        let f = EPoly::new(vec![one.neg(), TruncSeries::constant(&tb, Polynomial::one(&tb), n)]);
        assert!(matches!(
            hensel_solve(&f, &TruncSeries::zero(&tb, n)),
            Err(Error::ConstantTermNotZero(_))
        ));
    }

    #[test]
    fn derivative_must_be_unit() {
        // E^2 - T^2 = 0 from seed T: f'(T) = 2T has no constant term.
        let t = si(&[0, 1, 0, 0]);
        let t2 = t.mul(&t);
        let zero = TruncSeries::zero(&qtable(), 4);
        let one = TruncSeries::constant(&qtable(), Polynomial::one(&qtable()), 4);
        let f = EPoly::new(vec![t2.neg(), zero, one]);
        assert!(matches!(hensel_solve(&f, &t), Err(Error::NonUnitDerivative)));
    }

    #[test]
    fn quadratic_with_series_coefficients() {
        // (1 + T)E^2 + E - T = 0 from seed 0; verify the root by plugging in.
        let n = 10;
        let tb = qtable();
        let t = TruncSeries::monomial(&tb, Polynomial::one(&tb), 1, n);
        let one = TruncSeries::constant(&tb, Polynomial::one(&tb), n);
        let f = EPoly::new(vec![t.neg(), one.clone(), one.add(&t)]);
        let z = hensel_solve(&f, &TruncSeries::zero(&tb, n)).unwrap();
        assert!(f.eval(&z).is_zero());
        assert_eq!(z.coeff(1), &Polynomial::one(&tb));
        assert_eq!(z.coeff(2).as_constant().unwrap(), Rat::int(-1));
    }
}

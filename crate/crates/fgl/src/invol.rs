//! Involutive power series and the coset space of strictly invertible
//! series modulo odd ones.
//!
//! An [`InvolutiveSeries`] is `e(T) = -T + ...` with `e(e(T)) = T`. Every
//! strictly invertible `g` yields one via `e_g = g^{-1}(-g(T))`
//! ([`invol_from_series`]), and `e_f = e_g` exactly when `f` and `g` differ
//! by an odd series ([`same_coset`]), so involutions canonicalize cosets.
//!
//! Three coordinate systems on the space of involutions are implemented and
//! proved mutually inverse by the test suites:
//!
//! * even series `u` over an odd law `F`, via `e = [-1]` of the conjugate
//!   of `F` by `T +_F u(T)` ([`invol_from_u`] / [`u_from_invol`]);
//! * expansion coefficients `c_{2i-1}` of `T + e(T)` in powers of
//!   `-T e(T)` ([`c_from_invol`]), inverted by Hensel's lemma on
//!   `H(E) = sum c_{2i-1} (-TE)^i - T - E` ([`invol_from_c`]) — note that
//!   `H` is symmetric in `T` and `E`, which is exactly why its root is an
//!   involution;
//! * coset representatives `g` ([`invol_from_series`] /
//!   [`coset_rep_from_invol`]).
//!
//! Rigidity: an involution with linear coefficient `+1` is forced to be the
//! identity, degree by degree ([`solve_strict_involution`]); conjugation
//! `c -> e o c o e` fixes exactly `e` itself ([`coset_conjugation`]).

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hensel::{hensel_solve, EPoly};
use crate::law::{expand_in_powers, FormalGroupLaw};
use crate::rat::Rat;
use crate::ring::{GeneratorTable, Polynomial};
use crate::series::TruncSeries;

/// A series `e(T) = -T + ...` with `e(e(T)) = T` to truncation.
#[derive(Clone, PartialEq, Debug)]
pub struct InvolutiveSeries {
    e: TruncSeries,
}

impl InvolutiveSeries {
    /// Validates the involution axioms: zero constant term, linear
    /// coefficient exactly -1, and `e(e(T)) = T`.
    pub fn new(e: TruncSeries) -> Result<Self> {
        if !e.coeff(0).is_zero() {
            return Err(Error::ConstantTermNotZero("an involution"));
        }
        let lin = e.coeff(1).as_constant();
        if lin != Some(Rat::int(-1)) {
            return Err(Error::NotInvolutive);
        }
        if !is_involution(&e) {
            return Err(Error::NotInvolutive);
        }
        Ok(InvolutiveSeries { e })
    }

    /// The negation involution `e(T) = -T`.
    pub fn negation(table: &Arc<GeneratorTable>, trunc: usize) -> Self {
        InvolutiveSeries {
            e: TruncSeries::x(table, trunc).neg(),
        }
    }

    pub fn series(&self) -> &TruncSeries {
        &self.e
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        self.e.table()
    }

    pub fn truncation(&self) -> usize {
        self.e.truncation()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(&self.e).expect("series serialize");
        v["kind"] = json!("involution");
        v
    }

    pub fn from_json(v: &Value, table: &Arc<GeneratorTable>) -> Result<Self> {
        match v.get("kind").and_then(Value::as_str) {
            Some("involution") => {}
            other => {
                return Err(Error::BadJson(format!(
                    "kind must be \"involution\", found {:?}",
                    other
                )))
            }
        }
        InvolutiveSeries::new(TruncSeries::from_json(v, table)?)
    }
}

/// Does `e(e(T)) = T` hold to truncation?
pub fn is_involution(e: &TruncSeries) -> bool {
    if !e.coeff(0).is_zero() {
        return false;
    }
    match e.compose(e) {
        Ok(c) => c == TruncSeries::x(e.table(), e.truncation()),
        Err(_) => false,
    }
}

/// The canonical involution of a coset: `e_g = g^{-1}(-g(T))` for strictly
/// invertible `g` (unit linear coefficient, zero constant term). Equals
/// `-T` exactly when `g` is odd.
pub fn invol_from_series(g: &TruncSeries) -> Result<InvolutiveSeries> {
    if !g.coeff(0).is_zero() {
        return Err(Error::ConstantTermNotZero("a coset representative"));
    }
    let e = g.compose_inverse()?.compose(&g.neg())?;
    InvolutiveSeries::new(e)
}

/// The involution attached to an even series `u` over an odd law `F`:
/// conjugating `F` by `phi_u(T) = T +_F u(T)` gives a law whose `[-1]`
/// series is involutive (and determines `u` again).
pub fn invol_from_u(f: &FormalGroupLaw, u: &TruncSeries) -> Result<InvolutiveSeries> {
    if !f.is_odd() {
        return Err(Error::NotOdd);
    }
    if !u.coeff(0).is_zero() || !u.is_even_series() {
        return Err(Error::NotEven);
    }
    let x = TruncSeries::x(f.table(), f.truncation());
    let phi = f.add_f(&x, u)?;
    let conj = f.conjugate(&phi)?;
    InvolutiveSeries::new(conj.minus_one().clone())
}

/// Inverse of [`invol_from_u`]: recover the even series from the
/// involution. With `w(T) = F(e(T), T)`, oddness of `F` turns the defining
/// property `phi_u(e(T)) = -phi_u(T)` into `F(u, u o e) + w = 0`; the
/// coefficient of an even degree `d` is `2 u_d` plus terms in lower
/// coefficients, so the equation solves triangularly with pivot 2, and the
/// odd-degree coefficients of the residual must vanish on their own (this
/// is checked, making the recursion self-validating).
pub fn u_from_invol(f: &FormalGroupLaw, e: &InvolutiveSeries) -> Result<TruncSeries> {
    if !f.is_odd() {
        return Err(Error::NotOdd);
    }
    let n = f.truncation().min(e.truncation());
    let x = TruncSeries::x(f.table(), n);
    let et = e.series().truncated(n);
    let w = f.add_f(&et, &x)?;
    let mut u = TruncSeries::zero(f.table(), n);
    for d in (2..n).step_by(2) {
        let r = f.add_f(&u, &u.compose(&et)?)?.add(&w);
        *u.coeff_mut(d) = r.coeff(d).scale(&Rat::frac(-1, 2));
    }
    let residual = f.add_f(&u, &u.compose(&et)?)?.add(&w);
    if !residual.is_zero() {
        return Err(Error::AxiomViolation(
            "the even-series recursion for this involution does not close".into(),
        ));
    }
    Ok(u)
}

/// Expansion coefficients of `T + e(T)` in powers of `-T e(T)`; for
/// `e = [-1]` of a law these are exactly the law's S/P expansion
/// coefficients. Returns `c_1, c_3, ..., c_{2 rmax - 1}`.
pub fn c_from_invol(e: &InvolutiveSeries, rmax: usize) -> Result<Vec<Polynomial>> {
    let et = e.series();
    let n = et.truncation();
    let s = TruncSeries::x(e.table(), n).add(et);
    let p = et.shift_up(1).neg().truncated(n);
    let all = expand_in_powers(&s, &p)?;
    if rmax > all.len() {
        return Err(Error::PrecisionTooSmall {
            needed: 2 * rmax + 1,
            have: n,
        });
    }
    Ok(all[..rmax].to_vec())
}

/// Inverse of [`c_from_invol`] by Hensel's lemma on
/// `H(E) = sum_i c_{2i-1} (-TE)^i - T - E` with seed `-T`: the coefficient
/// of `E^1` has constant term -1, so the Newton iteration applies, and the
/// `T <-> E` symmetry of `H` forces the root to be an involution (both
/// `e(e(T))` and `T` solve the same seeded equation). The coefficients `c`
/// are free: every choice yields an involution.
pub fn invol_from_c(
    c: &[Polynomial],
    table: &Arc<GeneratorTable>,
    trunc: usize,
) -> Result<InvolutiveSeries> {
    let x = TruncSeries::x(table, trunc);
    let mut coeffs = Vec::with_capacity(c.len().max(1) + 1);
    coeffs.push(x.neg());
    let mut e1 = TruncSeries::constant(table, Polynomial::int(table, -1), trunc);
    if let Some(c1) = c.first() {
        *e1.coeff_mut(1) = c1.scale(&Rat::int(-1));
    }
    coeffs.push(e1);
    for (idx, ci) in c.iter().enumerate().skip(1) {
        let i = idx + 1;
        let sign = if i % 2 == 0 { Rat::int(1) } else { Rat::int(-1) };
        coeffs.push(TruncSeries::monomial(table, ci.scale(&sign), i, trunc));
    }
    let root = hensel_solve(&EPoly::new(coeffs), &x.neg())?;
    InvolutiveSeries::new(root)
}

/// A coset representative mapping to the given involution: `g = T + u(T)`
/// with `u` recovered over the additive law on the involution's table.
/// Witnesses surjectivity of `g -> e_g`.
pub fn coset_rep_from_invol(e: &InvolutiveSeries) -> Result<TruncSeries> {
    let x = TruncSeries::x(e.table(), e.truncation());
    let additive = FormalGroupLaw::from_log(x.clone())?;
    let u = u_from_invol(&additive, e)?;
    Ok(x.add(&u))
}

/// Do `f` and `g` generate the same coset modulo odd series? Tested as
/// oddness of `f o g^{-1}`; equivalent to `e_f = e_g`.
pub fn same_coset(f: &TruncSeries, g: &TruncSeries) -> Result<bool> {
    Ok(f.compose(&g.compose_inverse()?)?.is_odd_series())
}

/// Conjugation `c -> e o c o e` on involutions (`e` is its own inverse).
/// An involution of the coset space with `e` as its unique fixed point:
/// a fixed `c` commutes with `e`, which forces `c = e`.
pub fn coset_conjugation(
    e: &InvolutiveSeries,
    c: &InvolutiveSeries,
) -> Result<InvolutiveSeries> {
    let s = e.series().compose(&c.series().compose(e.series())?)?;
    InvolutiveSeries::new(s)
}

/// Degree-by-degree solution of `e(e(T)) = T` with linear coefficient +1:
/// at each degree `n` the constraint reads `2 e_n + (terms in lower
/// coefficients) = 0`, and the recursion only ever produces `e = T`. This
/// is the rigidity statement for strict involutions, run as an explicit
/// constraint solver.
pub fn solve_strict_involution(table: &Arc<GeneratorTable>, trunc: usize) -> Result<TruncSeries> {
    let mut e = TruncSeries::x(table, trunc);
    for n in 2..trunc {
        let r = e.compose(&e)?;
        *e.coeff_mut(n) = r.coeff(n).scale(&Rat::frac(-1, 2));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(trunc: usize) -> TruncSeries {
        TruncSeries::x(&GeneratorTable::empty(), trunc)
    }

    #[test]
    fn coset_involution_of_x_plus_x_squared() {
        let mut g = x(5);
        *g.coeff_mut(2) = Polynomial::one(g.table());
        let e = invol_from_series(&g).unwrap();
        let table = g.table().clone();
        let want = TruncSeries::new(
            &table,
            [0, -1, -2, -4, -12]
                .iter()
                .map(|&n| Polynomial::int(&table, n))
                .collect(),
        );
        assert_eq!(e.series(), &want);
    }

    #[test]
    fn odd_representatives_give_negation() {
        let mut g = x(6);
        *g.coeff_mut(3) = Polynomial::int(g.table(), 7);
        *g.coeff_mut(5) = Polynomial::int(g.table(), -2);
        let e = invol_from_series(&g).unwrap();
        assert_eq!(e, InvolutiveSeries::negation(g.table(), 6));
        // Non-strict linear coefficients are fine as long as they are units.
        let e2 = invol_from_series(&g.scale(&Rat::frac(3, 2))).unwrap();
        assert_eq!(e2, InvolutiveSeries::negation(g.table(), 6));
    }

    #[test]
    fn validation_rejects_non_involutions() {
        let mut s = x(5).neg();
        *s.coeff_mut(2) = Polynomial::int(s.table(), 1);
        // -T + T^2 is not an involution: (e o e)(T) = T + 2T^3 + ...
        assert!(matches!(
            InvolutiveSeries::new(s),
            Err(Error::NotInvolutive)
        ));
        assert!(matches!(
            InvolutiveSeries::new(x(5)),
            Err(Error::NotInvolutive)
        ));
    }

    #[test]
    fn u_and_invol_are_mutually_inverse_over_the_additive_law() {
        let table = GeneratorTable::single("a", 1);
        let trunc = 9;
        let add = FormalGroupLaw::from_log(TruncSeries::x(&table, trunc)).unwrap();
        let a = Polynomial::generator(&table, 0);
        let mut u = TruncSeries::zero(&table, trunc);
        *u.coeff_mut(2) = a.clone();
        *u.coeff_mut(4) = (&a * &a).scale(&Rat::frac(-1, 2));
        *u.coeff_mut(6) = a.pow(3);

        let e = invol_from_u(&add, &u).unwrap();
        // Over the additive law this is the coset construction for T + u.
        let viag = invol_from_series(&TruncSeries::x(&table, trunc).add(&u)).unwrap();
        assert_eq!(e, viag);
        // w_2 = -2 u_2.
        assert_eq!(*e.series().coeff(2), a.scale(&Rat::int(-2)));

        let back = u_from_invol(&add, &e).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn u_roundtrip_over_a_conjugated_multiplicative_law() {
        let mult = FormalGroupLaw::multiplicative(9);
        let odd = crate::idempotents::epsilon2(&mult).unwrap().law;
        let uu = Polynomial::generator(odd.table(), 0);
        let mut u = TruncSeries::zero(odd.table(), 9);
        *u.coeff_mut(2) = uu.clone();
        *u.coeff_mut(4) = (&uu * &uu).scale(&Rat::frac(7, 4));
        let e = invol_from_u(&odd, &u).unwrap();
        assert_eq!(u_from_invol(&odd, &e).unwrap(), u);
        // And the involution regenerates from its u both ways.
        assert_eq!(invol_from_u(&odd, &u_from_invol(&odd, &e).unwrap()).unwrap(), e);
    }

    #[test]
    fn invol_from_u_rejects_bad_inputs() {
        let mult = FormalGroupLaw::multiplicative(6);
        let u = TruncSeries::zero(mult.table(), 6);
        assert!(matches!(invol_from_u(&mult, &u), Err(Error::NotOdd)));
        let add = FormalGroupLaw::additive(6);
        let mut odd_u = TruncSeries::zero(add.table(), 6);
        *odd_u.coeff_mut(3) = Polynomial::one(add.table());
        assert!(matches!(invol_from_u(&add, &odd_u), Err(Error::NotEven)));
    }

    #[test]
    fn c_coordinates_of_minus_one_series_match_the_law() {
        let mult = FormalGroupLaw::multiplicative(10);
        let e = InvolutiveSeries::new(mult.minus_one().clone()).unwrap();
        let c = c_from_invol(&e, 3).unwrap();
        let u = Polynomial::generator(mult.table(), 0);
        assert_eq!(c[0], u);
        assert!(c[1].is_zero());
        assert!(c[2].is_zero());
        // Same coefficients as the law's own S/P expansion.
        let law_c = mult.c_coefficients().unwrap();
        assert_eq!(&c[..], &law_c[..3]);
        // Negation has all-zero coordinates.
        let neg = InvolutiveSeries::negation(mult.table(), 10);
        assert!(c_from_invol(&neg, 4).unwrap().iter().all(|p| p.is_zero()));
    }

    #[test]
    fn hensel_route_recovers_the_multiplicative_minus_one() {
        let mult = FormalGroupLaw::multiplicative(10);
        let u = Polynomial::generator(mult.table(), 0);
        let e = invol_from_c(&[u], mult.table(), 10).unwrap();
        assert_eq!(e.series(), mult.minus_one());
        // Empty coefficients give negation.
        let neg = invol_from_c(&[], mult.table(), 8).unwrap();
        assert_eq!(neg, InvolutiveSeries::negation(mult.table(), 8));
    }

    #[test]
    fn c_and_hensel_routes_are_mutually_inverse() {
        let table = GeneratorTable::empty();
        let mut g = TruncSeries::x(&table, 11);
        *g.coeff_mut(2) = Polynomial::int(&table, 1);
        *g.coeff_mut(3) = Polynomial::constant(&table, Rat::frac(-1, 2));
        let e = invol_from_series(&g).unwrap();
        let c = c_from_invol(&e, 5).unwrap();
        let back = invol_from_c(&c, &table, 11).unwrap();
        assert_eq!(back, e);
        // Arbitrary coordinates produce an involution that round-trips.
        let free = [
            Polynomial::int(&table, 3),
            Polynomial::constant(&table, Rat::frac(1, 4)),
            Polynomial::int(&table, -2),
        ];
        let ee = invol_from_c(&free, &table, 11).unwrap();
        assert_eq!(&c_from_invol(&ee, 3).unwrap()[..], &free[..]);
    }

    #[test]
    fn surjectivity_witness_reconstructs_the_involution() {
        let table = GeneratorTable::empty();
        let mut g = TruncSeries::x(&table, 9);
        *g.coeff_mut(2) = Polynomial::int(&table, 2);
        *g.coeff_mut(4) = Polynomial::int(&table, -1);
        let e = invol_from_series(&g).unwrap();
        let rep = coset_rep_from_invol(&e).unwrap();
        assert_eq!(invol_from_series(&rep).unwrap(), e);
        // The representative is of the promised shape T + even.
        assert!(rep.sub(&TruncSeries::x(&table, 9)).is_even_series());
    }

    #[test]
    fn same_coset_detects_odd_differences() {
        let table = GeneratorTable::empty();
        let xx = TruncSeries::x(&table, 8);
        let mut g = xx.clone();
        *g.coeff_mut(2) = Polynomial::int(&table, 1);
        assert!(same_coset(&g, &g).unwrap());
        assert!(!same_coset(&g, &xx).unwrap());
        let mut h = xx.clone();
        *h.coeff_mut(3) = Polynomial::int(&table, 5);
        let f = h.compose(&g).unwrap();
        assert!(same_coset(&f, &g).unwrap());
        assert_eq!(
            invol_from_series(&f).unwrap(),
            invol_from_series(&g).unwrap()
        );
    }

    #[test]
    fn conjugation_fixes_exactly_itself() {
        let table = GeneratorTable::empty();
        let mut g = TruncSeries::x(&table, 8);
        *g.coeff_mut(2) = Polynomial::int(&table, 1);
        let e = invol_from_series(&g).unwrap();
        assert_eq!(coset_conjugation(&e, &e).unwrap(), e);
        let mut h = TruncSeries::x(&table, 8);
        *h.coeff_mut(2) = Polynomial::int(&table, 3);
        let c = invol_from_series(&h).unwrap();
        let moved = coset_conjugation(&e, &c).unwrap();
        assert_ne!(moved, c);
        assert_eq!(coset_conjugation(&e, &moved).unwrap(), c);
    }

    #[test]
    fn strict_involutions_are_the_identity() {
        let table = GeneratorTable::empty();
        let solved = solve_strict_involution(&table, 12).unwrap();
        assert_eq!(solved, TruncSeries::x(&table, 12));
    }

    #[test]
    fn json_round_trip_keeps_the_kind_marker() {
        let table = GeneratorTable::empty();
        let mut g = TruncSeries::x(&table, 6);
        *g.coeff_mut(2) = Polynomial::int(&table, -1);
        let e = invol_from_series(&g).unwrap();
        let v = e.to_json();
        assert_eq!(v["kind"], "involution");
        assert_eq!(InvolutiveSeries::from_json(&v, &table).unwrap(), e);
        let mut plain = v.clone();
        plain.as_object_mut().unwrap().remove("kind");
        assert!(InvolutiveSeries::from_json(&plain, &table).is_err());
    }
}

//! Two idempotent operations carrying a formal group law to an odd one, the
//! ring-level generator maps they induce, and the Frobenius/Verschiebung
//! composite elements `T_{l,k}`.
//!
//! * [`epsilon2`] keeps the odd part of the logarithm. Its output is odd and
//!   the operation is manifestly idempotent. The accompanying series
//!   `phi = [1/2](F(X, [-1](-X)))` is computed independently and checked to
//!   be a strict isomorphism from the new law to the old; a disagreement
//!   between the two routes signals a kernel bug and is reported as an error
//!   rather than patched over.
//! * [`e2`] conjugates by `theta(X) = X sqrt(-[-1](X)/X)`. The square root
//!   makes `theta` intertwine `[-1]` with negation, so the conjugated law is
//!   odd over any coefficient ring containing 1/2.
//!
//! Both operations fix odd laws, and on the universal coefficient ring they
//! induce weight-preserving ring endomorphisms (`m_n` by parity for
//! [`epsilon2_generator_images`], logarithm coefficients of the conjugated
//! universal law for [`e2_generator_images`]). Composing the two generator
//! maps in either order collapses to one of them; [`verify_prop33`] checks
//! this together with the oddness statements.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::law::FormalGroupLaw;
use crate::rat::Rat;
use crate::report::Report;
use crate::ring::{GeneratorTable, Polynomial, RingHom};
use crate::series::TruncSeries;

/// Result of the odd-logarithm idempotent: the odd law, the strict
/// isomorphism `phi` to the input law, and (over the universal ring) the
/// induced generator map.
#[derive(Clone, Debug)]
pub struct Epsilon2 {
    /// The odd law with logarithm `odd part of log F`.
    pub law: FormalGroupLaw,
    /// `phi = [1/2]_F(F(X, [-1]_F(-X)))`, a strict isomorphism `law -> F`.
    pub phi: TruncSeries,
    /// Generator images `m_n -> 0` (n odd), `m_n -> m_n` (n even); present
    /// exactly when the input law lives over the universal table.
    pub hom: Option<RingHom>,
}

/// Result of the square-root conjugation idempotent.
#[derive(Clone, Debug)]
pub struct E2 {
    /// `theta(X) = X sqrt(-[-1]_F(X)/X)`, a strict isomorphism `F -> law`.
    pub theta: TruncSeries,
    /// The conjugated (odd) law.
    pub law: FormalGroupLaw,
}

/// Project a law onto its odd part: the output logarithm is the odd part of
/// the input logarithm. The series `phi` is built by the independent
/// half-series route and verified to carry the output law to the input.
pub fn epsilon2(f: &FormalGroupLaw) -> Result<Epsilon2> {
    let odd_log = f.log().odd_part();
    let law = FormalGroupLaw::from_log(odd_log.clone())?;

    let x = TruncSeries::x(f.table(), f.truncation());
    let w = f.add_f(&x, &f.minus_one().alternate())?;
    let phi = f.half_series()?.compose(&w)?;
    // phi is a strict isomorphism law -> f exactly when log_f(phi) is the
    // odd part of log_f.
    if f.log().compose(&phi)? != odd_log {
        return Err(Error::RouteMismatch(
            "odd-logarithm and half-series routes to the odd projection",
        ));
    }

    let hom = if f.table().is_universal() {
        Some(epsilon2_generator_images(f.table())?)
    } else {
        None
    };
    Ok(Epsilon2 { law, phi, hom })
}

/// Conjugate a law by `theta(X) = X sqrt(-[-1](X)/X)`. Since
/// `theta([-1](X)) = -theta(X)` (both sides square to `-X [-1](X)` and share
/// their leading term), the conjugated law has `[-1] = -X`: it is odd.
pub fn e2(f: &FormalGroupLaw) -> Result<E2> {
    let ratio = f.minus_one().neg().shift_down(1)?;
    let theta = ratio.sqrt()?.shift_up(1);
    let law = f.conjugate(&theta.revert()?)?;
    debug_assert!(law.is_odd());
    Ok(E2 { theta, law })
}

/// The parity map on generators: weight-odd generators to zero, weight-even
/// generators to themselves. Over the universal table this is the ring-level
/// shadow of [`epsilon2`] (the logarithm coefficient of `X^{n+1}` is `m_n`,
/// and the odd part keeps exactly the odd-degree terms `X^{n+1}`, n even).
pub fn epsilon2_generator_images(table: &Arc<GeneratorTable>) -> Result<RingHom> {
    let images = (0..table.len())
        .map(|i| {
            if table.weight(i) % 2 == 1 {
                Polynomial::zero(table)
            } else {
                Polynomial::generator(table, i)
            }
        })
        .collect();
    RingHom::new(table, table, images)
}

/// The ring-level shadow of [`e2`] on the universal table with `trunc - 2`
/// generators: `m_n` maps to the coefficient of `X^{n+1}` in the logarithm
/// of the conjugated universal law.
pub fn e2_generator_images(trunc: usize) -> Result<RingHom> {
    let law = FormalGroupLaw::universal(trunc);
    let table = Arc::clone(law.table());
    let odd = e2(&law)?.law;
    let images = (0..table.len())
        .map(|i| odd.log().coeff(i + 2).clone())
        .collect();
    RingHom::new(&table, &table, images)
}

/// One Frobenius/Verschiebung composite element of the universal ring.
#[derive(Clone, Debug)]
pub struct KozmaElement {
    pub ell: u32,
    pub k: u32,
    /// Weight `k*ell - 1` polynomial in the `m_n`.
    pub value: Polynomial,
}

/// `T_{l,k}` over a universal table with at least `k*l - 1` generators,
/// by the recursion `T_{l,k} = l m_{kl-1} - sum over divisors 1 < s | k of
/// m_{s-1} T_{l,k/s}^s`.
pub fn kozma_value(table: &Arc<GeneratorTable>, ell: u32, k: u32) -> Polynomial {
    assert!(ell >= 2 && k >= 1, "need a modulus >= 2 and a positive index");
    let lam = |s: u32| {
        if s == 1 {
            Polynomial::one(table)
        } else {
            Polynomial::generator(table, (s - 2) as usize)
        }
    };
    let mut t = lam(ell * k).scale(&Rat::int(ell as i64));
    for s in 2..=k {
        if k % s == 0 {
            let rec = kozma_value(table, ell, k / s);
            t.sub_assign_ref(&(&lam(s) * &rec.pow(s)));
        }
    }
    t
}

/// `T_{l,k}` over the universal ring with generators `m_1 ... m_{P-1}` for
/// precision `P`, failing when the required `m_{kl-1}` is out of range.
pub fn kozma_t(ell: u32, k: u32, precision: usize) -> Result<KozmaElement> {
    let needed = (ell as usize) * (k as usize) - 1;
    let available = precision.saturating_sub(1);
    if needed > available {
        return Err(Error::InsufficientGenerators { needed, available });
    }
    let table = GeneratorTable::universal(available);
    let value = kozma_value(&table, ell, k);
    Ok(KozmaElement { ell, k, value })
}

/// The closure identity satisfied by the whole `T_{l,*}` family: under the
/// universal law, `log(Sum^F_k T_{l,k} X^{kl}) = l * sum_n m_{nl-1} X^{nl}`.
/// Equivalently, the formal sum of the `T` terms extracts exactly the
/// logarithm coefficients in degrees divisible by `l`, scaled by `l`.
pub fn kozma_closure_holds(ell: u32, trunc: usize) -> Result<bool> {
    let law = FormalGroupLaw::universal(trunc);
    let table = Arc::clone(law.table());
    let mut terms = Vec::new();
    let mut k = 1u32;
    while ((k * ell) as usize) < trunc {
        let deg = (k * ell) as usize;
        terms.push(TruncSeries::monomial(
            &table,
            kozma_value(&table, ell, k),
            deg,
            trunc,
        ));
        k += 1;
    }
    let lhs = law.log().compose(&law.formal_sum(&terms)?)?;
    let mut rhs = TruncSeries::zero(&table, trunc);
    let mut n = 1u32;
    while ((n * ell) as usize) < trunc {
        let deg = (n * ell) as usize;
        *rhs.coeff_mut(deg) = law.log().coeff(deg).scale(&Rat::int(ell as i64));
        n += 1;
    }
    Ok(lhs == rhs)
}

fn hom_images_equal(a: &RingHom, b: &RingHom) -> bool {
    (0..a.source().len()).all(|i| a.image(i) == b.image(i))
}

/// The four-part statement relating the two idempotents:
/// (a) the conjugation idempotent produces odd laws;
/// (b) the strict isomorphism connecting the two odd images of `f` is odd;
/// (c) on the universal ring, composing the generator maps in either order
///     collapses: applying the parity map then the conjugation map equals
///     the conjugation map, and the reverse order equals the parity map;
/// (d) the two maps restrict to mutually inverse bijections between their
///     images, checked on every generator.
pub fn verify_prop33(f: &FormalGroupLaw) -> Result<Report> {
    let mut r = Report::new("prop33");

    let e = e2(f)?;
    r.push(
        "prop33-a-e2-odd",
        e.law.is_odd(),
        "conjugated law has [-1] = -X",
    );

    let eps = epsilon2(f)?;
    // The unique strict isomorphism between the two odd images.
    let psi = e.law.exp().compose(eps.law.log())?;
    let conjugates = e.law.conjugate(&psi)?.log() == eps.law.log();
    r.push(
        "prop33-b-morphism-odd",
        psi.is_odd_series() && conjugates,
        "the strict isomorphism between the two odd images is an odd series",
    );

    let trunc = f.truncation();
    let table = GeneratorTable::universal(trunc.saturating_sub(2));
    let parity = epsilon2_generator_images(&table)?;
    let conj = e2_generator_images(trunc)?;
    let parity_then_conj = parity.then(&conj)?;
    let conj_then_parity = conj.then(&parity)?;
    let first = hom_images_equal(&parity_then_conj, &conj);
    let second = hom_images_equal(&conj_then_parity, &parity);
    r.push(
        "prop33-c-composites",
        first && second,
        format!(
            "applying the parity map then the conjugation map equals the conjugation map: {}; \
             applying the conjugation map then the parity map equals the parity map: {} \
             (universal generators m1..m{})",
            first,
            second,
            table.len()
        ),
    );

    let mut inverse_ok = true;
    for i in 0..table.len() {
        let y = parity.image(i);
        if &parity.apply(&conj.apply(y)?)? != y {
            inverse_ok = false;
        }
        let z = conj.image(i);
        if &conj.apply(&parity.apply(z)?)? != z {
            inverse_ok = false;
        }
    }
    r.push(
        "prop33-d-inverse-on-images",
        inverse_ok,
        "the generator maps are mutually inverse on each other's images",
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon2_of_multiplicative_has_the_arctanh_logarithm() {
        let f = FormalGroupLaw::multiplicative(7);
        let e = epsilon2(&f).unwrap();
        let table = f.table();
        let u = Polynomial::generator(table, 0);
        let log = e.law.log();
        assert!(log.coeff(2).is_zero());
        assert_eq!(*log.coeff(3), (&u * &u).scale(&Rat::frac(1, 3)));
        assert!(log.coeff(4).is_zero());
        assert_eq!(*log.coeff(5), (&u * &u).pow(2).scale(&Rat::frac(1, 5)));
        // F'(X, Y) = (X + Y)/(1 + u^2 X Y): degree-4 coefficients are -u^2.
        let uu = (&u * &u).scale(&Rat::int(-1));
        assert_eq!(e.law.f().coeff(2, 1), uu);
        assert_eq!(e.law.f().coeff(1, 2), uu);
        assert!(e.law.is_odd());
    }

    #[test]
    fn epsilon2_fixes_the_additive_law_and_is_idempotent() {
        let f = FormalGroupLaw::additive(8);
        let e = epsilon2(&f).unwrap();
        assert_eq!(e.law.log(), f.log());
        assert_eq!(e.phi, TruncSeries::x(f.table(), 8));

        let m = FormalGroupLaw::multiplicative(8);
        let once = epsilon2(&m).unwrap();
        let twice = epsilon2(&once.law).unwrap();
        assert_eq!(twice.law.log(), once.law.log());
    }

    #[test]
    fn epsilon2_universal_generator_images_follow_parity() {
        let f = FormalGroupLaw::universal(6);
        let e = epsilon2(&f).unwrap();
        let hom = e.hom.expect("universal input carries a generator map");
        let table = f.table();
        assert!(hom.image(0).is_zero());
        assert_eq!(hom.image(1), &Polynomial::generator(table, 1));
        assert!(hom.image(2).is_zero());
        assert_eq!(hom.image(3), &Polynomial::generator(table, 3));
        // Non-universal input carries none.
        assert!(epsilon2(&FormalGroupLaw::multiplicative(6))
            .unwrap()
            .hom
            .is_none());
    }

    #[test]
    fn theta_of_multiplicative_is_the_binomial_square_root() {
        let f = FormalGroupLaw::multiplicative(6);
        let e = e2(&f).unwrap();
        let u = Polynomial::generator(f.table(), 0);
        assert_eq!(*e.theta.coeff(1), Polynomial::one(f.table()));
        assert_eq!(*e.theta.coeff(2), u.scale(&Rat::frac(-1, 2)));
        assert_eq!(*e.theta.coeff(3), (&u * &u).scale(&Rat::frac(3, 8)));
        assert!(e.law.is_odd());
    }

    #[test]
    fn theta_is_the_identity_on_odd_laws() {
        let f = FormalGroupLaw::additive(9);
        let e = e2(&f).unwrap();
        assert_eq!(e.theta, TruncSeries::x(f.table(), 9));
        assert_eq!(e.law.log(), f.log());
    }

    #[test]
    fn theta_intertwines_the_two_laws() {
        // theta(F(X, Y)) = F'(theta X, theta Y) as biseries.
        let f = FormalGroupLaw::multiplicative(7);
        let e = e2(&f).unwrap();
        let lhs = f.f().compose_uni(&e.theta).unwrap();
        let rhs = e.law.f().substitute_separate(&e.theta, &e.theta).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kozma_low_cases_match_hand_computation() {
        let t21 = kozma_t(2, 1, 8).unwrap();
        let table = t21.value.table().clone();
        let m = |i: usize| Polynomial::generator(&table, i);
        assert_eq!(t21.value, m(0).scale(&Rat::int(2)));
        let t22 = kozma_t(2, 2, 8).unwrap();
        let expected = &m(2).scale(&Rat::int(2)) - &m(0).pow(3).scale(&Rat::int(4));
        assert_eq!(t22.value, expected);
        let t31 = kozma_t(3, 1, 8).unwrap();
        assert_eq!(t31.value, m(1).scale(&Rat::int(3)));
        assert!(matches!(
            kozma_t(5, 2, 8),
            Err(Error::InsufficientGenerators { needed: 9, .. })
        ));
    }

    #[test]
    fn kozma_parity_images_vanish_exactly_when_kl_is_even() {
        let table = GeneratorTable::universal(11);
        let parity = epsilon2_generator_images(&table).unwrap();
        for (ell, k) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1)] {
            let t = kozma_value(&table, ell, k);
            let image = parity.apply(&t).unwrap();
            if (ell * k) % 2 == 0 {
                assert!(image.is_zero(), "T_{{{ell},{k}}} should die");
            } else {
                assert_eq!(image, t, "T_{{{ell},{k}}} should survive unchanged");
            }
        }
    }

    #[test]
    fn kozma_closure_identity_holds() {
        assert!(kozma_closure_holds(2, 9).unwrap());
        assert!(kozma_closure_holds(3, 10).unwrap());
    }

    #[test]
    fn prop33_passes_on_the_multiplicative_law() {
        let f = FormalGroupLaw::multiplicative(8);
        let r = verify_prop33(&f).unwrap();
        assert!(r.pass(), "{}", r.render_text());
    }

    #[test]
    fn composite_generator_maps_collapse() {
        let trunc = 8;
        let table = GeneratorTable::universal(trunc - 2);
        let parity = epsilon2_generator_images(&table).unwrap();
        let conj = e2_generator_images(trunc).unwrap();
        let a = parity.then(&conj).unwrap();
        let b = conj.then(&parity).unwrap();
        assert!(hom_images_equal(&a, &conj));
        assert!(hom_images_equal(&b, &parity));
    }
}

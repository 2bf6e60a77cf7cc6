//! Sequence groups: Cauchy convolution, the sign-twist decomposition,
//! sequence reversion, the transported group law on leading-coefficient
//! sequences, and the formal-group-twisted variants.
//!
//! A [`WittSeq`] is a finite sequence `c_0 = 1, c_1, ..., c_{N-1}` of
//! polynomials. Every operation here is triangular (entry `n` of a result
//! depends only on entries `<= n` of the inputs), so fixed-length truncation
//! is faithful to the infinite-sequence picture.
//!
//! The same sequence can be read two ways, and conflating them is the
//! classic bug, so the reading is an explicit [`SeqRole`] tag:
//!
//! * `SeriesOne`: coefficients of `b(T) = sum c_n T^n` (unit constant term);
//! * `Leading`: coefficients of `c(X)X = sum c_n X^{n+1}` (unit leading
//!   coefficient, the shape that can be reverted).
//!
//! Convolution [`WittSeq::star`] is the group law in either role. On the
//! `Leading` role, [`WittSeq::revert_seq`] transports it to the
//! [`WittSeq::diamond`] law, and a formal group law transports `diamond`
//! further to [`diamond_f`] on F-expanded sequences ([`WittSeqF`]).

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::law::FormalGroupLaw;
use crate::rat::Rat;
use crate::ring::{GeneratorTable, Polynomial};
use crate::series::TruncSeries;

/// How a sequence's entries are read as a series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeqRole {
    /// `b(T) = sum c_n T^n`, constant term 1.
    SeriesOne,
    /// `c(X)X = sum c_n X^{n+1}`, leading coefficient 1.
    Leading,
}

impl SeqRole {
    pub fn tag(self) -> &'static str {
        match self {
            SeqRole::SeriesOne => "series1",
            SeqRole::Leading => "leading",
        }
    }
}

/// A finite sequence with unit first entry and a role tag.
#[derive(Clone, PartialEq, Debug)]
pub struct WittSeq {
    role: SeqRole,
    entries: Vec<Polynomial>,
}

impl WittSeq {
    pub fn new(role: SeqRole, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.is_empty() || !entries[0].is_one() {
            return Err(Error::LeadingEntryNotOne);
        }
        Ok(WittSeq { role, entries })
    }

    /// The group unit `(1, 0, 0, ...)`.
    pub fn unit(table: &Arc<GeneratorTable>, role: SeqRole, len: usize) -> Self {
        assert!(len >= 1, "sequences have at least the unit entry");
        let mut entries = vec![Polynomial::zero(table); len];
        entries[0] = Polynomial::one(table);
        WittSeq { role, entries }
    }

    pub fn role(&self) -> SeqRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn entry(&self, n: usize) -> &Polynomial {
        &self.entries[n]
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        self.entries[0].table()
    }

    /// Reinterpret the same entries in the other reading. This is the
    /// identification between the convolution group and its
    /// leading-coefficient twin.
    pub fn with_role(&self, role: SeqRole) -> WittSeq {
        WittSeq {
            role,
            entries: self.entries.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.entries[1..].iter().all(|p| p.is_zero())
    }

    fn require_role(&self, expected: SeqRole) -> Result<()> {
        if self.role != expected {
            return Err(Error::RoleMismatch {
                expected: expected.tag(),
                found: self.role.tag(),
            });
        }
        Ok(())
    }

    fn compatible(&self, other: &WittSeq) -> Result<()> {
        if self.role != other.role {
            return Err(Error::RoleMismatch {
                expected: self.role.tag(),
                found: other.role.tag(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    /// The generating series `sum c_n T^n` (truncation = length).
    pub fn to_series(&self) -> TruncSeries {
        TruncSeries::new(self.table(), self.entries.clone())
    }

    fn from_series(role: SeqRole, s: &TruncSeries, len: usize) -> WittSeq {
        WittSeq {
            role,
            entries: (0..len).map(|n| s.coeff(n).clone()).collect(),
        }
    }

    /// Cauchy convolution `(c * d)_n = sum_k c_k d_{n-k}`: the group law,
    /// with the same formula in both roles.
    pub fn star(&self, other: &WittSeq) -> Result<WittSeq> {
        self.compatible(other)?;
        let mut entries = vec![Polynomial::zero(self.table()); self.len()];
        for (n, e) in entries.iter_mut().enumerate() {
            for k in 0..=n {
                e.add_mul_assign(&self.entries[k], &other.entries[n - k]);
            }
        }
        Ok(WittSeq {
            role: self.role,
            entries,
        })
    }

    /// Convolution inverse (the antipode): triangular solve of
    /// `sum_k c_k d_{n-k} = 0` for `n >= 1`.
    pub fn star_inv(&self) -> WittSeq {
        let mut inv = vec![Polynomial::zero(self.table()); self.len()];
        inv[0] = Polynomial::one(self.table());
        for n in 1..self.len() {
            let mut acc = Polynomial::zero(self.table());
            for k in 1..=n {
                acc.add_mul_assign(&self.entries[k], &inv[n - k]);
            }
            inv[n] = acc.scale(&Rat::int(-1));
        }
        WittSeq {
            role: self.role,
            entries: inv,
        }
    }

    /// The sign twist `b(T) -> b(-T)`: negate odd-index entries.
    pub fn tau(&self) -> WittSeq {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(n, p)| if n % 2 == 1 { p.scale(&Rat::int(-1)) } else { p.clone() })
            .collect();
        WittSeq {
            role: self.role,
            entries,
        }
    }

    pub fn is_tau_fixed(&self) -> bool {
        self.entries
            .iter()
            .skip(1)
            .step_by(2)
            .all(|p| p.is_zero())
    }

    /// The halving endomorphism `b -> b^{1/2}`: `star(half(c), half(c)) = c`.
    pub fn half(&self) -> Result<WittSeq> {
        let s = self.to_series().sqrt()?;
        Ok(WittSeq::from_series(self.role, &s, self.len()))
    }

    /// The idempotent pair `c+ = (b b^tau)^{1/2}`, `c- = (b / b^tau)^{1/2}`.
    /// `star(c+, c-) = c`, `c+` is tau-fixed with vanishing odd entries, and
    /// `c` is tau-fixed exactly when `c-` is the unit. The even entries of
    /// `c-` need not vanish.
    pub fn split(&self) -> Result<(WittSeq, WittSeq)> {
        let b = self.to_series();
        let bt = self.tau().to_series();
        let plus = b.mul(&bt).sqrt()?;
        let minus = b.mul(&bt.inverse()?).sqrt()?;
        Ok((
            WittSeq::from_series(self.role, &plus, self.len()),
            WittSeq::from_series(self.role, &minus, self.len()),
        ))
    }

    /// Reversion of the leading-coefficient series: entry `n` of the result
    /// is `(1/(n+1)) [T^n] c(T)^{-n-1}` (the sequence-level Lagrange
    /// formula). An involution: reverting twice returns the input. Agrees
    /// with compositional reversion of `c(X)X`.
    pub fn revert_seq(&self) -> Result<WittSeq> {
        self.require_role(SeqRole::Leading)?;
        let inv = self.to_series().inverse()?;
        let mut entries = Vec::with_capacity(self.len());
        let mut p = inv.clone();
        for n in 0..self.len() {
            entries.push(p.coeff(n).scale(&Rat::frac(1, (n + 1) as i64)));
            if n + 1 < self.len() {
                p = p.mul(&inv);
            }
        }
        Ok(WittSeq {
            role: SeqRole::Leading,
            entries,
        })
    }

    /// The group law transported through reversion:
    /// `c diamond d = revert(revert(c) * revert(d))`, so that `revert_seq`
    /// is a group isomorphism onto the convolution group.
    pub fn diamond(&self, other: &WittSeq) -> Result<WittSeq> {
        self.compatible(other)?;
        self.revert_seq()?
            .star(&other.revert_seq()?)?
            .revert_seq()
    }

    /// Inverse for the transported law: the convolution antipode conjugated
    /// by reversion.
    pub fn diamond_inv(&self) -> Result<WittSeq> {
        self.revert_seq()?.star_inv().revert_seq()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "role": self.role.tag(),
            "entries": self.entries,
        })
    }

    pub fn from_json(v: &Value, table: &Arc<GeneratorTable>) -> Result<Self> {
        let role = match v.get("role").and_then(Value::as_str) {
            Some("series1") => SeqRole::SeriesOne,
            Some("leading") => SeqRole::Leading,
            other => {
                return Err(Error::BadJson(format!(
                    "role must be \"series1\" or \"leading\", found {:?}",
                    other
                )))
            }
        };
        let arr = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadJson("missing entries array".into()))?;
        let entries = arr
            .iter()
            .map(|e| Polynomial::from_json(e, table))
            .collect::<Result<Vec<_>>>()?;
        WittSeq::new(role, entries)
    }
}

/// A sequence expanded along a formal group law: the entries are the unique
/// `a_n` with `sum a_n X^{n+1}` under the law's formal sum reproducing the
/// plain series of the untwisted sequence.
#[derive(Clone, Debug)]
pub struct WittSeqF {
    entries: Vec<Polynomial>,
    law: FormalGroupLaw,
}

impl WittSeqF {
    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn entry(&self, n: usize) -> &Polynomial {
        &self.entries[n]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn unit(law: &FormalGroupLaw, len: usize) -> Result<WittSeqF> {
        check_capacity(law, len)?;
        let mut entries = vec![Polynomial::zero(law.table()); len];
        entries[0] = Polynomial::one(law.table());
        Ok(WittSeqF {
            entries,
            law: law.clone(),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.entries[1..].iter().all(|p| p.is_zero())
    }

    fn compatible(&self, other: &WittSeqF) -> Result<()> {
        if self.law.table() != other.law.table() || self.law.f() != other.law.f() {
            return Err(Error::LawMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }
}

fn check_capacity(law: &FormalGroupLaw, len: usize) -> Result<()> {
    if law.truncation() < len + 1 {
        return Err(Error::PrecisionTooSmall {
            needed: len + 1,
            have: law.truncation(),
        });
    }
    Ok(())
}

/// Rewrite a leading-role sequence in formal-sum coordinates: the result's
/// entries `a_n` satisfy `Sum^F a_n X^{n+1} = sum c_n X^{n+1}`.
pub fn f_twist(law: &FormalGroupLaw, c: &WittSeq) -> Result<WittSeqF> {
    c.require_role(SeqRole::Leading)?;
    check_capacity(law, c.len())?;
    let series = c.to_series().shift_up(1);
    let entries = law.f_expand(&series)?;
    debug_assert_eq!(entries.len(), c.len());
    Ok(WittSeqF {
        entries,
        law: law.clone(),
    })
}

/// Inverse of [`f_twist`]: collapse the formal sum back to a plain series
/// and read off its coefficients.
pub fn untwist(cf: &WittSeqF) -> Result<WittSeq> {
    let series = cf.law.f_collapse(&cf.entries)?;
    let entries = (0..cf.len()).map(|n| series.coeff(n + 1).clone()).collect();
    WittSeq::new(SeqRole::Leading, entries)
}

/// The transported group law on F-expanded sequences. `f_twist` is a group
/// isomorphism from the `diamond` group onto this one.
pub fn diamond_f(a: &WittSeqF, b: &WittSeqF) -> Result<WittSeqF> {
    a.compatible(b)?;
    let c = untwist(a)?.diamond(&untwist(b)?)?;
    f_twist(&a.law, &c)
}

/// Inverse for the transported law on F-expanded sequences.
pub fn diamond_f_inv(cf: &WittSeqF) -> Result<WittSeqF> {
    f_twist(&cf.law, &untwist(cf)?.diamond_inv()?)
}

/// Transport of the sign-twist decomposition through the chain of group
/// isomorphisms (F-expanded sequences -> leading sequences -> convolution
/// group). Requires an odd law; the two components recombine to the input
/// under [`diamond_f`] and are each closed under it, but their F-side
/// entries need not vanish in odd slots: the vanishing lives on the
/// convolution side.
pub fn split_f(cf: &WittSeqF) -> Result<(WittSeqF, WittSeqF)> {
    if !cf.law.is_odd() {
        return Err(Error::NotOdd);
    }
    let w = untwist(cf)?.revert_seq()?.with_role(SeqRole::SeriesOne);
    let (plus, minus) = w.split()?;
    let back = |part: &WittSeq| -> Result<WittSeqF> {
        f_twist(&cf.law, &part.with_role(SeqRole::Leading).revert_seq()?)
    };
    Ok((back(&plus)?, back(&minus)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rails(entries: &[i64]) -> WittSeq {
        let table = GeneratorTable::empty();
        WittSeq::new(
            SeqRole::SeriesOne,
            entries
                .iter()
                .map(|&n| Polynomial::int(&table, n))
                .collect(),
        )
        .unwrap()
    }

    fn leading(entries: &[i64]) -> WittSeq {
        rails(entries).with_role(SeqRole::Leading)
    }

    fn ints(c: &WittSeq) -> Vec<Rat> {
        c.entries().iter().map(|p| p.constant_term()).collect()
    }

    #[test]
    fn star_convolves_and_respects_the_unit() {
        let c = rails(&[1, 1, 0, 0]);
        let sq = c.star(&c).unwrap();
        assert_eq!(
            ints(&sq),
            vec![Rat::int(1), Rat::int(2), Rat::int(1), Rat::int(0)]
        );
        let unit = WittSeq::unit(c.table(), SeqRole::SeriesOne, 4);
        assert_eq!(c.star(&unit).unwrap(), c);
        assert!(matches!(
            c.star(&rails(&[1, 1])),
            Err(Error::LengthMismatch(4, 2))
        ));
        assert!(matches!(
            c.star(&leading(&[1, 0, 0, 0])),
            Err(Error::RoleMismatch { .. })
        ));
    }

    #[test]
    fn star_inverse_is_the_alternating_sequence() {
        let c = rails(&[1, 1, 0, 0, 0]);
        let inv = c.star_inv();
        assert_eq!(
            ints(&inv),
            [1, -1, 1, -1, 1].iter().map(|&n| Rat::int(n)).collect::<Vec<_>>()
        );
        assert!(c.star(&inv).unwrap().is_unit());
        assert_eq!(inv.star_inv(), c);
    }

    #[test]
    fn split_of_one_plus_t_matches_binomial_square_roots() {
        let c = rails(&[1, 1, 0, 0, 0]);
        let (plus, minus) = c.split().unwrap();
        assert_eq!(
            ints(&plus),
            vec![
                Rat::int(1),
                Rat::int(0),
                Rat::frac(-1, 2),
                Rat::int(0),
                Rat::frac(-1, 8)
            ]
        );
        assert_eq!(
            ints(&minus),
            vec![
                Rat::int(1),
                Rat::int(1),
                Rat::frac(1, 2),
                Rat::frac(1, 2),
                Rat::frac(3, 8)
            ]
        );
        assert_eq!(plus.star(&minus).unwrap(), c);
        assert!(plus.is_tau_fixed());
        // The minus part's even entries need not vanish.
        assert_eq!(minus.entry(2).constant_term(), Rat::frac(1, 2));
    }

    #[test]
    fn split_is_a_direct_product_decomposition() {
        let c = rails(&[1, 2, 3, -1, 5]);
        let d = rails(&[1, -1, 0, 2, 7]);
        let (cp, cm) = c.split().unwrap();
        let (dp, dm) = d.split().unwrap();
        let (sp, sm) = c.star(&d).unwrap().split().unwrap();
        assert_eq!(sp, cp.star(&dp).unwrap());
        assert_eq!(sm, cm.star(&dm).unwrap());
        // tau-fixed exactly when the minus part is trivial.
        assert!(!c.is_tau_fixed() && !cm.is_unit());
        let even = rails(&[1, 0, 4, 0, -3]);
        let (_, em) = even.split().unwrap();
        assert!(even.is_tau_fixed() && em.is_unit());
    }

    #[test]
    fn halving_squares_back() {
        let c = rails(&[1, 3, -2, 5, 1]);
        let h = c.half().unwrap();
        assert_eq!(h.star(&h).unwrap(), c);
    }

    #[test]
    fn revert_seq_matches_compositional_reversion() {
        let c = leading(&[1, 1, 0, 0]);
        let r = c.revert_seq().unwrap();
        assert_eq!(
            ints(&r),
            [1, -1, 2, -5].iter().map(|&n| Rat::int(n)).collect::<Vec<_>>()
        );
        // Same answer through series reversion of c(X)X.
        let via_series = c.to_series().shift_up(1).revert().unwrap();
        for n in 0..c.len() {
            assert_eq!(r.entry(n), via_series.coeff(n + 1));
        }
        // Involution.
        assert_eq!(r.revert_seq().unwrap(), c);
        assert!(matches!(
            rails(&[1, 1]).revert_seq(),
            Err(Error::RoleMismatch { .. })
        ));
    }

    #[test]
    fn diamond_of_x_plus_x_squared_with_itself() {
        let c = leading(&[1, 1, 0, 0, 0]);
        let d = c.diamond(&c).unwrap();
        assert_eq!(
            ints(&d),
            [1, 2, 3, 4, 5].iter().map(|&n| Rat::int(n)).collect::<Vec<_>>()
        );
        let unit = WittSeq::unit(c.table(), SeqRole::Leading, 5);
        assert_eq!(c.diamond(&unit).unwrap(), c);
        // revert_seq is a homomorphism onto the convolution group.
        let lhs = c.diamond(&d).unwrap().revert_seq().unwrap();
        let rhs = c
            .revert_seq()
            .unwrap()
            .star(&d.revert_seq().unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn f_twist_over_the_multiplicative_law() {
        let law = FormalGroupLaw::multiplicative(6);
        let table = law.table();
        let one = Polynomial::one(table);
        let c = WittSeq::new(
            SeqRole::Leading,
            vec![one.clone(), one.clone(), Polynomial::zero(table)],
        )
        .unwrap();
        let tw = f_twist(&law, &c).unwrap();
        let u = Polynomial::generator(table, 0);
        assert_eq!(tw.entry(0), &one);
        assert_eq!(tw.entry(1), &one);
        assert_eq!(tw.entry(2), &u.scale(&Rat::int(-1)));
        assert_eq!(untwist(&tw).unwrap(), c);
    }

    #[test]
    fn f_twist_over_the_additive_law_is_the_identity() {
        let law = FormalGroupLaw::additive(6);
        let c = WittSeq::new(
            SeqRole::Leading,
            [1, 4, -2, 7, 3]
                .iter()
                .map(|&n| Polynomial::int(law.table(), n))
                .collect(),
        )
        .unwrap();
        let tw = f_twist(&law, &c).unwrap();
        assert_eq!(tw.entries(), c.entries());
        let d = WittSeq::unit(law.table(), SeqRole::Leading, 5);
        let viaf = diamond_f(&tw, &f_twist(&law, &d).unwrap()).unwrap();
        assert_eq!(viaf.entries(), c.diamond(&d).unwrap().entries());
    }

    #[test]
    fn twist_is_a_group_homomorphism() {
        let law = FormalGroupLaw::multiplicative(7);
        let table = law.table();
        let p = |n: i64| Polynomial::int(table, n);
        let c = WittSeq::new(SeqRole::Leading, vec![p(1), p(2), p(0), p(-1)]).unwrap();
        let d = WittSeq::new(SeqRole::Leading, vec![p(1), p(-1), p(3), p(0)]).unwrap();
        let lhs = f_twist(&law, &c.diamond(&d).unwrap()).unwrap();
        let rhs = diamond_f(&f_twist(&law, &c).unwrap(), &f_twist(&law, &d).unwrap()).unwrap();
        assert_eq!(lhs.entries(), rhs.entries());
    }

    #[test]
    fn split_f_recombines_over_an_odd_law() {
        let mult = FormalGroupLaw::multiplicative(8);
        let odd = crate::idempotents::epsilon2(&mult).unwrap().law;
        let table = odd.table();
        let u = Polynomial::generator(table, 0);
        let entries = vec![
            Polynomial::one(table),
            u.clone(),
            (&u * &u).scale(&Rat::int(2)),
            u.pow(3).scale(&Rat::frac(1, 2)),
            Polynomial::zero(table),
            u.pow(5),
        ];
        let c = WittSeq::new(SeqRole::Leading, entries).unwrap();
        let cf = f_twist(&odd, &c).unwrap();
        let (pf, mf) = split_f(&cf).unwrap();
        let back = diamond_f(&pf, &mf).unwrap();
        assert_eq!(back.entries(), cf.entries());
        // The plus component untwists to a tau-fixed convolution element.
        let wside = untwist(&pf)
            .unwrap()
            .revert_seq()
            .unwrap()
            .with_role(SeqRole::SeriesOne);
        assert!(wside.is_tau_fixed());
        // Plus components are closed under the transported law: the minus
        // part of their product is trivial.
        let prod = diamond_f(&pf, &pf).unwrap();
        let (_, again_minus) = split_f(&prod).unwrap();
        assert!(again_minus.is_unit());
        assert!(matches!(
            split_f(&f_twist(&mult, &c).unwrap()),
            Err(Error::NotOdd)
        ));
    }

    #[test]
    fn json_round_trip_preserves_role_and_entries() {
        let law = FormalGroupLaw::multiplicative(6);
        let table = law.table();
        let u = Polynomial::generator(table, 0);
        let c = WittSeq::new(
            SeqRole::Leading,
            vec![Polynomial::one(table), u.scale(&Rat::frac(3, 2))],
        )
        .unwrap();
        let back = WittSeq::from_json(&c.to_json(), table).unwrap();
        assert_eq!(back, c);
        assert!(WittSeq::from_json(&json!({"role": "x", "entries": []}), table).is_err());
    }
}

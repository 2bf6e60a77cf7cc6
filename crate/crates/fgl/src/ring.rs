//! Sparse multivariate polynomials over named, weighted generators.
//!
//! A [`GeneratorTable`] fixes a finite ordered list of generators, each with a
//! positive integer weight; a [`Polynomial`] is a finite rational combination
//! of monomials in those generators. Monomials are kept in a canonical sorted
//! order (lexicographic on the exponent vector, earlier generators most
//! significant), so equality, hashing into maps, and rendering are all
//! deterministic. Weight gradings are respected by [`RingHom`], which maps
//! generators to weight-homogeneous images.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// An ordered list of generator names with positive weights.
#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl GeneratorTable {
    /// Builds a table from `(name, weight)` pairs. Names must be distinct and
    /// weights at least 1.
    pub fn new<S: Into<String>>(pairs: Vec<(S, u32)>) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(pairs.len());
        let mut weights = Vec::with_capacity(pairs.len());
        for (name, weight) in pairs {
            let name = name.into();
            if names.contains(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            if weight == 0 {
                return Err(Error::ZeroWeight(name));
            }
            names.push(name);
            weights.push(weight);
        }
        Ok(Arc::new(GeneratorTable { names, weights }))
    }

    /// The empty table: polynomials over it are plain rationals.
    pub fn empty() -> Arc<Self> {
        Arc::new(GeneratorTable {
            names: Vec::new(),
            weights: Vec::new(),
        })
    }

    /// Generators `m1, ..., mn` where `m{i}` has weight `i`. This is the
    /// coefficient ring of the universal logarithm truncated to `n` symbols.
    pub fn universal(n: usize) -> Arc<Self> {
        let pairs: Vec<(String, u32)> = (1..=n).map(|i| (format!("m{i}"), i as u32)).collect();
        GeneratorTable::new(pairs).expect("universal table is well-formed")
    }

    /// A single generator of the given weight.
    pub fn single(name: &str, weight: u32) -> Arc<Self> {
        GeneratorTable::new(vec![(name, weight)]).expect("single-generator table is well-formed")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when this is exactly the table built by
    /// [`GeneratorTable::universal`]: names `m1..mk` with weight of `m{i}`
    /// equal to `i`.
    pub fn is_universal(&self) -> bool {
        self.names
            .iter()
            .zip(&self.weights)
            .enumerate()
            .all(|(i, (n, &w))| w as usize == i + 1 && *n == format!("m{}", i + 1))
    }
}

/// Exponent vector over a fixed table, compared lexicographically with the
/// first generator most significant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len].into_boxed_slice())
    }

    pub fn generator(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weight(&self, table: &GeneratorTable) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| e * table.weight(i))
            .sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let e = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a + b)
            .collect::<Vec<_>>();
        Monomial(e.into_boxed_slice())
    }

    fn render(&self, table: &GeneratorTable) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(table.name(i).to_string()),
                _ => parts.push(format!("{}^{}", table.name(i), e)),
            }
        }
        parts.join("*")
    }
}

/// Weight classification of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every weight.
    Zero,
    /// All monomials share this weight (constants have weight 0).
    Weight(u32),
    /// Monomials of different weights are present.
    Mixed,
}

/// Sparse polynomial over a shared generator table. The term map never stores
/// zero coefficients, so structural equality is semantic equality.
#[derive(Clone)]
pub struct Polynomial {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rat>,
}

fn same_table(a: &Polynomial, b: &Polynomial) {
    assert!(
        Arc::ptr_eq(&a.table, &b.table) || a.table == b.table,
        "cannot combine polynomials over different generator tables"
    );
}

impl Polynomial {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Polynomial {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: Rat) -> Self {
        let mut p = Polynomial::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(table.len()), c);
        }
        p
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Polynomial::constant(table, Rat::one())
    }

    pub fn int(table: &Arc<GeneratorTable>, n: i64) -> Self {
        Polynomial::constant(table, Rat::int(n))
    }

    pub fn generator(table: &Arc<GeneratorTable>, i: usize) -> Self {
        assert!(i < table.len(), "generator index out of range");
        let mut p = Polynomial::zero(table);
        p.terms.insert(Monomial::generator(table.len(), i), Rat::one());
        p
    }

    pub fn term(table: &Arc<GeneratorTable>, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.exponents().len(), table.len(), "monomial arity mismatch");
        let mut p = Polynomial::zero(table);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::one(self.table.len()))
    }

    /// `Some(c)` when the polynomial is the constant `c` (possibly zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    fn insert_add(&mut self, m: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Polynomial) {
        same_table(self, other);
        for (m, c) in &other.terms {
            self.insert_add(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Polynomial) {
        same_table(self, other);
        for (m, c) in &other.terms {
            self.insert_add(m.clone(), &-c);
        }
    }

    /// `self += a * b`, accumulating the product without a temporary.
    pub fn add_mul_assign(&mut self, a: &Polynomial, b: &Polynomial) {
        same_table(a, b);
        same_table(self, a);
        if a.is_zero() || b.is_zero() {
            return;
        }
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.insert_add(ma.mul(mb), &(ca * cb));
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        let mut out = Polynomial::zero(&self.table);
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.table);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Constant plus degree-one part; everything decomposable is dropped.
    /// This is reduction modulo the ideal generated by products of
    /// generators, the usual "indecomposable quotient" of a graded term.
    pub fn linear_part(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.table);
        for (m, c) in &self.terms {
            if m.total_degree() <= 1 {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut seen: Option<u32> = None;
        for (m, _) in &self.terms {
            let w = m.weight(&self.table);
            match seen {
                None => seen = Some(w),
                Some(prev) if prev != w => return Homogeneity::Mixed,
                Some(_) => {}
            }
        }
        match seen {
            None => Homogeneity::Zero,
            Some(w) => Homogeneity::Weight(w),
        }
    }

    /// True when every coefficient has a power-of-two denominator.
    pub fn denominators_are_powers_of_two(&self) -> bool {
        self.terms.values().all(|c| c.denominator_is_power_of_two())
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mono = m.render(&self.table);
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }

    /// Reads the serialized form: a list of `[coefficient, {gen: exp, ...}]`
    /// pairs with rational coefficients rendered as strings.
    pub fn from_json(v: &serde_json::Value, table: &Arc<GeneratorTable>) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::BadJson("polynomial must be a list of terms".into()))?;
        let mut out = Polynomial::zero(table);
        for item in arr {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::BadJson("each term must be [coefficient, monomial]".into()))?;
            let c = match &pair[0] {
                serde_json::Value::String(s) => Rat::from_str(s)?,
                serde_json::Value::Number(n) => Rat::from_str(&n.to_string())?,
                _ => return Err(Error::BadJson("coefficient must be a string".into())),
            };
            let obj = pair[1]
                .as_object()
                .ok_or_else(|| Error::BadJson("monomial must be an object".into()))?;
            let mut exps = vec![0u32; table.len()];
            for (name, e) in obj {
                let i = table
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let e = e
                    .as_u64()
                    .filter(|&e| e >= 1)
                    .ok_or_else(|| Error::BadJson(format!("exponent of {name} must be a positive integer")))?;
                exps[i] = exps[i]
                    .checked_add(u32::try_from(e).map_err(|_| Error::BadJson("exponent too large".into()))?)
                    .ok_or_else(|| Error::BadJson("exponent too large".into()))?;
            }
            out.insert_add(Monomial::from_exponents(exps), &c);
        }
        Ok(out)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            let mut obj = serde_json::Map::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    obj.insert(self.table.name(i).to_string(), serde_json::json!(e));
                }
            }
            seq.serialize_element(&(c.to_string(), serde_json::Value::Object(obj)))?;
        }
        seq.end()
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.table);
        out.add_mul_assign(self, rhs);
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rat::int(-1))
    }
}

/// Weight-preserving ring homomorphism determined by generator images.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Arc<GeneratorTable>,
    target: Arc<GeneratorTable>,
    images: Vec<Polynomial>,
}

impl RingHom {
    /// One image per source generator; each must be weight-homogeneous of the
    /// generator's weight (or zero) over the target table.
    pub fn new(
        source: &Arc<GeneratorTable>,
        target: &Arc<GeneratorTable>,
        images: Vec<Polynomial>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::LengthMismatch(images.len(), source.len()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.table() != target {
                return Err(Error::TableMismatch);
            }
            match img.homogeneity() {
                Homogeneity::Zero => {}
                Homogeneity::Weight(w) if w == source.weight(i) => {}
                _ => {
                    return Err(Error::InhomogeneousImage {
                        name: source.name(i).to_string(),
                        expected: source.weight(i),
                    })
                }
            }
        }
        Ok(RingHom {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    pub fn identity(table: &Arc<GeneratorTable>) -> Self {
        let images = (0..table.len())
            .map(|i| Polynomial::generator(table, i))
            .collect();
        RingHom {
            source: Arc::clone(table),
            target: Arc::clone(table),
            images,
        }
    }

    pub fn source(&self) -> &Arc<GeneratorTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GeneratorTable> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.table() != &self.source {
            return Err(Error::TableMismatch);
        }
        let mut out = Polynomial::zero(&self.target);
        for (m, c) in p.terms() {
            let mut term = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &self.images[i].pow(e);
                }
                if term.is_zero() {
                    break;
                }
            }
            out.add_assign_ref(&term);
        }
        Ok(out)
    }

    /// `self` followed by `after`: the composite `x -> after(self(x))`.
    pub fn then(&self, after: &RingHom) -> Result<RingHom> {
        if self.target != after.source {
            return Err(Error::TableMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|img| after.apply(img))
            .collect::<Result<Vec<_>>>()?;
        RingHom::new(&self.source, &after.target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(table: &Arc<GeneratorTable>, i: usize) -> Polynomial {
        Polynomial::generator(table, i)
    }

    /// Multiplies two term lists the slow way, with no sparse bookkeeping.
    fn naive_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut pairs: Vec<(Monomial, Rat)> = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let exps: Vec<u32> = ma
                    .exponents()
                    .iter()
                    .zip(mb.exponents())
                    .map(|(x, y)| x + y)
                    .collect();
                pairs.push((Monomial::from_exponents(exps), ca * cb));
            }
        }
        let mut out = Polynomial::zero(a.table());
        for (mono, c) in pairs {
            out.add_assign_ref(&Polynomial::term(a.table(), mono, c));
        }
        out
    }

    #[test]
    fn zero_annihilates() {
        let t = GeneratorTable::universal(2);
        let p = &m(&t, 0) + &m(&t, 1);
        assert!((&p * &Polynomial::zero(&t)).is_zero());
    }

    #[test]
    fn squaring_a_generator() {
        let t = GeneratorTable::universal(1);
        let sq = &m(&t, 0) * &m(&t, 0);
        assert_eq!(sq, m(&t, 0).pow(2));
        assert_eq!(sq.render(), "m1^2");
    }

    #[test]
    fn difference_of_squares() {
        let t = GeneratorTable::universal(1);
        let one = Polynomial::one(&t);
        let a = &one + &m(&t, 0);
        let b = &one - &m(&t, 0);
        let expect = &one - &m(&t, 0).pow(2);
        assert_eq!(&a * &b, expect);
        assert_eq!(naive_mul(&a, &b), expect);
    }

    #[test]
    fn linear_part_drops_decomposables() {
        let t = GeneratorTable::universal(2);
        let p = &(&m(&t, 0) + &m(&t, 0).pow(2)) + &(&m(&t, 0) * &m(&t, 1));
        assert_eq!(p.linear_part(), m(&t, 0));
        let c = Polynomial::int(&t, 3);
        assert_eq!((&c + &m(&t, 1).pow(5)).linear_part(), c);
    }

    #[test]
    fn linear_part_of_product_of_positive_weight_terms_vanishes() {
        let t = GeneratorTable::universal(3);
        let p = &(&m(&t, 0) + &m(&t, 1)) * &(&m(&t, 2) + &m(&t, 0).pow(2));
        assert!(p.linear_part().is_zero());
    }

    #[test]
    fn hom_kills_odd_weight_generators() {
        let t = GeneratorTable::universal(3);
        let images = vec![
            Polynomial::zero(&t),
            m(&t, 1),
            Polynomial::zero(&t),
        ];
        let h = RingHom::new(&t, &t, images).unwrap();
        // m1*m2 + m3 maps to 0 under m1 -> 0, m3 -> 0.
        let p = &(&m(&t, 0) * &m(&t, 1)) + &m(&t, 2);
        assert!(h.apply(&p).unwrap().is_zero());
        // m2^2 survives.
        assert_eq!(h.apply(&m(&t, 1).pow(2)).unwrap(), m(&t, 1).pow(2));
    }

    #[test]
    fn hom_rejects_weight_breaking_images() {
        let t = GeneratorTable::universal(2);
        // m2 has weight 2; the image m1 has weight 1.
        let images = vec![m(&t, 0), m(&t, 0)];
        assert!(RingHom::new(&t, &t, images).is_err());
        // m1^2 (weight 2) is a legal image for m2.
        let images = vec![m(&t, 0), m(&t, 0).pow(2)];
        assert!(RingHom::new(&t, &t, images).is_ok());
    }

    #[test]
    fn hom_is_multiplicative() {
        let t = GeneratorTable::universal(3);
        let h = RingHom::new(
            &t,
            &t,
            vec![m(&t, 0), m(&t, 0).pow(2), &m(&t, 2) + &(&m(&t, 0) * &m(&t, 1))],
        )
        .unwrap();
        let p = &(&m(&t, 1) + &m(&t, 0).pow(2)) * &m(&t, 2);
        let q = &m(&t, 2) + &(&m(&t, 0) * &m(&t, 1));
        assert_eq!(
            h.apply(&(&p * &q)).unwrap(),
            &h.apply(&p).unwrap() * &h.apply(&q).unwrap()
        );
    }

    #[test]
    fn monomial_order_is_lexicographic_by_generator_index() {
        let a = Monomial::from_exponents(vec![1, 0]);
        let b = Monomial::from_exponents(vec![0, 2]);
        assert!(a > b);
        let terms: Vec<String> = {
            let t = GeneratorTable::universal(2);
            let p = &m(&t, 0) + &m(&t, 1).pow(2);
            p.terms().map(|(mo, _)| mo.render(&t)).collect()
        };
        assert_eq!(terms, vec!["m2^2", "m1"]);
    }

    #[test]
    fn rendering() {
        let t = GeneratorTable::universal(3);
        let p = &m(&t, 2).scale(&Rat::int(2)) + &(&m(&t, 0) * &m(&t, 1)).scale(&Rat::int(5));
        assert_eq!(p.render(), "2*m3 + 5*m1*m2");
        let q = &Polynomial::one(&t) - &m(&t, 0).scale(&Rat::frac(1, 2));
        assert_eq!(q.render(), "1 - 1/2*m1");
        assert_eq!(Polynomial::zero(&t).render(), "0");
    }

    #[test]
    fn json_round_trip() {
        let t = GeneratorTable::universal(2);
        let p = &m(&t, 0).scale(&Rat::int(-2)) + &(&m(&t, 0) * &m(&t, 1)).scale(&Rat::frac(1, 3));
        let v = serde_json::to_value(&p).unwrap();
        let back = Polynomial::from_json(&v, &t).unwrap();
        assert_eq!(back, p);
        let parsed = Polynomial::from_json(&serde_json::json!([["-2", { "m1": 1 }]]), &t).unwrap();
        assert_eq!(parsed, m(&t, 0).scale(&Rat::int(-2)));
        assert!(Polynomial::from_json(&serde_json::json!([["1", { "zz": 1 }]]), &t).is_err());
    }
}

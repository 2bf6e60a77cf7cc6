//! One-dimensional commutative formal group laws over graded rational
//! coefficient rings.
//!
//! A law is always held together with its logarithm: over a coefficient ring
//! containing the rationals the logarithm exists and determines everything,
//! so `F(X, Y) = exp(log X + log Y)` is the canonical construction and
//! [`log_of`] recovers the logarithm of a raw bivariate series, failing
//! precisely when the series is not a commutative group law.
//!
//! The `[-1]`-series is computed by the degree-by-degree solve of
//! `F(X, i(X)) = 0` rather than through `exp(-log)`; agreement of the two
//! routes is one of the verification-suite checks, so the constructor must
//! not collapse them into one.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::biseries::BiSeries;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::ring::{GeneratorTable, Polynomial};
use crate::series::TruncSeries;

#[derive(Clone, Debug)]
pub struct FormalGroupLaw {
    table: Arc<GeneratorTable>,
    trunc: usize,
    f: BiSeries,
    log: TruncSeries,
    exp: TruncSeries,
    minus_one: TruncSeries,
}

/// Symmetric-function data attached to the exponential `exp(Z) = sum e_k
/// Z^{k+1}`: writing `Qbar(Y) = -exp(Z)exp(-Z)/Z^2` as a series in `Y = Z^2`,
/// `q[n]` is its `Y^n` coefficient, `sigma[n] = (-1)^n q[n]` is the n-th
/// elementary symmetric function of the squared formal roots, and `h[n]`,
/// the coefficients of `Qbar^{-1}`, is the complete symmetric function.
#[derive(Clone, Debug)]
pub struct SymmetricData {
    pub e: Vec<Polynomial>,
    pub q: Vec<Polynomial>,
    pub sigma: Vec<Polynomial>,
    pub h: Vec<Polynomial>,
}

impl FormalGroupLaw {
    /// Builds the law with the given logarithm: `F = exp(log X + log Y)`.
    /// The logarithm must be strict (`log = X + ...`).
    pub fn from_log(log: TruncSeries) -> Result<Self> {
        let n = log.truncation();
        if n < 2 || !log.coeff(0).is_zero() || !log.coeff(1).is_one() {
            return Err(Error::NotStrict("logarithm"));
        }
        let table = Arc::clone(log.table());
        let exp = log.revert()?;
        let lx = BiSeries::of_x(&log, n);
        let ly = BiSeries::of_y(&log, n);
        let f = lx.add(&ly).compose_uni(&exp)?;
        let minus_one = solve_minus_one(&f)?;
        Ok(FormalGroupLaw {
            table,
            trunc: n,
            f,
            log,
            exp,
            minus_one,
        })
    }

    /// Recovers the logarithm of a raw bivariate series and rebuilds the law
    /// from it. Fails with an axiom violation when the series is not a
    /// commutative formal group law.
    pub fn from_biseries(f: &BiSeries) -> Result<Self> {
        let log = log_of(f)?;
        let law = FormalGroupLaw::from_log(log)?;
        debug_assert_eq!(&law.f, f);
        Ok(law)
    }

    /// The additive law `X + Y` over the empty coefficient ring.
    pub fn additive(trunc: usize) -> Self {
        let table = GeneratorTable::empty();
        let log = TruncSeries::x(&table, trunc);
        FormalGroupLaw::from_log(log).expect("additive logarithm is strict")
    }

    /// The multiplicative law `X + Y + uXY` over one weight-1 generator `u`,
    /// from its logarithm `log(1 + uX)/u = sum (-1)^{k-1} u^{k-1} X^k / k`.
    pub fn multiplicative(trunc: usize) -> Self {
        let table = GeneratorTable::single("u", 1);
        let u = Polynomial::generator(&table, 0);
        let mut coeffs = vec![Polynomial::zero(&table); trunc];
        let mut upow = Polynomial::one(&table);
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            *c = upow.scale(&Rat::frac(sign, k as i64));
            upow = &upow * &u;
        }
        let log = TruncSeries::new(&table, coeffs);
        FormalGroupLaw::from_log(log).expect("multiplicative logarithm is strict")
    }

    /// The universal law at this truncation: logarithm `X + m1 X^2 + ... +
    /// m{N-2} X^{N-1}` over the generators `m1 .. m{N-2}` (exactly the ones
    /// that influence coefficients below `X^N`).
    pub fn universal(trunc: usize) -> Self {
        assert!(trunc >= 2);
        let table = GeneratorTable::universal(trunc - 2);
        let mut coeffs = vec![Polynomial::zero(&table); trunc];
        coeffs[1] = Polynomial::one(&table);
        for (i, c) in coeffs.iter_mut().enumerate().skip(2) {
            *c = Polynomial::generator(&table, i - 2);
        }
        let log = TruncSeries::new(&table, coeffs);
        FormalGroupLaw::from_log(log).expect("universal logarithm is strict")
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn f(&self) -> &BiSeries {
        &self.f
    }

    pub fn log(&self) -> &TruncSeries {
        &self.log
    }

    pub fn exp(&self) -> &TruncSeries {
        &self.exp
    }

    pub fn minus_one(&self) -> &TruncSeries {
        &self.minus_one
    }

    /// `F(X, 0) = X` and `F(0, Y) = Y`, coefficient by coefficient.
    pub fn check_unit(&self) -> Result<()> {
        check_unit_axiom(&self.f)
    }

    /// `F(X, Y) = F(Y, X)`.
    pub fn check_commutative(&self) -> Result<()> {
        if self.f.is_symmetric() {
            Ok(())
        } else {
            Err(Error::AxiomViolation("commutativity fails".into()))
        }
    }

    /// `F(F(X, Y), Z) = F(X, F(Y, Z))`, compared without ever forming a
    /// trivariate series: writing `F(F(X,Y), Z) = sum_c L_c(X, Y) Z^c` and
    /// `F(X, F(Y,Z)) = sum_a R_a(Y, Z) X^a`, the identity is equivalent to
    /// `[X^a Y^b] L_c = [Y^b Z^c] R_a` for all `a + b + c` below truncation.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.trunc;
        let mut fpow: Vec<BiSeries> = Vec::with_capacity(n);
        fpow.push(BiSeries::constant(&self.table, Polynomial::one(&self.table), n));
        for _ in 1..n {
            let next = fpow.last().unwrap().mul(&self.f);
            fpow.push(next);
        }
        // lhs[c] = sum_i a_{i,c} F^i; rhs[a] = sum_j a_{a,j} F^j.
        let mut lhs: Vec<BiSeries> = (0..n).map(|c| BiSeries::zero(&self.table, n - c)).collect();
        let mut rhs: Vec<BiSeries> = (0..n).map(|a| BiSeries::zero(&self.table, n - a)).collect();
        for (&(i, j), c) in self.f.entries() {
            lhs[j as usize].add_mul_poly(&fpow[i as usize], c);
            rhs[i as usize].add_mul_poly(&fpow[j as usize], c);
        }
        for a in 0..n {
            for b in 0..n - a {
                for c in 0..n - a - b {
                    let left = lhs[c].coeff(a as u32, b as u32);
                    let right = rhs[a].coeff(b as u32, c as u32);
                    if left != right {
                        return Err(Error::AxiomViolation(format!(
                            "associativity fails at X^{a} Y^{b} Z^{c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Formal-group addition of two series with zero constant term.
    pub fn add_f(&self, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
        self.f.eval(a, b)
    }

    /// The `[n]`-series: `[0] = 0`, `[n+1] = F([n], X)`, negative `n`
    /// through the `[-1]`-series.
    pub fn n_series(&self, n: i64) -> Result<TruncSeries> {
        let x = TruncSeries::x(&self.table, self.trunc);
        let mut acc = TruncSeries::zero(&self.table, self.trunc);
        for _ in 0..n.unsigned_abs() {
            acc = self.add_f(&acc, &x)?;
        }
        if n < 0 {
            acc = self.minus_one.compose(&acc)?;
        }
        Ok(acc)
    }

    /// The `[1/2]`-series: the compositional solution of `[2](h(X)) = X`.
    pub fn half_series(&self) -> Result<TruncSeries> {
        self.n_series(2)?.compose_inverse()
    }

    /// Left fold of formal-group addition over the terms.
    pub fn formal_sum(&self, terms: &[TruncSeries]) -> Result<TruncSeries> {
        let mut acc = TruncSeries::zero(&self.table, self.trunc);
        for t in terms {
            acc = self.add_f(&acc, t)?;
        }
        Ok(acc)
    }

    /// Rewrites a series `g = sum_n g_{n+1} X^{n+1}` as a formal-group sum
    /// `g = Sum^F a_n X^{n+1}` and returns the sequence `a_0, a_1, ...` (one
    /// entry per degree `1..N-1`). Triangular: the degree-(n+1) coefficient
    /// of the partial formal sum through `a_{n-1}` differs from `a_n` only
    /// by terms already fixed.
    pub fn f_expand(&self, g: &TruncSeries) -> Result<Vec<Polynomial>> {
        if !g.coeff(0).is_zero() {
            return Err(Error::ConstantTermNotZero("formal-sum expansion"));
        }
        let n = self.trunc.min(g.truncation());
        let mut out = Vec::with_capacity(n.saturating_sub(1));
        if n < 2 {
            return Ok(out);
        }
        out.push(g.coeff(1).clone());
        let mut acc = TruncSeries::monomial(&self.table, g.coeff(1).clone(), 1, n);
        for k in 2..n {
            let mut a = g.coeff(k).clone();
            a.sub_assign_ref(acc.coeff(k));
            let term = TruncSeries::monomial(&self.table, a.clone(), k, n);
            acc = self.add_f(&acc, &term)?;
            out.push(a);
        }
        debug_assert_eq!(acc, g.truncated(n));
        Ok(out)
    }

    /// Inverse of [`FormalGroupLaw::f_expand`]: evaluates the formal sum
    /// `Sum^F a_n X^{n+1}` at truncation `len(a) + 1` (capped by the law's).
    pub fn f_collapse(&self, a: &[Polynomial]) -> Result<TruncSeries> {
        let n = self.trunc.min(a.len() + 1);
        let terms: Vec<TruncSeries> = a
            .iter()
            .take(n.saturating_sub(1))
            .enumerate()
            .map(|(k, c)| TruncSeries::monomial(&self.table, c.clone(), k + 1, n))
            .collect();
        let mut acc = TruncSeries::zero(&self.table, n);
        for t in &terms {
            acc = self.f.eval(&acc, t)?;
        }
        Ok(acc)
    }

    /// The invariant pair `S(X) = X + [-1](X)` and `P(X) = -X [-1](X)`. Both
    /// are fixed by substituting `[-1](X)` for `X`.
    pub fn sp_series(&self) -> (TruncSeries, TruncSeries) {
        let x = TruncSeries::x(&self.table, self.trunc);
        let s = x.add(&self.minus_one);
        let p = self.minus_one.shift_up(1).neg().truncated(self.trunc);
        (s, p)
    }

    /// The coefficients `c_1, c_3, c_5, ...` of the expansion
    /// `S = sum_r c_{2r-1} P^r`, by the triangular solve.
    pub fn c_coefficients(&self) -> Result<Vec<Polynomial>> {
        let (s, p) = self.sp_series();
        expand_in_powers(&s, &p)
    }

    /// The same coefficients through the residue formula
    /// `c_{2r-1} = sum_{k=1}^{r} (2k/r) e_{2k-1} [Y^{r-k}] Qbar^{-r}`,
    /// an independent route used to cross-check the triangular solve.
    pub fn c_via_residue(&self, rmax: usize) -> Result<Vec<Polynomial>> {
        let qbar = self.qbar_series()?;
        let qbar_inv = qbar.inverse()?;
        let mut out = Vec::with_capacity(rmax);
        let mut qpow = TruncSeries::constant(&self.table, Polynomial::one(&self.table), qbar.truncation());
        for r in 1..=rmax {
            qpow = qpow.mul(&qbar_inv); // Qbar^{-r}
            if r - 1 >= qpow.truncation() || 2 * r >= self.exp.truncation() {
                return Err(Error::PrecisionTooSmall {
                    needed: 2 * r + 1,
                    have: self.trunc,
                });
            }
            let mut c = Polynomial::zero(&self.table);
            for k in 1..=r {
                let e_odd = self.exp.coeff(2 * k); // e_{2k-1}
                if e_odd.is_zero() {
                    continue;
                }
                let w = qpow.coeff(r - k);
                let mut term = e_odd * w;
                term = term.scale(&Rat::frac(2 * k as i64, r as i64));
                c.add_assign_ref(&term);
            }
            out.push(c);
        }
        Ok(out)
    }

    /// `Qbar(Y) = -exp(Z) exp(-Z) / Z^2` read as a series in `Y = Z^2`.
    fn qbar_series(&self) -> Result<TruncSeries> {
        let prod = self.exp.mul(&self.exp.alternate()).neg();
        let u = prod.shift_down(2)?;
        if !u.is_even_series() {
            return Err(Error::NotEven);
        }
        let m = (u.truncation() + 1) / 2;
        let coeffs = (0..m).map(|k| u.coeff(2 * k).clone()).collect();
        Ok(TruncSeries::new(&self.table, coeffs))
    }

    /// Symmetric-function sequences derived from the exponential; see
    /// [`SymmetricData`].
    pub fn symmetric_data(&self) -> Result<SymmetricData> {
        let e = self.exp.coeffs()[1..].to_vec();
        let qbar = self.qbar_series()?;
        let h = qbar.inverse()?;
        let q: Vec<Polynomial> = qbar.coeffs().to_vec();
        let sigma = q
            .iter()
            .enumerate()
            .map(|(n, qn)| if n % 2 == 1 { -qn } else { qn.clone() })
            .collect();
        Ok(SymmetricData {
            e,
            q,
            sigma,
            h: h.coeffs().to_vec(),
        })
    }

    /// Change of coordinates along a strict series: the law with logarithm
    /// `log ∘ g`, i.e. `F^g(X, Y) = g^{-1}(F(g(X), g(Y)))`.
    pub fn conjugate(&self, g: &TruncSeries) -> Result<FormalGroupLaw> {
        if g.truncation() < 2 || !g.coeff(0).is_zero() || !g.coeff(1).is_one() {
            return Err(Error::NotStrict("conjugating series"));
        }
        FormalGroupLaw::from_log(self.log.compose(g)?)
    }

    /// The conjugated bivariate series computed directly as
    /// `g^{-1}(F(g(X), g(Y)))`, without touching the logarithm. Exists as an
    /// independent route for verifying [`FormalGroupLaw::conjugate`].
    pub fn conjugate_direct(&self, g: &TruncSeries) -> Result<BiSeries> {
        if g.truncation() < 2 || !g.coeff(0).is_zero() || !g.coeff(1).is_one() {
            return Err(Error::NotStrict("conjugating series"));
        }
        let inner = self.f.substitute_separate(g, g)?;
        inner.compose_uni(&g.revert()?)
    }

    /// A law is odd when its `[-1]`-series is exactly `-X`.
    pub fn is_odd(&self) -> bool {
        let x = TruncSeries::x(&self.table, self.trunc);
        self.minus_one.add(&x).is_zero()
    }

    /// Serializes as the law file format: generators plus logarithm.
    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = (0..self.table.len())
            .map(|i| json!({"name": self.table.name(i), "weight": self.table.weight(i)}))
            .collect();
        json!({
            "generators": gens,
            "log": serde_json::to_value(&self.log).expect("series serializes"),
        })
    }

    /// Reads the law file format `{"generators": [{"name", "weight"}...],
    /// "log": <series>}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::BadJson("law file must be a JSON object".into()))?;
        let gens = obj
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| Error::BadJson("law file needs a generator list".into()))?;
        let mut pairs = Vec::with_capacity(gens.len());
        for g in gens {
            let name = g
                .get("name")
                .and_then(|n| n.as_str())
                .ok_or_else(|| Error::BadJson("generator needs a name".into()))?;
            let weight = g
                .get("weight")
                .and_then(|w| w.as_u64())
                .ok_or_else(|| Error::BadJson("generator needs an integer weight".into()))?;
            let weight = u32::try_from(weight)
                .map_err(|_| Error::BadJson(format!("weight of {name} out of range")))?;
            pairs.push((name.to_string(), weight));
        }
        let table = GeneratorTable::new(pairs)?;
        let log_v = obj
            .get("log")
            .ok_or_else(|| Error::BadJson("law file needs a logarithm".into()))?;
        let log = TruncSeries::from_json(log_v, &table)?;
        FormalGroupLaw::from_log(log)
    }
}

fn check_unit_axiom(f: &BiSeries) -> Result<()> {
    let n = f.truncation();
    for d in 0..n as u32 {
        let want_x = if d == 1 {
            Polynomial::one(f.table())
        } else {
            Polynomial::zero(f.table())
        };
        if f.coeff(d, 0) != want_x || f.coeff(0, d) != want_x {
            return Err(Error::AxiomViolation(format!("unit axiom fails at degree {d}")));
        }
    }
    Ok(())
}

/// Degree-by-degree solve of `F(X, i(X)) = 0` starting from `i = -X`. Each
/// degree `k` contributes `i_k` linearly with coefficient 1 (from the linear
/// `Y` term of `F`), so the system is triangular with unit pivots.
fn solve_minus_one(f: &BiSeries) -> Result<TruncSeries> {
    check_unit_axiom(f)?;
    let n = f.truncation();
    let table = Arc::clone(f.table());
    let x = TruncSeries::x(&table, n);
    let mut i = x.neg();
    for k in 2..n {
        let r = f.eval(&x, &i)?;
        let mut ck = i.coeff(k).clone();
        ck.sub_assign_ref(r.coeff(k));
        *i.coeff_mut(k) = ck;
    }
    let residual = f.eval(&x, &i)?;
    if !residual.is_zero() {
        return Err(Error::AxiomViolation(
            "no [-1]-series: F(X, i(X)) = 0 has no solution".into(),
        ));
    }
    Ok(i)
}

/// Recovers the logarithm of a bivariate series: solves
/// `l(F(X,Y)) = l(X) + l(Y)` degree by degree using the `X^{n-1} Y`
/// coefficient as the pivot (where `F^n` contributes `n * l_n`), then checks
/// the full functional equation. A nonzero residual means the input is not a
/// commutative formal group law.
pub fn log_of(f: &BiSeries) -> Result<TruncSeries> {
    check_unit_axiom(f)?;
    let n = f.truncation();
    let table = Arc::clone(f.table());
    let mut log = TruncSeries::x(&table, n);
    let mut acc = f.clone(); // sum_{k} l_k F^k so far, starting with l_1 = 1
    let mut fpow = f.clone();
    for k in 2..n {
        fpow = fpow.mul(f);
        // [X^{k-1} Y] of acc + l_k F^k must vanish; F^k contributes exactly
        // k there (from the (X + Y)^k leading part).
        let lk = acc.coeff(k as u32 - 1, 1).scale(&Rat::frac(-1, k as i64));
        if !lk.is_zero() {
            acc.add_mul_poly(&fpow, &lk);
        }
        *log.coeff_mut(k) = lk;
    }
    let target = BiSeries::of_x(&log, n).add(&BiSeries::of_y(&log, n));
    if !acc.sub(&target).is_zero() {
        return Err(Error::AxiomViolation(
            "no logarithm: the series is not a commutative formal group law".into(),
        ));
    }
    Ok(log)
}

/// Expands `s` in powers of `p`, where `p = X^2 + ...` with unit leading
/// coefficient: returns `c` with `s = sum_r c[r-1] p^r` and the expansion
/// exact in every degree the truncations cover. The solve is triangular
/// because `[X^{2r}] p^r = 1`.
pub fn expand_in_powers(s: &TruncSeries, p: &TruncSeries) -> Result<Vec<Polynomial>> {
    let n = s.truncation().min(p.truncation());
    if n < 3 || !p.coeff(0).is_zero() || !p.coeff(1).is_zero() || !p.coeff(2).is_one() {
        return Err(Error::NotStrict("expansion base"));
    }
    if !s.coeff(0).is_zero() || !s.coeff(1).is_zero() {
        return Err(Error::ConstantTermNotZero("expansion argument"));
    }
    let table = s.table();
    let rmax = (n - 1) / 2;
    let mut r_series = s.truncated(n);
    let mut ppow = TruncSeries::constant(table, Polynomial::one(table), n);
    let mut out = Vec::with_capacity(rmax);
    for r in 1..=rmax {
        ppow = ppow.mul(p);
        let c = r_series.coeff(2 * r).clone();
        if !c.is_zero() {
            r_series = r_series.sub(&ppow.scale_poly(&c));
        }
        out.push(c);
    }
    // Degrees beyond 2(rmax+1) could only be matched by higher powers of p,
    // so exactness is checked on the window the expansion already covers.
    let check_to = n.min(2 * rmax + 2);
    for k in 0..check_to {
        if !r_series.coeff(k).is_zero() {
            return Err(Error::AxiomViolation(format!(
                "expansion in powers fails at degree {k}"
            )));
        }
    }
    Ok(out)
}

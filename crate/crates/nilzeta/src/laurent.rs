//! Exact arithmetic on Laurent polynomials in two variables `P` and `T`,
//! and on rational functions kept in cyclotomic-factored form
//! `num / prod (1 - P^a T^b)^m`.
//!
//! Every identity in the crate is ultimately decided here, so all
//! coefficients are arbitrary-precision integers and all comparisons are
//! exact.  Rational functions are never reduced by polynomial gcd;
//! equality is semantic, decided by cross-multiplication.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// `P^p T^t` with possibly negative exponents.  `(0,0)` is the identity.
///
/// Ordered by `(t, p)` so that maps of terms iterate in series order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub p: i64,
    pub t: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { p: 0, t: 0 };

    pub fn new(p: i64, t: i64) -> Self {
        Monomial { p, t }
    }

    pub fn pow(self, k: u32) -> Monomial {
        let k = i64::from(k);
        let p = self.p.checked_mul(k).expect("monomial exponent overflow");
        let t = self.t.checked_mul(k).expect("monomial exponent overflow");
        Monomial { p, t }
    }

    pub fn invert(self) -> Monomial {
        Monomial { p: -self.p, t: -self.t }
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    /// Exponent sums are checked: overflow is a logic error, not a value.
    fn mul(self, other: Monomial) -> Monomial {
        let p = self.p.checked_add(other.p).expect("monomial exponent overflow");
        let t = self.t.checked_add(other.t).expect("monomial exponent overflow");
        Monomial { p, t }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.t, self.p).cmp(&(other.t, other.p))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial.  Invariant: no stored zero coefficients,
/// so the empty map is the unique representation of zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        LaurentPoly::term(c, Monomial::ONE)
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_t_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.t).next()
    }

    pub fn max_t_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.t).next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, c: &BigInt, m: Monomial) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (*k * m, v * c))
            .collect();
        LaurentPoly { terms }
    }

    /// Multiply by `1 - m`, the workhorse of denominator expansion.
    pub fn mul_one_minus(&self, m: Monomial) -> LaurentPoly {
        let mut out = self.clone();
        for (k, v) in &self.terms {
            let neg = -v;
            out.add_term(*k * m, &neg);
        }
        out
    }

    /// Substitute `P -> 1/P`, `T -> 1/T`.  Involution.
    pub fn invert_vars(&self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.invert(), v.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Evaluate a polynomial in `P` alone at an integer.
    pub fn eval_p(&self, p: &BigInt) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            if m.t != 0 {
                return Err(Error::InvalidInput(
                    "eval_p requires a polynomial in P alone".into(),
                ));
            }
            let e = u64::try_from(m.p).map_err(|_| {
                Error::InvalidInput("eval_p requires nonnegative exponents".into())
            })?;
            acc += c * num_traits::pow::Pow::pow(p, e);
        }
        Ok(acc)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            let neg = -c;
            out.add_term(*m, &neg);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(k, v)| (*k, -v)).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(*m1 * *m2, &(c1 * c2));
            }
        }
        out
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("P", m.p), ("T", m.t)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

/// `(1 - P^a T^b)^mult` with `a >= 0`, `b >= 1`, `mult >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycloFactor {
    pub a: i64,
    pub b: i64,
    pub mult: u32,
}

impl CycloFactor {
    pub fn new(a: i64, b: i64, mult: u32) -> Self {
        CycloFactor::try_new(a, b, mult).expect("cyclotomic factor out of range")
    }

    pub fn try_new(a: i64, b: i64, mult: u32) -> Result<Self> {
        if a < 0 || b < 1 || mult < 1 {
            return Err(Error::InvalidInput(format!(
                "cyclotomic factor needs a >= 0, b >= 1, mult >= 1; got (1 - P^{a} T^{b})^{mult}"
            )));
        }
        Ok(CycloFactor { a, b, mult })
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.a, self.b)
    }
}

impl fmt::Display for CycloFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 - ")?;
        fmt_monomial(&self.monomial(), f)?;
        write!(f, ")")?;
        if self.mult > 1 {
            write!(f, "^{}", self.mult)?;
        }
        Ok(())
    }
}

/// Canonical multiset of cyclotomic factors: sorted by `(a, b)` with one
/// entry per distinct base.
fn normalize_factors(mut factors: Vec<CycloFactor>) -> Vec<CycloFactor> {
    factors.sort();
    let mut out: Vec<CycloFactor> = Vec::with_capacity(factors.len());
    for f in factors {
        match out.last_mut() {
            Some(last) if (last.a, last.b) == (f.a, f.b) => last.mult += f.mult,
            _ => out.push(f),
        }
    }
    out
}

/// Least common multiset of two factor lists (max multiplicity per base).
pub fn den_lcm(x: &[CycloFactor], y: &[CycloFactor]) -> Vec<CycloFactor> {
    let mut mult: BTreeMap<(i64, i64), u32> = BTreeMap::new();
    for f in x.iter().chain(y) {
        let e = mult.entry((f.a, f.b)).or_insert(0);
        *e = (*e).max(f.mult);
    }
    mult.into_iter()
        .map(|((a, b), m)| CycloFactor { a, b, mult: m })
        .collect()
}

/// Multiset difference `whole - part`; `part` must divide `whole`.
pub fn den_diff(whole: &[CycloFactor], part: &[CycloFactor]) -> Vec<CycloFactor> {
    let mut mult: BTreeMap<(i64, i64), u32> = whole
        .iter()
        .map(|f| ((f.a, f.b), f.mult))
        .collect();
    for f in part {
        let e = mult
            .get_mut(&(f.a, f.b))
            .expect("factor multiset difference underflow");
        *e = e.checked_sub(f.mult).expect("factor multiset difference underflow");
    }
    mult.into_iter()
        .filter(|&(_, m)| m > 0)
        .map(|((a, b), m)| CycloFactor { a, b, mult: m })
        .collect()
}

/// Expand a factor list into the Laurent polynomial it denotes.
pub fn expand_factors(factors: &[CycloFactor]) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for f in factors {
        for _ in 0..f.mult {
            out = out.mul_one_minus(f.monomial());
        }
    }
    out
}

/// Rational function `num / prod (1 - P^a T^b)^m` with the denominator
/// kept factored.  The value, not the representation, is what the
/// equality test compares, so numerator and denominator may share
/// factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRat {
    num: LaurentPoly,
    den: Vec<CycloFactor>,
}

impl FactoredRat {
    pub fn new(num: LaurentPoly, den: Vec<CycloFactor>) -> Self {
        FactoredRat {
            num,
            den: normalize_factors(den),
        }
    }

    pub fn one() -> Self {
        FactoredRat::from_poly(LaurentPoly::one())
    }

    pub fn zero() -> Self {
        FactoredRat::from_poly(LaurentPoly::zero())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        FactoredRat { num, den: Vec::new() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &[CycloFactor] {
        &self.den
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> FactoredRat {
        FactoredRat {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn mul_term(&self, c: &BigInt, m: Monomial) -> FactoredRat {
        FactoredRat {
            num: self.num.mul_term(c, m),
            den: self.den.clone(),
        }
    }

    /// Divide by `1 - P^a T^b`.
    pub fn div_factor(&self, f: CycloFactor) -> FactoredRat {
        let mut den = self.den.clone();
        den.push(f);
        FactoredRat {
            num: self.num.clone(),
            den: normalize_factors(den),
        }
    }

    /// Semantic equality by cross-multiplication after cancelling the
    /// common denominator multiset.
    pub fn equivalent(&self, other: &FactoredRat) -> bool {
        let mut common: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        {
            let rhs: BTreeMap<(i64, i64), u32> =
                other.den.iter().map(|f| ((f.a, f.b), f.mult)).collect();
            for f in &self.den {
                if let Some(m) = rhs.get(&(f.a, f.b)) {
                    common.insert((f.a, f.b), f.mult.min(*m));
                }
            }
        }
        let common: Vec<CycloFactor> = common
            .into_iter()
            .map(|((a, b), m)| CycloFactor { a, b, mult: m })
            .collect();
        let left = &self.num * &expand_factors(&den_diff(&other.den, &common));
        let right = &other.num * &expand_factors(&den_diff(&self.den, &common));
        left == right
    }

    /// Substitute `(P, T) -> (1/P, 1/T)`.  Each denominator factor obeys
    /// `1/(1 - Z^{-1}) = -Z/(1 - Z)`, so the factored shape is preserved
    /// and the numerator absorbs a sign and a monomial per factor.
    pub fn invert_vars(&self) -> FactoredRat {
        let mut num = self.num.invert_vars();
        let mut carry = Monomial::ONE;
        let mut sign_flips: u32 = 0;
        for f in &self.den {
            carry = carry * f.monomial().pow(f.mult);
            sign_flips += f.mult;
        }
        let sign = if sign_flips.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        num = num.mul_term(&sign, carry);
        FactoredRat {
            num,
            den: self.den.clone(),
        }
    }

    /// Coefficients of `T^0 .. T^n` of the power-series expansion in `T`.
    /// Each returned polynomial is in `P` alone.  Denominator factors all
    /// have `b >= 1`, so each expands geometrically; numerator terms of
    /// negative `T`-degree contribute to the returned window but their own
    /// negative degrees are outside it.
    pub fn series(&self, n: usize) -> Vec<LaurentPoly> {
        let n_i = n as i64;
        let offset = self.num.min_t_degree().unwrap_or(0).min(0);
        let len = (n_i - offset + 1) as usize;
        let mut coeffs: Vec<LaurentPoly> = vec![LaurentPoly::zero(); len];
        for (m, c) in self.num.terms() {
            if m.t <= n_i {
                coeffs[(m.t - offset) as usize].add_term(Monomial::new(m.p, 0), c);
            }
        }
        for f in &self.den {
            let shift = Monomial::new(f.a, 0);
            let step = f.b as usize;
            for _ in 0..f.mult {
                for k in step..len {
                    let add = coeffs[k - step].mul_term(&BigInt::one(), shift);
                    coeffs[k] = &coeffs[k] + &add;
                }
            }
        }
        coeffs.split_off((-offset) as usize)
    }

    /// Series coefficients evaluated at `P = p`.
    pub fn series_at(&self, p: &BigInt, n: usize) -> Result<Vec<BigInt>> {
        self.series(n).iter().map(|c| c.eval_p(p)).collect()
    }
}

impl Mul for &FactoredRat {
    type Output = FactoredRat;
    fn mul(self, rhs: &FactoredRat) -> FactoredRat {
        let mut den = self.den.clone();
        den.extend_from_slice(&rhs.den);
        FactoredRat {
            num: &self.num * &rhs.num,
            den: normalize_factors(den),
        }
    }
}

impl Add for &FactoredRat {
    type Output = FactoredRat;
    fn add(self, rhs: &FactoredRat) -> FactoredRat {
        let lcm = den_lcm(&self.den, &rhs.den);
        let left = &self.num * &expand_factors(&den_diff(&lcm, &self.den));
        let right = &rhs.num * &expand_factors(&den_diff(&lcm, &rhs.den));
        FactoredRat {
            num: &left + &right,
            den: lcm,
        }
    }
}

impl fmt::Display for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (idx, fac) in self.den.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{fac}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for FactoredRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct NumTerm {
            p: i64,
            t: i64,
            c: String,
        }
        #[derive(Serialize)]
        struct DenFactor {
            a: i64,
            b: i64,
            m: u32,
        }
        let numerator: Vec<NumTerm> = self
            .num
            .terms()
            .map(|(m, c)| NumTerm {
                p: m.p,
                t: m.t,
                c: c.to_string(),
            })
            .collect();
        let denominator: Vec<DenFactor> = self
            .den
            .iter()
            .map(|f| DenFactor {
                a: f.a,
                b: f.b,
                m: f.mult,
            })
            .collect();
        let mut s = serializer.serialize_struct("FactoredRat", 2)?;
        s.serialize_field("numerator", &numerator)?;
        s.serialize_field("denominator", &denominator)?;
        s.end()
    }
}

//! Sparse Laurent polynomials in the fixed variables `L`, `M`, `x` over
//! arbitrary-precision integers.
//!
//! A [`Poly`] is kept in canonical form at all times: its terms are sorted in
//! descending graded-lexicographic order and no stored coefficient is zero, so
//! structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

/// Products with more term pairs than this are split across threads.
const PAR_MUL_THRESHOLD: usize = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable {0} occurs with a negative exponent")]
    NegativeExponent(Var),
    #[error("negative power of variable {0} evaluated at zero")]
    ZeroDenominator(Var),
}

/// One of the three ring variables. The declaration order is the canonical
/// variable order `L < M < x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    L,
    M,
    X,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::L, Var::M, Var::X];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::L => "L",
            Var::M => "M",
            Var::X => "x",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector `(e_L, e_M, e_x)`; exponents may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [i32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(l: i32, m: i32, x: i32) -> Self {
        Monomial([l, m, x])
    }

    pub fn var(v: Var, k: i32) -> Self {
        let mut e = [0; 3];
        e[v.index()] = k;
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Exponent-wise `self >= other`, i.e. `other` divides `self` as
    /// ordinary monomials.
    pub fn dominates(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] >= other.0[i])
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn over(self, other: Monomial) -> Monomial {
        Monomial([
            self.0[0] - other.0[0],
            self.0[1] - other.0[1],
            self.0[2] - other.0[2],
        ])
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, ties broken
    /// lexicographically on `(L, M, x)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    // Sorted by descending monomial, coefficients nonzero.
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), 1)
    }

    /// `v^k`, with `k` possibly negative.
    pub fn var_pow(v: Var, k: i32) -> Self {
        Self::term(Monomial::var(v, k), 1)
    }

    /// Builds a canonical polynomial from arbitrary terms; repeated monomials
    /// are summed and zero coefficients dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            *map.entry(m).or_default() += c.into();
        }
        Self::from_map(map)
    }

    /// Convenience constructor from `(e_L, e_M, e_x, coefficient)` rows.
    pub fn from_rows(rows: &[(i32, i32, i32, i64)]) -> Self {
        Self::from_terms(
            rows.iter()
                .map(|&(l, m, x, c)| (Monomial::new(l, m, x), BigInt::from(c))),
        )
    }

    fn from_map(map: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    /// Wraps an already sorted, zero-free term list.
    fn from_sorted(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    /// True iff no exponent of any monomial is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_polynomial())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term in the canonical order.
    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    /// Coefficient of the exact monomial `m`.
    pub fn coeff(&self, m: Monomial) -> BigInt {
        match self.terms.binary_search_by(|(k, _)| m.cmp(k)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) != 0)
    }

    /// Largest exponent of `v`; `None` for the zero polynomial.
    pub fn degree(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    /// Smallest exponent of `v`; `None` for the zero polynomial.
    pub fn min_degree(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    /// Per-variable minimum exponents (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Monomial {
        let mut e = [0; 3];
        for v in Var::ALL {
            e[v.index()] = self.min_degree(v).unwrap_or(0);
        }
        Monomial(e)
    }

    /// Multiplies by the monomial `m` (always exact, also for negative
    /// exponents).
    pub fn shift(&self, m: Monomial) -> Poly {
        if m == Monomial::ONE {
            return self.clone();
        }
        // Multiplying by a monomial preserves the graded-lex order.
        Poly::from_sorted(
            self.terms
                .iter()
                .map(|(k, c)| (k.times(m), c.clone()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_sorted(self.terms.iter().map(|(m, k)| (*m, k * c)).collect())
    }

    /// Divides every coefficient by `c`; `None` if some coefficient is not a
    /// multiple of `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Option<Poly> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push((*m, q));
        }
        Some(Poly::from_sorted(out))
    }

    /// Nonnegative gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Number of factors of two dividing every coefficient.
    pub fn two_adic_content(&self) -> Option<u64> {
        self.terms
            .iter()
            .map(|(_, c)| c.trailing_zeros().unwrap_or(0))
            .min()
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Poly coefficient of `v^k`, free of `v`.
    pub fn coefficient_in(&self, v: Var, k: i32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == k)
            .map(|(m, c)| {
                let mut e = m.0;
                e[v.index()] = 0;
                (Monomial(e), c.clone())
            });
        Poly::from_terms(terms)
    }

    /// Decomposes `self = sum_k c_k v^k` with each `c_k` free of `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, Poly> {
        let mut buckets: BTreeMap<i32, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[v.index()];
            e[v.index()] = 0;
            buckets.entry(k).or_default().push((Monomial(e), c.clone()));
        }
        buckets
            .into_iter()
            .map(|(k, ts)| (k, Poly::from_terms(ts)))
            .collect()
    }

    /// Exact quotient `r` with `r * q == self`.
    ///
    /// When both operands are ordinary polynomials the quotient must be an
    /// ordinary polynomial too (divisibility in `Z[L, M, x]`); otherwise the
    /// division takes place in the Laurent ring, where monomials are units.
    /// The work is done by leading-term reduction under the canonical order
    /// after shifting both operands to have zero minimal exponents.
    pub fn exact_div(&self, q: &Poly) -> Result<Poly, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let polynomial_mode = self.is_polynomial() && q.is_polynomial();
        let p_shift = self.min_exponents();
        let q_shift = q.min_exponents();
        let p0 = self.shift(Monomial::ONE.over(p_shift));
        let q0 = q.shift(Monomial::ONE.over(q_shift));
        let r0 = p0.divide_normalized(&q0)?;
        let r = r0.shift(p_shift.over(q_shift));
        if polynomial_mode && !r.is_polynomial() {
            return Err(PolyError::NotDivisible);
        }
        Ok(r)
    }

    /// Division of ordinary polynomials whose minimal exponents are all zero.
    fn divide_normalized(&self, q: &Poly) -> Result<Poly, PolyError> {
        let (lm, lc) = q.leading().cloned().expect("nonzero divisor");
        if q.is_monomial() {
            if !self.terms.iter().all(|(m, _)| m.dominates(&lm)) {
                return Err(PolyError::NotDivisible);
            }
            let shifted = self.shift(Monomial::ONE.over(lm));
            return shifted.div_scalar(&lc).ok_or(PolyError::NotDivisible);
        }
        for v in Var::ALL {
            if self.degree(v) < q.degree(v) {
                return Err(PolyError::NotDivisible);
            }
        }
        let q_tail: Vec<(Monomial, BigInt)> = q.terms[1..].to_vec();
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !m.dominates(&lm) {
                return Err(PolyError::NotDivisible);
            }
            let (t, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let tm = m.over(lm);
            for (qm, qc) in &q_tail {
                let key = tm.times(*qm);
                let delta = &t * qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((tm, t));
        }
        Ok(Poly::from_sorted(quotient))
    }

    /// True iff `L*M^2 + 1` divides `self`, tested by the substitution
    /// `L -> -M^{-2}`.
    pub fn divisible_by_lm2p1(&self) -> bool {
        let mut acc: FxHashMap<(i32, i32), BigInt> = FxHashMap::default();
        for (m, c) in &self.terms {
            let [l, em, ex] = m.0;
            let key = (em - 2 * l, ex);
            let e = acc.entry(key).or_default();
            if l.rem_euclid(2) == 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
        acc.values().all(Zero::is_zero)
    }

    /// Substitutes `v := num / den` and returns `(N, den^d)` with
    /// `d = deg_v(self)`, so that the substituted value equals `N / den^d`.
    pub fn substitute_rational(
        &self,
        v: Var,
        num: &Poly,
        den: &Poly,
    ) -> Result<(Poly, Poly), PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.min_degree(v).unwrap_or(0) < 0 {
            return Err(PolyError::NegativeExponent(v));
        }
        let coeffs = self.coefficients_in(v);
        let d = self.degree(v).unwrap_or(0).max(0);
        let mut acc = coeffs.get(&d).cloned().unwrap_or_default();
        let mut den_pow = Poly::one();
        for k in (0..d).rev() {
            den_pow = &den_pow * den;
            acc = &acc * num;
            if let Some(c) = coeffs.get(&k) {
                acc += &(c * &den_pow);
            }
        }
        let den_total = if d == 0 {
            Poly::one()
        } else {
            den.pow(d as u32)
        };
        Ok((acc, den_total))
    }

    /// Exact rational value at `pt`.
    pub fn eval(&self, pt: &RationalPoint) -> Result<BigRational, PolyError> {
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let val = pt.get(v);
                if val.is_zero() {
                    if e < 0 {
                        return Err(PolyError::ZeroDenominator(v));
                    }
                    t = BigRational::zero();
                    break;
                }
                t *= rational_pow(val, e);
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Sets `v` to an integer value, producing a polynomial free of `v`.
    pub fn specialize(&self, v: Var, value: &BigInt) -> Result<Poly, PolyError> {
        let terms: Result<Vec<_>, _> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(v);
                let mut base = m.0;
                base[v.index()] = 0;
                let factor = if e == 0 {
                    BigInt::one()
                } else if value.is_zero() {
                    if e < 0 {
                        return Err(PolyError::ZeroDenominator(v));
                    }
                    BigInt::zero()
                } else if e > 0 {
                    num_traits::pow(value.clone(), e as usize)
                } else {
                    // Only units may be raised to negative powers.
                    if value.abs().is_one() {
                        num_traits::pow(value.clone(), (-e) as usize)
                    } else {
                        return Err(PolyError::NotDivisible);
                    }
                };
                Ok((Monomial(base), c * factor))
            })
            .collect();
        Ok(Poly::from_terms(terms?))
    }

    fn mul_serial(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Poly::zero();
        }
        if a.len() == 1 || b.len() == 1 {
            let (single, other) = if a.len() == 1 { (&a[0], b) } else { (&b[0], a) };
            return Poly::from_sorted(
                other
                    .iter()
                    .map(|(m, c)| (m.times(single.0), c * &single.1))
                    .collect(),
            );
        }
        let mut map: FxHashMap<Monomial, BigInt> =
            FxHashMap::with_capacity_and_hasher(a.len() + b.len(), Default::default());
        for (ma, ca) in a {
            for (mb, cb) in b {
                let prod = ca * cb;
                match map.entry(ma.times(*mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Poly::from_map(map)
    }

    fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigInt| if negate_b { -c } else { c.clone() };
        while i < a.terms.len() && j < b.terms.len() {
            let (ma, ca) = &a.terms[i];
            let (mb, cb) = &b.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, sign(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        out.extend(b.terms[j..].iter().map(|(m, c)| (*m, sign(c))));
        Poly::from_sorted(out)
    }
}

fn rational_pow(v: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { v.recip() } else { v.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Binomial coefficient with every out-of-range index mapped to zero.
pub fn binom_or_zero(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut r = BigInt::one();
    for i in 0..b {
        r = r * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    r
}

/// Exact rational coordinates for `(L, M, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPoint {
    values: [BigRational; 3],
}

impl RationalPoint {
    pub fn new(l: BigRational, m: BigRational, x: BigRational) -> Self {
        RationalPoint { values: [l, m, x] }
    }

    pub fn from_ints(l: i64, m: i64, x: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        Self::new(r(l), r(m), r(x))
    }

    pub fn get(&self, v: Var) -> &BigRational {
        &self.values[v.index()]
    }

    pub fn with(&self, v: Var, value: BigRational) -> Self {
        let mut p = self.clone();
        p.values[v.index()] = value;
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::to_text(self))
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl From<BigInt> for Poly {
    fn from(c: BigInt) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        Poly::merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        Poly::merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if big.len().saturating_mul(small.len()) < PAR_MUL_THRESHOLD || small.len() == 1 {
            return Poly::mul_serial(&big.terms, &small.terms);
        }
        let threads = rayon::current_num_threads().max(1);
        let chunk = big.len().div_ceil(threads * 2).max(1);
        big.terms
            .par_chunks(chunk)
            .map(|part| Poly::mul_serial(part, &small.terms))
            .reduce(Poly::zero, |a, b| &a + &b)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_sorted(self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

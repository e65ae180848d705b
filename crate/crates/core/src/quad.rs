//! Arithmetic in `Poly[z] / (z^2 - D)` and fractions whose denominators are
//! products of powers of `2`, `M` and `L*M^2 + 1`.

use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Monomial, Poly, PolyError, Var};

/// `D = 5L^2M^4 - 2L^2M^2 + L^2 - 2LM^4 + 12LM^2 - 2L + M^4 - 2M^2 + 5`.
static DISCRIMINANT: LazyLock<Poly> = LazyLock::new(|| {
    Poly::from_rows(&[
        (2, 4, 0, 5),
        (2, 2, 0, -2),
        (2, 0, 0, 1),
        (1, 4, 0, -2),
        (1, 2, 0, 12),
        (1, 0, 0, -2),
        (0, 4, 0, 1),
        (0, 2, 0, -2),
        (0, 0, 0, 5),
    ])
});

static LM2P1: LazyLock<Poly> = LazyLock::new(|| Poly::from_rows(&[(1, 2, 0, 1), (0, 0, 0, 1)]));

/// The radicand `D` with `z^2 = D`.
pub fn discriminant() -> &'static Poly {
    &DISCRIMINANT
}

/// `L*M^2 + 1`.
pub fn lm2p1() -> &'static Poly {
    &LM2P1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("denominator has a factor outside 2, M, L*M^2+1: residual {0}")]
    DenominatorShape(Poly),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `a + b*z` with `z^2 = D`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuadElem {
    pub a: Poly,
    pub b: Poly,
}

impl QuadElem {
    pub fn new(a: Poly, b: Poly) -> Self {
        QuadElem { a, b }
    }

    pub fn rational(a: Poly) -> Self {
        QuadElem { a, b: Poly::zero() }
    }

    pub fn zero() -> Self {
        Self::rational(Poly::zero())
    }

    pub fn one() -> Self {
        Self::rational(Poly::one())
    }

    /// The generator `z`.
    pub fn z() -> Self {
        QuadElem::new(Poly::zero(), Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn qmul(&self, other: &QuadElem) -> QuadElem {
        if self.is_rational() {
            return other.scale(&self.a);
        }
        if other.is_rational() {
            return self.scale(&other.a);
        }
        let bb = &self.b * &other.b;
        let a = &(&self.a * &other.a) + &(&bb * discriminant());
        let b = &(&self.a * &other.b) + &(&other.a * &self.b);
        QuadElem { a, b }
    }

    pub fn square(&self) -> QuadElem {
        if self.is_rational() {
            return QuadElem::rational(&self.a * &self.a);
        }
        let a = &(&self.a * &self.a) + &(&(&self.b * &self.b) * discriminant());
        let ab = &self.a * &self.b;
        QuadElem { b: &ab + &ab, a }
    }

    pub fn pow(&self, k: u32) -> QuadElem {
        let mut result = QuadElem::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.qmul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        result
    }

    /// The Galois conjugate `a - b*z`.
    pub fn conj(&self) -> QuadElem {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `a^2 - b^2 D`, the rational product of the element and its conjugate.
    pub fn norm(&self) -> Poly {
        let a2 = &self.a * &self.a;
        if self.b.is_zero() {
            return a2;
        }
        &a2 - &(&(&self.b * &self.b) * discriminant())
    }

    pub fn scale(&self, p: &Poly) -> QuadElem {
        QuadElem {
            a: &self.a * p,
            b: &self.b * p,
        }
    }

    pub fn shift(&self, m: Monomial) -> QuadElem {
        QuadElem {
            a: self.a.shift(m),
            b: self.b.shift(m),
        }
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
        }
    }

    pub fn add(&self, other: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn sub(&self, other: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
    }

    /// Component-wise exact division by a polynomial.
    pub fn exact_div(&self, q: &Poly) -> Result<QuadElem, PolyError> {
        Ok(QuadElem {
            a: self.a.exact_div(q)?,
            b: self.b.exact_div(q)?,
        })
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.a.contains_var(v) || self.b.contains_var(v)
    }

    /// Substitutes `v := num / den` into `p`, returning `(N, den^d)` with
    /// `d = deg_v(p)`; Horner's scheme over the coefficients of `p` in `v`.
    pub fn substitute(
        p: &Poly,
        v: Var,
        num: &QuadElem,
        den: &Poly,
    ) -> Result<(QuadElem, Poly), PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if p.min_degree(v).unwrap_or(0) < 0 {
            return Err(PolyError::NegativeExponent(v));
        }
        let coeffs = p.coefficients_in(v);
        let d = p.degree(v).unwrap_or(0).max(0);
        let mut acc = QuadElem::rational(coeffs.get(&d).cloned().unwrap_or_default());
        let mut den_pow = Poly::one();
        for k in (0..d).rev() {
            den_pow = &den_pow * den;
            acc = acc.qmul(num);
            if let Some(c) = coeffs.get(&k) {
                acc.a += &(c * &den_pow);
            }
        }
        let den_total = if d == 0 {
            Poly::one()
        } else {
            den.pow(d as u32)
        };
        Ok((acc, den_total))
    }
}

/// Exponents of the denominator `2^two * M^m * (L*M^2+1)^lm2p1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DenExponents {
    pub two: i64,
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "LM2p1")]
    pub lm2p1: i64,
}

impl DenExponents {
    pub fn new(two: i64, m: i64, lm2p1: i64) -> Self {
        DenExponents { two, m, lm2p1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.two == 0 && self.m == 0 && self.lm2p1 == 0
    }

    fn plus(self, o: DenExponents) -> DenExponents {
        DenExponents::new(self.two + o.two, self.m + o.m, self.lm2p1 + o.lm2p1)
    }
}

/// `num / (2^two * M^m * (L*M^2+1)^lm2p1)` in normal form: the numerator
/// carries no common factor of `2`, `M` or `L*M^2+1` (those live in the
/// exponents, which may be negative).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "RawFraction")]
pub struct FactoredFraction {
    #[serde(flatten)]
    num: QuadElem,
    den: DenExponents,
}

#[derive(Deserialize)]
struct RawFraction {
    a: Poly,
    b: Poly,
    den: DenExponents,
}

impl From<RawFraction> for FactoredFraction {
    fn from(r: RawFraction) -> Self {
        FactoredFraction::new(QuadElem::new(r.a, r.b), r.den)
    }
}

impl FactoredFraction {
    pub fn new(num: QuadElem, den: DenExponents) -> Self {
        let mut f = FactoredFraction { num, den };
        f.normalize();
        f
    }

    pub fn from_quad(num: QuadElem) -> Self {
        Self::new(num, DenExponents::default())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::from_quad(QuadElem::rational(p))
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    /// The monomial-like factor `2^two * M^m * (L*M^2+1)^lm2p1` (exponents
    /// may be negative).
    pub fn unit(two: i64, m: i64, lm2p1: i64) -> Self {
        FactoredFraction {
            num: QuadElem::one(),
            den: DenExponents::new(-two, -m, -lm2p1),
        }
    }

    /// `num / den` for an arbitrary polynomial `den`, which must factor over
    /// `±1, 2, M, L*M^2+1`.
    pub fn from_quotient(num: QuadElem, den: &Poly) -> Result<Self, QuadError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero.into());
        }
        let (ex, rest) = split_denominator(den);
        let num = if rest.is_one() {
            num
        } else if (-&rest).is_one() {
            num.neg()
        } else {
            return Err(QuadError::DenominatorShape(rest));
        };
        Ok(Self::new(num, ex))
    }

    pub fn num(&self) -> &QuadElem {
        &self.num
    }

    pub fn den(&self) -> DenExponents {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Moves every common factor `2`, `M`, `L*M^2 + 1` of the numerator into
    /// the exponents.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = DenExponents::default();
            return;
        }
        let twos = match (self.num.a.two_adic_content(), self.num.b.two_adic_content()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => 0,
        };
        if twos > 0 {
            let d = BigInt::one() << twos;
            self.num = QuadElem {
                a: self.num.a.div_scalar(&d).expect("2-adic content"),
                b: self.num.b.div_scalar(&d).expect("2-adic content"),
            };
            self.den.two -= twos as i64;
        }
        let m_min = [&self.num.a, &self.num.b]
            .iter()
            .filter_map(|p| p.min_degree(Var::M))
            .min()
            .unwrap_or(0);
        if m_min != 0 {
            self.num = self.num.shift(Monomial::var(Var::M, -m_min));
            self.den.m -= m_min as i64;
        }
        while self.num.a.divisible_by_lm2p1() && self.num.b.divisible_by_lm2p1() {
            self.num = self
                .num
                .exact_div(lm2p1())
                .expect("divisibility was established");
            self.den.lm2p1 -= 1;
        }
    }

    pub fn mul(&self, other: &FactoredFraction) -> FactoredFraction {
        FactoredFraction::new(self.num.qmul(&other.num), self.den.plus(other.den))
    }

    pub fn add(&self, other: &FactoredFraction) -> FactoredFraction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let target = DenExponents::new(
            self.den.two.max(other.den.two),
            self.den.m.max(other.den.m),
            self.den.lm2p1.max(other.den.lm2p1),
        );
        let lifted = |f: &FactoredFraction| {
            f.num.scale(&lift_factor(
                target.two - f.den.two,
                target.m - f.den.m,
                target.lm2p1 - f.den.lm2p1,
            ))
        };
        FactoredFraction::new(lifted(self).add(&lifted(other)), target)
    }

    pub fn neg(&self) -> FactoredFraction {
        FactoredFraction {
            num: self.num.neg(),
            den: self.den,
        }
    }

    pub fn sub(&self, other: &FactoredFraction) -> FactoredFraction {
        self.add(&other.neg())
    }

    pub fn conj(&self) -> FactoredFraction {
        FactoredFraction {
            num: self.num.conj(),
            den: self.den,
        }
    }

    /// Norm of the fraction as a rational (`b = 0`) fraction.
    pub fn norm(&self) -> FactoredFraction {
        FactoredFraction::new(
            QuadElem::rational(self.num.norm()),
            DenExponents::new(2 * self.den.two, 2 * self.den.m, 2 * self.den.lm2p1),
        )
    }

    pub fn pow(&self, k: u32) -> FactoredFraction {
        FactoredFraction::new(
            self.num.pow(k),
            DenExponents::new(
                self.den.two * k as i64,
                self.den.m * k as i64,
                self.den.lm2p1 * k as i64,
            ),
        )
    }

    /// Multiplies by `2^two * M^m * (L*M^2+1)^lm2p1`.
    pub fn times_unit(&self, two: i64, m: i64, lm2p1: i64) -> FactoredFraction {
        if self.is_zero() {
            return self.clone();
        }
        // Normal form is preserved: only the exponents move.
        FactoredFraction {
            num: self.num.clone(),
            den: DenExponents::new(self.den.two - two, self.den.m - m, self.den.lm2p1 - lm2p1),
        }
    }

    /// The element as a `QuadElem` when all exponents are zero.
    pub fn as_integral(&self) -> Option<&QuadElem> {
        self.den.is_trivial().then_some(&self.num)
    }
}

/// `2^two * M^m * (L*M^2+1)^lm2p1` as a polynomial; exponents must be
/// nonnegative except for `m`.
fn lift_factor(two: i64, m: i64, k: i64) -> Poly {
    debug_assert!(two >= 0 && k >= 0);
    let c = BigInt::one() << (two as u64);
    lm2p1()
        .pow(k as u32)
        .shift(Monomial::var(Var::M, m as i32))
        .scale(&c)
}

/// Peels powers of `2`, `M` and `L*M^2+1` off `den`, leaving the cofactor.
fn split_denominator(den: &Poly) -> (DenExponents, Poly) {
    let mut ex = DenExponents::default();
    let mut rest = den.clone();
    let twos = rest.two_adic_content().unwrap_or(0);
    if twos > 0 {
        rest = rest
            .div_scalar(&(BigInt::one() << twos))
            .expect("2-adic content");
        ex.two = twos as i64;
    }
    let m_min = rest.min_degree(Var::M).unwrap_or(0);
    if m_min != 0 {
        rest = rest.shift(Monomial::var(Var::M, -m_min));
        ex.m = m_min as i64;
    }
    while rest.divisible_by_lm2p1() && !rest.is_zero() {
        rest = rest
            .exact_div(lm2p1())
            .expect("divisibility was established");
        ex.lm2p1 += 1;
    }
    (ex, rest)
}

/// `ff * sqrt(L*M^2+1)` when `sqrt_lm2p1` is set, otherwise just `ff`.
///
/// Only the negative-`n` closed forms need the half power; it is kept
/// symbolic and disappears in the norm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefactoredFraction {
    #[serde(flatten)]
    pub ff: FactoredFraction,
    #[serde(rename = "sqrt_LM2p1")]
    pub sqrt_lm2p1: bool,
}

impl PrefactoredFraction {
    pub fn plain(ff: FactoredFraction) -> Self {
        PrefactoredFraction {
            ff,
            sqrt_lm2p1: false,
        }
    }

    pub fn with_sqrt(ff: FactoredFraction) -> Self {
        PrefactoredFraction {
            ff,
            sqrt_lm2p1: true,
        }
    }

    pub fn conj(&self) -> Self {
        PrefactoredFraction {
            ff: self.ff.conj(),
            sqrt_lm2p1: self.sqrt_lm2p1,
        }
    }

    /// `p(u) p(-u)`; the half power contributes one whole `L*M^2+1`.
    pub fn norm(&self) -> FactoredFraction {
        let n = self.ff.norm();
        if self.sqrt_lm2p1 {
            n.times_unit(0, 0, 1)
        } else {
            n
        }
    }
}

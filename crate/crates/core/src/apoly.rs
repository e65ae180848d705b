//! `A_{2n}(L, M)` by three independent routes:
//!
//! * `closed`: the explicit sum for `p_{2n}(z)` evaluated in fraction
//!   arithmetic, then its norm;
//! * `recursive-subst` / `closed-subst`: the longitude substitution
//!   `x = (...)/(2(LM^6 + M^4))` applied to `P_{2n}` from the recursion or
//!   from the explicit sum, then the norm times the clearing multiplier.
//!
//! Every route ends in [`finish`], which insists that the result is an
//! ordinary polynomial in `L, M` with no factor `L`, `M` or `L*M^2+1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json::canonical_hash;
use crate::poly::{Monomial, Poly, Var};
use crate::quad::{
    lm2p1, DenExponents, FactoredFraction, PrefactoredFraction, QuadElem, QuadError,
};
use crate::riley::{rm_closed, rm_recursive};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Closed,
    RecursiveSubst,
    ClosedSubst,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Closed, Route::RecursiveSubst, Route::ClosedSubst];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::RecursiveSubst => "recursive-subst",
            Route::ClosedSubst => "closed-subst",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Route::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown route {s:?} (closed, recursive-subst, closed-subst)"))
    }
}

/// Which construction of `P_{2n}` feeds the substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmRoute {
    Recursive,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApolyError {
    #[error("n must be nonzero")]
    ZeroIndex,
    #[error("n = {n}: normalization left a non-polynomial result {residual:?}")]
    NotPolynomial {
        n: i64,
        residual: Box<FactoredFraction>,
    },
    #[error("n = {n}: result is divisible by {factor}")]
    RedundantFactor {
        n: i64,
        factor: String,
        residual: Box<Poly>,
    },
    #[error("n = {n}: specialization check failed: {detail}")]
    Specialization { n: i64, detail: String },
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// `x = N_x / (2(LM^6 + M^4))` with
/// `N_x = -2LM^8 + LM^6 - LM^4 - M^6 + M^4 - 2M^2 + M^4 z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSubstitution {
    pub num: QuadElem,
    pub den: Poly,
}

pub fn x_substitution() -> XSubstitution {
    XSubstitution {
        num: QuadElem::new(
            Poly::from_rows(&[
                (1, 8, 0, -2),
                (1, 6, 0, 1),
                (1, 4, 0, -1),
                (0, 6, 0, -1),
                (0, 4, 0, 1),
                (0, 2, 0, -2),
            ]),
            Poly::var_pow(Var::M, 4),
        ),
        den: Poly::from_rows(&[(1, 6, 0, 2), (0, 4, 0, 2)]),
    }
}

pub fn discriminant() -> Poly {
    crate::quad::discriminant().clone()
}

/// `p(x_subst)` for a polynomial `p` in `M, x` (and possibly `L`).
pub fn substitute_x(p: &Poly) -> Result<FactoredFraction, ApolyError> {
    let xs = x_substitution();
    let (num, den) = QuadElem::substitute(p, Var::X, &xs.num, &xs.den).map_err(QuadError::from)?;
    Ok(FactoredFraction::from_quotient(num, &den)?)
}

/// `q_{2n}(z) = P_{2n}(x_subst)`.
pub fn q_of_z(n: i64, rm: RmRoute) -> Result<FactoredFraction, ApolyError> {
    if n == 0 {
        return Ok(FactoredFraction::one());
    }
    let p = match rm {
        RmRoute::Recursive => rm_recursive(n).poly,
        RmRoute::Closed => rm_closed(n).poly,
    };
    substitute_x(&p)
}

/// `(M-exponent, (LM^2+1)-exponent)` of the multiplier that turns
/// `q_{2n}(u) q_{2n}(-u)` into `A_{2n}`.
pub fn clearing_multiplier(n: i64) -> (i64, i64) {
    if n > 0 {
        (-8 * n, 4 * n)
    } else {
        (8 * n + 4, -4 * n - 1)
    }
}

/// `p_{2n}(z)` recovered from `q_{2n}(z)`: `M^{-4n}(LM^2+1)^{2n} q` for
/// `n > 0`, and `M^{4n+2}(LM^2+1)^{-2n-1/2} q` for `n < 0`.
pub fn p_from_q(n: i64, q: &FactoredFraction) -> PrefactoredFraction {
    if n >= 0 {
        PrefactoredFraction::plain(q.times_unit(0, -4 * n, 2 * n))
    } else {
        PrefactoredFraction::with_sqrt(q.times_unit(0, 4 * n + 2, -2 * n - 1))
    }
}

struct Blocks {
    /// `-2LM^6 + LM^4 - LM^2 - M^4 + M^2 + (M^2) z - 2`
    first: QuadElem,
    /// `LM^2 + L + M^2 + 1 + z`
    twist: QuadElem,
    /// `-3LM^2 + L + M^2 - 3 + z`
    base: QuadElem,
    /// `-LM^2 + L + M^2 - 1 + z`, the odd-`i` last factor
    odd_last: QuadElem,
}

fn blocks() -> Blocks {
    let z1 = Poly::one();
    Blocks {
        first: QuadElem::new(
            Poly::from_rows(&[
                (1, 6, 0, -2),
                (1, 4, 0, 1),
                (1, 2, 0, -1),
                (0, 4, 0, -1),
                (0, 2, 0, 1),
                (0, 0, 0, -2),
            ]),
            Poly::var_pow(Var::M, 2),
        ),
        twist: QuadElem::new(
            Poly::from_rows(&[(1, 2, 0, 1), (1, 0, 0, 1), (0, 2, 0, 1), (0, 0, 0, 1)]),
            z1.clone(),
        ),
        base: QuadElem::new(
            Poly::from_rows(&[(1, 2, 0, -3), (1, 0, 0, 1), (0, 2, 0, 1), (0, 0, 0, -3)]),
            z1.clone(),
        ),
        odd_last: QuadElem::new(
            Poly::from_rows(&[(1, 2, 0, -1), (1, 0, 0, 1), (0, 2, 0, 1), (0, 0, 0, -1)]),
            z1,
        ),
    }
}

/// The four building blocks of the substituted summands as fractions:
/// `x`, `M^4 + M^2 x - 2M^2 + 1`, `M^4 + M^2 x + 1` and the odd-`i` last
/// factor `M^4 + M^2 x - M^2 + 1`, each with `x` replaced by the longitude
/// substitution.
pub fn building_blocks() -> [FactoredFraction; 4] {
    let b = blocks();
    // Each is M^2 (...) / (2 (LM^2+1)), except x itself, which is
    // (...) / (2 M^2 (LM^2+1)).
    let frac = |e: QuadElem, m: i64| FactoredFraction::new(e, DenExponents::new(1, m, 1));
    [
        frac(b.first, 2),
        frac(b.base, -2),
        frac(b.twist, -2),
        frac(b.odd_last, -2),
    ]
}

/// `p_{2n}(z)` from the explicit sum over `i`. For `n < 0` the overall
/// `(LM^2+1)^{-1/2}` is split as `(LM^2+1)^{-1} * sqrt(LM^2+1)` so that only
/// integer exponents are stored.
pub fn p_of_z(n: i64) -> PrefactoredFraction {
    if n == 0 {
        return PrefactoredFraction::plain(FactoredFraction::one());
    }
    let b = blocks();
    let upper = 2 * n.abs();
    let mut total = FactoredFraction::zero();
    let mut twist_pow = QuadElem::one();
    let mut first_pows = vec![QuadElem::one()];
    let mut base_pows = vec![QuadElem::one()];
    for i in 0..=upper {
        if i > 0 {
            twist_pow = twist_pow.qmul(&b.twist);
        }
        let half_up = (i + 1).div_euclid(2);
        let half_down = i.div_euclid(2);
        let coeff = if n > 0 {
            crate::poly::binom_or_zero(half_down + n, i)
        } else {
            crate::poly::binom_or_zero((i - 1).div_euclid(2) - n, i)
        };
        if coeff.is_zero() {
            continue;
        }
        let two_exp = -2 * half_up - i;
        let m2_exp = -half_down - 2 * half_up + i + n.abs();
        let lm_exp = -2 * half_up - i + 2 * n.abs();
        // The (base)^{floor((i-1)/2)} power absorbs the even-i last factor.
        let base_exp = if i % 2 == 0 { i / 2 } else { (i - 1) / 2 };
        while first_pows.len() <= half_up as usize {
            let next = first_pows.last().unwrap().qmul(&b.first);
            first_pows.push(next);
        }
        while base_pows.len() <= base_exp as usize {
            let next = base_pows.last().unwrap().qmul(&b.base);
            base_pows.push(next);
        }
        let mut num = first_pows[half_up as usize]
            .qmul(&twist_pow)
            .qmul(&base_pows[base_exp as usize]);
        if i % 2 == 1 {
            num = num.qmul(&b.odd_last);
            if n < 0 {
                num = num.neg();
            }
        }
        let num = num.scale(&Poly::constant(coeff));
        let summand = FactoredFraction::new(num, DenExponents::new(-two_exp, -2 * m2_exp, -lm_exp));
        total = total.add(&summand);
    }
    if n > 0 {
        PrefactoredFraction::plain(total)
    } else {
        PrefactoredFraction::with_sqrt(total.times_unit(0, 0, -1))
    }
}

/// A computed A-polynomial with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct APolyRecord {
    pub n: i64,
    pub route: Route,
    pub hash: String,
    pub a: Poly,
}

impl APolyRecord {
    pub fn new(n: i64, route: Route, a: Poly) -> Self {
        APolyRecord {
            n,
            route,
            hash: canonical_hash(&a),
            a,
        }
    }
}

/// The norm `p_{2n}(u) p_{2n}(-u)` before the structural checks.
pub fn raw_norm(n: i64, route: Route) -> Result<FactoredFraction, ApolyError> {
    if n == 0 {
        return Err(ApolyError::ZeroIndex);
    }
    let norm = match route {
        Route::Closed => p_of_z(n).norm(),
        Route::RecursiveSubst | Route::ClosedSubst => {
            let rm = if route == Route::RecursiveSubst {
                RmRoute::Recursive
            } else {
                RmRoute::Closed
            };
            let q = q_of_z(n, rm)?;
            let (m_exp, l_exp) = clearing_multiplier(n);
            q.norm().times_unit(0, m_exp, l_exp)
        }
    };
    Ok(norm)
}

pub fn a_polynomial(n: i64, route: Route) -> Result<APolyRecord, ApolyError> {
    let norm = raw_norm(n, route)?;
    let a = finish(n, &norm)?;
    Ok(APolyRecord::new(n, route, a))
}

/// Checks a normalized norm and extracts `A_{2n}`.
pub fn finish(n: i64, norm: &FactoredFraction) -> Result<Poly, ApolyError> {
    let not_poly = || ApolyError::NotPolynomial {
        n,
        residual: Box::new(norm.clone()),
    };
    if !norm.num().is_rational() {
        return Err(not_poly());
    }
    let den = norm.den();
    if den.two > 0 || den.m > 0 || den.lm2p1 > 0 {
        return Err(not_poly());
    }
    let a = norm.num().a.clone();
    let redundant = |factor: &str| ApolyError::RedundantFactor {
        n,
        factor: factor.to_string(),
        residual: Box::new(a.clone()),
    };
    if den.two < 0 {
        return Err(redundant("2"));
    }
    if den.m < 0 {
        return Err(redundant("M"));
    }
    if den.lm2p1 < 0 {
        return Err(redundant("L*M^2+1"));
    }
    if a.contains_var(Var::X) || !a.is_polynomial() {
        return Err(not_poly());
    }
    for (name, factor) in redundant_factor_candidates() {
        if a.exact_div(&factor).is_ok() {
            return Err(redundant(name));
        }
    }
    check_boundary_terms(n, &a)?;
    Ok(a)
}

pub fn redundant_factor_candidates() -> [(&'static str, Poly); 3] {
    [
        ("L", Poly::var(Var::L)),
        ("M", Poly::var(Var::M)),
        ("L*M^2+1", lm2p1().clone()),
    ]
}

/// `A_{2n}(0, M) = M^{8n}` for `n > 0`; for `n < 0` the constant term is `1`
/// and `L^{3(|n|-1)+1}` occurs with an `M`-free coefficient.
fn check_boundary_terms(n: i64, a: &Poly) -> Result<(), ApolyError> {
    let at_l0 = a
        .specialize(Var::L, &BigInt::zero())
        .expect("L = 0 is a polynomial specialization");
    if n > 0 {
        let expected = Poly::var_pow(Var::M, 8 * n as i32);
        if at_l0 != expected {
            return Err(ApolyError::Specialization {
                n,
                detail: format!("A(0, M) = {at_l0}, expected M^{}", 8 * n),
            });
        }
    } else {
        let k = 3 * (n.abs() - 1) + 1;
        if a.coeff(Monomial::ONE) != BigInt::from(1) {
            return Err(ApolyError::Specialization {
                n,
                detail: "constant term is not 1".into(),
            });
        }
        if a.coeff(Monomial::new(k as i32, 0, 0)).is_zero() {
            return Err(ApolyError::Specialization {
                n,
                detail: format!("no L^{k} term"),
            });
        }
    }
    Ok(())
}

#![allow(dead_code)]

use apoly_core::poly::{Poly, RationalPoint, Var};
use apoly_core::quad::QuadElem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Rows = Vec<(i32, i32, i32, i64)>;

pub fn laurent_rows() -> impl Strategy<Value = Rows> {
    prop::collection::vec((-2i32..3, -3i32..4, -1i32..3, -20i64..21), 0..7)
}

pub fn poly_rows() -> impl Strategy<Value = Rows> {
    prop::collection::vec((0i32..3, 0i32..4, 0i32..3, -20i64..21), 0..7)
}

/// Polynomials in `L, M` only, the coefficient ring of the extension.
pub fn lm_rows() -> impl Strategy<Value = Rows> {
    prop::collection::vec((0i32..3, -2i32..4, Just(0), -9i64..10), 0..5)
}

pub fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-7i64..0, 1i64..8], 1i64..6)
        .prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

pub fn point() -> impl Strategy<Value = RationalPoint> {
    (nonzero_rational(), nonzero_rational(), nonzero_rational())
        .prop_map(|(l, m, x)| RationalPoint::new(l, m, x))
}

pub fn quad(a: &Rows, b: &Rows) -> QuadElem {
    QuadElem::new(Poly::from_rows(a), Poly::from_rows(b))
}

pub fn prop_norm_multiplicative(
    (a1, b1, a2, b2): (Rows, Rows, Rows, Rows),
) -> Result<(), TestCaseError> {
    let x = quad(&a1, &b1);
    let y = quad(&a2, &b2);
    prop_assert_eq!(x.qmul(&y).norm(), &x.norm() * &y.norm());
    Ok(())
}

pub fn prop_conj_automorphism(
    (a1, b1, a2, b2): (Rows, Rows, Rows, Rows),
) -> Result<(), TestCaseError> {
    let x = quad(&a1, &b1);
    let y = quad(&a2, &b2);
    prop_assert_eq!(x.qmul(&y).conj(), x.conj().qmul(&y.conj()));
    prop_assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
    prop_assert_eq!(x.conj().conj(), x.clone());
    prop_assert_eq!(x.qmul(&x.conj()), QuadElem::rational(x.norm()));
    Ok(())
}

pub fn prop_exact_div_round_trip((p, q): (Rows, Rows)) -> Result<(), TestCaseError> {
    let p = Poly::from_rows(&p);
    let q = Poly::from_rows(&q);
    prop_assume!(!q.is_zero());
    let prod = &p * &q;
    let got = prod.exact_div(&q);
    // In Z[L, M, x] a Laurent quotient of two polynomials is not a quotient.
    if prod.is_polynomial() && q.is_polynomial() && !p.is_polynomial() {
        prop_assert!(got.is_err());
    } else {
        prop_assert_eq!(got, Ok(p.clone()));
    }
    if !q.is_monomial() {
        prop_assert!((&prod + &Poly::one()).exact_div(&q).is_err());
    }
    Ok(())
}

pub fn prop_eval_homomorphism(
    (p, q, pt): (Rows, Rows, RationalPoint),
) -> Result<(), TestCaseError> {
    let p = Poly::from_rows(&p);
    let q = Poly::from_rows(&q);
    let ep = p.eval(&pt).unwrap();
    let eq = q.eval(&pt).unwrap();
    prop_assert_eq!((&p * &q).eval(&pt).unwrap(), &ep * &eq);
    prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &ep + &eq);
    prop_assert_eq!((-&p).eval(&pt).unwrap(), -ep);
    Ok(())
}

pub fn prop_substitute_consistent(
    (p, num, den, pt): (Rows, Rows, Rows, RationalPoint),
) -> Result<(), TestCaseError> {
    let p = Poly::from_rows(&p);
    let num = Poly::from_rows(&num);
    let den = Poly::from_rows(&den);
    let dv = den.eval(&pt).unwrap();
    prop_assume!(!dv.is_zero());
    let (n, d) = p.substitute_rational(Var::X, &num, &den).unwrap();
    let xv = num.eval(&pt).unwrap() / dv;
    let direct = p.eval(&pt.with(Var::X, xv)).unwrap();
    prop_assert_eq!(n.eval(&pt).unwrap() / d.eval(&pt).unwrap(), direct);
    Ok(())
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a + b sqrt(d)` over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Q2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Q2 {
    pub fn r(a: BigRational) -> Q2 {
        Q2 {
            a,
            b: BigRational::zero(),
        }
    }
    pub fn add(&self, o: &Q2) -> Q2 {
        Q2 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
    pub fn sub(&self, o: &Q2) -> Q2 {
        Q2 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
    pub fn mul(&self, o: &Q2, d: &BigRational) -> Q2 {
        Q2 {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
    pub fn norm(&self, d: &BigRational) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * d
    }
}

fn horner(coeffs: &[BigRational], x: &Q2, d: &BigRational) -> Q2 {
    let mut acc = Q2::r(BigRational::zero());
    for c in coeffs {
        acc = acc.mul(x, d).add(&Q2::r(c.clone()));
    }
    acc
}

fn mpoly(m: &BigRational, rows: &[(i32, i64)]) -> BigRational {
    rows.iter().fold(BigRational::zero(), |s, &(e, c)| {
        s + rat(c) * num_traits::pow(m.clone(), e as usize)
    })
}

/// `A_{2n}(L0, M0)` computed without symbolic arithmetic: the recursion is
/// run on numbers in `Q(sqrt(D(L0, M0)))` from literal `Q`, `P_2`, `P_{-2}`.
pub fn pointwise_a(n: i64, l: &BigRational, m: &BigRational) -> BigRational {
    let m2 = m * m;
    let m4 = &m2 * &m2;
    let l2 = l * l;
    let d = rat(5) * &l2 * &m4 - rat(2) * &l2 * &m2 + &l2 - rat(2) * l * &m4 + rat(12) * l * &m2
        - rat(2) * l
        + &m4
        - rat(2) * &m2
        + rat(5);
    let mp = |e: i32| num_traits::pow(m.clone(), e as usize);
    let xa = -rat(2) * l * mp(8) + l * mp(6) - l * mp(4) - mp(6) + mp(4) - rat(2) * mp(2);
    let den = rat(2) * (l * mp(6) + mp(4));
    let x = Q2 {
        a: &xa / &den,
        b: mp(4) / &den,
    };
    let one = Q2::r(BigRational::one());
    let twist = Q2::r(mp(4) + BigRational::one()).add(&Q2::r(mp(2)).mul(&x, &d));
    let base = twist.sub(&Q2::r(rat(2) * mp(2)));
    let q = x
        .mul(&twist, &d)
        .mul(&twist, &d)
        .mul(&base, &d)
        .add(&Q2::r(rat(2) * mp(6)));
    let (p0, p1) = if n > 0 {
        let c = [
            mpoly(m, &[(6, 1)]),
            mpoly(m, &[(8, 3), (6, -1), (4, 3)]),
            mpoly(m, &[(10, 3), (8, -2), (6, 5), (4, -2), (2, 3)]),
            mpoly(
                m,
                &[(12, 1), (10, -1), (8, 2), (6, -2), (4, 2), (2, -1), (0, 1)],
            ),
            mpoly(m, &[(6, 1)]),
        ];
        (one, horner(&c, &x, &d))
    } else {
        let c = [
            mpoly(m, &[(4, -1)]),
            mpoly(m, &[(6, -2), (4, 1), (2, -2)]),
            mpoly(m, &[(8, -1), (6, 1), (4, -2), (2, 1), (0, -1)]),
            mpoly(m, &[(4, 1)]),
        ];
        (Q2::r(BigRational::one() / &m2), horner(&c, &x, &d))
    };
    let m12 = Q2::r(mp(12));
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..n.abs() {
        let next = q.mul(&cur, &d).sub(&m12.mul(&prev, &d));
        prev = std::mem::replace(&mut cur, next);
    }
    let (me, le) = if n > 0 {
        (-8 * n, 4 * n)
    } else {
        (8 * n + 4, -4 * n - 1)
    };
    let lm = l * &m2 + BigRational::one();
    let pw = |v: &BigRational, e: i64| {
        let b = if e < 0 { v.recip() } else { v.clone() };
        num_traits::pow(b, e.unsigned_abs() as usize)
    };
    cur.norm(&d) * pw(m, me) * pw(&lm, le)
}

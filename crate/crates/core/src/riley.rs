//! Riley-Mednykh polynomials `P_{2n}(x, M)` of `C(2n, 4)`, by the
//! three-term recursion and by the explicit binomial sum.

use std::sync::LazyLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::poly::{binom_or_zero, Monomial, Poly, Var};

static Q: LazyLock<Poly> = LazyLock::new(|| {
    let q = q_literal();
    assert_eq!(q, q_factored(), "Q does not match its factored form");
    q
});

fn m_pow(k: i32) -> Poly {
    Poly::var_pow(Var::M, k)
}

/// `M^4 + M^2 x + 1`.
fn twist_factor() -> Poly {
    Poly::from_rows(&[(0, 4, 0, 1), (0, 2, 1, 1), (0, 0, 0, 1)])
}

/// `M^4 + M^2 x - 2M^2 + 1`.
fn base_factor() -> Poly {
    Poly::from_rows(&[(0, 4, 0, 1), (0, 2, 1, 1), (0, 2, 0, -2), (0, 0, 0, 1)])
}

/// `Q` written out coefficient by coefficient in `x`.
pub fn q_literal() -> Poly {
    Poly::from_rows(&[
        (0, 6, 4, 1),
        (0, 8, 3, 3),
        (0, 6, 3, -2),
        (0, 4, 3, 3),
        (0, 10, 2, 3),
        (0, 8, 2, -4),
        (0, 6, 2, 6),
        (0, 4, 2, -4),
        (0, 2, 2, 3),
        (0, 12, 1, 1),
        (0, 10, 1, -2),
        (0, 8, 1, 3),
        (0, 6, 1, -4),
        (0, 4, 1, 3),
        (0, 2, 1, -2),
        (0, 0, 1, 1),
        (0, 6, 0, 2),
    ])
}

/// `x (M^4+M^2x+1)^2 (M^4+M^2x-2M^2+1) + 2M^6`.
pub fn q_factored() -> Poly {
    let x = Poly::var(Var::X);
    &(&(&x * &twist_factor().pow(2)) * &base_factor()) + &Poly::term(Monomial::new(0, 6, 0), 2)
}

/// The auxiliary polynomial `Q` of the recursion.
pub fn q_poly() -> &'static Poly {
    &Q
}

/// `P_2`.
pub fn p2_initial() -> Poly {
    Poly::from_rows(&[
        (0, 6, 4, 1),
        (0, 8, 3, 3),
        (0, 6, 3, -1),
        (0, 4, 3, 3),
        (0, 10, 2, 3),
        (0, 8, 2, -2),
        (0, 6, 2, 5),
        (0, 4, 2, -2),
        (0, 2, 2, 3),
        (0, 12, 1, 1),
        (0, 10, 1, -1),
        (0, 8, 1, 2),
        (0, 6, 1, -2),
        (0, 4, 1, 2),
        (0, 2, 1, -1),
        (0, 0, 1, 1),
        (0, 6, 0, 1),
    ])
}

/// `P_{-2}`.
pub fn p_minus2_initial() -> Poly {
    Poly::from_rows(&[
        (0, 4, 3, -1),
        (0, 6, 2, -2),
        (0, 4, 2, 1),
        (0, 2, 2, -2),
        (0, 8, 1, -1),
        (0, 6, 1, 1),
        (0, 4, 1, -2),
        (0, 2, 1, 1),
        (0, 0, 1, -1),
        (0, 4, 0, 1),
    ])
}

/// `P_0` of the downward (`n < 0`) series.
pub fn p0_negative_series() -> Poly {
    m_pow(-2)
}

/// `P_{2n}` tagged with its index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMPolynomial {
    pub n: i64,
    pub poly: Poly,
}

impl RMPolynomial {
    pub fn x_degree(&self) -> i32 {
        self.poly.degree(Var::X).unwrap_or(0)
    }
}

/// `P_{2n}` from `P_{2n} = Q P_{2(n∓1)} - M^12 P_{2(n∓2)}`, stepping up from
/// `(P_0 = 1, P_2)` for `n >= 0` and down from `(P_0 = M^-2, P_{-2})` for
/// `n < 0`.
pub fn rm_recursive(n: i64) -> RMPolynomial {
    let m12 = m_pow(12);
    let (mut prev, mut cur) = if n >= 0 {
        (Poly::one(), p2_initial())
    } else {
        (p0_negative_series(), p_minus2_initial())
    };
    let steps = n.unsigned_abs();
    let poly = match steps {
        0 => Poly::one(),
        _ => {
            for _ in 1..steps {
                let next = &(q_poly() * &cur) - &(&m12 * &prev);
                prev = std::mem::replace(&mut cur, next);
            }
            cur
        }
    };
    RMPolynomial { n, poly }
}

/// The whole sequence `P_0, P_{±2}, ..., P_{2n}` from the recursion.
pub fn rm_recursive_series(n: i64) -> Vec<Poly> {
    (0..=n.unsigned_abs() as i64)
        .map(|k| rm_recursive(if n < 0 { -k } else { k }).poly)
        .collect()
}

/// `P_{2n}` from the explicit sum over `i`.
///
/// The `(M^4+M^2x-2M^2+1)^{floor((i-1)/2)}` power is paired with the last
/// factor of each summand: for even `i` that factor is the base itself, so
/// the combined exponent `i/2` is never negative; for odd `i` it is the base
/// plus `M^2` (with a sign flip in the `n < 0` branch).
pub fn rm_closed(n: i64) -> RMPolynomial {
    let twist = twist_factor();
    let base = base_factor();
    let m2 = m_pow(2);
    let upper = 2 * n.abs();
    let mut total = Poly::zero();
    let mut twist_pow = Poly::one();
    let mut base_pows = vec![Poly::one()];
    for i in 0..=upper {
        if i > 0 {
            twist_pow = &twist_pow * &twist;
        }
        let (coeff, m2_exp) = if n >= 0 {
            (
                binom_or_zero(i.div_euclid(2) + n, i),
                -i.div_euclid(2) - 2 * (i + 1).div_euclid(2) + 3 * n,
            )
        } else {
            (
                binom_or_zero((i - 1).div_euclid(2) - n, i),
                -i.div_euclid(2) - 2 * (i + 1).div_euclid(2) - 3 * n - 1,
            )
        };
        if coeff.is_zero() {
            continue;
        }
        let paired_exp = if i % 2 == 0 {
            (i - 1).div_euclid(2) + 1
        } else {
            (i - 1).div_euclid(2)
        };
        assert!(paired_exp >= 0, "negative base power survives at i = {i}");
        let paired_exp = paired_exp as usize;
        while base_pows.len() <= paired_exp {
            let next = base_pows.last().unwrap() * &base;
            base_pows.push(next);
        }
        let mut summand = &base_pows[paired_exp] * &twist_pow;
        if i % 2 == 1 {
            let last = &base + &m2;
            summand = &summand * &last;
            if n < 0 {
                summand = -summand;
            }
        }
        let shift = Monomial::new(0, 2 * m2_exp as i32, (i + 1).div_euclid(2) as i32);
        let summand = summand.shift(shift).scale(&coeff);
        total += &summand;
    }
    RMPolynomial { n, poly: total }
}

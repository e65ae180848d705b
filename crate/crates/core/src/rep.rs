//! Brute-force check of `P_{2n}` against the parabolic representation of
//! the knot group: `rho(s) = [[M, 1], [0, 1/M]]`,
//! `rho(t) = [[M, 0], [2 - M^2 - M^-2 - x, 1/M]]`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::poly::{Monomial, Poly, Var};
use crate::riley::rm_recursive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    S,
    SInv,
    T,
    TInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::S => "s",
            Letter::SInv => "S",
            Letter::T => "t",
            Letter::TInv => "T",
        })
    }
}

/// A word in `s, t` and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    /// `(t s^-1 t s^-1 t^-1 s t^-1 s)^n`; for `n < 0` the `|n|`-th power of
    /// the inverse block.
    pub fn w(n: i64) -> GroupWord {
        use Letter::*;
        let block = GroupWord(vec![T, SInv, T, SInv, TInv, S, TInv, S]);
        let block = if n < 0 { block.inverse() } else { block };
        GroupWord(block.0.repeat(n.unsigned_abs() as usize))
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `w*`: the same letters in reverse order.
    pub fn reversed(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord([self.0.as_slice(), other.0.as_slice()].concat())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2(pub [[Poly; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Mat2 {
        Mat2([[Poly::one(), Poly::zero()], [Poly::zero(), Poly::one()]])
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &(&self.0[i][0] * &o.0[0][j]) + &(&self.0[i][1] * &o.0[1][j]);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &self.0[i][j] - &o.0[i][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn det(&self) -> Poly {
        &(&self.0[0][0] * &self.0[1][1]) - &(&self.0[0][1] * &self.0[1][0])
    }

    pub fn trace(&self) -> Poly {
        &self.0[0][0] + &self.0[1][1]
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Mat2 {
        let [[a, b], [c, d]] = &self.0;
        Mat2([[d.clone(), -b], [-c, a.clone()]])
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.0.iter().flatten()
    }
}

pub fn rho(letter: Letter) -> Mat2 {
    let m = Poly::var(Var::M);
    let m_inv = Poly::var_pow(Var::M, -1);
    match letter {
        Letter::S => Mat2([[m, Poly::one()], [Poly::zero(), m_inv]]),
        Letter::T => {
            let c = Poly::from_rows(&[(0, 0, 0, 2), (0, 2, 0, -1), (0, -2, 0, -1), (0, 0, 1, -1)]);
            Mat2([[m, Poly::zero()], [c, m_inv]])
        }
        Letter::SInv => rho(Letter::S).adjugate(),
        Letter::TInv => rho(Letter::T).adjugate(),
    }
}

pub fn eval_word(w: &GroupWord) -> Mat2 {
    w.0.iter()
        .fold(Mat2::identity(), |acc, &l| acc.mul(&rho(l)))
}

/// `rho(s) rho(w) - rho(w) rho(t)`.
pub fn relator_defect(n: i64) -> Mat2 {
    let w = eval_word(&GroupWord::w(n));
    rho(Letter::S).mul(&w).sub(&w.mul(&rho(Letter::T)))
}

/// `lc^k * f = quotient * g + remainder` in the variable `v`, with `lc` the
/// leading `v`-coefficient of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoDivision {
    pub quotient: Poly,
    pub remainder: Poly,
    pub multiplier: Poly,
    pub power: u32,
}

pub fn pseudo_divide(f: &Poly, g: &Poly, v: Var) -> PseudoDivision {
    let dg = g.degree(v).expect("pseudo-division by zero");
    let lc = g.coefficient_in(v, dg);
    let mut rem = f.clone();
    let mut quot = Poly::zero();
    let mut power = 0;
    while let Some(dr) = rem.degree(v).filter(|&d| d >= dg) {
        let lr = rem.coefficient_in(v, dr);
        let step = lr.shift(Monomial::var(v, dr - dg));
        rem = &(&lc * &rem) - &(&step * g);
        quot = &(&lc * &quot) + &step;
        power += 1;
    }
    PseudoDivision {
        quotient: quot,
        remainder: rem,
        multiplier: lc,
        power,
    }
}

/// Multiplies by the power of `M` that makes every exponent of `M`
/// nonnegative and the smallest one zero.
pub fn clear_m(p: &Poly) -> Poly {
    match p.min_degree(Var::M) {
        Some(k) => p.shift(Monomial::var(Var::M, -k)),
        None => p.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n: i64,
    pub check: &'static str,
    pub passed: bool,
    /// Power of the leading coefficient of `P_{2n}` used by pseudo-division,
    /// one per reduced polynomial.
    pub multiplier_powers: Vec<u32>,
    pub multiplier: Poly,
    /// Nonzero remainders, empty when `passed`.
    pub residuals: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("n = {0}: relator entry not divisible by P_2n")]
    DivisibilityFailure(i64, Box<OracleReport>),
    #[error("n = {0}: longitude relation does not reduce to zero")]
    ReductionFailure(i64, Box<OracleReport>),
}

fn reduce_all(n: i64, check: &'static str, polys: &[Poly]) -> OracleReport {
    let p = rm_recursive(n).poly;
    let mut powers = Vec::new();
    let mut residuals = Vec::new();
    let mut multiplier = Poly::one();
    for f in polys {
        let d = pseudo_divide(&clear_m(f), &p, Var::X);
        powers.push(d.power);
        multiplier = d.multiplier;
        if !d.remainder.is_zero() {
            residuals.push(d.remainder);
        }
    }
    OracleReport {
        n,
        check,
        passed: residuals.is_empty(),
        multiplier_powers: powers,
        multiplier,
        residuals,
    }
}

pub fn relator_check(n: i64) -> Result<OracleReport, RepError> {
    let d = relator_defect(n);
    let entries: Vec<Poly> = d.entries().cloned().collect();
    let report = reduce_all(n, "relator", &entries);
    if report.passed {
        Ok(report)
    } else {
        Err(RepError::DivisibilityFailure(n, Box::new(report)))
    }
}

/// `rho(w w*)_{11}`.
pub fn longitude_entry(n: i64) -> Poly {
    let w = GroupWord::w(n);
    eval_word(&w.concat(&w.reversed())).get(0, 0).clone()
}

/// `L M^2 (M^4 - M^2 + (M^-2 + 2M^2 - 1)x + x^2)
///   + (M^-4 - M^-2 + (2M^-2 + M^2 - 1)x + x^2)` with `L` replaced by
/// `longitude`.
pub fn longitude_relation(longitude: &Poly) -> Poly {
    let left = Poly::from_rows(&[
        (0, 6, 0, 1),
        (0, 4, 0, -1),
        (0, 0, 1, 1),
        (0, 4, 1, 2),
        (0, 2, 1, -1),
        (0, 2, 2, 1),
    ]);
    let right = Poly::from_rows(&[
        (0, -4, 0, 1),
        (0, -2, 0, -1),
        (0, -2, 1, 2),
        (0, 2, 1, 1),
        (0, 0, 1, -1),
        (0, 0, 2, 1),
    ]);
    &(longitude * &left) + &right
}

pub fn longitude_check(n: i64) -> Result<OracleReport, RepError> {
    let r = longitude_relation(&longitude_entry(n));
    let report = reduce_all(n, "longitude", &[r]);
    if report.passed {
        Ok(report)
    } else {
        Err(RepError::ReductionFailure(n, Box::new(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_entries() {
        assert!(rho(Letter::S).get(0, 1).is_one());
        assert_eq!(
            *rho(Letter::T).get(1, 0),
            Poly::from_rows(&[(0, 0, 0, 2), (0, 2, 0, -1), (0, -2, 0, -1), (0, 0, 1, -1)])
        );
        for l in [Letter::S, Letter::T] {
            assert_eq!(rho(l).mul(&rho(l.inverse())), Mat2::identity());
            assert!(rho(l).det().is_one());
        }
    }

    #[test]
    fn word_shapes() {
        assert_eq!(GroupWord::w(1).to_string(), "tStSTsTs");
        assert_eq!(GroupWord::w(-1).to_string(), "StStsTsT");
        assert_eq!(GroupWord::w(-3).len(), 24);
        assert_eq!(eval_word(&GroupWord::default()), Mat2::identity());
        let ss = GroupWord(vec![Letter::S, Letter::SInv]);
        assert_eq!(eval_word(&ss), Mat2::identity());
        let w = GroupWord::w(2);
        assert_eq!(eval_word(&w.concat(&w.inverse())), Mat2::identity());
        assert!(eval_word(&w.concat(&w.reversed())).det().is_one());
    }

    #[test]
    fn trace_of_inverse_word() {
        let w = GroupWord::w(1);
        let direct = eval_word(&w);
        let via_inverse = eval_word(&w.inverse()).adjugate();
        assert_eq!(direct.trace(), via_inverse.trace());
    }

    #[test]
    fn pseudo_division_identity() {
        let f = Poly::from_rows(&[(0, 1, 3, 2), (0, 0, 1, -1), (0, 2, 0, 5)]);
        let g = Poly::from_rows(&[(0, 1, 2, 3), (0, 0, 0, 1)]);
        let d = pseudo_divide(&f, &g, Var::X);
        let lhs = &d.multiplier.pow(d.power) * &f;
        assert_eq!(lhs, &(&d.quotient * &g) + &d.remainder);
        assert!(d.remainder.degree(Var::X).unwrap() < 2);
    }
}

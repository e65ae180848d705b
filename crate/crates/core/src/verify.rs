//! Identity batteries over computed A-polynomials and the reference data.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::apoly::{
    a_polynomial, building_blocks, finish, p_from_q, p_of_z, q_of_z, substitute_x, x_substitution,
    RmRoute, Route,
};
use crate::golden::{AppendixA, Goldens};
use crate::poly::{Monomial, Poly, Var};
use crate::quad::{DenExponents, FactoredFraction, QuadElem};
use crate::rep::{longitude_check, relator_check, RepError};
use crate::riley::{q_poly, rm_closed, rm_recursive};

const DETAIL_LIMIT: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

fn clip(mut s: String) -> String {
    if s.len() > DETAIL_LIMIT {
        let mut cut = DETAIL_LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str(" ...");
    }
    s
}

impl Report {
    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            detail: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            detail: Some(clip(detail.into())),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail());
        }
    }

    pub fn expect_eq<T: PartialEq + Debug>(
        &mut self,
        name: impl Into<String>,
        expected: &T,
        actual: &T,
    ) {
        self.check(name, expected == actual, || {
            format!("expected {expected:?}, found {actual:?}")
        });
    }

    /// Equality of polynomials, reporting `expected - actual` on failure.
    pub fn expect_poly(&mut self, name: impl Into<String>, expected: &Poly, actual: &Poly) {
        self.check(name, expected == actual, || {
            format!("residual {}", expected - actual)
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn from_poly(p: &Poly) -> FactoredFraction {
    FactoredFraction::from_poly(p.clone())
}

/// `Q(u) = Q(x_subst)`.
pub fn q_of_u() -> FactoredFraction {
    substitute_x(q_poly()).expect("Q substitutes cleanly")
}

/// `1 - 3L + 3L^2 - L^3`.
pub fn f_at_m0() -> Poly {
    Poly::from_rows(&[(0, 0, 0, 1), (1, 0, 0, -3), (2, 0, 0, 3), (3, 0, 0, -1)])
}

pub fn q_identity_suite(ga: &AppendixA) -> Report {
    let mut r = Report::default();
    let l = Poly::var(Var::L);
    let qu = q_of_u();
    let expected_qu = FactoredFraction::new(
        QuadElem::new(ga.a.clone(), &l * &ga.b),
        DenExponents::new(1, -4, 4),
    );
    r.expect_eq(
        "appendix_a.a,b: Q(u) = M^4 (a + L b z) / (2 (LM^2+1)^4)",
        &expected_qu,
        &qu,
    );

    let xs = x_substitution();
    let (num, den) = QuadElem::substitute(q_poly(), Var::X, &xs.num.conj(), &xs.den).unwrap();
    let q_minus_u = FactoredFraction::from_quotient(num, &den).unwrap();
    r.expect_eq("Q(-u) = conj Q(u)", &qu.conj(), &q_minus_u);

    let expected_norm = FactoredFraction::new(
        QuadElem::rational(ga.f.clone()),
        DenExponents::new(0, -8, 4),
    );
    r.expect_eq(
        "appendix_a.f: Q(u) Q(-u) = M^8 f / (LM^2+1)^4",
        &expected_norm,
        &qu.norm(),
    );
    let cleared = qu.norm().times_unit(0, -8, 4);
    r.check(
        "appendix_a.f: cleared norm of Q(u) is f",
        cleared.as_integral().map(|e| e.a == ga.f && e.b.is_zero()) == Some(true),
        || format!("cleared norm {cleared:?}"),
    );

    let expected_sq = FactoredFraction::new(
        QuadElem::new(ga.g.clone(), ga.h.clone()),
        DenExponents::new(1, -8, 8),
    );
    let sq = qu.mul(&qu);
    r.expect_eq(
        "appendix_a.g,h: Q(u)^2 = M^8 (g + h z) / (2 (LM^2+1)^8)",
        &expected_sq,
        &sq,
    );
    r.expect_eq(
        "Q(-u)^2 = conj Q(u)^2",
        &sq.conj(),
        &q_minus_u.mul(&q_minus_u),
    );

    let m2m1 = Poly::from_rows(&[(0, 2, 0, 1), (0, 0, 0, -1)]);
    let m2p1 = Poly::from_rows(&[(0, 2, 0, 1), (0, 0, 0, 1)]);
    let lm1 = Poly::from_rows(&[(1, 0, 0, 1), (0, 0, 0, -1)]);
    let h_factored = &(&(&(&l * &lm1) * &m2m1.pow(3)) * &m2p1.pow(2)) * &ga.h1;
    r.expect_poly(
        "appendix_a.h1: h = L (L-1) (M^2-1)^3 (M^2+1)^2 h1",
        &ga.h,
        &h_factored,
    );

    let mm1 = Poly::from_rows(&[(0, 1, 0, 1), (0, 0, 0, -1)]);
    let mp1 = Poly::from_rows(&[(0, 1, 0, 1), (0, 0, 0, 1)]);
    let b_factored = &(&(&lm1 * &mm1.pow(3)) * &mp1.pow(3)) * &m2p1.pow(2);
    r.expect_poly(
        "appendix_a.b: b = (L-1) (M-1)^3 (M+1)^3 (M^2+1)^2",
        &ga.b,
        &b_factored,
    );

    let f0 = ga.f.specialize(Var::M, &BigInt::zero()).unwrap();
    r.expect_poly(
        "appendix_a.f: f(L, 0) = 1 - 3L + 3L^2 - L^3",
        &f_at_m0(),
        &f0,
    );
    r
}

pub fn golden_suite(g: &Goldens) -> Report {
    let mut r = Report::default();
    for (entry, expected, found) in g.lock_mismatches() {
        r.fail(
            format!("{entry}: hash lock"),
            format!("expected {expected}, found {found}"),
        );
    }
    for (n, name, golden) in [(1, "A_2", &g.appendix_b.a2), (2, "A_4", &g.appendix_b.a4)] {
        for route in Route::ALL {
            let label = format!("appendix_b.{name}: a_polynomial({n}, {route})");
            match a_polynomial(n, route) {
                Ok(rec) => r.expect_poly(label, golden, &rec.a),
                Err(e) => r.fail(label, e.to_string()),
            }
        }
    }
    for (n, golden) in g.appendix_c.entries() {
        let key = if n > 0 {
            format!("p_{}", 2 * n)
        } else {
            format!("p_-{}", -2 * n)
        };
        let q = q_of_z(n, RmRoute::Recursive).expect("substitution");
        r.expect_eq(
            format!("appendix_c.{key}: from q_{}(z)", 2 * n),
            golden,
            &p_from_q(n, &q),
        );
        r.expect_eq(format!("appendix_c.{key}: closed sum"), golden, &p_of_z(n));
    }
    r
}

/// `rm_closed(n) = rm_recursive(n)` for `n` in `range`.
pub fn rm_suite(range: impl IntoIterator<Item = i64>) -> Report {
    let ns: Vec<i64> = range.into_iter().collect();
    let results: Vec<(i64, Poly, Poly)> = ns
        .par_iter()
        .map(|&n| (n, rm_closed(n).poly, rm_recursive(n).poly))
        .collect();
    let mut r = Report::default();
    for (n, closed, rec) in results {
        r.expect_poly(format!("rm closed = recursive, n = {n}"), &rec, &closed);
    }
    r
}

/// Computes every route for every `n` and checks they agree. Returns the
/// agreed polynomials.
pub fn route_suite(ns: &[i64]) -> (Report, BTreeMap<i64, Poly>) {
    let jobs: Vec<(i64, Route)> = ns
        .iter()
        .flat_map(|&n| Route::ALL.into_iter().map(move |r| (n, r)))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(n, route)| (n, route, a_polynomial(n, route)))
        .collect();
    let mut r = Report::default();
    let mut agreed = BTreeMap::new();
    for &n in ns {
        let mut reference: Option<Poly> = None;
        for (_, route, res) in results.iter().filter(|(m, _, _)| *m == n) {
            let label = format!("route {route}, n = {n}");
            match res {
                Err(e) => r.fail(label, e.to_string()),
                Ok(rec) => match &reference {
                    None => {
                        r.pass(label);
                        reference = Some(rec.a.clone());
                    }
                    Some(a) => r.expect_poly(format!("{label} agrees"), a, &rec.a),
                },
            }
        }
        if let Some(a) = reference {
            agreed.insert(n, a);
        }
    }
    (r, agreed)
}

/// `A_{2n}(L, 0) = (1-3L+3L^2-L^3)^{n-1} (L^2-L^3)`, `A_{2n}(0, M) = M^{8n}`,
/// the `L^{3n}` and `L^{3n+1} M^2` coefficients, and the three-term
/// decomposition for `n >= 2`.
pub fn specialization_suite(n_max: i64) -> Report {
    let ns: Vec<i64> = (1..=n_max).collect();
    let (mut r, a) = route_suite(&ns);
    r.extend(specialization_checks(&a));
    r
}

pub fn specialization_checks(a: &BTreeMap<i64, Poly>) -> Report {
    let mut r = Report::default();
    let zero = BigInt::zero();
    let l2_l3 = Poly::from_rows(&[(2, 0, 0, 1), (3, 0, 0, -1)]);
    for (&n, an) in a {
        if n > 0 {
            let expected = &f_at_m0().pow(n as u32 - 1) * &l2_l3;
            r.expect_poly(
                format!("A_{}(L, 0), n = {n}", 2 * n),
                &expected,
                &an.specialize(Var::M, &zero).unwrap(),
            );
            r.expect_poly(
                format!("A_{}(0, M) = M^{}", 2 * n, 8 * n),
                &Poly::var_pow(Var::M, 8 * n as i32),
                &an.specialize(Var::L, &zero).unwrap(),
            );
            let k = 3 * n as i32;
            let top = an.coeff(Monomial::new(k, 0, 0));
            r.check(
                format!("A_{}: L^{k} term present", 2 * n),
                !top.is_zero(),
                || "zero coefficient".into(),
            );
            let c = an.coeff(Monomial::new(k + 1, 2, 0));
            r.check(
                format!("A_{}: no L^{} M^2 term", 2 * n, k + 1),
                c.is_zero(),
                || format!("coefficient {c}"),
            );
        } else {
            let k = 3 * (n.abs() as i32 - 1);
            r.check(
                format!("A_{}: constant term 1", 2 * n),
                an.coeff(Monomial::ONE) == BigInt::from(1),
                || format!("constant term {}", an.coeff(Monomial::ONE)),
            );
            r.check(
                format!("A_{}: L^{} term present", 2 * n, k + 1),
                !an.coeff(Monomial::new(k + 1, 0, 0)).is_zero(),
                || "zero coefficient".into(),
            );
            let c = an.coeff(Monomial::new(k + 2, 2, 0));
            r.check(
                format!("A_{}: no L^{} M^2 term", 2 * n, k + 2),
                c.is_zero(),
                || format!("coefficient {c}"),
            );
        }
        for (name, factor) in crate::apoly::redundant_factor_candidates() {
            r.check(
                format!("A_{}: not divisible by {name}", 2 * n),
                an.exact_div(&factor).is_err(),
                || "exact division succeeded".into(),
            );
        }
        r.extend(symmetry_check(n, an));
    }
    for (&n, an) in a.iter().filter(|(&n, _)| n >= 2) {
        let prev2 = if n == 2 {
            Some(Poly::one())
        } else {
            a.get(&(n - 2)).cloned()
        };
        let (Some(prev), Some(prev2)) = (a.get(&(n - 1)), prev2) else {
            continue;
        };
        let label = format!("three-term decomposition of A_{}", 2 * n);
        match three_term(n, prev, &prev2) {
            Ok(p) => r.expect_poly(label, an, &p),
            Err(e) => r.fail(label, e),
        }
    }
    r
}

/// `M^-8 (LM^2+1)^4 N(Q) A_{2(n-1)} - (LM^2+1)^6 2Re(Q p_{2(n-1)}(u) p_{2(n-2)}(-u))
///  + M^8 (LM^2+1)^8 A_{2(n-2)}`.
pub fn three_term(n: i64, a_prev: &Poly, a_prev2: &Poly) -> Result<Poly, String> {
    let q = q_of_u();
    let first = q.norm().mul(&from_poly(a_prev)).times_unit(0, -8, 4);
    let cross = q.mul(&p_of_z(n - 1).ff).mul(&p_of_z(n - 2).ff.conj());
    let middle = cross.add(&cross.conj()).times_unit(0, 0, 6);
    let last = from_poly(a_prev2).times_unit(0, 8, 8);
    let total = first.sub(&middle).add(&last);
    finish(n, &total).map_err(|e| e.to_string())
}

/// Looks for `A(L, M) = ± L^a M^b A(1/L, 1/M)`.
pub fn symmetry_check(n: i64, a: &Poly) -> Report {
    let mut r = Report::default();
    let inverted = Poly::from_terms(
        a.terms()
            .iter()
            .map(|(m, c)| (Monomial::new(-m.0[0], -m.0[1], -m.0[2]), c.clone())),
    );
    let label = format!("A_{}: L <-> 1/L, M <-> 1/M symmetry", 2 * n);
    let span = |v: Var| a.degree(v).unwrap_or(0) + a.min_degree(v).unwrap_or(0);
    let shift = Monomial::new(span(Var::L), span(Var::M), 0);
    let candidate = inverted.shift(shift);
    if candidate == *a || -&candidate == *a {
        r.pass(label);
    } else {
        r.fail(label, "no monomial multiple of A(1/L, 1/M) equals A");
    }
    r
}

/// Relator divisibility for `n` in `{-2, -1, 1, 2}` and the longitude
/// relation for `n` in `{-1, 1}`.
pub fn oracle_suite() -> Report {
    let jobs: Vec<(i64, bool)> = [-2, -1, 1, 2]
        .into_iter()
        .map(|n| (n, false))
        .chain([-1, 1].into_iter().map(|n| (n, true)))
        .collect();
    let results: Vec<Result<crate::rep::OracleReport, RepError>> = jobs
        .par_iter()
        .map(|&(n, longitude)| {
            if longitude {
                longitude_check(n)
            } else {
                relator_check(n)
            }
        })
        .collect();
    let mut r = Report::default();
    for ((n, longitude), res) in jobs.into_iter().zip(results) {
        let label = if longitude {
            format!("longitude relation mod P_{}", 2 * n)
        } else {
            format!("relator divisible by P_{}", 2 * n)
        };
        match res {
            Ok(rep) => r.check(label, rep.passed, String::new),
            Err(e) => r.fail(label, e.to_string()),
        }
    }
    r
}

/// The four building blocks against their closed forms.
pub fn building_block_suite() -> Report {
    let mut r = Report::default();
    let [x, base, twist, odd] = building_blocks();
    let xs = x_substitution();
    let x_direct = FactoredFraction::from_quotient(xs.num, &xs.den).unwrap();
    r.expect_eq("x substitution", &x_direct, &x);
    let polys = [
        (
            "M^4 + M^2 x - 2M^2 + 1",
            Poly::from_rows(&[(0, 4, 0, 1), (0, 2, 1, 1), (0, 2, 0, -2), (0, 0, 0, 1)]),
            base,
        ),
        (
            "M^4 + M^2 x + 1",
            Poly::from_rows(&[(0, 4, 0, 1), (0, 2, 1, 1), (0, 0, 0, 1)]),
            twist,
        ),
        (
            "M^4 + M^2 x - M^2 + 1",
            Poly::from_rows(&[(0, 4, 0, 1), (0, 2, 1, 1), (0, 2, 0, -1), (0, 0, 0, 1)]),
            odd,
        ),
    ];
    for (name, p, block) in polys {
        r.expect_eq(name, &block, &substitute_x(&p).unwrap());
    }
    r
}

/// Everything `verify` runs: goldens, identities, recursion against the
/// explicit sum, and route equality with specializations up to `max_n`.
pub fn full_battery(g: &Goldens, max_n: i64, oracle: bool) -> Report {
    let mut r = golden_suite(g);
    r.extend(q_identity_suite(&g.appendix_a));
    r.extend(building_block_suite());
    r.extend(rm_suite(-max_n..=max_n));
    let ns: Vec<i64> = (-max_n..=max_n).filter(|&n| n != 0).collect();
    let (routes, a) = route_suite(&ns);
    r.extend(routes);
    r.extend(specialization_checks(&a));
    if oracle {
        r.extend(oracle_suite());
    }
    r
}

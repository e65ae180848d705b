//! One line per acceptance criterion, then a single assertion over all of
//! them.

mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use apoly_core::apoly::{
    a_polynomial, p_from_q, p_of_z, q_of_z, redundant_factor_candidates, RmRoute, Route,
};
use apoly_core::golden::Goldens;
use apoly_core::poly::{Monomial, Poly, Var};
use apoly_core::rep::{longitude_check, relator_check};
use apoly_core::riley::{rm_closed, rm_recursive};
use apoly_core::verify::{f_at_m0, q_identity_suite};
use common::*;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn within(limit: Duration, t: Instant) -> Result<Duration, String> {
    let e = t.elapsed();
    if e <= limit {
        Ok(e)
    } else {
        Err(format!("took {e:.2?}, limit {limit:?}"))
    }
}

fn golden_a(n: i64, limit: Duration) -> Outcome {
    let t = Instant::now();
    let g = &Goldens::embedded().appendix_b;
    let golden = if n == 1 { &g.a2 } else { &g.a4 };
    let rec = a_polynomial(n, Route::RecursiveSubst).map_err(|e| e.to_string())?;
    if rec.a != *golden {
        return Err(format!("residual {}", golden - &rec.a));
    }
    let e = within(limit, t)?;
    Ok(format!("{} terms, {e:.2?}", rec.a.len()))
}

fn appendix_c() -> Outcome {
    let g = &Goldens::embedded().appendix_c;
    if p_of_z(1) != g.p2 {
        return Err("p_of_z(1) differs from p_2".into());
    }
    for (n, golden) in g.entries() {
        let q = q_of_z(n, RmRoute::Recursive).map_err(|e| e.to_string())?;
        if p_from_q(n, &q) != *golden {
            return Err(format!("substitution fraction for n = {n} differs"));
        }
    }
    Ok("p_2, p_-2, p_-4 exact".into())
}

fn explicit_sum_vs_recursion() -> Outcome {
    let t = Instant::now();
    for n in -6..=6 {
        if rm_closed(n).poly != rm_recursive(n).poly {
            return Err(format!("n = {n}"));
        }
    }
    let e = within(Duration::from_secs(30), t)?;
    Ok(format!("n in [-6, 6], {e:.2?}"))
}

fn route_triangle(results: &mut BTreeMap<i64, Poly>) -> Outcome {
    let t = Instant::now();
    let ns: Vec<i64> = (-6..=6).filter(|&n| n != 0).collect();
    for &n in &ns {
        let mut first: Option<Poly> = None;
        for route in Route::ALL {
            let a = a_polynomial(n, route)
                .map_err(|e| format!("{route}: {e}"))?
                .a;
            match &first {
                None => first = Some(a),
                Some(f) if *f != a => return Err(format!("n = {n}: {route} disagrees")),
                Some(_) => {}
            }
        }
        results.insert(n, first.unwrap());
    }
    let six = t.elapsed();
    let mut eight = Vec::new();
    for n in [-8, 8] {
        let t8 = Instant::now();
        let mut first: Option<Poly> = None;
        for route in Route::ALL {
            let a = a_polynomial(n, route)
                .map_err(|e| format!("{route}: {e}"))?
                .a;
            if first.as_ref().is_some_and(|f| *f != a) {
                return Err(format!("n = {n}: {route} disagrees"));
            }
            first = Some(a);
        }
        let e = within(Duration::from_secs(600), t8)?;
        results.insert(n, first.unwrap());
        eight.push(format!("{e:.2?}"));
    }
    Ok(format!(
        "three routes agree for 1 <= |n| <= 6 in {six:.2?}; |n| = 8 in {}",
        eight.join(" and ")
    ))
}

fn identity_battery() -> Outcome {
    let r = q_identity_suite(&Goldens::embedded().appendix_a);
    match r.first_failure() {
        None => Ok(format!("{} identities", r.checks.len())),
        Some(c) => Err(format!(
            "{}: {}",
            c.name,
            c.detail.clone().unwrap_or_default()
        )),
    }
}

fn get(results: &BTreeMap<i64, Poly>, n: i64) -> Result<Poly, String> {
    match results.get(&n) {
        Some(a) => Ok(a.clone()),
        None => a_polynomial(n, Route::RecursiveSubst)
            .map(|r| r.a)
            .map_err(|e| e.to_string()),
    }
}

fn specializations(results: &BTreeMap<i64, Poly>) -> Outcome {
    let zero = BigInt::zero();
    let l2_l3 = Poly::from_rows(&[(2, 0, 0, 1), (3, 0, 0, -1)]);
    for n in 1..=5i64 {
        let a = get(results, n)?;
        if a.specialize(Var::L, &zero).unwrap() != Poly::var_pow(Var::M, 8 * n as i32) {
            return Err(format!("A(0, M) for n = {n}"));
        }
        let expected = &f_at_m0().pow(n as u32 - 1) * &l2_l3;
        if a.specialize(Var::M, &zero).unwrap() != expected {
            return Err(format!("A(L, 0) for n = {n}"));
        }
        let k = 3 * n as i32;
        if !a.coeff(Monomial::new(k + 1, 2, 0)).is_zero() {
            return Err(format!("L^{} M^2 present for n = {n}", k + 1));
        }
        if a.coeff(Monomial::new(k, 0, 0)).is_zero() {
            return Err(format!("L^{k} absent for n = {n}"));
        }
    }
    let a4 = &Goldens::embedded().appendix_b.a4;
    let expected = Poly::from_rows(&[
        (2, 0, 0, 1),
        (3, 0, 0, -4),
        (4, 0, 0, 6),
        (5, 0, 0, -4),
        (6, 0, 0, 1),
    ]);
    if a4.specialize(Var::M, &zero).unwrap() != expected {
        return Err("A_4(L, 0) from the reference data".into());
    }
    Ok("n in [1, 5]".into())
}

fn no_redundant_factors(results: &BTreeMap<i64, Poly>) -> Outcome {
    if results.is_empty() {
        return Err("no computed A-polynomials".into());
    }
    for (n, a) in results {
        for (name, f) in redundant_factor_candidates() {
            if a.exact_div(&f).is_ok() {
                return Err(format!("n = {n} divisible by {name}"));
            }
        }
    }
    let ns: Vec<String> = results.keys().map(|n| n.to_string()).collect();
    Ok(format!("n in {{{}}}", ns.join(", ")))
}

fn representation_oracle() -> Outcome {
    let t = Instant::now();
    for n in [-2, -1, 1, 2] {
        relator_check(n).map_err(|e| e.to_string())?;
    }
    for n in [-1, 1] {
        longitude_check(n).map_err(|e| e.to_string())?;
    }
    let e = within(Duration::from_secs(120), t)?;
    Ok(format!(
        "relator for n in {{-2, -1, 1, 2}}, longitude for n in {{-1, 1}}, {e:.2?}"
    ))
}

fn property_suite() -> Outcome {
    let cases = 500;
    let runner = || TestRunner::new(Config::with_cases(cases));
    let q4 = || (lm_rows(), lm_rows(), lm_rows(), lm_rows());
    runner()
        .run(&q4(), prop_norm_multiplicative)
        .map_err(|e| format!("norm multiplicativity: {e}"))?;
    runner()
        .run(&q4(), prop_conj_automorphism)
        .map_err(|e| format!("conj automorphism: {e}"))?;
    runner()
        .run(&(laurent_rows(), laurent_rows()), prop_exact_div_round_trip)
        .map_err(|e| format!("exact_div round trip: {e}"))?;
    runner()
        .run(
            &(laurent_rows(), laurent_rows(), point()),
            prop_eval_homomorphism,
        )
        .map_err(|e| format!("evaluation homomorphism: {e}"))?;
    Ok(format!("4 properties x {cases} cases"))
}

fn report(number: usize, title: &str, outcome: Outcome) -> bool {
    let (ok, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let line = format!(
        "criterion {number:>2} [{}] {title}: {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    ok
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    })
}

#[test]
fn acceptance_criteria() {
    let mut results = BTreeMap::new();
    let outcomes = [
        report(
            1,
            "A_2 golden",
            guarded(|| golden_a(1, Duration::from_secs(1))),
        ),
        report(
            2,
            "A_4 golden",
            guarded(|| golden_a(2, Duration::from_secs(5))),
        ),
        report(3, "fraction goldens", guarded(appendix_c)),
        report(
            4,
            "explicit sum vs recursion",
            guarded(explicit_sum_vs_recursion),
        ),
        report(
            5,
            "route triangle",
            guarded(|| route_triangle(&mut results)),
        ),
        report(6, "Q identity battery", guarded(identity_battery)),
        report(7, "specializations", guarded(|| specializations(&results))),
        report(
            8,
            "no redundant factors",
            guarded(|| no_redundant_factors(&results)),
        ),
        report(9, "representation oracle", guarded(representation_oracle)),
        report(10, "property suite", guarded(property_suite)),
    ];
    let failed: Vec<usize> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

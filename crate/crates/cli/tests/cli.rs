use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use apoly_core::golden::Goldens;
use apoly_core::json::canonical_json;
use apoly_core::poly::Poly;
use apoly_core::render::to_text;
use apoly_core::riley::{p2_initial, p_minus2_initial};

fn apoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apoly"))
        .args(args)
        .env_remove("APOLY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn goldens_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/goldens")
}

/// Reads the LaTeX rendering back into `exponents -> coefficient`.
fn read_latex(s: &str) -> BTreeMap<[i32; 3], i64> {
    let mut out = BTreeMap::new();
    let mut sign = 1;
    let mut tokens = s.split(' ').peekable();
    let mut term: Vec<&str> = Vec::new();
    let mut flush = |term: &mut Vec<&str>, sign: i64| {
        if term.is_empty() {
            return;
        }
        let mut c = 1i64;
        let mut e = [0i32; 3];
        for f in term.drain(..) {
            if let Ok(v) = f.parse::<i64>() {
                c = v;
                continue;
            }
            let (var, pow) = match f.split_once("^{") {
                Some((v, rest)) => (v, rest.trim_end_matches('}').parse::<i32>().unwrap()),
                None => (f, 1),
            };
            let idx = ["L", "M", "x"]
                .iter()
                .position(|n| *n == var)
                .expect("known variable");
            e[idx] = pow;
        }
        *out.entry(e).or_insert(0) += sign * c;
    };
    if tokens.peek().is_some_and(|t| t.starts_with('-')) {
        sign = -1;
    }
    for t in tokens {
        match t {
            "+" | "-" => {
                flush(&mut term, sign);
                sign = if t == "-" { -1 } else { 1 };
            }
            _ => term.push(t.trim_start_matches('-')),
        }
    }
    flush(&mut term, sign);
    out
}

#[test]
fn compute_json_is_a2() {
    let o = apoly(&["compute", "--n", "1", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let a2 = &Goldens::embedded().appendix_b.a2;
    assert_eq!(stdout(&o).trim_end(), canonical_json(a2));
    let parsed: Poly = serde_json::from_str(stdout(&o).trim_end()).unwrap();
    assert_eq!(&parsed, a2);
    assert!(stderr(&o).contains("21 terms, L-degree 4, M-degree 16"));
}

#[test]
fn routes_give_identical_bytes() {
    let a = apoly(&[
        "compute", "--n", "1", "--route", "closed", "--format", "json",
    ]);
    let b = apoly(&[
        "compute",
        "--n",
        "1",
        "--route",
        "recursive-subst",
        "--format",
        "json",
    ]);
    let c = apoly(&[
        "compute",
        "--n",
        "-2",
        "--route",
        "closed-subst",
        "--format",
        "json",
    ]);
    let d = apoly(&[
        "compute", "--n", "-2", "--route", "closed", "--format", "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(c.stdout, d.stdout);
    assert!(a.status.success() && c.status.success());
}

#[test]
fn zero_index_is_usage_error() {
    let o = apoly(&["compute", "--n", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert_eq!(apoly(&["compute"]).status.code(), Some(1));
    assert_eq!(
        apoly(&["compute", "--n", "1", "--route", "fast"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(apoly(&["--help"]).status.code(), Some(0));
}

#[test]
fn rm_prints_riley_polynomials() {
    let o = apoly(&["rm", "--n", "1"]);
    assert_eq!(stdout(&o).trim_end(), to_text(&p2_initial()));
    assert!(stdout(&o).contains("M^6*x^4"));
    let o = apoly(&["rm", "--n", "-1"]);
    assert_eq!(stdout(&o).trim_end(), to_text(&p_minus2_initial()));
    assert!(stdout(&o).starts_with("-M^8*x"));
    let o = apoly(&["rm", "--n", "0"]);
    assert_eq!(stdout(&o), "1\n");
    let o = apoly(&["rm", "--n", "-1", "--format", "json"]);
    let parsed: Poly = serde_json::from_str(stdout(&o).trim_end()).unwrap();
    assert_eq!(parsed, p_minus2_initial());
}

#[test]
fn latex_rendering_reads_back() {
    let o = apoly(&["compute", "--n", "1", "--format", "latex"]);
    let terms = read_latex(stdout(&o).trim_end());
    assert_eq!(terms.len(), 21);
    assert_eq!(terms[&[4, 8, 0]], 1);
    assert_eq!(terms[&[3, 12, 0]], -2);
    assert_eq!(terms[&[2, 8, 0]], 6);
    let rows: Vec<(i32, i32, i32, i64)> =
        terms.iter().map(|(e, &c)| (e[0], e[1], e[2], c)).collect();
    assert_eq!(Poly::from_rows(&rows), Goldens::embedded().appendix_b.a2);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a4.txt");
    let o = apoly(&["compute", "--n", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("L^8*M^16"));
    let missing = dir.path().join("no/such/dir/a.txt");
    let o = apoly(&["compute", "--n", "1", "--out", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = apoly(&["compute", "--n", "3", "--format", "json", "--cache-dir", d]);
    assert!(first.status.success());
    assert!(dir.path().join("a_poly_3_recursive-subst.json").exists());
    let second = apoly(&["compute", "--n", "3", "--format", "json", "--cache-dir", d]);
    assert!(stderr(&second).contains("cached"));
    assert_eq!(first.stdout, second.stdout);
    let again = apoly(&[
        "compute",
        "--n",
        "3",
        "--format",
        "json",
        "--cache-dir",
        d,
        "--recompute",
    ]);
    assert!(again.status.success());
    assert!(!stderr(&again).contains("cached"));
    let hash = |o: &Output| stderr(o).rsplit("hash ").next().unwrap().trim().to_string();
    assert_eq!(hash(&first), hash(&again));
}

#[test]
fn cache_env_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_apoly"))
        .args([
            "compute",
            "--n",
            "-1",
            "--cache-dir",
            flag_dir.path().to_str().unwrap(),
        ])
        .env("APOLY_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(env_dir
        .path()
        .join("a_poly_-1_recursive-subst.json")
        .exists());
    assert!(std::fs::read_dir(flag_dir.path()).unwrap().next().is_none());
}

#[test]
fn verify_passes() {
    let o = apoly(&["verify", "--max-n", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["passed"], true);
    let o = apoly(&[
        "verify",
        "--max-n",
        "4",
        "--oracle",
        "--goldens",
        goldens_dir().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("relator divisible by P_-4"));
    assert_eq!(apoly(&["verify", "--max-n", "1"]).status.code(), Some(1));
}

#[test]
fn corrupted_golden_is_named() {
    let dir = tempfile::tempdir().unwrap();
    for f in apoly_core::golden::FILES {
        std::fs::copy(goldens_dir().join(f), dir.path().join(f)).unwrap();
    }
    let path = dir.path().join("appendix_b.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let bad = text.replacen("\"c\": \"-2\"", "\"c\": \"-3\"", 1);
    assert_ne!(text, bad);
    std::fs::write(&path, bad).unwrap();
    let o = apoly(&[
        "verify",
        "--max-n",
        "2",
        "--goldens",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("appendix_b.json/A_"), "{}", stderr(&o));

    std::fs::write(dir.path().join("appendix_a.json"), "{").unwrap();
    let o = apoly(&[
        "verify",
        "--max-n",
        "2",
        "--goldens",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("appendix_a.json"));
}

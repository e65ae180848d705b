//! Reference polynomials and fractions, embedded at build time
//! and locked by per-entry hashes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json::{canonical_hash, sha256_hex};
use crate::poly::Poly;
use crate::quad::PrefactoredFraction;

pub const FILES: [&str; 3] = ["appendix_a.json", "appendix_b.json", "appendix_c.json"];

const EMBEDDED: [&str; 3] = [
    include_str!("../goldens/appendix_a.json"),
    include_str!("../goldens/appendix_b.json"),
    include_str!("../goldens/appendix_c.json"),
];

const LOCK: &str = include_str!("../goldens/lock.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixA {
    pub a: Poly,
    pub b: Poly,
    pub f: Poly,
    pub g: Poly,
    pub h: Poly,
    pub h1: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixB {
    #[serde(rename = "A_2")]
    pub a2: Poly,
    #[serde(rename = "A_4")]
    pub a4: Poly,
}

/// `p_2`, `p_{-2}`, `p_{-4}` as fractions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixC {
    #[serde(rename = "p_2")]
    pub p2: PrefactoredFraction,
    #[serde(rename = "p_-2")]
    pub p_m2: PrefactoredFraction,
    #[serde(rename = "p_-4")]
    pub p_m4: PrefactoredFraction,
}

impl AppendixC {
    /// `(n, p_{2n})` pairs.
    pub fn entries(&self) -> [(i64, &PrefactoredFraction); 3] {
        [(1, &self.p2), (-1, &self.p_m2), (-2, &self.p_m4)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goldens {
    pub appendix_a: AppendixA,
    pub appendix_b: AppendixB,
    pub appendix_c: AppendixC,
}

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{file}: {message}")]
    Parse { file: String, message: String },
}

static EMBEDDED_GOLDENS: LazyLock<Goldens> = LazyLock::new(|| {
    Goldens::parse(EMBEDDED[0], EMBEDDED[1], EMBEDDED[2]).expect("embedded goldens parse")
});

fn parse_one<'a, T: Deserialize<'a>>(file: &str, text: &'a str) -> Result<T, GoldenError> {
    serde_json::from_str(text).map_err(|e| GoldenError::Parse {
        file: file.to_string(),
        message: e.to_string(),
    })
}

impl Goldens {
    pub fn embedded() -> &'static Goldens {
        &EMBEDDED_GOLDENS
    }

    pub fn parse(a: &str, b: &str, c: &str) -> Result<Goldens, GoldenError> {
        Ok(Goldens {
            appendix_a: parse_one(FILES[0], a)?,
            appendix_b: parse_one(FILES[1], b)?,
            appendix_c: parse_one(FILES[2], c)?,
        })
    }

    /// Reads the three files from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Goldens, GoldenError> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| GoldenError::Io { path, source })
        };
        Goldens::parse(&read(FILES[0])?, &read(FILES[1])?, &read(FILES[2])?)
    }

    /// `"file/key" -> hash` for every entry.
    pub fn entry_hashes(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        let a = &self.appendix_a;
        for (k, p) in [
            ("a", &a.a),
            ("b", &a.b),
            ("f", &a.f),
            ("g", &a.g),
            ("h", &a.h),
            ("h1", &a.h1),
        ] {
            out.insert(format!("{}/{k}", FILES[0]), canonical_hash(p));
        }
        out.insert(
            format!("{}/A_2", FILES[1]),
            canonical_hash(&self.appendix_b.a2),
        );
        out.insert(
            format!("{}/A_4", FILES[1]),
            canonical_hash(&self.appendix_b.a4),
        );
        for (k, p) in [
            ("p_2", &self.appendix_c.p2),
            ("p_-2", &self.appendix_c.p_m2),
            ("p_-4", &self.appendix_c.p_m4),
        ] {
            let s = serde_json::to_string(p).expect("fraction serialization is infallible");
            out.insert(format!("{}/{k}", FILES[2]), sha256_hex(s.as_bytes()));
        }
        out
    }

    /// Entries whose hash differs from the lock, as `(entry, expected, found)`.
    pub fn lock_mismatches(&self) -> Vec<(String, String, String)> {
        let lock = locked_hashes();
        let found = self.entry_hashes();
        let mut out = Vec::new();
        for (k, expected) in &lock {
            let got = found.get(k).cloned().unwrap_or_default();
            if &got != expected {
                out.push((k.clone(), expected.clone(), got));
            }
        }
        out
    }
}

pub fn locked_hashes() -> BTreeMap<String, String> {
    serde_json::from_str(LOCK).expect("lock file parses")
}

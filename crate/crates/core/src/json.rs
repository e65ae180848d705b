//! Canonical JSON form of [`Poly`]:
//! `{"vars":["L","M","x"],"terms":[{"e":[eL,eM,ex],"c":"<decimal>"}, ...]}`
//! with terms in descending canonical order and decimal-string coefficients.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::poly::{Monomial, Poly};

const VARS: [&str; 3] = ["L", "M", "x"];

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: [i32; 3],
    c: String,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: VARS.iter().map(|s| s.to_string()).collect(),
            terms: self
                .terms()
                .iter()
                .map(|(m, c)| TermJson {
                    e: m.0,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.vars != VARS {
            return Err(D::Error::custom(format!(
                "expected vars [\"L\",\"M\",\"x\"], found {:?}",
                raw.vars
            )));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = BigInt::from_str(&t.c)
                .map_err(|e| D::Error::custom(format!("bad coefficient {:?}: {e}", t.c)))?;
            terms.push((Monomial(t.e), c));
        }
        Ok(Poly::from_terms(terms))
    }
}

/// Compact canonical serialization; identical polynomials give identical
/// bytes.
pub fn canonical_json(p: &Poly) -> String {
    serde_json::to_string(p).expect("Poly serialization is infallible")
}

/// Hex SHA-256 of [`canonical_json`].
pub fn canonical_hash(p: &Poly) -> String {
    hex::encode(Sha256::digest(canonical_json(p).as_bytes()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

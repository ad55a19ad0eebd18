//! Versioned table of primitive moduli for the unramified extensions.
//!
//! The shipped table holds Conway polynomials for p ∈ {3, 5, 7} and degrees
//! up to 4. The environment variable `PADIC_SPECTRAL_MODULI` may point at a
//! replacement table with the same JSON layout. Degrees missing from the
//! table fall back to the lexicographically least primitive polynomial.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use serde::Deserialize;

use crate::error::{PadicError, Result};
use crate::ff::{factor_biguint, FpPoly};

pub const MODULI_ENV: &str = "PADIC_SPECTRAL_MODULI";

const BUILTIN: &str = include_str!("../../data/moduli.json");

#[derive(Debug, Clone, Deserialize)]
struct RawEntry {
    p: u64,
    degree: usize,
    coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Deserialize)]
struct RawTable {
    version: String,
    entries: Vec<RawEntry>,
}

#[derive(Debug, Clone)]
pub struct ModulusTable {
    version: String,
    entries: HashMap<(u64, usize), FpPoly>,
}

/// A residue-field modulus together with its provenance label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueModulus {
    pub poly: FpPoly,
    pub id: String,
}

/// Monic, irreducible, and x generates the multiplicative group.
pub fn is_primitive(f: &FpPoly) -> bool {
    let m = match f.degree() {
        Some(m) if m >= 1 => m,
        _ => return false,
    };
    if f.leading() != 1 || !f.is_irreducible() {
        return false;
    }
    let p = f.p();
    let order = BigUint::from(p).pow(m as u32) - 1u32;
    let hints: Vec<u64> = (1..=m as u32).map(|i| p.pow(i) - 1).collect();
    let x = FpPoly::x(p);
    factor_biguint(&order, &hints)
        .into_iter()
        .all(|(q, _)| !x.pow_mod(&(&order / &q), f).is_one())
}

impl ModulusTable {
    pub fn builtin() -> ModulusTable {
        ModulusTable::from_json(BUILTIN).expect("shipped modulus table is valid")
    }

    pub fn from_json(text: &str) -> Result<ModulusTable> {
        let raw: RawTable =
            serde_json::from_str(text).map_err(|e| PadicError::ModulusTable(e.to_string()))?;
        let mut entries = HashMap::new();
        for e in raw.entries {
            if e.coeffs.len() != e.degree + 1 {
                return Err(PadicError::ModulusTable(format!(
                    "p={} degree={}: expected {} coefficients",
                    e.p,
                    e.degree,
                    e.degree + 1
                )));
            }
            let f = FpPoly::new(e.p, e.coeffs);
            if f.degree() != Some(e.degree) || !is_primitive(&f) {
                return Err(PadicError::ModulusTable(format!(
                    "p={} degree={}: modulus is not a monic primitive polynomial",
                    e.p, e.degree
                )));
            }
            entries.insert((e.p, e.degree), f);
        }
        Ok(ModulusTable {
            version: raw.version,
            entries,
        })
    }

    /// The process-wide table: the override file if the environment names
    /// one, the shipped table otherwise.
    pub fn global() -> Result<&'static ModulusTable> {
        static TABLE: OnceLock<std::result::Result<ModulusTable, PadicError>> = OnceLock::new();
        TABLE
            .get_or_init(|| match std::env::var(MODULI_ENV) {
                Ok(path) => std::fs::read_to_string(&path)
                    .map_err(|e| PadicError::ModulusTable(format!("{path}: {e}")))
                    .and_then(|s| ModulusTable::from_json(&s)),
                Err(_) => Ok(ModulusTable::builtin()),
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn lookup(&self, p: u64, degree: usize) -> Option<&FpPoly> {
        self.entries.get(&(p, degree))
    }
}

fn search_primitive(p: u64, degree: usize) -> FpPoly {
    let total = p
        .checked_pow(degree as u32)
        .expect("search space too large");
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut v = idx;
        for _ in 0..degree {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        let f = FpPoly::new(p, coeffs);
        if is_primitive(&f) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Residue modulus for F_{p^degree}: table entry when present, otherwise the
/// least primitive polynomial found by search.
pub fn residue_modulus(p: u64, degree: usize) -> Result<ResidueModulus> {
    if degree == 0 {
        return Err(PadicError::UnsupportedExtension { prime: p, degree });
    }
    let table = ModulusTable::global()?;
    if let Some(f) = table.lookup(p, degree) {
        return Ok(ResidueModulus {
            poly: f.clone(),
            id: format!("{}/p{}/m{}", table.version(), p, degree),
        });
    }
    if (degree as f64) * (p as f64).log2() > 24.0 {
        return Err(PadicError::UnsupportedExtension { prime: p, degree });
    }
    static SEARCHED: OnceLock<Mutex<HashMap<(u64, usize), FpPoly>>> = OnceLock::new();
    let cache = SEARCHED.get_or_init(|| Mutex::new(HashMap::new()));
    let poly = {
        let mut guard = cache.lock().expect("modulus cache poisoned");
        guard
            .entry((p, degree))
            .or_insert_with(|| search_primitive(p, degree))
            .clone()
    };
    Ok(ResidueModulus {
        poly,
        id: format!("search-v1/p{p}/m{degree}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_is_complete_and_primitive() {
        let t = ModulusTable::builtin();
        for p in [3, 5, 7] {
            for m in 1..=4 {
                let f = t.lookup(p, m).unwrap();
                assert!(is_primitive(f), "p={p} m={m}");
            }
        }
        assert_eq!(t.version(), "conway-v1");
    }

    #[test]
    fn rejects_non_primitive_entry() {
        // x^2 + 1 is irreducible mod 3 but x has order 4, not 8
        let bad = r#"{"version":"x","entries":[{"p":3,"degree":2,"coeffs":[1,0,1]}]}"#;
        assert!(ModulusTable::from_json(bad).is_err());
    }

    #[test]
    fn search_fallback_for_unlisted_prime() {
        let m = residue_modulus(11, 2).unwrap();
        assert!(is_primitive(&m.poly));
        assert!(m.id.starts_with("search-v1"));
        let again = residue_modulus(11, 2).unwrap();
        assert_eq!(m, again);
    }
}

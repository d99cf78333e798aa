//! JSON interchange for externally computed newforms.
//!
//! ```json
//! {
//!   "label": "25.12.b.a",
//!   "weight": 12,
//!   "level": 25,
//!   "char_modulus": 5,
//!   "char_values": [[1, {"order": 1, "coeffs": ["1"]}], [2, {"order": 2, "coeffs": ["-1"]}], ...],
//!   "coefficients": [{"order": 1, "coeffs": ["1"]}, ...]
//! }
//! ```
//!
//! `coefficients[i]` is `a(i + 1)`; a cyclotomic value `{"order": m, "coeffs": [c_0, ...]}`
//! stands for `sum c_i zeta_m^i` with rationals written as `"p/q"` or `"p"`.

use std::path::Path;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::character::DirichletCharacter;
use super::table::{verify_eigenform, verify_reality, CoeffTable, EigenformSpec, FormSource};
use super::QexpandError;
use crate::exactmath::arith::gcd;
use crate::exactmath::rational::{format_rational, parse_rational};
use crate::exactmath::CycNumber;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycJson {
    pub order: u64,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    pub char_modulus: u64,
    pub char_values: Vec<(u64, CycJson)>,
    pub coefficients: Vec<CycJson>,
}

impl CycJson {
    pub fn from_cyc(x: &CycNumber) -> Self {
        CycJson { order: x.order(), coeffs: x.coeffs().iter().map(format_rational).collect() }
    }

    pub fn to_cyc(&self) -> Result<CycNumber, String> {
        if self.order == 0 {
            return Err("cyclotomic order 0".into());
        }
        if self.coeffs.len() as u64 > self.order {
            return Err(format!("{} coordinates for order {}", self.coeffs.len(), self.order));
        }
        let raw = self
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| format!("malformed rational {s:?}")))
            .collect::<Result<Vec<BigRational>, _>>()?;
        Ok(CycNumber::canonicalize(self.order, raw))
    }
}

fn invalid(index: u64, reason: impl Into<String>) -> QexpandError {
    QexpandError::Validation { index, reason: reason.into() }
}

fn build_character(file: &FormFile) -> Result<DirichletCharacter, QexpandError> {
    let n = file.char_modulus;
    let mut values: Vec<Option<CycNumber>> = vec![None; n as usize];
    for (r, cj) in &file.char_values {
        let v = cj.to_cyc().map_err(|e| QexpandError::Parse(format!("character value at {r}: {e}")))?;
        if v.root_of_unity_order().is_none() {
            return Err(QexpandError::Parse(format!("character value at {r} is not a root of unity")));
        }
        if *r >= n || gcd(*r, n) != 1 {
            return Err(invalid(*r, format!("{r} is not a reduced unit modulo {n}")));
        }
        if values[*r as usize].replace(v).is_some() {
            return Err(invalid(*r, "duplicate character value"));
        }
    }
    let mut table = Vec::with_capacity(n as usize);
    for (r, v) in values.into_iter().enumerate() {
        let r = r as u64;
        match v {
            Some(v) => table.push(v),
            None if gcd(r, n) == 1 => return Err(invalid(r, "missing character value")),
            None => table.push(CycNumber::from_int(0)),
        }
    }
    DirichletCharacter::from_table(n, table).map_err(|(i, why)| invalid(i, why))
}

/// Validated coefficient table from JSON text; `source` names its origin.
pub fn parse_form(json: &str, source: &str) -> Result<CoeffTable, QexpandError> {
    let file: FormFile = serde_json::from_str(json).map_err(|e| QexpandError::Parse(e.to_string()))?;
    if file.weight < 2 || file.weight % 2 == 1 {
        return Err(invalid(0, format!("weight {} must be even and at least 2", file.weight)));
    }
    if file.level == 0 || file.char_modulus == 0 || file.level % file.char_modulus != 0 {
        return Err(invalid(0, format!("character modulus {} must divide level {}", file.char_modulus, file.level)));
    }
    let chi = build_character(&file)?;
    if !chi.is_even() {
        return Err(invalid(file.char_modulus - 1, "chi(-1) = -1 is incompatible with even weight"));
    }
    let coeffs = file
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| c.to_cyc().map_err(|e| QexpandError::Parse(format!("coefficient a({}): {e}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() || !coeffs[0].is_one() {
        return Err(invalid(1, "a(1) must be 1"));
    }
    let spec = EigenformSpec {
        label: file.label,
        weight: file.weight,
        level: file.level,
        character: chi.induce(file.level),
        source: FormSource::Ingested(source.to_string()),
    };
    let table = CoeffTable::from_coefficients(spec, coeffs);
    verify_eigenform(&table).map_err(|n| invalid(n, "Hecke relations fail"))?;
    verify_reality(&table).map_err(|n| invalid(n, "a(n) differs from chi(n) conj(a(n))"))?;
    Ok(table)
}

/// Reads and validates a form file.
pub fn ingest_form(path: &Path) -> Result<CoeffTable, QexpandError> {
    let text = std::fs::read_to_string(path).map_err(|e| QexpandError::Io(format!("{}: {e}", path.display())))?;
    parse_form(&text, &path.display().to_string())
}

/// File representation of a table; the character is written modulo the level.
pub fn to_form_file(t: &CoeffTable) -> FormFile {
    let chi = &t.spec().character;
    FormFile {
        label: t.label().to_string(),
        weight: t.weight(),
        level: t.level(),
        char_modulus: chi.modulus(),
        char_values: (0..chi.modulus())
            .filter(|&r| gcd(r, chi.modulus()) == 1)
            .map(|r| (r, CycJson::from_cyc(&chi.value_u64(r))))
            .collect(),
        coefficients: t.coefficients().iter().map(CycJson::from_cyc).collect(),
    }
}

/// Pretty-printed canonical JSON.
pub fn form_to_json(t: &CoeffTable) -> String {
    serde_json::to_string_pretty(&to_form_file(t)).expect("serializable")
}

//! Built-in eigenforms with trivial character.

use super::character::DirichletCharacter;
use super::series::{eta_quotient_int, level1_monomial_int};
use super::table::{delta_spec, table_from_ints, CoeffTable, EigenformSpec, FormSource};
use super::QexpandError;

fn level1(k: u32, e4: u32, e6: u32) -> EigenformSpec {
    EigenformSpec {
        label: format!("1.{k}.a.a"),
        weight: k,
        level: 1,
        character: DirichletCharacter::trivial(1),
        source: FormSource::Level1 { delta: 1, e4, e6 },
    }
}

fn eta(level: u64, k: u32, factors: Vec<(u64, i64)>) -> EigenformSpec {
    EigenformSpec {
        label: format!("{level}.{k}.a.a"),
        weight: k,
        level,
        character: DirichletCharacter::trivial(level),
        source: FormSource::EtaQuotient(factors),
    }
}

/// Δ, the one-dimensional level-one spaces of weights 16 to 26, and four
/// eta-quotient newforms of small level.
pub fn builtin_specs() -> Vec<EigenformSpec> {
    vec![
        delta_spec(),
        level1(16, 1, 0),
        level1(18, 0, 1),
        level1(20, 2, 0),
        level1(22, 1, 1),
        level1(26, 2, 1),
        eta(11, 2, vec![(1, 2), (11, 2)]),
        eta(5, 4, vec![(1, 4), (5, 4)]),
        eta(3, 6, vec![(1, 6), (3, 6)]),
        eta(2, 8, vec![(1, 8), (2, 8)]),
    ]
}

pub fn builtin_spec(label: &str) -> Option<EigenformSpec> {
    builtin_specs().into_iter().find(|s| s.label == label)
}

/// Coefficient table of a constructible form up to `nmax`.
pub fn compute_table(spec: &EigenformSpec, nmax: u64) -> Result<CoeffTable, QexpandError> {
    let prec = nmax as usize + 1;
    let series = match &spec.source {
        FormSource::Level1 { delta, e4, e6 } => level1_monomial_int(*delta, *e4, *e6, prec),
        FormSource::EtaQuotient(factors) => eta_quotient_int(factors, prec)?,
        FormSource::Ingested(path) => {
            return Err(QexpandError::InvalidInput(format!(
                "{} is ingested from {path} and has no construction",
                spec.label
            )))
        }
    };
    Ok(table_from_ints(spec.clone(), series))
}

pub fn builtin_table(label: &str, nmax: u64) -> Option<CoeffTable> {
    builtin_spec(label).map(|s| compute_table(&s, nmax).expect("built-in forms are constructible"))
}

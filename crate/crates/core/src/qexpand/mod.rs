//! q-expansions of eigenforms: series arithmetic, built-in constructions,
//! Dirichlet characters and exact coefficient tables.

mod character;
mod ingest;
mod registry;
mod series;
mod table;

pub use character::{sqrt_characters, DirichletCharacter};
pub use ingest::{form_to_json, ingest_form, parse_form, to_form_file, CycJson, FormFile};
pub use registry::{builtin_spec, builtin_specs, builtin_table, compute_table};
pub use series::{
    bernoulli_numbers, dim_cusp_forms, divisor_sums, eisenstein, eta_expand, eta_quotient, miller_basis,
    PowerSeries,
};
pub use table::{delta_table, verify_eigenform, verify_reality, CoeffTable, EigenformSpec, FormSource};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QexpandError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed at n = {index}: {reason}")]
    Validation { index: u64, reason: String },
    #[error("coefficient a({n}) is outside the table (nmax = {nmax})")]
    OutOfRange { n: u64, nmax: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(String),
}

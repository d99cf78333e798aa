//! Exact arithmetic substrate.

pub mod arith;
mod cyclotomic;
mod field;
mod interval;
pub mod modp;
mod poly;
pub mod rational;
mod sturm;

pub use cyclotomic::{cyc_embed, cyclotomic_polynomial, euler_phi, CycNumber};
pub use field::{CertifiedSign, Field, PrecisionExhausted, Sign};
pub use interval::{ComplexBox, Dyadic, RealInterval};
pub use modp::{
    certify_irreducible, degree_pattern_mod_p, integer_model, BadPrime, Irreducibility,
};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{poly_resultant, Poly};
pub use sturm::{isolate_real_roots, sturm_count_real_roots, Bound, DEFAULT_SIGN_CAP_BITS};

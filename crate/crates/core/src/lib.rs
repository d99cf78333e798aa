//! Exact computations around Fourier coefficients of Hecke eigenforms at
//! prime powers.
//!
//! The crate is split into five layers:
//!
//! * [`exactmath`]: rationals, cyclotomic fields, polynomials, resultants,
//!   Sturm sequences, finite-field factor patterns and certified real balls.
//! * [`qexpand`]: q-expansions (eta products, Eisenstein series, the Miller
//!   basis), Dirichlet characters and validated coefficient tables.
//! * [`hecketheory`]: the operators `T_j(p)`, their expression as polynomials
//!   in `T(p)`, Hecke matrices on level-one cusp spaces and the
//!   irreducibility / eigenvalue-pair checks on their characteristic polynomials.
//! * [`genfun`]: closed rational generating functions for prime-power
//!   coefficient sequences and their root-of-unity filters.
//! * [`signscan`]: sign-change censuses, Deligne margins, Satake angles and
//!   the pole-exclusion and real-zero checks.

pub mod exactmath;
pub mod genfun;
pub mod hecketheory;
pub mod qexpand;
pub mod signscan;

pub use exactmath::{
    BigRational, ComplexBox, CycNumber, Field, Poly, RealInterval, Sign,
};
pub use genfun::{ConjugatePairData, FilterSpec, RationalFunction};
pub use hecketheory::{HeckeMatrix, TjPolynomial};
pub use qexpand::{CoeffTable, DirichletCharacter, EigenformSpec, PowerSeries};
pub use signscan::{ScanReport, SignSequenceSpec};

//! Exact generating functions of the normalized prime-power coefficients,
//! root-of-unity filters and their evaluation at `X = p^{-s}`.

mod closed;
mod ratfun;

pub use closed::{
    closed_p, closed_p_multiples, closed_s1, closed_s1j, closed_s1j_filter, closed_sl, closed_sl_all,
    filter_series, lambda_sym, multiples_generating_function, theorem5_polynomial, v_sequence, v_table,
    ConjugatePairData, FilterSpec,
};
pub use ratfun::{expansion_residual_vanishes, RationalFunction};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactmath::rational::{format_rational, int_pow};
use crate::exactmath::{ComplexBox, CycNumber, Dyadic, RealInterval};
use crate::qexpand::{sqrt_characters, CoeffTable, DirichletCharacter, PowerSeries, QexpandError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenfunError {
    #[error("degenerate Satake pair at p = {p}: t^2 = 4 p^(k-1)")]
    DegeneratePair { p: u64 },
    #[error("j = {0} is even; the odd-multiple series needs odd j")]
    EvenJ(u32),
    #[error("pole of the generating function at s = {0}")]
    PoleAt(String),
    #[error("a(p)/chi0(p) is not real at p = {p}")]
    NotReal { p: u64 },
    #[error("p = {p} divides the level {level}")]
    PrimeDividesLevel { p: u64, level: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Coefficients(#[from] QexpandError),
}

/// Square root of the nebentypus used by default: trivial for a trivial
/// character, otherwise the first root returned by `sqrt_characters`.
pub fn default_chi0(t: &CoeffTable) -> Result<DirichletCharacter, GenfunError> {
    let chi = &t.spec().character;
    if chi.is_trivial() {
        return Ok(DirichletCharacter::trivial(chi.modulus()));
    }
    sqrt_characters(chi)
        .into_iter()
        .next()
        .ok_or_else(|| GenfunError::InvalidInput(format!("the character of {} has no square root", t.label())))
}

/// Taylor coefficients of `R` below `order`.
pub fn expand(r: &RationalFunction, order: usize) -> PowerSeries<CycNumber> {
    r.expand(order)
}

/// Enclosure of `p^{-s}` for rational `s`.
fn p_power_neg(p: u64, s: &BigRational, bits: u32) -> RealInterval {
    exp_rational(p, &-s, bits)
}

/// Enclosure of `p^u` for rational `u`.
fn exp_rational(p: u64, u: &BigRational, bits: u32) -> RealInterval {
    let a = u.numer();
    let b: u32 = u.denom().try_into().expect("denominator of the exponent fits in u32");
    let mag: u64 = a.abs().try_into().expect("numerator of the exponent fits in u64");
    let pa = BigRational::from_integer(int_pow(p, mag));
    let r = if a.is_negative() { pa.recip() } else { pa };
    RealInterval::nth_root_rational(&r, b, bits)
}

fn eval_box(poly: &[CycNumber], x: &RealInterval, bits: u32) -> ComplexBox {
    let mut acc = ComplexBox::zero(bits);
    for c in poly.iter().rev() {
        acc = acc.scale(x).add(&c.embed(bits));
    }
    acc
}

/// `R(p^{-s})` for a rational function with real coefficients, as a certified
/// interval of radius about `2^{-bits}` relative to its size.
pub fn dirichlet_eval(r: &RationalFunction, p: u64, s: &BigRational, bits: u32) -> Result<RealInterval, GenfunError> {
    if !r.is_real() {
        return Err(GenfunError::InvalidInput("rational function has non-real coefficients".into()));
    }
    let mut wp = bits + 32;
    for _ in 0..4 {
        let x = p_power_neg(p, s, wp);
        let num = eval_box(r.num().coeffs(), &x, wp);
        let den = eval_box(r.den().coeffs(), &x, wp);
        if !den.re.contains_zero() {
            let v = num.re.div(&den.re).expect("nonzero denominator");
            return Ok(v.with_precision(bits));
        }
        wp *= 2;
    }
    Err(GenfunError::PoleAt(format_rational(s)))
}

/// `sum_{n < terms} b_{e_n} p^{-s e_n}` over the exponents `e_n` of `filter`,
/// with `b_e = a(p^e) / chi0(p)^e` taken from the table (continued by the
/// recurrence). The radius includes the tail bound
/// `(E + 2) x^{E+1} / (1 - x)^2`, `x = p^{(k-1)/2 - s}`, which follows from
/// `|b_e| <= (e + 1) p^{e(k-1)/2}`; `E` is the last exponent summed.
pub fn partial_sum(
    t: &CoeffTable,
    chi0: &DirichletCharacter,
    p: u64,
    filter: &FilterSpec,
    s: &BigRational,
    terms: usize,
    bits: u32,
) -> Result<RealInterval, GenfunError> {
    filter.validate()?;
    if terms == 0 {
        return Err(GenfunError::InvalidInput("need at least one term".into()));
    }
    let wp = bits + 32;
    let half_weight = BigRational::new(BigInt::from(t.weight() - 1), BigInt::from(2));
    let x = exp_rational(p, &(half_weight - s), wp);
    let one = RealInterval::from_i64(1, wp);
    let gap = one.sub(&x);
    if gap.sign() != Some(crate::exactmath::Sign::Positive) {
        return Err(GenfunError::InvalidInput(format!(
            "s = {} is not beyond the abscissa {}/2 of absolute convergence",
            format_rational(s),
            t.weight() - 1
        )));
    }
    let last = filter.exponent(terms as u64 - 1);
    let e_max: u32 = last.try_into().map_err(|_| GenfunError::InvalidInput("exponent too large".into()))?;
    let a = t.prime_power_coeffs(p, e_max)?;
    let c = chi0.value_u64(p);
    let c_inv = c.inverse();
    let xs = p_power_neg(p, s, wp);
    let mut acc = RealInterval::zero(wp);
    let mut c_pow = CycNumber::one();
    let mut x_pow = RealInterval::from_i64(1, wp);
    for e in 0..=last {
        if filter.contains(e) {
            let b = &a[e as usize] * &c_pow;
            if !b.is_real() {
                return Err(GenfunError::NotReal { p });
            }
            if !b.is_zero() {
                acc = acc.add(&b.embed(wp).re.mul(&x_pow));
            }
        }
        c_pow = &c_pow * &c_inv;
        x_pow = x_pow.mul(&xs);
    }
    let e1 = BigRational::from_integer(BigInt::from(last + 2));
    let tail = x.pow(last as u32 + 1).mul_rational(&e1).div(&gap.mul(&gap)).expect("positive gap");
    let extra: Dyadic = tail.upper();
    Ok(acc.widen(&extra).with_precision(bits))
}

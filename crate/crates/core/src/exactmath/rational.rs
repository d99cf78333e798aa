//! Small helpers around [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `a * b`. Integer operands skip the normalizing gcds, which dominate the
/// cost of the generic routine on large integers.
pub fn rmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        return BigRational::from_integer(a.numer() * b.numer());
    }
    a * b
}

/// `a + b`, with the same integer shortcut as [`rmul`].
pub fn radd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        return BigRational::from_integer(a.numer() + b.numer());
    }
    a + b
}

/// `a - b`, with the same integer shortcut as [`rmul`].
pub fn rsub(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        return BigRational::from_integer(a.numer() - b.numer());
    }
    a - b
}

pub fn rat_pow(base: &BigRational, exp: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = rmul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = rmul(&b, &b);
        }
    }
    acc
}

/// Parses `"p/q"` or `"p"` with optional sign.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Canonical `"p/q"` text, `"p"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&ratio(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(-5)), "-5");
    }

    #[test]
    fn powers() {
        assert_eq!(rat_pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(rat_pow(&rat(5), 0), rat(1));
        assert_eq!(int_pow(2, 11), BigInt::from(2048));
    }
}

use std::fmt;

use num_traits::{One, Zero};

use crate::exactmath::{CycNumber, Field, Poly};
use crate::qexpand::PowerSeries;

/// Reduced quotient `num / den` of polynomials over a cyclotomic field with
/// `den(0) = 1`. Reduction makes the representation unique, so equality of
/// rational functions is structural equality.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    num: Poly<CycNumber>,
    den: Poly<CycNumber>,
}

impl RationalFunction {
    /// Reduced `num / den`. Panics if `den(0) = 0`.
    pub fn new(num: Poly<CycNumber>, den: Poly<CycNumber>) -> Self {
        assert!(!den.coeff(0).is_zero(), "denominator must not vanish at 0");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let c = den.coeff(0).inv();
        RationalFunction { num: num.scale(&c), den: den.scale(&c) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<CycNumber>) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly<CycNumber> {
        &self.num
    }

    pub fn den(&self) -> &Poly<CycNumber> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `R(c X)`.
    pub fn compose_scale(&self, c: &CycNumber) -> Self {
        Self::new(self.num.compose_scale(c), self.den.compose_scale(c))
    }

    /// `R(X^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        RationalFunction { num: self.num.inflate(k), den: self.den.inflate(k) }
    }

    /// `X^k R(X)`.
    pub fn shift(&self, k: usize) -> Self {
        Self::new(self.num.shift(k), self.den.clone())
    }

    /// All coefficients of numerator and denominator are real.
    pub fn is_real(&self) -> bool {
        self.num.coeffs().iter().chain(self.den.coeffs()).all(|c| c.is_real())
    }

    /// Taylor coefficients at 0 for exponents `< order`, by the linear
    /// recurrence `c_n = num_n - sum_{i>=1} den_i c_{n-i}`.
    pub fn expand(&self, order: usize) -> PowerSeries<CycNumber> {
        let d = self.den.coeffs();
        let mut c: Vec<CycNumber> = Vec::with_capacity(order);
        for n in 0..order {
            let mut v = self.num.coeff(n);
            for (i, di) in d.iter().enumerate().skip(1).take(n) {
                if !di.is_zero() && !c[n - i].is_zero() {
                    v = v.sub_ref(&di.mul_ref(&c[n - i]));
                }
            }
            c.push(v);
        }
        PowerSeries::new(c)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Expansion of a reduced rational function as a truncated series, checked
/// against its definition: `expand(R) den - num = O(X^order)`.
pub fn expansion_residual_vanishes(r: &RationalFunction, order: usize) -> bool {
    let s = r.expand(order);
    (0..order).all(|n| {
        let mut acc = CycNumber::zero();
        for (i, di) in r.den().coeffs().iter().enumerate().take(n + 1) {
            acc = acc.add_ref(&di.mul_ref(&s.coeffs()[n - i]));
        }
        acc == r.num().coeff(n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<CycNumber> {
        Poly::new(cs.iter().map(|&c| CycNumber::from_int(c)).collect())
    }

    #[test]
    fn reduction_is_canonical() {
        // (1 - X^2) / ((1 - X)(2 + X)) = (1 + X) / (2 + X) = (1/2 + X/2) / (1 + X/2)
        let r = RationalFunction::new(p(&[1, 0, -1]), &p(&[1, -1]) * &p(&[2, 1]));
        let s = RationalFunction::new(p(&[1, 1]), p(&[2, 1]));
        assert_eq!(r, s);
        assert!(r.den().coeff(0).is_one());
        assert_eq!(r.sub(&s), RationalFunction::zero());
    }

    #[test]
    fn geometric_series() {
        let r = RationalFunction::new(p(&[1]), p(&[1, -1]));
        let s = r.expand(5);
        assert!(s.coeffs().iter().all(|c| c.is_one()));
        assert!(expansion_residual_vanishes(&r, 20));
    }
}

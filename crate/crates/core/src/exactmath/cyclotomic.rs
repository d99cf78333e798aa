//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(m)-1)` of the
//! smallest cyclotomic field containing them, with orders `m = 2 (mod 4)`
//! never used (`Q(zeta_2k) = Q(zeta_k)` for odd `k`). That makes the
//! representation canonical: two elements are equal exactly when their
//! stored order and coordinates agree.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::{divisors, factorize, mobius};
use super::field::{CertifiedSign, Field, PrecisionExhausted, Sign};
use super::interval::{ComplexBox, RealInterval};
use super::poly::Poly;
use super::rational::{format_rational, radd, rmul, rsub};

pub fn euler_phi(m: u64) -> u64 {
    factorize(m).iter().fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1);
    let mut num: Vec<i128> = vec![1];
    let mut den: Vec<i128> = vec![1];
    for d in divisors(m) {
        let target = match mobius(m / d) {
            1 => &mut num,
            -1 => &mut den,
            _ => continue,
        };
        // multiply by X^d - 1
        let mut next = vec![0i128; target.len() + d as usize];
        for (i, &c) in target.iter().enumerate() {
            next[i] -= c;
            next[i + d as usize] += c;
        }
        *target = next;
    }
    // exact division num / den, den monic
    let dd = den.len() - 1;
    let mut rem = num;
    let qlen = rem.len() - dd;
    let mut quot = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let q = rem[i + dd];
        quot[i] = q;
        if q != 0 {
            for (k, &c) in den.iter().enumerate() {
                rem[i + k] -= q * c;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot.into_iter().map(|c| c as i64).collect()
}

fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Reduces a coefficient vector in `Q[x]` modulo `x^w - 1` and then `Phi_w`.
fn reduce_full(v: Vec<BigRational>, w: u64, phi_poly: &[i64]) -> Vec<BigRational> {
    let w = w as usize;
    let mut v = if v.len() > w {
        let mut folded = vec![BigRational::zero(); w];
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % w] = radd(&folded[i % w], &c);
            }
        }
        folded
    } else {
        v
    };
    let phi = phi_poly.len() - 1;
    for i in (phi..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], BigRational::zero());
        for (k, &pc) in phi_poly.iter().enumerate().take(phi) {
            if pc != 0 {
                let t = rmul(&c, &BigRational::from_integer(BigInt::from(pc)));
                v[i - phi + k] = rsub(&v[i - phi + k], &t);
            }
        }
    }
    v.resize(phi, BigRational::zero());
    v
}

/// Element of a cyclotomic field in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    /// Canonical element `sum raw[i] * zeta_order^i`.
    pub fn canonicalize(order: u64, raw: Vec<BigRational>) -> CycNumber {
        assert!(order >= 1, "cyclotomic order must be positive");
        assert!(raw.len() as u64 <= order, "too many coordinates for order {order}");
        let (w, full) = if order % 4 == 2 {
            // zeta_{2w} = -zeta_w^{(w+1)/2} for odd w
            let w = order / 2;
            let mut full = vec![BigRational::zero(); w as usize];
            for (i, c) in raw.into_iter().enumerate() {
                let i = i as u64;
                let idx = ((i * (w + 1) / 2) % w) as usize;
                if i % 2 == 0 {
                    full[idx] += c;
                } else {
                    full[idx] -= c;
                }
            }
            (w, full)
        } else {
            (order, raw)
        };
        let phi_poly = cyclotomic_polynomial(w);
        let v = reduce_full(full, w, &phi_poly);
        Self::minimize(w, v, &phi_poly)
    }

    pub fn from_rational(r: BigRational) -> CycNumber {
        CycNumber { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> CycNumber {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u64, k: i64) -> CycNumber {
        let k = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::canonicalize(m, raw)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        if self.order == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn minimize(w: u64, v: Vec<BigRational>, phi_poly: &[i64]) -> CycNumber {
        if v.iter().skip(1).all(|c| c.is_zero()) {
            let c = v.into_iter().next().unwrap_or_else(BigRational::zero);
            return CycNumber { order: 1, coeffs: vec![c] };
        }
        for d in divisors(w) {
            if d == 1 || d == w || d % 4 == 2 {
                continue;
            }
            if Self::fixed_by_kernel(w, &v, d, phi_poly) {
                let coords = Self::coordinates_in_subfield(w, &v, d, phi_poly);
                return CycNumber { order: d, coeffs: coords };
            }
        }
        CycNumber { order: w, coeffs: v }
    }

    fn galois_raw(w: u64, v: &[BigRational], a: u64, phi_poly: &[i64]) -> Vec<BigRational> {
        let mut full = vec![BigRational::zero(); w as usize];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                full[((a * i as u64) % w) as usize] += c;
            }
        }
        reduce_full(full, w, phi_poly)
    }

    fn fixed_by_kernel(w: u64, v: &[BigRational], d: u64, phi_poly: &[i64]) -> bool {
        (2..w)
            .filter(|&a| a % d == 1 && a.gcd(&w) == 1)
            .all(|a| Self::galois_raw(w, v, a, phi_poly) == v)
    }

    /// Coordinates in the power basis of `Q(zeta_d)` of an element of that subfield.
    fn coordinates_in_subfield(w: u64, v: &[BigRational], d: u64, phi_poly: &[i64]) -> Vec<BigRational> {
        let n = euler_phi(d) as usize;
        let rows = v.len();
        let step = (w / d) as usize;
        let basis: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut full = vec![BigRational::zero(); i * step + 1];
                full[i * step] = BigRational::one();
                reduce_full(full, w, phi_poly)
            })
            .collect();
        // augmented matrix rows: [basis_0[r] .. basis_{n-1}[r] | v[r]]
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b[r].clone()).collect();
                row.push(v[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(n);
        for col in 0..n {
            let Some(pr) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, pr);
            let inv = m[pivot_row][col].recip();
            for x in m[pivot_row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let t = &f * &m[pivot_row][c];
                        m[r][c] -= t;
                    }
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
        let mut y = vec![BigRational::zero(); n];
        for (r, c) in pivots {
            y[c] = m[r][n].clone();
        }
        y
    }

    /// Coordinates after embedding into `Q(zeta_w)`; requires `order | w`.
    fn lift(&self, w: u64, phi_poly: &[i64]) -> Vec<BigRational> {
        if self.order == w {
            return self.coeffs.clone();
        }
        let step = (w / self.order) as usize;
        let mut full = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[i * step] = c.clone();
        }
        reduce_full(full, w, phi_poly)
    }

    /// Applies the automorphism `zeta -> zeta^a` (`gcd(a, order) = 1`).
    pub fn galois(&self, a: i64) -> CycNumber {
        if self.order == 1 {
            return self.clone();
        }
        let w = self.order;
        let a = a.rem_euclid(w as i64) as u64;
        assert_eq!(a.gcd(&w), 1, "exponent not coprime to the order");
        let phi_poly = cyclotomic_polynomial(w);
        CycNumber { order: w, coeffs: Self::galois_raw(w, &self.coeffs, a, &phi_poly) }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycNumber {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.order == 1 || self.conj() == *self
    }

    pub fn is_zero_element(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn pow(&self, mut e: u64) -> CycNumber {
        let mut acc = CycNumber::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Integer power, negative exponents invert.
    pub fn powi(&self, e: i64) -> CycNumber {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inverse().pow(e.unsigned_abs())
        }
    }

    /// Multiplicative order if `self` is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero_element() {
            return None;
        }
        let bound = lcm(2, self.order);
        if self.pow(bound) != CycNumber::one() {
            return None;
        }
        (1..=bound).filter(|d| bound % d == 0).find(|&d| self.pow(d) == CycNumber::one())
    }

    /// Real part `(x + conj x) / 2`.
    pub fn real_part(&self) -> CycNumber {
        let half = CycNumber::from_rational(BigRational::new(1.into(), 2.into()));
        &(self + &self.conj()) * &half
    }

    /// Imaginary part `(x - conj x) / (2i)`.
    pub fn imag_part(&self) -> CycNumber {
        let two_i = CycNumber::root_of_unity(4, 1) * CycNumber::from_int(2);
        &(self - &self.conj()) / &two_i
    }

    pub fn inverse(&self) -> CycNumber {
        assert!(!self.is_zero_element(), "inverse of zero");
        if self.order == 1 {
            return CycNumber::from_rational(self.coeffs[0].recip());
        }
        let w = self.order;
        let phi_poly = cyclotomic_polynomial(w);
        let modulus: Poly<BigRational> = Poly::from_i64s(&phi_poly);
        let a = Poly::new(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&modulus);
        debug_assert!(g.degree() == Some(0));
        let mut coeffs = s.into_coeffs();
        coeffs.resize(euler_phi(w) as usize, BigRational::zero());
        CycNumber { order: w, coeffs }
    }

    /// Certified complex enclosure of the element under `zeta_m -> exp(2 pi i / m)`.
    pub fn embed(&self, bits: u32) -> ComplexBox {
        cyc_embed(self, bits)
    }

    fn binary(&self, o: &CycNumber, op: impl Fn(&[BigRational], &[BigRational], &[i64]) -> Vec<BigRational>) -> CycNumber {
        let w = lcm(self.order, o.order);
        let phi_poly = cyclotomic_polynomial(w);
        let a = self.lift(w, &phi_poly);
        let b = o.lift(w, &phi_poly);
        let v = op(&a, &b, &phi_poly);
        Self::minimize(w, v, &phi_poly)
    }

    fn add_impl(&self, o: &CycNumber) -> CycNumber {
        if self.order == 1 && o.order == 1 {
            return CycNumber::from_rational(radd(&self.coeffs[0], &o.coeffs[0]));
        }
        if o.is_zero_element() {
            return self.clone();
        }
        if self.is_zero_element() {
            return o.clone();
        }
        self.binary(o, |a, b, _| a.iter().zip(b).map(|(x, y)| radd(x, y)).collect())
    }

    fn mul_impl(&self, o: &CycNumber) -> CycNumber {
        match (self.to_rational(), o.to_rational()) {
            (Some(a), Some(b)) => return CycNumber::from_rational(rmul(a, b)),
            (Some(r), None) | (None, Some(r)) => {
                let other = if self.order == 1 { o } else { self };
                if r.is_zero() {
                    return CycNumber::zero();
                }
                return CycNumber {
                    order: other.order,
                    coeffs: other.coeffs.iter().map(|c| rmul(c, r)).collect(),
                };
            }
            (None, None) => {}
        }
        let w = lcm(self.order, o.order);
        self.binary(o, |a, b, phi_poly| {
            let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        prod[i + j] = radd(&prod[i + j], &rmul(x, y));
                    }
                }
            }
            reduce_full(prod, w, phi_poly)
        })
    }
}

/// Certified enclosure of `x` as a complex number.
pub fn cyc_embed(x: &CycNumber, bits: u32) -> ComplexBox {
    let wp = bits + 16;
    if let Some(r) = x.to_rational() {
        return ComplexBox::from_real(RealInterval::from_rational(r, bits));
    }
    let mut acc = ComplexBox::zero(wp);
    for (i, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (cos, sin) = RealInterval::cos_sin_two_pi_frac(i as i64, x.order, wp);
        let cr = RealInterval::from_rational(c, wp);
        acc = acc.add(&ComplexBox::new(cos.mul(&cr), sin.mul(&cr)));
    }
    ComplexBox::new(acc.re.with_precision(bits), acc.im.with_precision(bits))
}

impl CertifiedSign for CycNumber {
    /// Sign of the real part (callers pass real elements).
    fn certified_sign(&self, max_bits: u32) -> Result<Sign, PrecisionExhausted> {
        if let Some(r) = self.to_rational() {
            return r.certified_sign(max_bits);
        }
        let mut bits = 64;
        loop {
            if let Some(s) = cyc_embed(self, bits).re.sign() {
                return Ok(s);
            }
            if bits >= max_bits {
                return Err(PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(max_bits);
        }
    }
}

impl Zero for CycNumber {
    fn zero() -> Self {
        CycNumber::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_element()
    }
}

impl One for CycNumber {
    fn one() -> Self {
        CycNumber::from_int(1)
    }
}

impl Field for CycNumber {
    fn add_ref(&self, other: &Self) -> Self {
        self.add_impl(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_impl(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }
    fn neg_ref(&self) -> Self {
        CycNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn from_rational(r: BigRational) -> Self {
        CycNumber::from_rational(r)
    }
}

macro_rules! cyc_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $m(self, o: &CycNumber) -> CycNumber {
                let f: fn(&CycNumber, &CycNumber) -> CycNumber = $body;
                f(self, o)
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, o: CycNumber) -> CycNumber {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, o: &CycNumber) -> CycNumber {
                (&self).$m(o)
            }
        }
    };
}
cyc_binop!(Add, add, |a, b| a.add_impl(b));
cyc_binop!(Sub, sub, |a, b| a.sub_ref(b));
cyc_binop!(Mul, mul, |a, b| a.mul_impl(b));
cyc_binop!(Div, div, |a, b| a.mul_impl(&b.inverse()));

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl From<BigRational> for CycNumber {
    fn from(r: BigRational) -> Self {
        CycNumber::from_rational(r)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", format_rational(r));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zpow = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            if i == 0 {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{zpow}")?;
            } else {
                write!(f, "{}*{zpow}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{rat, ratio};

    fn z(m: u64, k: i64) -> CycNumber {
        CycNumber::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(105), 48);
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn canonicalize_examples() {
        let i = CycNumber::canonicalize(4, vec![rat(0), rat(1)]);
        assert!(!i.is_real());
        assert_eq!(&i * &i, CycNumber::from_int(-1));

        let w = CycNumber::canonicalize(3, vec![rat(-1), rat(-1)]);
        assert_eq!(w, z(3, 2));

        let z6 = CycNumber::canonicalize(6, vec![rat(0), rat(1)]);
        assert_eq!(z6.order(), 3);
        // minimal polynomial x^2 - x + 1
        assert_eq!(&(&z6 * &z6) - &z6 + CycNumber::one(), CycNumber::zero());
        assert_eq!(&z6 + &z6.conj(), CycNumber::one());
    }

    #[test]
    fn orders_are_minimized() {
        // zeta_12^3 = i
        assert_eq!(z(12, 3), z(4, 1));
        assert_eq!(z(12, 3).order(), 4);
        // zeta_8 + zeta_8^7 = sqrt 2 stays in Q(zeta_8)
        let s = &z(8, 1) + &z(8, 7);
        assert_eq!(s.order(), 8);
        assert!(s.is_real());
        assert_eq!(&s * &s, CycNumber::from_int(2));
        // zeta_3 + zeta_3^2 = -1
        assert_eq!(&z(3, 1) + &z(3, 2), CycNumber::from_int(-1));
        // sum over the different orders lands in the compositum
        let mixed = &z(3, 1) + &z(4, 1);
        assert_eq!(mixed.order(), 12);
        assert_eq!(&mixed - &z(4, 1), z(3, 1));
    }

    #[test]
    fn inverse_and_roots_of_unity() {
        let x = &z(5, 1) + &CycNumber::from_rational(ratio(3, 2));
        let y = x.inverse();
        assert_eq!(&x * &y, CycNumber::one());
        assert_eq!(z(8, 3).root_of_unity_order(), Some(8));
        assert_eq!(CycNumber::from_int(-1).root_of_unity_order(), Some(2));
        assert_eq!(z(3, 1).root_of_unity_order(), Some(3));
        assert_eq!(CycNumber::from_int(2).root_of_unity_order(), None);
        assert_eq!((-z(3, 1)).root_of_unity_order(), Some(6));
    }

    #[test]
    fn real_and_imag_parts() {
        let x = &CycNumber::from_int(3) + &(&z(4, 1) * &CycNumber::from_int(2));
        assert_eq!(x.real_part(), CycNumber::from_int(3));
        assert_eq!(x.imag_part(), CycNumber::from_int(2));
    }

    #[test]
    fn embedding_examples() {
        let b = cyc_embed(&CycNumber::one(), 64);
        assert!(b.re.contains_rational(&rat(1)) && b.im.contains_rational(&rat(0)));
        let b = cyc_embed(&(&z(3, 1) + &z(3, 2)), 64);
        assert!(b.re.contains_rational(&rat(-1)));
        let b = cyc_embed(&z(8, 1), 128);
        let re2 = b.re.mul(&b.re);
        assert!(re2.contains_rational(&ratio(1, 2)));
        assert!(b.re.overlaps(&b.im));
    }

    #[test]
    fn certified_sign_of_real_elements() {
        let s = &z(8, 1) + &z(8, 7); // sqrt 2
        assert_eq!(s.certified_sign(4096), Ok(Sign::Positive));
        let t = &s - &CycNumber::from_rational(ratio(141421356, 100000000));
        assert_eq!(t.certified_sign(4096), Ok(Sign::Positive));
        assert_eq!((-t).certified_sign(4096), Ok(Sign::Negative));
    }

    #[test]
    fn display() {
        assert_eq!(CycNumber::from_rational(ratio(-3, 4)).to_string(), "-3/4");
        assert_eq!((&z(4, 1) * &CycNumber::from_int(-2)).to_string(), "-2*z4");
        assert_eq!((&z(3, 1) + &CycNumber::one()).to_string(), "1 + z3");
    }
}

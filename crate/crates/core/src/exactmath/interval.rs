//! Ball arithmetic over dyadic rationals.
//!
//! A [`RealInterval`] is a midpoint/radius pair of exact dyadic numbers. Every
//! operation computes its midpoint exactly, rounds it to the working
//! precision, and folds the rounding error into the radius, so the ball always
//! contains the value it claims to enclose.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Sign;

/// `man * 2^exp`, kept with an odd mantissa (or zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

const RAD_BITS: u64 = 30;

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        Dyadic { man: man >> tz, exp: exp + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> Sign {
        if self.man.is_zero() {
            Sign::Zero
        } else if self.man.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        (
            &self.man << (self.exp - e) as u64,
            &other.man << (other.exp - e) as u64,
            e,
        )
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        Dyadic::new(self.man.clone(), self.exp + k)
    }

    /// Position of the leading bit plus one: `|self| < 2^magnitude()`.
    pub fn magnitude(&self) -> i64 {
        self.man.bits() as i64 + self.exp
    }

    /// Largest dyadic with at most `prec` significant bits that is `<= self`.
    pub fn floor_to(&self, prec: u32) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        Dyadic::new(self.man.div_floor(&pow2(s)), self.exp + s as i64)
    }

    /// Smallest dyadic with at most `prec` significant bits that is `>= self`.
    pub fn ceil_to(&self, prec: u32) -> Dyadic {
        self.neg().floor_to(prec).neg()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), pow2((-self.exp) as u64))
        }
    }

    /// `floor(r * 2^-exp) * 2^exp`.
    pub fn floor_rational(r: &BigRational, exp: i64) -> Dyadic {
        let scaled = if exp <= 0 {
            r * BigRational::from_integer(pow2((-exp) as u64))
        } else {
            r / BigRational::from_integer(pow2(exp as u64))
        };
        Dyadic::new(scaled.floor().to_integer(), exp)
    }

    /// Rounds a non-negative rational up to a short dyadic.
    pub fn ceil_rational(r: &BigRational, bits: u32) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let mag = r.numer().bits() as i64 - r.denom().bits() as i64;
        let exp = mag - bits as i64;
        Dyadic::floor_rational(&-r, exp).neg()
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.man >> shift as u64).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + shift).clamp(-2000, 2000) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

/// Closed ball `[mid - rad, mid + rad]` at a working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl RealInterval {
    fn finish(mid_exact: Dyadic, rad: Dyadic, prec: u32) -> Self {
        let mid = mid_exact.floor_to(prec);
        let err = mid_exact.sub(&mid);
        let rad = rad.add(&err).ceil_to(RAD_BITS as u32);
        RealInterval { mid, rad, prec }
    }

    pub fn exact(value: Dyadic, prec: u32) -> Self {
        Self::finish(value, Dyadic::zero(), prec)
    }

    pub fn from_parts(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(rad.signum() != Sign::Negative, "negative radius");
        Self::finish(mid, rad, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::exact(Dyadic::from_int(n), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let mag = r.numer().bits() as i64 - r.denom().bits() as i64;
        let exp = mag - prec as i64 - 2;
        let mid = Dyadic::floor_rational(r, exp);
        let exact = mid.to_rational() == *r;
        let rad = if exact { Dyadic::zero() } else { Dyadic::new(BigInt::one(), exp) };
        Self::finish(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Self::finish(self.mid.clone(), self.rad.clone(), prec)
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.lower().signum() != Sign::Positive && self.upper().signum() != Sign::Negative
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        let lo = self.lower().to_rational();
        let hi = self.upper().to_rational();
        lo <= *r && *r <= hi
    }

    /// `Positive`/`Negative` when zero is excluded, `None` otherwise.
    pub fn sign(&self) -> Option<Sign> {
        if self.lower().signum() == Sign::Positive {
            Some(Sign::Positive)
        } else if self.upper().signum() == Sign::Negative {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn overlaps(&self, other: &RealInterval) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    pub fn add(&self, o: &RealInterval) -> RealInterval {
        Self::finish(self.mid.add(&o.mid), self.rad.add(&o.rad), self.prec.max(o.prec))
    }

    pub fn sub(&self, o: &RealInterval) -> RealInterval {
        Self::finish(self.mid.sub(&o.mid), self.rad.add(&o.rad), self.prec.max(o.prec))
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval { mid: self.mid.neg(), rad: self.rad.clone(), prec: self.prec }
    }

    pub fn mul(&self, o: &RealInterval) -> RealInterval {
        let rad = self
            .mid
            .abs()
            .mul(&o.rad)
            .add(&o.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&o.rad));
        Self::finish(self.mid.mul(&o.mid), rad, self.prec.max(o.prec))
    }

    pub fn mul_rational(&self, r: &BigRational) -> RealInterval {
        self.mul(&RealInterval::from_rational(r, self.prec))
    }

    pub fn div_u64(&self, n: u64) -> RealInterval {
        assert!(n > 0);
        let prec = self.prec;
        let q = self.mid.to_rational() / BigRational::from_integer(BigInt::from(n));
        let mid = RealInterval::from_rational(&q, prec);
        let rad = Dyadic::ceil_rational(
            &(self.rad.to_rational() / BigRational::from_integer(BigInt::from(n))),
            RAD_BITS as u32,
        );
        Self::finish(mid.mid, mid.rad.add(&rad), prec)
    }

    /// `None` when the divisor ball contains zero.
    pub fn div(&self, o: &RealInterval) -> Option<RealInterval> {
        let low = o.mid.abs().sub(&o.rad);
        if low.signum() != Sign::Positive {
            return None;
        }
        let prec = self.prec.max(o.prec);
        let q = self.mid.to_rational() / o.mid.to_rational();
        let approx = RealInterval::from_rational(&q, prec);
        let prop = (self.rad.to_rational() + q.abs() * o.rad.to_rational()) / low.to_rational();
        let rad = approx.rad.add(&Dyadic::ceil_rational(&prop, RAD_BITS as u32));
        Some(Self::finish(approx.mid, rad, prec))
    }

    pub fn pow(&self, n: u32) -> RealInterval {
        let mut acc = RealInterval::from_i64(1, self.prec);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square root; `None` when the ball reaches below zero.
    pub fn sqrt(&self) -> Option<RealInterval> {
        let prec = self.prec;
        let low = self.lower();
        if low.signum() == Sign::Negative {
            return None;
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            return Some(RealInterval::zero(prec));
        }
        let (r, t) = isqrt_floor(&self.mid, prec + 8);
        // sqrt(mid) in [r, r + 1] * 2^-t
        let half_ulp = Dyadic::new(BigInt::one(), -t - 1);
        let mid = Dyadic::new(r, -t).add(&half_ulp);
        let prop = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            let (rl, tl) = isqrt_floor(&low, 64);
            if rl.is_zero() {
                let (ru, tu) = isqrt_floor(&self.rad, 64);
                Dyadic::new(ru + 1u32, -tu)
            } else {
                let lb = Dyadic::new(rl, -tl).to_rational();
                Dyadic::ceil_rational(&(self.rad.to_rational() / lb), RAD_BITS as u32)
            }
        };
        Some(Self::finish(mid, half_ulp.add(&prop), prec))
    }

    /// Rigorous enclosure of pi.
    pub fn pi(prec: u32) -> RealInterval {
        let w = prec as u64 + 32;
        let (a, ka) = atan_inv_fixed(5, w);
        let (b, kb) = atan_inv_fixed(239, w);
        let value = a * 16 - b * 4;
        let err = BigInt::from(16 * (ka + 2) + 4 * (kb + 2));
        Self::finish(Dyadic::new(value, -(w as i64)), Dyadic::new(err, -(w as i64)), prec)
    }

    /// Cosine and sine of the ball.
    pub fn cos_sin(&self) -> (RealInterval, RealInterval) {
        let prec = self.prec;
        let wp = prec + 24;
        let x = RealInterval::exact(self.mid.clone(), wp);
        let x2 = x.mul(&x);
        let tiny = Dyadic::new(BigInt::one(), -(wp as i64) - 4);
        let x_hi = self.mid.abs();

        let mut cos = RealInterval::from_i64(1, wp);
        let mut term = RealInterval::from_i64(1, wp);
        let mut k: u64 = 0;
        loop {
            k += 1;
            term = term.mul(&x2).div_u64((2 * k - 1) * (2 * k));
            let bound = term.mid.abs().add(&term.rad);
            if bound <= tiny && Dyadic::from_int((2 * k + 1) * (2 * k + 2)) > x_hi.mul(&x_hi) {
                cos = cos.widen(&bound);
                break;
            }
            cos = if k % 2 == 1 { cos.sub(&term) } else { cos.add(&term) };
        }

        let mut sin = x.clone();
        let mut term = x.clone();
        let mut k: u64 = 0;
        loop {
            k += 1;
            term = term.mul(&x2).div_u64((2 * k) * (2 * k + 1));
            let bound = term.mid.abs().add(&term.rad);
            if bound <= tiny && Dyadic::from_int((2 * k + 2) * (2 * k + 3)) > x_hi.mul(&x_hi) {
                sin = sin.widen(&bound);
                break;
            }
            sin = if k % 2 == 1 { sin.sub(&term) } else { sin.add(&term) };
        }
        // both functions are 1-Lipschitz
        (
            cos.widen(&self.rad).with_precision(prec),
            sin.widen(&self.rad).with_precision(prec),
        )
    }

    /// `cos(2 pi k / m)` and `sin(2 pi k / m)`.
    pub fn cos_sin_two_pi_frac(k: i64, m: u64, prec: u32) -> (RealInterval, RealInterval) {
        let m_i = m as i64;
        let mut r = k.rem_euclid(m_i);
        if 2 * r > m_i {
            r -= m_i;
        }
        let wp = prec + 16;
        let angle = RealInterval::pi(wp)
            .mul_rational(&BigRational::new(BigInt::from(2 * r), BigInt::from(m_i)));
        let (c, s) = angle.cos_sin();
        (c.with_precision(prec), s.with_precision(prec))
    }

    /// Arc cosine of a ball inside `(-1, 1)`, by certified bisection.
    pub fn acos(&self) -> Option<RealInterval> {
        let prec = self.prec;
        let one = Dyadic::from_int(1);
        if self.upper() >= one || self.lower() <= one.neg() {
            return None;
        }
        let wp = prec + 8;
        let pi = RealInterval::pi(wp);
        let mut lo = Dyadic::zero();
        let mut hi = pi.upper();
        let pi_lo = pi.lower();
        let c_lo = self.lower();
        let c_hi = self.upper();
        for _ in 0..(wp + 4) {
            let mid = lo.add(&hi).mul_pow2(-1);
            if mid > pi_lo {
                break;
            }
            let (c, _) = RealInterval::exact(mid.clone(), wp).cos_sin();
            if c.lower() > c_hi {
                lo = mid;
            } else if c.upper() < c_lo {
                hi = mid;
            } else {
                break;
            }
        }
        let mid = lo.add(&hi).mul_pow2(-1);
        let rad = hi.sub(&lo).mul_pow2(-1);
        Some(Self::finish(mid, rad, prec))
    }

    /// Positive real `b`-th root of a positive rational.
    pub fn nth_root_rational(r: &BigRational, b: u32, prec: u32) -> RealInterval {
        assert!(r.is_positive() && b >= 1);
        let mag = (r.numer().bits() as i64 - r.denom().bits() as i64) / b as i64;
        let w = (prec as i64 + 4 - mag).max(0) as u64;
        let scaled = r * BigRational::from_integer(pow2(w * b as u64));
        let z = scaled.floor().to_integer();
        let root = z.nth_root(b);
        // value * 2^w lies in [root, root + 1]
        let mid = Dyadic::new(root * 2 + 1u32, -(w as i64) - 1);
        let rad = Dyadic::new(BigInt::one(), -(w as i64) - 1);
        Self::finish(mid, rad, prec)
    }

    pub fn widen(&self, extra: &Dyadic) -> RealInterval {
        Self::finish(self.mid.clone(), self.rad.add(extra), self.prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} +/- {:.3e}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

/// `floor(sqrt(d) * 2^t)` with enough bits, returned with `t`.
fn isqrt_floor(d: &Dyadic, prec: u32) -> (BigInt, i64) {
    let m = d.mantissa();
    let e = d.exponent();
    let bits = m.bits() as i64;
    let t = (2 * prec as i64 - bits - e + 1).div_euclid(2);
    let sh = e + 2 * t;
    let n = if sh >= 0 {
        m << sh as u64
    } else {
        m.div_floor(&pow2((-sh) as u64))
    };
    (n.sqrt(), t)
}

/// `atan(1/n) * 2^w` in fixed point with the number of truncated terms.
fn atan_inv_fixed(n: u64, w: u64) -> (BigInt, u64) {
    let s = pow2(w);
    let n2 = BigInt::from(n * n);
    let mut power = BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let t = &s / (&power * BigInt::from(2 * k + 1));
        if t.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power *= &n2;
        k += 1;
    }
    (sum, k)
}

/// Rectangular complex ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexBox {
    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBox { re: RealInterval::zero(prec), im: RealInterval::zero(prec) }
    }

    pub fn from_real(re: RealInterval) -> Self {
        let prec = re.precision();
        ComplexBox { re, im: RealInterval::zero(prec) }
    }

    pub fn add(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &RealInterval) -> ComplexBox {
        ComplexBox { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Division; `None` when the divisor box may contain zero.
    pub fn div(&self, o: &ComplexBox) -> Option<ComplexBox> {
        let norm = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let num_re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let num_im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(ComplexBox { re: num_re.div(&norm)?, im: num_im.div(&norm)? })
    }
}

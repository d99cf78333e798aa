//! Truncated q-expansions: eta products, Eisenstein series and the Miller basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::QexpandError;
use crate::exactmath::Field;

/// Power series `sum c_n q^n` known for `n < prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Field> PowerSeries<F> {
    /// Series whose precision is `coeffs.len()`.
    pub fn new(coeffs: Vec<F>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        PowerSeries { coeffs: vec![F::zero(); prec] }
    }

    pub fn one(prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.coeffs[0] = F::one();
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^n`, `None` at or beyond the precision.
    pub fn coeff(&self, n: usize) -> Option<&F> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> Self {
        PowerSeries { coeffs: self.coeffs[..prec.min(self.prec())].to_vec() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.prec().min(o.prec());
        PowerSeries { coeffs: (0..n).map(|i| self.coeffs[i].add_ref(&o.coeffs[i])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.prec().min(o.prec());
        PowerSeries { coeffs: (0..n).map(|i| self.coeffs[i].sub_ref(&o.coeffs[i])).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.prec().min(o.prec());
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    /// `q^k * self`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.prec();
        let mut coeffs = vec![F::zero(); n];
        for i in k..n {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        PowerSeries { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.prec());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }
}

impl PowerSeries<BigRational> {
    pub(crate) fn from_ints(v: Vec<BigInt>) -> Self {
        PowerSeries::new(v.into_iter().map(BigRational::from_integer).collect())
    }
}

pub(crate) type IntSeries = Vec<BigInt>;

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt], prec: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `f^e` for `f = 1 + O(q)` and any integer `e`, by the sparse recurrence
/// `n g_n = sum_{i=1..n} ((e + 1) i - n) f_i g_{n-i}`.
pub(crate) fn int_unit_pow(f: &[BigInt], e: i64, prec: usize) -> IntSeries {
    assert!(f.first().is_some_and(|c| c.is_one()), "series must start with 1");
    let support: Vec<(usize, &BigInt)> = f.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
    let mut g = vec![BigInt::zero(); prec];
    if prec == 0 {
        return g;
    }
    g[0] = BigInt::one();
    for n in 1..prec {
        let mut acc = BigInt::zero();
        for &(i, fi) in &support {
            if i > n {
                break;
            }
            let w = (e + 1) * i as i64 - n as i64;
            if w != 0 && !g[n - i].is_zero() {
                acc += fi * &g[n - i] * w;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(n));
        debug_assert!(r.is_zero());
        g[n] = q;
    }
    g
}

fn int_inflate(f: &[BigInt], d: usize, prec: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); prec];
    for (i, c) in f.iter().enumerate() {
        if i * d >= prec {
            break;
        }
        out[i * d] = c.clone();
    }
    out
}

fn int_shift(f: &[BigInt], k: usize, prec: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); prec];
    for i in k..prec {
        if let Some(c) = f.get(i - k) {
            out[i] = c.clone();
        }
    }
    out
}

/// `prod (1 - q^n)` by Euler's pentagonal number theorem.
pub(crate) fn eta_int(prec: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); prec];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let idx = (kk * (3 * kk - 1) / 2) as usize;
            if idx < prec {
                out[idx] = if kk.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
                any = true;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    out
}

/// `prod_{n>=1} (1 - q^n)` to precision `prec`.
pub fn eta_expand(prec: usize) -> PowerSeries<BigRational> {
    PowerSeries::from_ints(eta_int(prec))
}

pub(crate) fn eta_quotient_int(factors: &[(u64, i64)], prec: usize) -> Result<IntSeries, QexpandError> {
    let weighted: i64 = factors.iter().map(|&(d, r)| d as i64 * r).sum();
    if weighted < 0 || weighted % 24 != 0 {
        return Err(QexpandError::InvalidInput(format!(
            "eta quotient {factors:?} has q-order {weighted}/24, not a non-negative integer"
        )));
    }
    let shift = (weighted / 24) as usize;
    let inner = prec.saturating_sub(shift);
    let mut acc = vec![BigInt::zero(); inner];
    if inner > 0 {
        acc[0] = BigInt::one();
    }
    let eta = eta_int(inner);
    for &(d, r) in factors {
        if inner == 0 {
            break;
        }
        let d = d as usize;
        let base = int_unit_pow(&eta, r, inner.div_ceil(d));
        acc = int_mul(&acc, &int_inflate(&base, d, inner), inner);
    }
    Ok(int_shift(&acc, shift, prec))
}

/// `prod eta(d z)^(r_d)` for `(d, r_d)` in `factors`, to precision `prec`.
pub fn eta_quotient(factors: &[(u64, i64)], prec: usize) -> Result<PowerSeries<BigRational>, QexpandError> {
    eta_quotient_int(factors, prec).map(PowerSeries::from_ints)
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `sigma_e(n)` for `0 <= n < len` (entry 0 is zero).
pub fn divisor_sums(e: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for d in 1..len {
        let dp = num_traits::pow(BigInt::from(d), e as usize);
        let mut m = d;
        while m < len {
            out[m] += &dp;
            m += d;
        }
    }
    out
}

/// Normalized Eisenstein series `E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n`.
pub fn eisenstein(k: u32, prec: usize) -> Result<PowerSeries<BigRational>, QexpandError> {
    if k < 4 || k % 2 == 1 {
        return Err(QexpandError::InvalidInput(format!("Eisenstein weight {k} must be even and at least 4")));
    }
    let bk = bernoulli_numbers(k as usize).pop().expect("nonempty");
    let c = -BigRational::from_integer(BigInt::from(2 * k)) / bk;
    let sig = divisor_sums(k - 1, prec);
    let mut coeffs: Vec<BigRational> = sig.into_iter().map(|s| &c * BigRational::from_integer(s)).collect();
    if prec > 0 {
        coeffs[0] = BigRational::one();
    }
    Ok(PowerSeries::new(coeffs))
}

fn eisenstein_int(k: u32, prec: usize) -> IntSeries {
    let c: i64 = match k {
        4 => 240,
        6 => -504,
        _ => unreachable!("only E4 and E6 are used as integral generators"),
    };
    let mut s: IntSeries = divisor_sums(k - 1, prec).into_iter().map(|x| x * c).collect();
    if prec > 0 {
        s[0] = BigInt::one();
    }
    s
}

/// `Delta^a E4^b E6^c` with integer coefficients.
pub(crate) fn level1_monomial_int(a: u32, b: u32, c: u32, prec: usize) -> IntSeries {
    let a_us = a as usize;
    let inner = prec.saturating_sub(a_us);
    let mut acc = int_unit_pow(&eta_int(inner), 24 * a as i64, inner);
    if b > 0 {
        acc = int_mul(&acc, &int_unit_pow(&eisenstein_int(4, inner), b as i64, inner), inner);
    }
    if c > 0 {
        acc = int_mul(&acc, &int_unit_pow(&eisenstein_int(6, inner), c as i64, inner), inner);
    }
    int_shift(&acc, a_us, prec)
}

/// Dimension of the space of level-one cusp forms of weight `k`.
pub fn dim_cusp_forms(k: u32) -> usize {
    if k % 2 == 1 || k < 12 {
        return 0;
    }
    let m = (k / 12) as usize;
    if k % 12 == 2 {
        m - 1
    } else {
        m
    }
}

/// Exponents `(b, c)` with `E4^b E6^c` of weight `w`, for `w` in `{0, 4, 6, 8, 10, 14}`.
fn small_weight_monomial(w: u32) -> (u32, u32) {
    match w {
        0 => (0, 0),
        4 => (1, 0),
        6 => (0, 1),
        8 => (2, 0),
        10 => (1, 1),
        14 => (2, 1),
        _ => unreachable!("residual weight {w}"),
    }
}

pub(crate) fn miller_basis_int(k: u32, prec: usize) -> Vec<IntSeries> {
    let d = dim_cusp_forms(k);
    if d == 0 {
        return Vec::new();
    }
    let (b, c) = small_weight_monomial(k - 12 * d as u32);
    let mut basis: Vec<IntSeries> =
        (1..=d as u32).map(|j| level1_monomial_int(j, b, c + 2 * (d as u32 - j), prec)).collect();
    for i in (0..d).rev() {
        for j in i + 1..d {
            let c = basis[i].get(j + 1).cloned().unwrap_or_default();
            if !c.is_zero() {
                let (lo, hi) = basis.split_at_mut(j);
                for (x, y) in lo[i].iter_mut().zip(hi[0].iter()) {
                    *x -= &c * y;
                }
            }
        }
    }
    basis
}

/// Echelonized basis `f_i = q^i + O(q^(d+1))` of level-one cusp forms of weight `k`.
pub fn miller_basis(k: u32, prec: usize) -> Result<Vec<PowerSeries<BigRational>>, QexpandError> {
    if k % 2 == 1 {
        return Err(QexpandError::InvalidInput(format!("weight {k} is odd")));
    }
    let d = dim_cusp_forms(k);
    if prec <= d {
        return Err(QexpandError::InvalidInput(format!("precision {prec} must exceed dim S_{k} = {d}")));
    }
    Ok(miller_basis_int(k, prec).into_iter().map(PowerSeries::from_ints).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{rat, ratio};

    fn ints(s: &PowerSeries<BigRational>) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn eta_small() {
        assert_eq!(ints(&eta_expand(6)), vec![1, -1, -1, 0, 0, 1]);
        assert_eq!(ints(&eta_expand(1)), vec![1]);
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], ratio(-1, 2));
        assert_eq!(b[4], ratio(-1, 30));
        assert_eq!(b[6], ratio(1, 42));
        assert_eq!(b[12], ratio(-691, 2730));
        assert!(b[7].is_zero());
    }

    #[test]
    fn eisenstein_leading_terms() {
        let e4 = eisenstein(4, 3).unwrap();
        assert_eq!(ints(&e4), vec![1, 240, 2160]);
        let e6 = eisenstein(6, 3).unwrap();
        assert_eq!(ints(&e6), vec![1, -504, -16632]);
        let e12 = eisenstein(12, 2).unwrap();
        assert_eq!(e12.coeffs()[1], ratio(65520, 691));
        assert!(eisenstein(5, 3).is_err());
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = [12, 14, 16, 24, 26, 36, 38].iter().map(|&k| dim_cusp_forms(k)).collect();
        assert_eq!(dims, vec![1, 0, 1, 2, 1, 3, 2]);
    }

    #[test]
    fn unit_powers_match_repeated_products() {
        let eta = eta_int(30);
        let cube = int_mul(&int_mul(&eta, &eta, 30), &eta, 30);
        assert_eq!(int_unit_pow(&eta, 3, 30), cube);
        let inv = int_unit_pow(&eta, -1, 30);
        let one = int_mul(&inv, &eta, 30);
        assert!(one[0].is_one() && one[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn miller_shapes() {
        let b = miller_basis(24, 6).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].coeffs()[..3], [rat(0), rat(1), rat(0)]);
        assert_eq!(b[1].coeffs()[..3], [rat(0), rat(0), rat(1)]);
        assert!(miller_basis(24, 2).is_err());
        assert!(miller_basis(14, 4).unwrap().is_empty());
    }

    #[test]
    fn eta_quotient_order_must_be_integral() {
        assert!(eta_quotient(&[(1, 1)], 5).is_err());
        let f = eta_quotient(&[(1, 2), (11, 2)], 6).unwrap();
        assert_eq!(ints(&f), vec![0, 1, -2, -1, 2, 1]);
    }
}

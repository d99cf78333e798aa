//! Factor-degree patterns modulo small primes and irreducibility certificates
//! over the rationals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::is_prime;
use super::poly::Poly;
use super::sturm::isolate_real_roots;

/// Primitive integer polynomial proportional to `f` with positive leading coefficient.
pub fn integer_model(f: &Poly<BigRational>) -> Vec<BigInt> {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum BadPrime {
    #[error("{0} divides the leading coefficient")]
    DividesLeading(u64),
    #[error("reduction mod {0} is not squarefree")]
    NotSquarefree(u64),
}

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

fn fp_sub(a: &Fp, b: &Fp, q: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + q - b.get(i).copied().unwrap_or(0)) % q).collect())
}

fn fp_mul(a: &Fp, b: &Fp, q: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    trim(out)
}

fn fp_divrem(a: &Fp, b: &Fp, q: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(b[db], q);
    let mut r = a.clone();
    let mut quot = vec![0u64; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i] * inv % q;
        if c == 0 {
            continue;
        }
        quot[i - db] = c;
        for (k, &bc) in b.iter().enumerate() {
            r[i - db + k] = (r[i - db + k] + q - c * bc % q) % q;
        }
    }
    r.truncate(db);
    (trim(quot), trim(r))
}

fn fp_monic(a: Fp, q: u64) -> Fp {
    match a.last() {
        None => a,
        Some(&lc) => {
            let inv = inv_mod(lc, q);
            a.into_iter().map(|c| c * inv % q).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, q: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, q).1;
        a = b;
        b = r;
    }
    fp_monic(a, q)
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, q: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = fp_divrem(base, m, q).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_divrem(&fp_mul(&acc, &b, q), m, q).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, q), m, q).1;
        e >>= 1;
    }
    acc
}

fn fp_derivative(a: &Fp, q: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % q) * c % q).collect())
}

/// Sorted degrees of the irreducible factors of `f` modulo the prime `q`
/// (distinct-degree factorization).
pub fn degree_pattern_mod_p(f: &Poly<BigRational>, q: u64) -> Result<Vec<usize>, BadPrime> {
    assert!(q >= 2 && q < (1 << 31), "modulus out of range");
    let model = integer_model(f);
    let qb = BigInt::from(q);
    let red: Fp = model.iter().map(|c| c.mod_floor(&qb).to_u64().expect("reduced")).collect();
    let red = trim(red);
    if red.len() != model.len() {
        return Err(BadPrime::DividesLeading(q));
    }
    let deg = red.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if fp_gcd(&red, &fp_derivative(&red, q), q).len() > 1 {
        return Err(BadPrime::NotSquarefree(q));
    }
    let mut rest = fp_monic(red, q);
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut pattern = Vec::new();
    let mut i = 1;
    while rest.len() - 1 >= 2 * i {
        h = fp_powmod(&h, q, &rest, q);
        let g = fp_gcd(&rest, &fp_sub(&h, &x, q), q);
        let dg = g.len() - 1;
        if dg > 0 {
            pattern.extend(std::iter::repeat(i).take(dg / i));
            rest = fp_divrem(&rest, &g, q).0;
            h = fp_divrem(&h, &rest, q).1;
        }
        i += 1;
    }
    if rest.len() > 1 {
        pattern.push(rest.len() - 1);
    }
    pattern.sort_unstable();
    Ok(pattern)
}

/// Outcome of the irreducibility test, with a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Yes(String),
    No(String),
    Inconclusive(String),
}

impl Irreducibility {
    pub fn verdict(&self) -> &'static str {
        match self {
            Irreducibility::Yes(_) => "Yes",
            Irreducibility::No(_) => "No",
            Irreducibility::Inconclusive(_) => "Inconclusive",
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            Irreducibility::Yes(r) | Irreducibility::No(r) | Irreducibility::Inconclusive(r) => r,
        }
    }
}

const PATTERN_PRIMES: usize = 25;

fn small_primes() -> impl Iterator<Item = u64> {
    (2u64..100_000).filter(|&n| is_prime(n))
}

fn subset_sums(pattern: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in pattern {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (0..=n).filter(|&s| reach[s]).collect()
}

/// Rational root of `f`, if any.
pub fn rational_root(f: &Poly<BigRational>) -> Option<BigRational> {
    let model = integer_model(f);
    let n = model.len().checked_sub(1)?;
    if n == 0 {
        return None;
    }
    if model[0].is_zero() {
        return Some(BigRational::zero());
    }
    // monic g(Y) = lc^(n-1) f(Y / lc); rational roots r of f <-> integer roots lc*r of g
    let lc = model[n].clone();
    let mut g = Vec::with_capacity(n + 1);
    let mut pow = BigInt::one();
    let mut pows = vec![BigInt::one(); n];
    for p in pows.iter_mut().rev() {
        *p = pow.clone();
        pow *= &lc;
    }
    for i in 0..n {
        g.push(BigRational::from_integer(&model[i] * &pows[i]));
    }
    g.push(BigRational::one());
    let g = Poly::new(g);
    let half = BigRational::new(1.into(), 2.into());
    for (a, b) in isolate_real_roots(&g, &half) {
        let lo = a.floor().to_integer();
        let hi = b.ceil().to_integer();
        let mut y = lo;
        while y <= hi {
            let yr = BigRational::from_integer(y.clone());
            if g.eval(&yr).is_zero() {
                return Some(yr / BigRational::from_integer(lc.clone()));
            }
            y += 1;
        }
    }
    None
}

/// Certifies irreducibility over the rationals where possible.
///
/// Order of tests: degree one, squarefreeness, rational roots (which settle
/// degrees two and three), then factor-degree patterns modulo the first 25
/// usable primes. One prime with a single factor certifies; otherwise the
/// achievable factor-degree sums are intersected across primes and a result
/// of `{0, deg}` certifies.
pub fn certify_irreducible(f: &Poly<BigRational>) -> Irreducibility {
    let Some(n) = f.degree() else {
        return Irreducibility::No("zero polynomial".into());
    };
    match n {
        0 => return Irreducibility::No("constant polynomial".into()),
        1 => return Irreducibility::Yes("degree 1".into()),
        _ => {}
    }
    if !f.gcd(&f.derivative()).is_constant() {
        return Irreducibility::No("repeated factor".into());
    }
    if let Some(r) = rational_root(f) {
        return Irreducibility::No(format!("rational root {r}"));
    }
    if n <= 3 {
        return Irreducibility::Yes(format!("degree {n} without rational roots"));
    }
    let mut common: BTreeSet<usize> = (0..=n).collect();
    let mut used = Vec::new();
    for q in small_primes() {
        if used.len() == PATTERN_PRIMES {
            break;
        }
        let Ok(pattern) = degree_pattern_mod_p(f, q) else {
            continue;
        };
        if pattern == [n] {
            return Irreducibility::Yes(format!("irreducible mod {q}"));
        }
        let sums = subset_sums(&pattern, n);
        common = common.intersection(&sums).copied().collect();
        used.push(q);
        if common.len() == 2 {
            return Irreducibility::Yes(format!("factor-degree patterns mod {used:?} admit no proper factor"));
        }
    }
    Irreducibility::Inconclusive(format!("possible factor degrees {common:?} after {} primes", used.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{rat, ratio};

    type P = Poly<BigRational>;

    #[test]
    fn patterns() {
        assert_eq!(degree_pattern_mod_p(&P::from_i64s(&[1, 0, 1]), 3), Ok(vec![2]));
        assert_eq!(degree_pattern_mod_p(&P::from_i64s(&[-1, 0, 1]), 5), Ok(vec![1, 1]));
        assert_eq!(degree_pattern_mod_p(&P::from_i64s(&[1, 0, 3]), 3), Err(BadPrime::DividesLeading(3)));
        assert_eq!(degree_pattern_mod_p(&P::from_i64s(&[1, 2, 1]), 7), Err(BadPrime::NotSquarefree(7)));
    }

    #[test]
    fn integer_models() {
        let f = P::new(vec![ratio(1, 2), ratio(-1, 3), rat(0)]);
        assert_eq!(integer_model(&f), vec![BigInt::from(-3), BigInt::from(2)]);
    }

    #[test]
    fn irreducibility() {
        // X^4 + 1 is reducible mod every prime yet irreducible over Q
        let f = P::from_i64s(&[1, 0, 0, 0, 1]);
        assert!(matches!(certify_irreducible(&f), Irreducibility::Inconclusive(_)));
        // X^4 - 2 is irreducible mod 5? x^4=2 has no root mod 5 and it is irreducible
        let g = P::from_i64s(&[-2, 0, 0, 0, 1]);
        assert_eq!(certify_irreducible(&g).verdict(), "Yes");
        let h = &P::from_i64s(&[1, 0, 1]) * &P::from_i64s(&[2, 0, 1]);
        assert!(matches!(certify_irreducible(&h), Irreducibility::Inconclusive(_)));
        let r = &P::from_i64s(&[3, 2]) * &P::from_i64s(&[1, 1, 1]);
        assert_eq!(certify_irreducible(&r), Irreducibility::No("rational root -3/2".into()));
        assert_eq!(certify_irreducible(&P::from_i64s(&[-2, 0, 1])).verdict(), "Yes");
        assert_eq!(certify_irreducible(&P::from_i64s(&[5, 7])).verdict(), "Yes");
    }
}

//! Eigenform descriptions and their coefficient tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::character::DirichletCharacter;
use super::series::{eta_int, int_unit_pow};
use super::QexpandError;
use crate::exactmath::arith::{factorize, gcd, prime_power};
use crate::exactmath::rational::int_pow;
use crate::exactmath::CycNumber;

/// How the q-expansion of a form is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSource {
    /// `prod eta(d z)^(r_d)` over `(d, r_d)`.
    EtaQuotient(Vec<(u64, i64)>),
    /// `Delta^delta E4^e4 E6^e6`.
    Level1 { delta: u32, e4: u32, e6: u32 },
    /// Coefficients read from an external file.
    Ingested(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenformSpec {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    /// Nebentypus, stored modulo the level.
    pub character: DirichletCharacter,
    pub source: FormSource,
}

impl EigenformSpec {
    /// `chi(p)` for the nebentypus modulo the level.
    pub fn chi(&self, n: u64) -> CycNumber {
        self.character.value_u64(n)
    }

    /// `p^(k-1)`.
    pub fn pk1(&self, p: u64) -> BigRational {
        BigRational::from_integer(int_pow(p, self.weight as u64 - 1))
    }
}

/// Exact coefficients `a(1..=nmax)` of a normalized eigenform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    spec: EigenformSpec,
    // a[0] is a placeholder so that a[n] = a(n)
    a: Vec<CycNumber>,
}

impl CoeffTable {
    /// Table from `coeffs[i] = a(i + 1)`.
    pub fn from_coefficients(spec: EigenformSpec, coeffs: Vec<CycNumber>) -> Self {
        let mut a = Vec::with_capacity(coeffs.len() + 1);
        a.push(CycNumber::zero());
        a.extend(coeffs);
        CoeffTable { spec, a }
    }

    pub fn spec(&self) -> &EigenformSpec {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.spec.label
    }

    pub fn weight(&self) -> u32 {
        self.spec.weight
    }

    pub fn level(&self) -> u64 {
        self.spec.level
    }

    pub fn nmax(&self) -> u64 {
        self.a.len() as u64 - 1
    }

    /// `a(1), ..., a(nmax)`.
    pub fn coefficients(&self) -> &[CycNumber] {
        &self.a[1..]
    }

    pub fn chi(&self, n: u64) -> CycNumber {
        self.spec.chi(n)
    }

    pub fn pk1(&self, p: u64) -> BigRational {
        self.spec.pk1(p)
    }

    /// `a(n)` from the table.
    pub fn a(&self, n: u64) -> Result<&CycNumber, QexpandError> {
        if n == 0 || n > self.nmax() {
            return Err(QexpandError::OutOfRange { n, nmax: self.nmax() });
        }
        Ok(&self.a[n as usize])
    }

    /// Copy of the table with `a(n)` replaced.
    pub fn with_coefficient(&self, n: u64, value: CycNumber) -> Self {
        assert!(n >= 1 && n <= self.nmax(), "index {n} outside the table");
        let mut t = self.clone();
        t.a[n as usize] = value;
        t
    }

    /// `[a(1), a(p), ..., a(p^e_max)]`, read from the table while `p^e <= nmax`
    /// and continued by `a(p^(e+1)) = a(p) a(p^e) - chi(p) p^(k-1) a(p^(e-1))`.
    pub fn prime_power_coeffs(&self, p: u64, e_max: u32) -> Result<Vec<CycNumber>, QexpandError> {
        let ap = self.a(p)?.clone();
        let c = &self.chi(p) * &CycNumber::from_rational(self.pk1(p));
        let mut out = Vec::with_capacity(e_max as usize + 1);
        out.push(CycNumber::one());
        let mut pe: Option<u64> = Some(1);
        for e in 1..=e_max as usize {
            pe = pe.and_then(|x| x.checked_mul(p));
            let from_table = pe.filter(|&x| x <= self.nmax()).map(|x| self.a[x as usize].clone());
            let v = match from_table {
                Some(v) => v,
                None if e == 1 => ap.clone(),
                None => &(&ap * &out[e - 1]) - &(&c * &out[e - 2]),
            };
            out.push(v);
        }
        Ok(out)
    }

    pub fn prime_power(&self, p: u64, e: u32) -> Result<CycNumber, QexpandError> {
        Ok(self.prime_power_coeffs(p, e)?.pop().expect("nonempty"))
    }

    /// `a(n)` for any `n`, using the table when possible and otherwise
    /// multiplicativity together with the prime-power recurrence.
    pub fn coeff_extended(&self, n: u64) -> Result<CycNumber, QexpandError> {
        if n >= 1 && n <= self.nmax() {
            return Ok(self.a[n as usize].clone());
        }
        if n == 0 {
            return Err(QexpandError::OutOfRange { n, nmax: self.nmax() });
        }
        let mut acc = CycNumber::one();
        for (p, e) in factorize(n) {
            acc = &acc * &self.prime_power(p, e)?;
        }
        Ok(acc)
    }
}

/// First index violating coprime multiplicativity or the prime-power
/// recurrence, scanning `n = 2..=nmax` in order.
pub fn verify_eigenform(t: &CoeffTable) -> Result<(), u64> {
    if !t.a[1].is_one() {
        return Err(1);
    }
    for n in 2..=t.nmax() {
        let an = &t.a[n as usize];
        match prime_power(n) {
            Some((_, 1)) => {}
            Some((p, e)) => {
                let c = &t.chi(p) * &CycNumber::from_rational(t.pk1(p));
                let prev = &t.a[p.pow(e - 1) as usize];
                let prev2 = &t.a[p.pow(e - 2) as usize];
                let expected = &(&t.a[p as usize] * prev) - &(&c * prev2);
                if *an != expected {
                    return Err(n);
                }
            }
            None => {
                let (p, e) = factorize(n)[0];
                let q = p.pow(e);
                if *an != &t.a[q as usize] * &t.a[(n / q) as usize] {
                    return Err(n);
                }
            }
        }
    }
    Ok(())
}

/// First `n` coprime to the level with `a(n) != chi(n) conj(a(n))`.
pub fn verify_reality(t: &CoeffTable) -> Result<(), u64> {
    for n in 1..=t.nmax() {
        if gcd(n, t.level()) != 1 {
            continue;
        }
        let an = &t.a[n as usize];
        if *an != &t.chi(n) * &an.conj() {
            return Err(n);
        }
    }
    Ok(())
}

pub(crate) fn delta_spec() -> EigenformSpec {
    EigenformSpec {
        label: "delta".into(),
        weight: 12,
        level: 1,
        character: DirichletCharacter::trivial(1),
        source: FormSource::Level1 { delta: 1, e4: 0, e6: 0 },
    }
}

pub(crate) fn table_from_ints(spec: EigenformSpec, series: Vec<BigInt>) -> CoeffTable {
    let coeffs = series.into_iter().skip(1).map(|c| CycNumber::from_rational(BigRational::from_integer(c))).collect();
    CoeffTable::from_coefficients(spec, coeffs)
}

/// `tau(n)` for `n <= nmax`, from `q prod (1 - q^n)^24`.
pub fn delta_table(nmax: u64) -> CoeffTable {
    let n = nmax as usize;
    let mut series = vec![BigInt::zero()];
    series.extend(int_unit_pow(&eta_int(n), 24, n));
    table_from_ints(delta_spec(), series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> CycNumber {
        CycNumber::from_int(n)
    }

    #[test]
    fn tau_values() {
        let t = delta_table(12);
        let want = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(*t.a(n as u64 + 1).unwrap(), int(*w));
        }
        assert!(t.a(13).is_err());
    }

    #[test]
    fn recurrence_extension_agrees_with_table() {
        let big = delta_table(300);
        let small = delta_table(10);
        for p in [2u64, 3, 5, 7] {
            let ext = small.prime_power_coeffs(p, 8).unwrap();
            for (e, v) in ext.iter().enumerate() {
                let pe = p.pow(e as u32);
                if pe <= 300 {
                    assert_eq!(*v, *big.a(pe).unwrap(), "p={p} e={e}");
                }
            }
        }
        assert_eq!(small.coeff_extended(6 * 49).unwrap(), *big.a(294).unwrap());
        assert!(small.prime_power(11, 2).is_err());
    }

    #[test]
    fn verification_finds_planted_errors() {
        let t = delta_table(100);
        assert_eq!(verify_eigenform(&t), Ok(()));
        assert_eq!(verify_reality(&t), Ok(()));
        assert_eq!(verify_eigenform(&t.with_coefficient(4, int(0))), Err(4));
        assert_eq!(verify_eigenform(&t.with_coefficient(6, int(1))), Err(6));
        let complex = t.with_coefficient(3, CycNumber::root_of_unity(4, 1));
        assert_eq!(verify_reality(&complex), Err(3));
    }
}

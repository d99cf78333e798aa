//! Closed forms of the prime-power generating functions.
//!
//! For a prime `p` write `t = a(p) / chi0(p)` and `q = p^{k-1}`, so that the
//! Satake pair satisfies `alpha + beta = t`, `alpha beta = q`. The normalized
//! coefficients are `b_e = a(p^e) / chi0(p)^e = V_{e+1}` with
//! `V_n = (alpha^n - beta^n) / (alpha - beta)`. Every formula below is written
//! in `t` and `q` through `V_n` and `Lambda_n = alpha^n + beta^n`, so all
//! arithmetic stays in the cyclotomic field of `t`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratfun::RationalFunction;
use super::GenfunError;
use crate::exactmath::arith::gcd;
use crate::exactmath::{CycNumber, Poly};
use crate::qexpand::{CoeffTable, DirichletCharacter};

/// Symmetric data `t = alpha + beta`, `q = alpha beta` of the Satake pair at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatePairData {
    pub trace: CycNumber,
    pub norm: BigRational,
    pub weight: u32,
    pub prime: u64,
}

impl ConjugatePairData {
    /// Pair data from a coefficient table and a square root `chi0` of its character.
    pub fn from_table(t: &CoeffTable, p: u64, chi0: &DirichletCharacter) -> Result<Self, GenfunError> {
        if gcd(p, t.level()) != 1 {
            return Err(GenfunError::PrimeDividesLevel { p, level: t.level() });
        }
        let trace = t.a(p)? / &chi0.value_u64(p);
        if !trace.is_real() {
            return Err(GenfunError::NotReal { p });
        }
        Ok(ConjugatePairData { trace, norm: t.pk1(p), weight: t.weight(), prime: p })
    }

    pub fn new(trace: CycNumber, weight: u32, prime: u64) -> Self {
        let norm = BigRational::from_integer(num_traits::pow(num_bigint::BigInt::from(prime), weight as usize - 1));
        ConjugatePairData { trace, norm, weight, prime }
    }

    pub fn q(&self) -> CycNumber {
        CycNumber::from_rational(self.norm.clone())
    }

    /// `4 q - t^2`; nonnegative by Deligne's bound, zero exactly when `alpha = beta`.
    pub fn deligne_margin(&self) -> CycNumber {
        &(&self.q() * &CycNumber::from_int(4)) - &(&self.trace * &self.trace)
    }

    pub fn is_degenerate(&self) -> bool {
        self.deligne_margin().is_zero()
    }

    fn require_nondegenerate(&self) -> Result<(), GenfunError> {
        if self.is_degenerate() {
            Err(GenfunError::DegeneratePair { p: self.prime })
        } else {
            Ok(())
        }
    }
}

/// `[V_0, ..., V_n]` from `V_0 = 0`, `V_1 = 1`, `V_{i+1} = t V_i - q V_{i-1}`.
pub fn v_table(d: &ConjugatePairData, n: usize) -> Vec<CycNumber> {
    let q = d.q();
    let mut v = vec![CycNumber::zero(), CycNumber::one()];
    while v.len() <= n {
        let l = v.len();
        let next = &(&d.trace * &v[l - 1]) - &(&q * &v[l - 2]);
        v.push(next);
    }
    v.truncate(n + 1);
    v
}

/// `V_n = (alpha^n - beta^n) / (alpha - beta)`.
pub fn v_sequence(d: &ConjugatePairData, n: usize) -> CycNumber {
    v_table(d, n).pop().expect("nonempty")
}

/// `Lambda_n = alpha^n + beta^n = V_{n+1} - q V_{n-1}` (`Lambda_0 = 2`).
pub fn lambda_sym(d: &ConjugatePairData, n: usize) -> CycNumber {
    if n == 0 {
        return CycNumber::from_int(2);
    }
    let v = v_table(d, n + 1);
    &v[n + 1] - &(&d.q() * &v[n - 1])
}

/// Exponent class selected by a root-of-unity filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterSpec {
    /// Exponents `j n`.
    AllMultiples { j: u32 },
    /// Exponents `j (2n + 1)`.
    OddMultiples { j: u32 },
    /// Exponents `l + m n`.
    ResidueClass { l: u32, m: u32 },
}

impl FilterSpec {
    /// `(M, r)` with the class being the exponents `= r (mod M)`.
    pub fn modulus_residue(&self) -> (u32, u32) {
        match *self {
            FilterSpec::AllMultiples { j } => (j, 0),
            FilterSpec::OddMultiples { j } => (2 * j, j),
            FilterSpec::ResidueClass { l, m } => (m, l),
        }
    }

    pub fn contains(&self, e: u64) -> bool {
        let (m, r) = self.modulus_residue();
        e % m as u64 == r as u64
    }

    /// The `n`-th exponent of the class.
    pub fn exponent(&self, n: u64) -> u64 {
        let (m, r) = self.modulus_residue();
        r as u64 + m as u64 * n
    }

    pub fn validate(&self) -> Result<(), GenfunError> {
        let bad = |why: String| Err(GenfunError::InvalidInput(why));
        match *self {
            FilterSpec::AllMultiples { j } if j == 0 => bad("j must be at least 1".into()),
            FilterSpec::OddMultiples { j } if j % 2 == 0 => bad(format!("odd-multiple pattern needs odd j, got {j}")),
            FilterSpec::ResidueClass { l, m } if m == 0 || l >= m => bad(format!("need 0 <= l < m, got l={l}, m={m}")),
            _ => Ok(()),
        }
    }
}

/// `(1/M) sum_mu zeta_M^{-r mu} R(zeta_M^mu X)`: the part of `R` supported on
/// exponents `= r (mod M)`, summed over a common denominator and then reduced.
pub fn filter_series(r: &RationalFunction, spec: &FilterSpec) -> RationalFunction {
    let (m, res) = spec.modulus_residue();
    if m == 1 {
        return r.clone();
    }
    let m64 = m as u64;
    let nums: Vec<Poly<CycNumber>> =
        (0..m).map(|mu| r.num().compose_scale(&CycNumber::root_of_unity(m64, mu as i64))).collect();
    let dens: Vec<Poly<CycNumber>> =
        (0..m).map(|mu| r.den().compose_scale(&CycNumber::root_of_unity(m64, mu as i64))).collect();
    // prefix[i] = dens[0..i] product, suffix[i] = dens[i..] product
    let mut prefix = vec![Poly::one()];
    for d in &dens {
        prefix.push(prefix.last().expect("nonempty") * d);
    }
    let mut suffix = vec![Poly::one(); dens.len() + 1];
    for i in (0..dens.len()).rev() {
        suffix[i] = &dens[i] * &suffix[i + 1];
    }
    let mut num = Poly::zero();
    for mu in 0..m as usize {
        let w = CycNumber::root_of_unity(m64, -(res as i64) * mu as i64);
        let others = &prefix[mu] * &suffix[mu + 1];
        num = &num + &(&nums[mu] * &others).scale(&w);
    }
    let inv_m = CycNumber::from_rational(BigRational::new(1.into(), (m as i64).into()));
    RationalFunction::new(num.scale(&inv_m), prefix.pop().expect("nonempty"))
}

fn cpoly(cs: Vec<CycNumber>) -> Poly<CycNumber> {
    Poly::new(cs)
}

/// `P(X) = sum_n b_n X^n = 1 / (1 - t X + q X^2)`.
pub fn closed_p(d: &ConjugatePairData) -> RationalFunction {
    RationalFunction::new(Poly::one(), cpoly(vec![CycNumber::one(), -&d.trace, d.q()]))
}

/// `F_j(Y) = sum_n b_{jn} Y^n = (1 + q V_{j-1} Y) / (1 - Lambda_j Y + q^j Y^2)`.
pub fn multiples_generating_function(d: &ConjugatePairData, j: u32) -> RationalFunction {
    assert!(j >= 1);
    let j = j as usize;
    let v = v_table(d, j + 1);
    let q = d.q();
    let lam = &v[j + 1] - &(&q * &v[j - 1]);
    let num = cpoly(vec![CycNumber::one(), &q * &v[j - 1]]);
    let den = cpoly(vec![CycNumber::one(), -&lam, q.pow(j as u64)]);
    RationalFunction::new(num, den)
}

/// `sum_n b_{jn} X^{jn} = F_j(X^j)`, the closed form of `P` filtered to multiples of `j`.
pub fn closed_p_multiples(d: &ConjugatePairData, j: u32) -> RationalFunction {
    multiples_generating_function(d, j).inflate(j as usize)
}

/// `S_1(X) = sum_n b_{2n+1} X^{2n+1} = t X / (1 - (t^2 - 2q) X^2 + q^2 X^4)`.
pub fn closed_s1(d: &ConjugatePairData) -> RationalFunction {
    let q = d.q();
    let t2 = &d.trace * &d.trace;
    let c2 = &t2 - &(&q * &CycNumber::from_int(2));
    let den = cpoly(vec![CycNumber::one(), CycNumber::zero(), -&c2, CycNumber::zero(), &q * &q]);
    RationalFunction::new(cpoly(vec![CycNumber::zero(), d.trace.clone()]), den)
}

/// `S_{1,j}` through the filter `(1/j) sum_mu S_1(zeta_j^mu X)`.
pub fn closed_s1j_filter(d: &ConjugatePairData, j: u32) -> Result<RationalFunction, GenfunError> {
    if j % 2 == 0 {
        return Err(GenfunError::EvenJ(j));
    }
    Ok(filter_series(&closed_s1(d), &FilterSpec::AllMultiples { j }))
}

/// `S_{1,j} = F_j(X^j) - F_{2j}(X^{2j})`: all multiples of `j` minus the even ones.
pub fn closed_s1j(d: &ConjugatePairData, j: u32) -> Result<RationalFunction, GenfunError> {
    if j % 2 == 0 {
        return Err(GenfunError::EvenJ(j));
    }
    Ok(closed_p_multiples(d, j).sub(&closed_p_multiples(d, 2 * j)))
}

/// `q V_{m-1} X^m - V_m X^{m-1} + 1`: the real-zero polynomial of the
/// residue-class theorem divided by `alpha - beta`.
pub fn theorem5_polynomial(d: &ConjugatePairData, m: u32) -> Poly<CycNumber> {
    assert!(m >= 1);
    let m = m as usize;
    let v = v_table(d, m);
    let mut cs = vec![CycNumber::zero(); m + 1];
    cs[0] = CycNumber::one();
    cs[m - 1] = &cs[m - 1] - &v[m];
    cs[m] = &cs[m] + &(&d.q() * &v[m - 1]);
    Poly::new(cs)
}

/// `S_l = sum_n b_{l+mn} X^{l+mn}` for every `0 <= l < m`, assembled from
/// `P` and `S_0` by solving `S_l = (a alpha^l + b beta^l) X^l` with
/// `a + b = S_0` and `sum_l S_l = P`:
///
/// `S_l = X^{l-1} (V_l + S_0 C_l(X) (1 - tX + qX^2)) / (q V_{m-1} X^m - V_m X^{m-1} + 1)`
///
/// where `C_l(X) = sum_{i<m} c_i X^i`, `c_i = q^l V_{i-l}` for `i >= l` and
/// `c_i = -q^i V_{l-i}` otherwise.
pub fn closed_sl_all(d: &ConjugatePairData, m: u32) -> Result<Vec<RationalFunction>, GenfunError> {
    if m == 0 {
        return Err(GenfunError::InvalidInput("m must be at least 1".into()));
    }
    d.require_nondegenerate()?;
    let p = closed_p(d);
    let s0 = filter_series(&p, &FilterSpec::AllMultiples { j: m });
    let mut out = vec![s0.clone()];
    if m == 1 {
        return Ok(out);
    }
    let mu = m as usize;
    let v = v_table(d, mu);
    let q = d.q();
    let qpows: Vec<CycNumber> = (0..mu).map(|i| q.pow(i as u64)).collect();
    let den_p = p.den().clone();
    let t5 = theorem5_polynomial(d, m);
    for l in 1..mu {
        let c: Vec<CycNumber> = (0..mu)
            .map(|i| if i >= l { &qpows[l] * &v[i - l] } else { -&(&qpows[i] * &v[l - i]) })
            .collect();
        let c_poly = &Poly::new(c) * &den_p;
        // numerator and denominator over the common denominator den(S_0)
        let num = &Poly::constant(v[l].clone()) * s0.den() + &(s0.num() * &c_poly);
        let den = &t5 * s0.den();
        out.push(RationalFunction::new(num.shift(l - 1), den));
    }
    Ok(out)
}

/// `S_l` for a single residue `l`.
pub fn closed_sl(d: &ConjugatePairData, l: u32, m: u32) -> Result<RationalFunction, GenfunError> {
    if l >= m {
        return Err(GenfunError::InvalidInput(format!("need l < m, got l={l}, m={m}")));
    }
    Ok(closed_sl_all(d, m)?.swap_remove(l as usize))
}

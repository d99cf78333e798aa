//! The operators `T_j(p)`: coefficient rules, the polynomial `G_j` expressing
//! `T_j(p)` through `T(p)`, Hecke matrices on level-one cusp forms and the
//! hypotheses of the irreducibility sign-change theorem.
//!
//! Two coefficient rules live here. [`apply_tj_coeffs`] is the defining rule
//! `a(p^j n) + p^{j(k-1)} chi(p)^j a(n / p^j)`. [`apply_gj_coeffs`] is the
//! `n`-th coefficient of `G_j(T(p)) f`, computed by the operator recurrence
//! `G_{i+1} = T(p) G_i - p^{k-1} chi(p) G_{i-1}`. The two agree for `j <= 1`
//! only; matrices built by [`tj_matrix`] are `G_j(T(p))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::rational::rat_pow;
use crate::exactmath::{certify_irreducible, poly_resultant, CycNumber, Field, Irreducibility, Poly};
use crate::qexpand::{dim_cusp_forms, miller_basis, CoeffTable, QexpandError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("precision {prec} too low, need more than {needed}")]
    PrecisionTooLow { prec: usize, needed: usize },
    #[error(transparent)]
    Coefficients(#[from] QexpandError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// `G_j` as a polynomial in the symbol `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct TjPolynomial {
    pub j: u32,
    pub poly: Poly<CycNumber>,
}

impl TjPolynomial {
    pub fn eval(&self, t: &CycNumber) -> CycNumber {
        self.poly.eval(t)
    }
}

/// `G_0 = 2`, `G_1 = T`, `G_{i+1} = T G_i - p^{k-1} chi(p) G_{i-1}`.
pub fn tj_in_t(j: u32, pk1: &BigRational, chi_p: &CycNumber) -> TjPolynomial {
    let c = chi_p * &CycNumber::from_rational(pk1.clone());
    let mut prev = Poly::constant(CycNumber::from_int(2));
    let mut cur = Poly::x();
    if j == 0 {
        return TjPolynomial { j, poly: prev };
    }
    for _ in 1..j {
        let next = &(&Poly::x() * &cur) - &prev.scale(&c);
        prev = cur;
        cur = next;
    }
    TjPolynomial { j, poly: cur }
}

fn tj_rule<F: Field, E>(get: impl Fn(u64) -> Result<F, E>, p: u64, j: u32, n: u64, cj: &F) -> Result<F, E> {
    let pj = p.pow(j);
    let mut v = get(pj * n)?;
    if n % pj == 0 {
        v = v.add_ref(&cj.mul_ref(&get(n / pj)?));
    }
    Ok(v)
}

/// `(G_j(T(p)) g)(n)` for a series `g` given by `get`, with `c = p^{k-1} chi(p)`.
fn gj_rule<F: Field, E>(get: impl Fn(u64) -> Result<F, E>, p: u64, j: u32, n: u64, c: &F) -> Result<F, E> {
    let mut m = n;
    let mut v = 0usize;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    let j = j as usize;
    let top = v + j + 1;
    // h[e] holds the coefficient at m p^e of the current iterate
    let base: Vec<F> = (0..top).map(|e| get(m * p.pow(e as u32))).collect::<Result<_, _>>()?;
    let two = F::from_i64(2);
    let h0: Vec<F> = base.iter().map(|x| x.mul_ref(&two)).collect();
    if j == 0 {
        return Ok(h0[v].clone());
    }
    let apply_t = |h: &[F]| -> Vec<F> {
        (0..h.len() - 1)
            .map(|e| if e == 0 { h[1].clone() } else { h[e + 1].add_ref(&c.mul_ref(&h[e - 1])) })
            .collect()
    };
    let mut prev = h0;
    let mut cur = apply_t(&base);
    for _ in 1..j {
        let t = apply_t(&cur);
        let next: Vec<F> = (0..t.len()).map(|e| t[e].sub_ref(&c.mul_ref(&prev[e]))).collect();
        prev = cur;
        cur = next;
    }
    Ok(cur[v].clone())
}

fn c_param(t: &CoeffTable, p: u64) -> CycNumber {
    &t.chi(p) * &CycNumber::from_rational(t.pk1(p))
}

/// `n`-th coefficient of `T_j(p) f` by the defining coefficient rule, using
/// recurrence extension past the table.
pub fn apply_tj_coeffs(t: &CoeffTable, p: u64, j: u32, n: u64) -> Result<CycNumber, HeckeError> {
    let cj = c_param(t, p).pow(j as u64);
    Ok(tj_rule(|m| t.coeff_extended(m), p, j, n, &cj)?)
}

/// `n`-th coefficient of `G_j(T(p)) f`.
pub fn apply_gj_coeffs(t: &CoeffTable, p: u64, j: u32, n: u64) -> Result<CycNumber, HeckeError> {
    Ok(gj_rule(|m| t.coeff_extended(m), p, j, n, &c_param(t, p))?)
}

/// Eigenvalue of `G_j(T(p))` on a normalized eigenform: `G_j(a(p))`. This is
/// the factor in `a(p^{j(n+1)}) = lambda_j a(p^{jn}) - p^{j(k-1)} chi(p)^j a(p^{j(n-1)})`.
pub fn lambda_j(t: &CoeffTable, p: u64, j: u32) -> Result<CycNumber, HeckeError> {
    let ap = t.a(p)?.clone();
    Ok(tj_in_t(j, &t.pk1(p), &t.chi(p)).eval(&ap))
}

/// First `n` in `1..=n_max` with
/// `a(p^{j(n+1)}) != lambda_j a(p^{jn}) - c^j a(p^{j(n-1)})`, where
/// `pows[e] = a(p^e)` for `e <= j (n_max + 1)` and `c = p^{k-1} chi(p)`.
pub fn jstep_violation(pows: &[CycNumber], lambda: &CycNumber, cj: &CycNumber, j: u32, n_max: u32) -> Option<u32> {
    let j = j as usize;
    (1..=n_max).find(|&n| {
        let n = n as usize;
        let rhs = &(lambda * &pows[j * n]) - &(cj * &pows[j * (n - 1)]);
        pows[j * (n + 1)] != rhs
    })
}

/// [`jstep_violation`] for a table, returning the first failing exponent `j (n + 1)`.
pub fn jstep_recurrence_check(t: &CoeffTable, p: u64, j: u32, n_max: u32) -> Result<Option<u32>, HeckeError> {
    if j == 0 {
        return Err(HeckeError::InvalidInput("j must be at least 1".into()));
    }
    let pows = t.prime_power_coeffs(p, j * (n_max + 1))?;
    let cj = c_param(t, p).pow(j as u64);
    let l = lambda_j(t, p, j)?;
    Ok(jstep_violation(&pows, &l, &cj, j, n_max).map(|n| j * (n + 1)))
}

/// `n`-th coefficient of `T_j(p) g` for a rational series `g` (index = exponent).
pub fn apply_tj_series(g: &[BigRational], k: u32, p: u64, j: u32, n: u64) -> Result<BigRational, HeckeError> {
    let cj = rat_pow(&pk1(k, p), j as u64);
    tj_rule(|m| series_get(g, m), p, j, n, &cj)
}

/// `n`-th coefficient of `G_j(T(p)) g` for a rational series `g`.
pub fn apply_gj_series(g: &[BigRational], k: u32, p: u64, j: u32, n: u64) -> Result<BigRational, HeckeError> {
    gj_rule(|m| series_get(g, m), p, j, n, &pk1(k, p))
}

fn series_get(g: &[BigRational], m: u64) -> Result<BigRational, HeckeError> {
    g.get(m as usize)
        .cloned()
        .ok_or(HeckeError::PrecisionTooLow { prec: g.len(), needed: m as usize })
}

fn pk1(k: u32, p: u64) -> BigRational {
    rat_pow(&BigRational::from_integer(BigInt::from(p)), k as u64 - 1)
}

pub type Matrix = Vec<Vec<BigRational>>;

fn identity(d: usize, c: &BigRational) -> Matrix {
    (0..d).map(|i| (0..d).map(|j| if i == j { c.clone() } else { BigRational::zero() }).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(BigRational::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

/// Matrix of `G_j(T(p))` on the Miller basis of `S_k`; column `c` holds the
/// coordinates of the image of `f_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeMatrix {
    pub weight: u32,
    pub prime: u64,
    pub j: u32,
    pub entries: Matrix,
}

impl HeckeMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> BigRational {
        (0..self.dim()).fold(BigRational::zero(), |acc, i| acc + &self.entries[i][i])
    }

    /// Characteristic polynomial `det(X I - M)`.
    pub fn char_poly(&self) -> Poly<BigRational> {
        char_poly(&self.entries)
    }
}

/// `T(p)` on level-one cusp forms of weight `k`, from series of precision `prec`.
pub fn hecke_matrix(k: u32, p: u64, prec: usize) -> Result<HeckeMatrix, HeckeError> {
    let d = dim_cusp_forms(k);
    let needed = p as usize * d;
    if prec <= needed {
        return Err(HeckeError::PrecisionTooLow { prec, needed });
    }
    let basis = miller_basis(k, prec).map_err(HeckeError::from)?;
    let mut entries = vec![vec![BigRational::zero(); d]; d];
    for (c, f) in basis.iter().enumerate() {
        for r in 0..d {
            entries[r][c] = apply_tj_series(f.coeffs(), k, p, 1, r as u64 + 1)?;
        }
    }
    Ok(HeckeMatrix { weight: k, prime: p, j: 1, entries })
}

/// `G_j(M)` for a `T(p)` matrix `M` at trivial character.
pub fn tj_matrix(m: &HeckeMatrix, j: u32) -> HeckeMatrix {
    assert_eq!(m.j, 1, "tj_matrix expects a T(p) matrix");
    let d = m.dim();
    let c = pk1(m.weight, m.prime);
    let mut prev = identity(d, &BigRational::from_integer(2.into()));
    let mut cur = m.entries.clone();
    let entries = if j == 0 {
        prev
    } else {
        for _ in 1..j {
            let mc = mat_mul(&m.entries, &cur);
            let next: Matrix =
                (0..d).map(|r| (0..d).map(|s| &mc[r][s] - &c * &prev[r][s]).collect()).collect();
            prev = cur;
            cur = next;
        }
        cur
    };
    HeckeMatrix { weight: m.weight, prime: m.prime, j, entries }
}

/// `det(X I - A)` by fraction-free elimination over `Q[X]`. The pivots are
/// leading principal minors of `X I - A`, monic of positive degree, so no row
/// exchanges are needed.
pub fn char_poly(a: &Matrix) -> Poly<BigRational> {
    let d = a.len();
    if d == 0 {
        return Poly::one();
    }
    let mut m: Vec<Vec<Poly<BigRational>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let c = Poly::constant(-a[i][j].clone());
                    if i == j {
                        &c + &Poly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev_pivot = Poly::one();
    for k in 0..d - 1 {
        for i in k + 1..d {
            for j in k + 1..d {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev_pivot);
            }
        }
        prev_pivot = m[k][k].clone();
    }
    m[d - 1][d - 1].clone()
}

/// Outcome of the checks on `P(T_j(p), X)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Theorem4Report {
    pub weight: u32,
    pub prime: u64,
    pub j: u32,
    pub dim: usize,
    pub char_poly: Poly<BigRational>,
    pub irreducible: Irreducibility,
    /// `Res(P(X), P(-X))` of the full characteristic polynomial.
    pub resultant: BigRational,
    /// Two different eigenvalues with sum zero exist.
    pub eigen_sum_zero: bool,
    /// Zero is an eigenvalue of multiplicity at least two.
    pub zero_eigenvalue_repeated: bool,
}

/// Report for a characteristic polynomial (level one).
///
/// Distinct eigenvalues summing to zero are nonzero, so they are detected by
/// `Res(Q(X), Q(-X)) = 0` where `Q` is `P` with its factor `X^r` removed.
pub fn eigen_sum_report(p: &Poly<BigRational>) -> (BigRational, bool, bool) {
    let neg = p.compose_scale(&-BigRational::one());
    let raw = poly_resultant(p, &neg);
    let r = p.x_valuation();
    let stripped = Poly::new(p.coeffs()[r..].to_vec());
    let sum_zero = if stripped.is_constant() {
        false
    } else {
        poly_resultant(&stripped, &stripped.compose_scale(&-BigRational::one())).is_zero()
    };
    (raw, sum_zero, r >= 2)
}

/// Characteristic polynomial of `G_j(T(p))` on `S_k`, its irreducibility
/// verdict and the eigenvalue-pair test. These are level-one checks; the
/// sign-change conclusion concerns primes not dividing the level of the form
/// under study, which this report does not see.
pub fn theorem4_hypotheses(k: u32, p: u64, j: u32) -> Result<Theorem4Report, HeckeError> {
    if k % 2 == 1 || k < 12 {
        return Err(HeckeError::InvalidInput(format!("weight {k} has no level-one cusp forms to test")));
    }
    let d = dim_cusp_forms(k);
    let m = hecke_matrix(k, p, p as usize * d + 2)?;
    let tj = tj_matrix(&m, j);
    let cp = tj.char_poly();
    let irreducible = if d == 0 { Irreducibility::No("zero space".into()) } else { certify_irreducible(&cp) };
    let (resultant, eigen_sum_zero, zero_eigenvalue_repeated) = eigen_sum_report(&cp);
    Ok(Theorem4Report { weight: k, prime: p, j, dim: d, char_poly: cp, irreducible, resultant, eigen_sum_zero, zero_eigenvalue_repeated })
}

//! Sign-change censuses of normalized prime-power coefficient sequences,
//! Satake angles, the root-of-unity exclusion test and the real-zero test of
//! the residue-class polynomial.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactmath::arith::gcd;
use crate::exactmath::{
    sturm_count_real_roots, Bound, CertifiedSign, CycNumber, RealInterval, Sign, DEFAULT_SIGN_CAP_BITS,
};
use crate::genfun::{theorem5_polynomial, ConjugatePairData, FilterSpec, GenfunError};
use crate::qexpand::{CoeffTable, DirichletCharacter, QexpandError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignscanError {
    #[error("value at exponent {exponent} for p = {p} is not real")]
    NotReal { p: u64, exponent: u64 },
    #[error("p = {p} divides the level {level}")]
    PrimeDividesLevel { p: u64, level: u64 },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("every term of the sequence is zero")]
    AllZero,
    #[error("sign of term {0} not decided within the precision cap")]
    Undecided(usize),
    #[error("Satake angle at p = {p} is 0 or pi")]
    BoundaryAngle { p: u64 },
    #[error(transparent)]
    Genfun(#[from] GenfunError),
    #[error(transparent)]
    Coefficients(#[from] QexpandError),
}

/// One sequence to scan: `b(e_n)` for `n < nmax` along the exponents of `pattern`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequenceSpec {
    pub form: String,
    pub prime: u64,
    pub pattern: FilterSpec,
    pub nmax: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SignCensus {
    pub first_change: Option<usize>,
    pub change_count: usize,
    pub zero_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Census {
    Counted(SignCensus),
    AllZero,
    Undecided(usize),
}

impl Census {
    fn from_result(r: Result<SignCensus, SignscanError>) -> Census {
        match r {
            Ok(c) => Census::Counted(c),
            Err(SignscanError::Undecided(i)) => Census::Undecided(i),
            Err(_) => Census::AllZero,
        }
    }

    pub fn counted(&self) -> Option<&SignCensus> {
        match self {
            Census::Counted(c) => Some(c),
            _ => None,
        }
    }
}

/// Censuses of the raw sequence `a(p^{l+mn})` when `chi0(p)^l` is not real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCensus {
    pub chi0_power: CycNumber,
    pub re: Census,
    pub im: Census,
    /// `chi0(p)^l` is neither real nor `+-i`, so neither component is singled out.
    pub ambiguous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem5Status {
    NoRealRoot,
    /// Real roots on the whole line and on `(0, oo)`.
    HasRealRoot { real: usize, positive: usize },
    Undecided,
    NotApplicable,
}

impl std::fmt::Display for Theorem5Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Theorem5Status::NoRealRoot => write!(f, "NoRealRoot"),
            Theorem5Status::HasRealRoot { real, positive } => {
                write!(f, "HasRealRoot(real={real};positive={positive})")
            }
            Theorem5Status::Undecided => write!(f, "Undecided"),
            Theorem5Status::NotApplicable => write!(f, "NotApplicable"),
        }
    }
}

/// A root-of-unity index satisfying `t = +-sqrt(q) (zeta^mu + zeta^-mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExclusionHit {
    pub mu: u32,
    /// Sign of `t / (zeta^mu + zeta^-mu)`, `Zero` when both vanish.
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeAngle {
    pub theta: RealInterval,
    pub prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub spec: SignSequenceSpec,
    pub realized: Vec<CycNumber>,
    pub census: Census,
    pub split: Option<SplitCensus>,
    pub deligne_margin: CycNumber,
    pub exclusion_hits: Vec<ExclusionHit>,
    pub theorem5_status: Theorem5Status,
}

fn check_pattern(chi0: &DirichletCharacter, p: u64, pattern: &FilterSpec) -> Result<(), SignscanError> {
    pattern.validate().map_err(|e| SignscanError::InvalidPattern(e.to_string()))?;
    if let FilterSpec::ResidueClass { l, m } = *pattern {
        if l == 0 {
            return Err(SignscanError::InvalidPattern("residue class needs 1 <= l <= m-1".into()));
        }
        if !chi0.value_u64(p).pow(m as u64).is_one() {
            return Err(SignscanError::InvalidPattern(format!("chi0({p})^{m} != 1")));
        }
    }
    Ok(())
}

/// `a(p^e) / chi0(p)^e` along the exponents of the pattern. For a residue
/// class `l + mn` with `chi0(p)^m = 1` this is `a(p^{l+mn}) / chi0(p)^l`.
pub fn realize_sequence(
    t: &CoeffTable,
    chi0: &DirichletCharacter,
    spec: &SignSequenceSpec,
) -> Result<Vec<CycNumber>, SignscanError> {
    let p = spec.prime;
    if gcd(p, t.level()) != 1 {
        return Err(SignscanError::PrimeDividesLevel { p, level: t.level() });
    }
    check_pattern(chi0, p, &spec.pattern)?;
    if spec.nmax == 0 {
        return Ok(Vec::new());
    }
    let last = spec.pattern.exponent(spec.nmax as u64 - 1);
    let a = t.prime_power_coeffs(p, last as u32)?;
    let c_inv = chi0.value_u64(p).inverse();
    let mut out = Vec::with_capacity(spec.nmax);
    for n in 0..spec.nmax as u64 {
        let e = spec.pattern.exponent(n);
        let v = &a[e as usize] * &c_inv.pow(e);
        if !v.is_real() {
            return Err(SignscanError::NotReal { p, exponent: e });
        }
        out.push(v);
    }
    Ok(out)
}

/// First index `i` with `v[i]` of opposite sign to the previous nonzero term,
/// the number of such changes and the number of zero terms.
pub fn detect_sign_changes(v: &[CycNumber]) -> Result<SignCensus, SignscanError> {
    let mut census = SignCensus::default();
    let mut prev: Option<Sign> = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            census.zero_count += 1;
            continue;
        }
        let s = x.certified_sign(DEFAULT_SIGN_CAP_BITS).map_err(|_| SignscanError::Undecided(i))?;
        if let Some(ps) = prev {
            if ps != s {
                census.change_count += 1;
                census.first_change.get_or_insert(i);
            }
        }
        prev = Some(s);
    }
    if prev.is_none() {
        return Err(SignscanError::AllZero);
    }
    Ok(census)
}

/// All `mu` in `[0, j)` with `t^2 = q (zeta_j^mu + zeta_j^-mu)^2`.
pub fn exclusion_eq7_check(d: &ConjugatePairData, j: u32) -> Vec<ExclusionHit> {
    assert!(j >= 1);
    let t2 = &d.trace * &d.trace;
    let q = d.q();
    let mut hits = Vec::new();
    for mu in 0..j {
        let z = CycNumber::root_of_unity(j as u64, mu as i64);
        let c = &z + &z.conj();
        if t2 != &q * &(&c * &c) {
            continue;
        }
        let sign = if c.is_zero() {
            Sign::Zero
        } else {
            let st = d.trace.certified_sign(DEFAULT_SIGN_CAP_BITS).expect("nonzero real");
            let sc = c.certified_sign(DEFAULT_SIGN_CAP_BITS).expect("nonzero real");
            st.times(sc)
        };
        hits.push(ExclusionHit { mu, sign });
    }
    hits
}

/// Real zeros of `q V_{m-1} X^m - V_m X^{m-1} + 1`. For `m = 1` the
/// polynomial vanishes identically and there is no residue class to test.
pub fn theorem5_realroot_check(d: &ConjugatePairData, m: u32) -> Result<Theorem5Status, SignscanError> {
    if m == 0 {
        return Err(SignscanError::InvalidPattern("m must be at least 1".into()));
    }
    if d.is_degenerate() {
        return Err(GenfunError::DegeneratePair { p: d.prime }.into());
    }
    if m == 1 {
        return Ok(Theorem5Status::NotApplicable);
    }
    let f = theorem5_polynomial(d, m);
    let zero = Bound::Finite(num_rational::BigRational::zero());
    let count = |lo: &Bound| sturm_count_real_roots(&f, lo, &Bound::PosInf, DEFAULT_SIGN_CAP_BITS);
    let (real, positive) = match (count(&Bound::NegInf), count(&zero)) {
        (Ok(r), Ok(p)) => (r, p),
        _ => return Ok(Theorem5Status::Undecided),
    };
    Ok(if real == 0 { Theorem5Status::NoRealRoot } else { Theorem5Status::HasRealRoot { real, positive } })
}

/// Multiplicative order of `chi0(p)`.
pub fn char_value_order(chi0: &DirichletCharacter, p: u64) -> u64 {
    chi0.value_u64(p).root_of_unity_order().expect("p coprime to the modulus")
}

/// `theta` in `(0, pi)` with `cos theta = t / (2 p^{(k-1)/2})`.
pub fn satake_angle(d: &ConjugatePairData, bits: u32) -> Result<SatakeAngle, SignscanError> {
    if d.is_degenerate() {
        return Err(SignscanError::BoundaryAngle { p: d.prime });
    }
    let wp = bits + 16;
    let t = d.trace.embed(wp).re;
    let root_q = RealInterval::from_rational(&d.norm, wp).sqrt().expect("positive norm");
    let c = t.div(&root_q.mul(&RealInterval::from_i64(2, wp))).expect("positive");
    let theta = c.acos().ok_or(SignscanError::BoundaryAngle { p: d.prime })?;
    Ok(SatakeAngle { theta: theta.with_precision(bits), prime: d.prime })
}

fn split_census(
    t: &CoeffTable,
    chi0: &DirichletCharacter,
    spec: &SignSequenceSpec,
) -> Result<Option<SplitCensus>, SignscanError> {
    let FilterSpec::ResidueClass { l, .. } = spec.pattern else {
        return Ok(None);
    };
    let w = chi0.value_u64(spec.prime).pow(l as u64);
    if w.is_real() {
        return Ok(None);
    }
    let last = spec.pattern.exponent(spec.nmax.max(1) as u64 - 1);
    let a = t.prime_power_coeffs(spec.prime, last as u32)?;
    let raw: Vec<CycNumber> = (0..spec.nmax as u64).map(|n| a[spec.pattern.exponent(n) as usize].clone()).collect();
    let re: Vec<CycNumber> = raw.iter().map(|x| x.real_part()).collect();
    let im: Vec<CycNumber> = raw.iter().map(|x| x.imag_part()).collect();
    let i = CycNumber::root_of_unity(4, 1);
    let ambiguous = w != i && w != -&i;
    Ok(Some(SplitCensus {
        chi0_power: w,
        re: Census::from_result(detect_sign_changes(&re)),
        im: Census::from_result(detect_sign_changes(&im)),
        ambiguous,
    }))
}

/// Complete report for one sequence. The exclusion test uses `j` for the
/// multiple patterns and `m` for a residue class; the real-zero test applies
/// to residue classes only.
pub fn scan(t: &CoeffTable, chi0: &DirichletCharacter, spec: &SignSequenceSpec) -> Result<ScanReport, SignscanError> {
    let realized = realize_sequence(t, chi0, spec)?;
    let d = ConjugatePairData::from_table(t, spec.prime, chi0)?;
    let census = Census::from_result(detect_sign_changes(&realized));
    let split = split_census(t, chi0, spec)?;
    let (j, m) = match spec.pattern {
        FilterSpec::AllMultiples { j } | FilterSpec::OddMultiples { j } => (j, None),
        FilterSpec::ResidueClass { m, .. } => (m, Some(m)),
    };
    let theorem5_status = match m {
        Some(m) => theorem5_realroot_check(&d, m)?,
        None => Theorem5Status::NotApplicable,
    };
    Ok(ScanReport {
        spec: spec.clone(),
        realized,
        census,
        split,
        deligne_margin: d.deligne_margin(),
        exclusion_hits: exclusion_eq7_check(&d, j),
        theorem5_status,
    })
}

/// One scan job: table, square root of its character and sequence.
pub struct ScanJob<'a> {
    pub table: &'a CoeffTable,
    pub chi0: &'a DirichletCharacter,
    pub spec: SignSequenceSpec,
}

/// Runs the jobs in parallel; results come back sorted by form, prime and pattern.
pub fn scan_grid(jobs: &[ScanJob<'_>]) -> Vec<(SignSequenceSpec, Result<ScanReport, SignscanError>)> {
    let mut out: Vec<_> =
        jobs.par_iter().map(|job| (job.spec.clone(), scan(job.table, job.chi0, &job.spec))).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexpand::delta_table;

    fn ints(v: &[i64]) -> Vec<CycNumber> {
        v.iter().map(|&x| CycNumber::from_int(x)).collect()
    }

    #[test]
    fn census_rules() {
        let c = detect_sign_changes(&ints(&[1, -24, -1472, 84480])).unwrap();
        assert_eq!(c, SignCensus { first_change: Some(1), change_count: 2, zero_count: 0 });
        let c = detect_sign_changes(&ints(&[1, 0, -1])).unwrap();
        assert_eq!((c.change_count, c.zero_count, c.first_change), (1, 1, Some(2)));
        assert_eq!(detect_sign_changes(&ints(&[0, 0])), Err(SignscanError::AllZero));
    }

    #[test]
    fn delta_sequence() {
        let t = delta_table(50);
        let chi0 = DirichletCharacter::trivial(1);
        let spec = SignSequenceSpec { form: "delta".into(), prime: 2, pattern: FilterSpec::AllMultiples { j: 1 }, nmax: 9 };
        let v = realize_sequence(&t, &chi0, &spec).unwrap();
        assert_eq!(v[..4], ints(&[1, -24, -1472, 84480])[..]);
        let r = scan(&t, &chi0, &spec).unwrap();
        assert!(r.census.counted().unwrap().change_count >= 1);
        assert!(r.exclusion_hits.is_empty());
        assert_eq!(r.theorem5_status, Theorem5Status::NotApplicable);
    }

    #[test]
    fn exclusion_planted_cases() {
        let boundary = ConjugatePairData::new(CycNumber::from_int(4), 3, 2);
        let hits = exclusion_eq7_check(&boundary, 3);
        assert_eq!(hits, vec![ExclusionHit { mu: 0, sign: Sign::Positive }]);
        let zero = ConjugatePairData::new(CycNumber::zero(), 12, 2);
        let hits: Vec<u32> = exclusion_eq7_check(&zero, 4).iter().map(|h| h.mu).collect();
        assert_eq!(hits, vec![1, 3]);
        let delta = ConjugatePairData::new(CycNumber::from_int(-24), 12, 2);
        assert!(exclusion_eq7_check(&delta, 3).is_empty());
    }

    #[test]
    fn theorem5_small_m() {
        let d = ConjugatePairData::new(CycNumber::from_int(-24), 12, 2);
        assert_eq!(theorem5_realroot_check(&d, 1).unwrap(), Theorem5Status::NotApplicable);
        assert_eq!(theorem5_realroot_check(&d, 2).unwrap(), Theorem5Status::NoRealRoot);
        // m = 3: q t X^3 - (t^2 - q) X^2 + 1 always has a real root (odd degree)
        assert!(matches!(theorem5_realroot_check(&d, 3).unwrap(), Theorem5Status::HasRealRoot { .. }));
    }

    #[test]
    fn angles_and_orders() {
        let d = ConjugatePairData::new(CycNumber::zero(), 12, 2);
        let th = satake_angle(&d, 100).unwrap();
        assert!(th.theta.overlaps(&RealInterval::pi(120).div_u64(2)));
        let b = ConjugatePairData::new(CycNumber::from_int(4), 3, 2);
        assert!(matches!(satake_angle(&b, 64), Err(SignscanError::BoundaryAngle { p: 2 })));
        assert_eq!(char_value_order(&DirichletCharacter::trivial(5), 2), 1);
    }
}

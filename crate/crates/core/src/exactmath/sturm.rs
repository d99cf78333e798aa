//! Sturm sequences: exact real-root counting and isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{CertifiedSign, Field, PrecisionExhausted, Sign};
use super::poly::Poly;

/// Precision cap for certified sign evaluation of non-rational coefficients.
pub const DEFAULT_SIGN_CAP_BITS: u32 = 4096;

/// Endpoint of a counting window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

struct SturmChain<F> {
    chain: Vec<Poly<F>>,
}

impl<F: Field + CertifiedSign> SturmChain<F> {
    fn new(squarefree: Poly<F>) -> Self {
        let mut chain = vec![squarefree.clone(), squarefree.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = -chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn sign_at(p: &Poly<F>, at: &Bound, max_bits: u32) -> Result<Sign, PrecisionExhausted> {
        let Some(deg) = p.degree() else {
            return Ok(Sign::Zero);
        };
        let lc_sign = p.leading().expect("nonzero").certified_sign(max_bits)?;
        match at {
            Bound::PosInf => Ok(lc_sign),
            Bound::NegInf => Ok(if deg % 2 == 1 { lc_sign.flip() } else { lc_sign }),
            Bound::Finite(x) => p.eval(&F::from_rational(x.clone())).certified_sign(max_bits),
        }
    }

    fn variations(&self, at: &Bound, max_bits: u32) -> Result<usize, PrecisionExhausted> {
        let mut count = 0;
        let mut last = Sign::Zero;
        for p in &self.chain {
            let s = Self::sign_at(p, at, max_bits)?;
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        Ok(count)
    }

    /// Distinct roots in the open window `(lo, hi)`.
    fn count(&self, lo: &Bound, hi: &Bound, max_bits: u32) -> Result<usize, PrecisionExhausted> {
        if !bound_less(lo, hi) {
            return Ok(0);
        }
        let v_lo = self.variations(lo, max_bits)?;
        let v_hi = self.variations(hi, max_bits)?;
        let mut n = v_lo.saturating_sub(v_hi);
        if let Bound::Finite(b) = hi {
            if self.chain[0].eval(&F::from_rational(b.clone())).is_zero() {
                n -= 1;
            }
        }
        Ok(n)
    }
}

fn bound_less(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::Finite(x), Bound::Finite(y)) => x < y,
    }
}

/// Number of distinct real roots of `f` in the open window `(lo, hi)`.
///
/// Repeated factors are removed first. Signs of non-rational coefficients are
/// certified with adaptive precision up to `max_bits`; past that the count is
/// reported as undecided through [`PrecisionExhausted`]. Panics on the zero
/// polynomial.
pub fn sturm_count_real_roots<F: Field + CertifiedSign>(
    f: &Poly<F>,
    lo: &Bound,
    hi: &Bound,
    max_bits: u32,
) -> Result<usize, PrecisionExhausted> {
    assert!(!f.is_zero(), "root count of the zero polynomial");
    let g = f.squarefree_part();
    if g.is_constant() {
        return Ok(0);
    }
    SturmChain::new(g).count(lo, hi, max_bits)
}

/// Disjoint half-open intervals `(a, b]`, each holding exactly one real root
/// of `f`, with `b - a <= max_width`. Sorted left to right.
pub fn isolate_real_roots(f: &Poly<BigRational>, max_width: &BigRational) -> Vec<(BigRational, BigRational)> {
    assert!(!f.is_zero(), "root isolation of the zero polynomial");
    let g = f.squarefree_part();
    if g.is_constant() {
        return Vec::new();
    }
    let lc = g.leading().expect("nonzero").abs();
    let bound = g.coeffs().iter().map(|c| c.abs() / &lc).fold(BigRational::zero(), |m, x| if x > m { x } else { m })
        + BigRational::one();
    let chain = SturmChain::new(g);
    let var = |x: &BigRational| chain.variations(&Bound::Finite(x.clone()), 0).expect("rational signs are exact");

    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound, None::<usize>)];
    while let Some((a, b, known)) = stack.pop() {
        let n = known.unwrap_or_else(|| var(&a) - var(&b));
        if n == 0 {
            continue;
        }
        if n == 1 && &b - &a <= *max_width {
            out.push((a, b));
            continue;
        }
        let m = (&a + &b) / &two;
        let left = var(&a) - var(&m);
        // push right first so the left half is processed first
        stack.push((m.clone(), b, Some(n - left)));
        stack.push((a, m, Some(left)));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

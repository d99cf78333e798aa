use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `X^i`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Poly::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    /// `p(c X)`.
    pub fn compose_scale(&self, c: &F) -> Self {
        let mut pow = F::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul_ref(&pow));
            pow = pow.mul_ref(c);
        }
        Poly::new(out)
    }

    /// `p(-X)`.
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.neg_ref() } else { c.clone() })
                .collect(),
        )
    }

    /// `p(X^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Poly::new(out)
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    /// Largest `r` with `X^r` dividing `self` (zero polynomial gives 0).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Poly::one();
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

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let dd = d.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let lc_inv = d.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul_ref(&lc_inv);
            for (k, dc) in d.coeffs.iter().enumerate().take(dd) {
                if !dc.is_zero() {
                    let idx = i - dd + k;
                    rem[idx] = rem[idx].sub_ref(&q.mul_ref(dc));
                }
            }
            rem[i] = F::zero();
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly<F>) -> Poly<F> {
        self.div_rem(d).1
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly<F>) -> Poly<F> {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> Poly<F> {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Resultant of `f` and `g` over their common coefficient field.
///
/// Computed by the Euclidean remainder recursion
/// `Res(f, g) = (-1)^(deg f deg g) lc(g)^(deg f - deg r) Res(g, r)`
/// with `r = f mod g`. The zero polynomial has resultant zero with anything.
pub fn poly_resultant<F: Field>(f: &Poly<F>, g: &Poly<F>) -> F {
    let (Some(mut m), Some(mut n)) = (f.degree(), g.degree()) else {
        return F::zero();
    };
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = F::one();
    loop {
        if n == 0 {
            let c = b.coeffs[0].clone();
            let mut p = F::one();
            for _ in 0..m {
                p = p.mul_ref(&c);
            }
            return acc.mul_ref(&p);
        }
        let r = a.rem(&b);
        let Some(d) = r.degree() else {
            return F::zero();
        };
        if (m * n) % 2 == 1 {
            acc = acc.neg_ref();
        }
        let lc = b.coeffs[n].clone();
        for _ in 0..(m - d) {
            acc = acc.mul_ref(&lc);
        }
        a = b;
        b = r;
        m = n;
        n = d;
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.add_ref(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.sub_ref(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.neg_ref(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: Poly<F>) -> Poly<F> {
                (&self).$m(&o)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: &Poly<F>) -> Poly<F> {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

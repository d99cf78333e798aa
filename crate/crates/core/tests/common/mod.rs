//! Independent numeric and series oracles shared by the integration tests.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

pub const PREC: usize = 400;
pub const RM: RoundingMode = RoundingMode::ToEven;

pub fn consts() -> Consts {
    Consts::new().expect("constants cache")
}

pub fn bf_int(n: &BigInt, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&n.to_string(), Radix::Dec, PREC, RM, cc)
}

pub fn bf_i64(n: i64) -> BigFloat {
    BigFloat::from_i64(n, PREC)
}

pub fn bf_rat(r: &BigRational, cc: &mut Consts) -> BigFloat {
    bf_int(r.numer(), cc).div(&bf_int(r.denom(), cc), PREC, RM)
}

pub fn to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Cx {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Cx { re, im }
    }

    pub fn real(re: BigFloat) -> Self {
        Cx { re, im: bf_i64(0) }
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx::new(self.re.add(&o.re, PREC, RM), self.im.add(&o.im, PREC, RM))
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx::new(self.re.sub(&o.re, PREC, RM), self.im.sub(&o.im, PREC, RM))
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let re = self.re.mul(&o.re, PREC, RM).sub(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.re.mul(&o.im, PREC, RM).add(&self.im.mul(&o.re, PREC, RM), PREC, RM);
        Cx::new(re, im)
    }

    pub fn norm2(&self) -> BigFloat {
        self.re.mul(&self.re, PREC, RM).add(&self.im.mul(&self.im, PREC, RM), PREC, RM)
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let n = o.norm2();
        let re = self.re.mul(&o.re, PREC, RM).add(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.im.mul(&o.re, PREC, RM).sub(&self.re.mul(&o.im, PREC, RM), PREC, RM);
        Cx::new(re.div(&n, PREC, RM), im.div(&n, PREC, RM))
    }

    pub fn pow(&self, n: u32) -> Cx {
        (0..n).fold(Cx::real(bf_i64(1)), |acc, _| acc.mul(self))
    }
}

/// `|x| < 2^e`.
pub fn below(x: &BigFloat, e: i32) -> bool {
    x.is_zero() || x.exponent().map_or(true, |ex| ex <= e)
}

/// All complex roots of `sum c_i X^i` (`c` nonempty leading coefficient) by
/// Durand-Kerner iteration.
pub fn durand_kerner(c: &[Cx]) -> Vec<Cx> {
    let n = c.len() - 1;
    let lead = c[n].clone();
    let monic: Vec<Cx> = c.iter().map(|x| x.div(&lead)).collect();
    let eval = |z: &Cx| monic.iter().rev().fold(Cx::real(bf_i64(0)), |acc, a| acc.mul(z).add(a));
    let seed = Cx::new(BigFloat::from_f64(0.4, PREC), BigFloat::from_f64(0.9, PREC));
    let mut z: Vec<Cx> = (0..n).map(|i| seed.pow(i as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta_small = true;
        for i in 0..n {
            let mut den = Cx::real(bf_i64(1));
            for k in 0..n {
                if k != i {
                    den = den.mul(&z[i].sub(&z[k]));
                }
            }
            let step = eval(&z[i]).div(&den);
            if !below(&step.norm2(), -2 * 330) {
                delta_small = false;
            }
            z[i] = z[i].sub(&step);
        }
        if delta_small {
            break;
        }
    }
    z
}

/// `tau(1..=n)` from a direct expansion of `q prod (1 - q^k)^24`.
pub fn tau_by_eta(n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); n];
    c[0] = BigInt::from(1);
    for k in 1..n {
        for _ in 0..24 {
            for i in (k..n).rev() {
                let prev = c[i - k].clone();
                c[i] -= prev;
            }
        }
    }
    // c[i] is the coefficient of q^i in the product, so tau(i + 1) = c[i]
    c
}

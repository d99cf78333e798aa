//! Dirichlet characters stored as full value tables.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::exactmath::arith::gcd;
use crate::exactmath::CycNumber;

/// Dirichlet character modulo `modulus`; `values[n]` is `chi(n)` for `0 <= n < modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<CycNumber>,
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn units(modulus: u64) -> impl Iterator<Item = u64> {
    (0..modulus).filter(move |&n| gcd(n, modulus) == 1)
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let values = (0..modulus)
            .map(|n| if gcd(n, modulus) == 1 { CycNumber::one() } else { CycNumber::zero() })
            .collect();
        DirichletCharacter { modulus, values }
    }

    /// Character from its value table. Fails with `(n, reason)` on the first
    /// residue breaking the character axioms.
    pub fn from_table(modulus: u64, values: Vec<CycNumber>) -> Result<Self, (u64, String)> {
        if modulus == 0 || values.len() as u64 != modulus {
            return Err((0, format!("expected {modulus} table entries, got {}", values.len())));
        }
        for n in 0..modulus {
            let v = &values[n as usize];
            if gcd(n, modulus) != 1 {
                if !v.is_zero_element() {
                    return Err((n, "nonzero value off the unit group".into()));
                }
            } else if v.root_of_unity_order().is_none() {
                return Err((n, "value is not a root of unity".into()));
            }
        }
        if !values[1 % modulus as usize].is_one() {
            return Err((1, "chi(1) must be 1".into()));
        }
        for a in units(modulus) {
            for b in units(modulus).filter(|&b| b >= a) {
                let ab = a * b % modulus;
                if values[ab as usize] != &values[a as usize] * &values[b as usize] {
                    return Err((ab, format!("chi({a}) chi({b}) differs from chi({ab})")));
                }
            }
        }
        Ok(DirichletCharacter { modulus, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, n: i64) -> CycNumber {
        self.values[n.rem_euclid(self.modulus as i64) as usize].clone()
    }

    pub fn value_u64(&self, n: u64) -> CycNumber {
        self.values[(n % self.modulus) as usize].clone()
    }

    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        units(self.modulus).all(|n| self.values[n as usize].is_one())
    }

    /// `chi(-1) = 1`.
    pub fn is_even(&self) -> bool {
        self.value(-1).is_one()
    }

    /// Order of the character in the character group.
    pub fn order(&self) -> u64 {
        units(self.modulus)
            .map(|n| self.values[n as usize].root_of_unity_order().expect("unit values are roots of unity"))
            .fold(1, lcm)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.modulus, o.modulus, "characters with different moduli");
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect();
        DirichletCharacter { modulus: self.modulus, values }
    }

    pub fn pow(&self, e: u64) -> Self {
        let values = (0..self.modulus)
            .map(|n| {
                let v = &self.values[n as usize];
                if v.is_zero_element() {
                    v.clone()
                } else {
                    v.pow(e)
                }
            })
            .collect();
        DirichletCharacter { modulus: self.modulus, values }
    }

    /// The character modulo a multiple `n` of the modulus, vanishing on residues
    /// not coprime to `n`.
    pub fn induce(&self, n: u64) -> Self {
        assert!(n % self.modulus == 0, "{n} is not a multiple of {}", self.modulus);
        let values = (0..n)
            .map(|x| if gcd(x, n) == 1 { self.value_u64(x) } else { CycNumber::zero() })
            .collect();
        DirichletCharacter { modulus: n, values }
    }
}

/// Greedy generating set of `(Z/NZ)^x`.
fn unit_generators(modulus: u64) -> Vec<u64> {
    let mut reached = vec![false; modulus as usize];
    reached[(1 % modulus) as usize] = true;
    let mut gens = Vec::new();
    for g in units(modulus) {
        if reached[g as usize] {
            continue;
        }
        gens.push(g);
        // close the subgroup under multiplication by all generators
        let mut queue: VecDeque<u64> = (0..modulus).filter(|&x| reached[x as usize]).collect();
        while let Some(x) = queue.pop_front() {
            for &h in &gens {
                let y = x * h % modulus;
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

/// Exponent `e` with `x = zeta_m^e`, where `m` is the order of the root of unity `x`.
fn root_exponent(x: &CycNumber) -> (u64, u64) {
    let m = x.root_of_unity_order().expect("root of unity");
    let e = (0..m).find(|&e| CycNumber::root_of_unity(m, e as i64) == *x).expect("primitive power");
    (m, e)
}

/// Table of exponents mod `big` generated by assigning `exps[i]` to `gens[i]`;
/// `None` when the assignment is not a homomorphism.
fn extend_from_generators(modulus: u64, gens: &[u64], exps: &[u64], big: u64) -> Option<Vec<Option<u64>>> {
    let mut table: Vec<Option<u64>> = vec![None; modulus as usize];
    let one = (1 % modulus) as usize;
    table[one] = Some(0);
    let mut queue = VecDeque::from([1 % modulus]);
    while let Some(x) = queue.pop_front() {
        let tx = table[x as usize].expect("visited");
        for (&g, &c) in gens.iter().zip(exps) {
            let y = x * g % modulus;
            let v = (tx + c) % big;
            match table[y as usize] {
                None => {
                    table[y as usize] = Some(v);
                    queue.push_back(y);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    Some(table)
}

/// All characters `chi0` with `chi0^2 = chi`, by halving exponents on a
/// generating set of the unit group and keeping the consistent assignments.
pub fn sqrt_characters(chi: &DirichletCharacter) -> Vec<DirichletCharacter> {
    let n = chi.modulus;
    let gens = unit_generators(n);
    let logs: Vec<(u64, u64)> = gens.iter().map(|&g| root_exponent(&chi.values[g as usize])).collect();
    let big = logs.iter().fold(2, |acc, &(m, _)| lcm(acc, 2 * m));
    let mut out = Vec::new();
    for mask in 0u64..(1 << gens.len()) {
        // square roots of zeta_m^e are zeta_{2m}^e and zeta_{2m}^(e+m)
        let exps: Vec<u64> = logs
            .iter()
            .enumerate()
            .map(|(i, &(m, e))| {
                let e2 = if mask >> i & 1 == 1 { e + m } else { e };
                e2 * (big / (2 * m)) % big
            })
            .collect();
        let Some(table) = extend_from_generators(n, &gens, &exps, big) else {
            continue;
        };
        let values = (0..n)
            .map(|x| match table[x as usize] {
                Some(e) if gcd(x, n) == 1 => CycNumber::root_of_unity(big, e as i64),
                _ => CycNumber::zero(),
            })
            .collect();
        out.push(DirichletCharacter { modulus: n, values });
    }
    out
}

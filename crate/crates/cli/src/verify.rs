//! Exact identity suite behind `eigensign verify`.

use std::fmt;

use eigensign::exactmath::arith::primes_between;
use eigensign::genfun::{
    closed_p, closed_p_multiples, closed_s1, closed_s1j, closed_s1j_filter, closed_sl_all, default_chi0,
    filter_series, ConjugatePairData, FilterSpec, RationalFunction,
};
use eigensign::hecketheory::jstep_recurrence_check;
use eigensign::qexpand::{verify_eigenform, verify_reality};
use eigensign::{CoeffTable, CycNumber};
use num_traits::Zero;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub pmax: u64,
    pub jmax: u32,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub identity: &'static str,
    pub form: String,
    /// Prime and parameter, empty for table-wide checks.
    pub at: String,
    /// `None` on success, otherwise where the first failure occurs.
    pub failure: Option<String>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for IdentityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.identity, self.form)?;
        if !self.at.is_empty() {
            write!(f, " {}", self.at)?;
        }
        if let Some(why) = &self.failure {
            write!(f, ": {why}")?;
        }
        Ok(())
    }
}

fn power_label(p: u64, e: u32) -> String {
    match p.checked_pow(e) {
        Some(n) => format!("n = {n}"),
        None => format!("n = {p}^{e}"),
    }
}

/// First exponent below `order` where the expansion of `r` differs from
/// `b_e` on the class and from zero off it.
fn expansion_mismatch(r: &RationalFunction, b: &[CycNumber], class: &FilterSpec, order: usize) -> Option<String> {
    let s = r.expand(order);
    (0..order)
        .find(|&e| {
            let want = if class.contains(e as u64) { b[e].clone() } else { CycNumber::zero() };
            s.coeffs()[e] != want
        })
        .map(|e| format!("coefficient of X^{e}"))
}

fn same_function(a: &RationalFunction, b: &RationalFunction, order: usize) -> Option<String> {
    if a == b {
        return None;
    }
    let (x, y) = (a.expand(order), b.expand(order));
    Some(match (0..order).find(|&e| x.coeffs()[e] != y.coeffs()[e]) {
        Some(e) => format!("coefficient of X^{e}"),
        None => format!("agree below X^{order} but differ as functions"),
    })
}

/// Runs every identity for one table over the primes up to `pmax` not dividing the level.
pub fn verify_table(t: &CoeffTable, cfg: &VerifyConfig) -> Vec<IdentityResult> {
    let form = t.label().to_string();
    let mut out = Vec::new();
    let mut push = |identity: &'static str, at: String, failure: Option<String>| {
        out.push(IdentityResult { identity, form: form.clone(), at, failure })
    };
    push("hecke-relations", String::new(), verify_eigenform(t).err().map(|n| format!("n = {n}")));
    push("reality", String::new(), verify_reality(t).err().map(|n| format!("n = {n}")));
    let chi0 = match default_chi0(t) {
        Ok(c) => c,
        Err(e) => {
            push("square-root-character", String::new(), Some(e.to_string()));
            return out;
        }
    };
    let order = cfg.order.max(1);
    for p in primes_between(2, cfg.pmax) {
        if t.level() % p == 0 {
            continue;
        }
        let at = |extra: String| if extra.is_empty() { format!("p={p}") } else { format!("p={p} {extra}") };
        let d = match ConjugatePairData::from_table(t, p, &chi0) {
            Ok(d) => d,
            Err(e) => {
                push("pair-data", at(String::new()), Some(e.to_string()));
                continue;
            }
        };
        let b: Vec<CycNumber> = match t.prime_power_coeffs(p, order as u32) {
            Ok(a) => {
                let c_inv = chi0.value_u64(p).inverse();
                let mut pw = CycNumber::from_int(1);
                a.into_iter()
                    .map(|x| {
                        let v = &x * &pw;
                        pw = &pw * &c_inv;
                        v
                    })
                    .collect()
            }
            Err(e) => {
                push("prime-powers", at(String::new()), Some(e.to_string()));
                continue;
            }
        };
        let p_closed = closed_p(&d);
        let all = FilterSpec::AllMultiples { j: 1 };
        push("generating-function", at(String::new()), expansion_mismatch(&p_closed, &b, &all, order));
        let s0 = filter_series(&p_closed, &FilterSpec::AllMultiples { j: 2 });
        push("even-odd-split", at(String::new()), same_function(&p_closed, &closed_s1(&d).add(&s0), order));
        for j in 1..=cfg.jmax {
            let tag = at(format!("j={j}"));
            let n_max = (order as u32 / j).saturating_sub(1).max(1);
            let rec = match jstep_recurrence_check(t, p, j, n_max) {
                Ok(v) => v.map(|e| power_label(p, e)),
                Err(e) => Some(e.to_string()),
            };
            push("j-step-recurrence", tag.clone(), rec);
            let class = FilterSpec::AllMultiples { j };
            let filtered = filter_series(&p_closed, &class);
            push("multiples-expansion", tag.clone(), expansion_mismatch(&filtered, &b, &class, order));
            push("multiples-closed-form", tag.clone(), same_function(&filtered, &closed_p_multiples(&d, j), order));
            if j % 2 == 1 {
                let odd = FilterSpec::OddMultiples { j };
                let (closed, via_filter) = (closed_s1j(&d, j), closed_s1j_filter(&d, j));
                let (closed, via_filter) = (closed.expect("odd j"), via_filter.expect("odd j"));
                push("odd-multiples-two-paths", tag.clone(), same_function(&closed, &via_filter, order));
                push("odd-multiples-expansion", tag.clone(), expansion_mismatch(&closed, &b, &odd, order));
            }
            let parts = match closed_sl_all(&d, j) {
                Ok(parts) => parts,
                Err(e) => {
                    push("residue-partition", tag, Some(e.to_string()));
                    continue;
                }
            };
            let total = parts.iter().fold(RationalFunction::zero(), |acc, s| acc.add(s));
            let mut failure = same_function(&total, &p_closed, order);
            for (l, s) in parts.iter().enumerate() {
                if failure.is_some() {
                    break;
                }
                let class = FilterSpec::ResidueClass { l: l as u32, m: j };
                failure = expansion_mismatch(s, &b, &class, order).map(|w| format!("l={l}: {w}"));
            }
            push("residue-partition", tag, failure);
        }
    }
    out
}

//! Acceptance criteria. Each prints one PASS/FAIL line with its elapsed time
//! against a fixed limit; the process fails if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{bf_rat, below, consts, durand_kerner, tau_by_eta, Cx, PREC, RM};
use eigensign::exactmath::arith::primes_between;
use eigensign::exactmath::{sturm_count_real_roots, Bound, DEFAULT_SIGN_CAP_BITS};
use eigensign::genfun::{
    closed_p, closed_s1j, closed_s1j_filter, closed_sl_all, default_chi0, filter_series, ConjugatePairData,
    FilterSpec, RationalFunction,
};
use eigensign::hecketheory::{hecke_matrix, jstep_violation, lambda_j, theorem4_hypotheses, tj_matrix};
use eigensign::qexpand::{builtin_specs, builtin_table, delta_table};
use eigensign::signscan::{exclusion_eq7_check, realize_sequence, scan, theorem5_realroot_check, Theorem5Status};
use eigensign::{CoeffTable, CycNumber, DirichletCharacter, Poly, SignSequenceSpec};

const IDENTITY_FORMS: [&str; 8] = ["delta", "1.16.a.a", "1.18.a.a", "1.20.a.a", "1.22.a.a", "1.26.a.a", "11.2.a.a", "5.4.a.a"];

type Outcome = Result<String, String>;

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn tables(labels: &[&str], nmax: u64) -> Vec<CoeffTable> {
    labels.iter().map(|l| builtin_table(l, nmax).expect("built-in")).collect()
}

fn all_builtins(nmax: u64) -> Vec<CoeffTable> {
    builtin_specs().iter().map(|s| builtin_table(&s.label, nmax).expect("built-in")).collect()
}

fn good_primes(t: &CoeffTable, pmax: u64) -> Vec<u64> {
    primes_between(2, pmax).into_iter().filter(|p| t.level() % p != 0).collect()
}

fn pair(t: &CoeffTable, p: u64) -> (DirichletCharacter, ConjugatePairData) {
    let chi0 = default_chi0(t).expect("square root");
    let d = ConjugatePairData::from_table(t, p, &chi0).expect("pair data");
    (chi0, d)
}

/// `a(p^e) / chi0(p)^e` for `e <= e_max`, straight from the table.
fn normalized_powers(t: &CoeffTable, chi0: &DirichletCharacter, p: u64, e_max: u32) -> Vec<CycNumber> {
    let c_inv = chi0.value_u64(p).inverse();
    t.prime_power_coeffs(p, e_max).unwrap().iter().enumerate().map(|(e, a)| a * &c_inv.pow(e as u64)).collect()
}

fn criterion_1() -> Outcome {
    let order = 200;
    let mut checked = 0;
    for t in tables(&IDENTITY_FORMS, 200) {
        for p in good_primes(&t, 97) {
            let (chi0, d) = pair(&t, p);
            let b = normalized_powers(&t, &chi0, p, order as u32);
            let pc = closed_p(&d);
            for j in 1..=4u32 {
                let s = filter_series(&pc, &FilterSpec::AllMultiples { j }).expand(order);
                for e in 0..order {
                    let want = if e % j as usize == 0 { b[e].clone() } else { CycNumber::zero() };
                    check(s.coeffs()[e] == want, || format!("{} p={p} j={j}: X^{e}", t.label()))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} filtered series"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for t in tables(&IDENTITY_FORMS, 100) {
        for p in good_primes(&t, 97) {
            let (_, d) = pair(&t, p);
            let pc = closed_p(&d);
            for m in 1..=5u32 {
                let parts = closed_sl_all(&d, m).map_err(|e| e.to_string())?;
                let total = parts.iter().fold(RationalFunction::zero(), |acc, s| acc.add(s));
                check(total == pc, || format!("{} p={p} m={m}", t.label()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} partitions"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for t in tables(&IDENTITY_FORMS, 100) {
        for p in good_primes(&t, 31) {
            let (_, d) = pair(&t, p);
            for j in [1u32, 3, 5] {
                let closed = closed_s1j(&d, j).map_err(|e| e.to_string())?;
                let filtered = closed_s1j_filter(&d, j).map_err(|e| e.to_string())?;
                check(closed == filtered, || format!("{} p={p} j={j}", t.label()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs"))
}

fn criterion_4() -> Outcome {
    let (jmax, nmax) = (6u32, 100u32);
    let mut checked = 0;
    for t in all_builtins(100) {
        for p in good_primes(&t, 97) {
            let pows = t.prime_power_coeffs(p, jmax * (nmax + 1)).map_err(|e| e.to_string())?;
            let c = &t.chi(p) * &CycNumber::from_rational(t.pk1(p));
            for j in 1..=jmax {
                let l = lambda_j(&t, p, j).map_err(|e| e.to_string())?;
                let bad = jstep_violation(&pows, &l, &c.pow(j as u64), j, nmax);
                check(bad.is_none(), || format!("{} p={p} j={j} n={bad:?}", t.label()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (form, p, j) recurrences"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for t in all_builtins(1000) {
        let chi0 = default_chi0(&t).map_err(|e| e.to_string())?;
        for p in good_primes(&t, 1000) {
            let ap = t.a(p).map_err(|e| e.to_string())?;
            let tr = (ap / &chi0.value_u64(p)).to_rational().cloned().ok_or("non-rational trace")?;
            let margin = t.pk1(p) * BigRational::from_integer(4.into()) - &tr * &tr;
            check(margin.is_positive(), || format!("{} p={p}: margin {margin}", t.label()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (form, p) margins"))
}

fn criterion_6() -> Outcome {
    let t = delta_table(100);
    let chi0 = DirichletCharacter::trivial(1);
    let mut rows = 0;
    let mut min_changes = usize::MAX;
    let mut missing = Vec::new();
    for p in primes_between(2, 97) {
        for j in 1..=4u32 {
            let mut patterns = vec![FilterSpec::AllMultiples { j }];
            if j % 2 == 1 {
                patterns.push(FilterSpec::OddMultiples { j });
            }
            for pattern in patterns {
                let spec = SignSequenceSpec { form: "delta".into(), prime: p, pattern, nmax: 100 };
                let r = scan(&t, &chi0, &spec).map_err(|e| e.to_string())?;
                let c = r.census.counted().ok_or_else(|| format!("p={p} {pattern:?}: no census"))?;
                if c.change_count == 0 {
                    missing.push(format!("p={p} {pattern:?}"));
                }
                min_changes = min_changes.min(c.change_count);
                rows += 1;
            }
        }
    }
    // first ten values at p = 2, j = 1 against tau from the eta product and the recurrence
    let tau = tau_by_eta(513);
    let spec = SignSequenceSpec { form: "delta".into(), prime: 2, pattern: FilterSpec::AllMultiples { j: 1 }, nmax: 10 };
    let realized = realize_sequence(&t, &chi0, &spec).map_err(|e| e.to_string())?;
    let mut rec = vec![BigInt::one(), tau[1].clone()];
    for e in 1..9 {
        let next = &tau[1] * &rec[e] - BigInt::from(2048) * &rec[e - 1];
        rec.push(next);
    }
    for e in 0..10 {
        let from_eta = &tau[(1usize << e) - 1];
        check(*from_eta == rec[e], || format!("oracles disagree at 2^{e}"))?;
        let want = CycNumber::from_rational(BigRational::from_integer(from_eta.clone()));
        check(realized[e] == want, || format!("realized value at e={e}"))?;
    }
    if !missing.is_empty() {
        return Err(format!("no sign change below n = 100 for {}", missing.join(", ")));
    }
    Ok(format!("{rows} censuses, min change count {min_changes}; first 10 values match"))
}

fn criterion_7() -> Outcome {
    let t = delta_table(1000);
    let chi0 = DirichletCharacter::trivial(1);
    let mut checked = 0;
    for p in primes_between(2, 1000) {
        let d = ConjugatePairData::from_table(&t, p, &chi0).map_err(|e| e.to_string())?;
        for j in 1..=6 {
            let hits = exclusion_eq7_check(&d, j);
            check(hits.is_empty(), || format!("p={p} j={j}: {hits:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (p, j) pairs, no hits"))
}

/// Real and positive root counts of
/// `((beta alpha^m - alpha beta^m) X^m + (beta^m - alpha^m) X^{m-1} + (alpha - beta)) / (alpha - beta)`
/// with `alpha, beta` computed numerically, in the variable `Y = sqrt(q) X`.
fn numeric_theorem5(tr: &BigRational, q: &BigRational, m: u32) -> (usize, usize) {
    let mut cc = consts();
    let tf = bf_rat(tr, &mut cc);
    let qf = bf_rat(q, &mut cc);
    let four = common::bf_i64(4);
    let disc = four.mul(&qf, PREC, RM).sub(&tf.mul(&tf, PREC, RM), PREC, RM);
    let half = common::bf_i64(2);
    let im = disc.sqrt(PREC, RM).div(&half, PREC, RM);
    let re = tf.div(&half, PREC, RM);
    let alpha = Cx::new(re.clone(), im.clone());
    let beta = Cx::new(re, im.neg());
    let diff = alpha.sub(&beta);
    let mut c = vec![Cx::real(common::bf_i64(0)); m as usize + 1];
    c[m as usize] = beta.mul(&alpha.pow(m)).sub(&alpha.mul(&beta.pow(m))).div(&diff);
    c[m as usize - 1] = c[m as usize - 1].add(&beta.pow(m).sub(&alpha.pow(m)).div(&diff));
    c[0] = c[0].add(&Cx::real(common::bf_i64(1)));
    let s = Cx::real(common::bf_i64(1).div(&qf.sqrt(PREC, RM), PREC, RM));
    let mut scaled: Vec<Cx> = c.iter().enumerate().map(|(i, x)| x.mul(&s.pow(i as u32))).collect();
    // the exact leading coefficient vanishes when V_{m-1} = 0
    while scaled.len() > 1 && below(&scaled.last().expect("nonempty").norm2(), -400) {
        scaled.pop();
    }
    if scaled.len() == 1 {
        return (0, 0);
    }
    let roots = durand_kerner(&scaled);
    let real: Vec<&Cx> = roots.iter().filter(|z| below(&z.im, -200)).collect();
    let positive = real.iter().filter(|z| z.re.is_positive()).count();
    (real.len(), positive)
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for t in all_builtins(100) {
        if !t.spec().character.is_trivial() {
            continue;
        }
        for p in good_primes(&t, 97) {
            let (_, d) = pair(&t, p);
            if d.deligne_margin().to_rational().map_or(false, |m| m.is_positive()) {
                let s = theorem5_realroot_check(&d, 2).map_err(|e| e.to_string())?;
                check(s == Theorem5Status::NoRealRoot, || format!("{} p={p} m=2: {s}", t.label()))?;
            }
            let tr = d.trace.to_rational().cloned().ok_or("non-rational trace")?;
            for m in [3u32, 4] {
                let s = theorem5_realroot_check(&d, m).map_err(|e| e.to_string())?;
                let (real, positive) = numeric_theorem5(&tr, &d.norm, m);
                let want = if real == 0 { Theorem5Status::NoRealRoot } else { Theorem5Status::HasRealRoot { real, positive } };
                check(s == want, || format!("{} p={p} m={m}: exact {s}, numeric {want}", t.label()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (form, p, m) comparisons"))
}

fn criterion_9() -> Outcome {
    let mut cc = consts();
    let mut checked = 0;
    for k in [12u32, 16, 18, 20, 22, 24, 26] {
        for p in [2u64, 3, 5] {
            for j in [1u32, 2] {
                let r = theorem4_hypotheses(k, p, j).map_err(|e| e.to_string())?;
                check(r.char_poly.degree() == Some(r.dim), || format!("k={k} p={p} j={j}: degree"))?;
                if r.dim == 1 {
                    check(r.irreducible.verdict() == "Yes" && !r.eigen_sum_zero, || format!("k={k} p={p} j={j}"))?;
                    let label = if k == 12 { "delta".to_string() } else { format!("1.{k}.a.a") };
                    let t = builtin_table(&label, 10).ok_or("missing form")?;
                    let ap = t.a(p).unwrap().to_rational().cloned().unwrap();
                    let q = t.pk1(p);
                    let eig = if j == 1 { ap } else { &ap * &ap - q * BigRational::from_integer(2.into()) };
                    check(r.char_poly.coeffs()[0] == -eig, || format!("k={k} p={p} j={j}: eigenvalue"))?;
                }
                if k == 24 {
                    let m = tj_matrix(&hecke_matrix(k, p, p as usize * 2 + 2).map_err(|e| e.to_string())?, j);
                    let e = &m.entries;
                    let tr = bf_rat(&(&e[0][0] + &e[1][1]), &mut cc);
                    let det = bf_rat(&(&e[0][0] * &e[1][1] - &e[0][1] * &e[1][0]), &mut cc);
                    let disc = tr.mul(&tr, PREC, RM).sub(&det.mul(&common::bf_i64(4), PREC, RM), PREC, RM);
                    let root = disc.sqrt(PREC, RM);
                    let two = common::bf_i64(2);
                    let l1 = tr.add(&root, PREC, RM).div(&two, PREC, RM);
                    let l2 = tr.sub(&root, PREC, RM).div(&two, PREC, RM);
                    // Res(P(X), P(-X)) = prod_{i,k} (lambda_i + lambda_k) for degree 2
                    let s12 = l1.add(&l2, PREC, RM);
                    let prod = l1.mul(&l2, PREC, RM).mul(&s12, PREC, RM).mul(&s12, PREC, RM).mul(&common::bf_i64(4), PREC, RM);
                    let numeric_sign = if below(&prod, -300) { 0 } else if prod.is_positive() { 1 } else { -1 };
                    let exact_sign = if r.resultant.is_zero() { 0 } else if r.resultant.is_positive() { 1 } else { -1 };
                    check(numeric_sign == exact_sign, || format!("k=24 p={p} j={j}: resultant sign"))?;
                    check((numeric_sign == 0) == r.eigen_sum_zero, || format!("k=24 p={p} j={j}: pair flag"))?;
                    let exact_disc = r.char_poly.coeffs()[1].pow(2) - r.char_poly.coeffs()[0].clone() * BigRational::from_integer(4.into());
                    let square = exact_disc.is_integer() && !exact_disc.is_negative() && {
                        let n = exact_disc.to_integer();
                        let s = n.sqrt();
                        &s * &s == n
                    };
                    let want = if square { "No" } else { "Yes" };
                    check(r.irreducible.verdict() == want, || format!("k=24 p={p} j={j}: verdict"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (k, p, j) reports"))
}

fn rational_root(rng: &mut StdRng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-50i64..=50)), BigInt::from(rng.gen_range(1i64..=12)))
}

fn criterion_10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2026);
    for case in 0..200 {
        let max_deg = rng.gen_range(1usize..=8);
        let mut f: Poly<BigRational> = Poly::constant(BigRational::new(rng.gen_range(1i64..=9).into(), rng.gen_range(1i64..=5).into()));
        let mut roots: Vec<BigRational> = Vec::new();
        let mut deg = 0;
        while deg < max_deg {
            match rng.gen_range(0..3) {
                0 if deg + 2 <= max_deg => {
                    // x^2 + b x + c with b^2 < 4c has no real root
                    let b = BigRational::from_integer(rng.gen_range(-6i64..=6).into());
                    let c = &b * &b / BigRational::from_integer(4.into()) + BigRational::new(rng.gen_range(1i64..=20).into(), 7.into());
                    f = &f * &Poly::new(vec![c, b, BigRational::one()]);
                    deg += 2;
                }
                _ => {
                    let r = rational_root(&mut rng);
                    let mult = if deg + 2 <= max_deg && rng.gen_bool(0.2) { 2 } else { 1 };
                    for _ in 0..mult {
                        f = &f * &Poly::new(vec![-r.clone(), BigRational::one()]);
                    }
                    if !roots.contains(&r) {
                        roots.push(r);
                    }
                    deg += mult;
                }
            }
        }
        if f.is_constant() {
            continue;
        }
        let n = sturm_count_real_roots(&f, &Bound::NegInf, &Bound::PosInf, DEFAULT_SIGN_CAP_BITS).map_err(|e| format!("{e:?}"))?;
        check(n == roots.len(), || format!("case {case}: counted {n}, planted {}", roots.len()))?;
        let pos = sturm_count_real_roots(&f, &Bound::Finite(BigRational::zero()), &Bound::PosInf, DEFAULT_SIGN_CAP_BITS).unwrap();
        let want = roots.iter().filter(|r| r.is_positive()).count();
        check(pos == want, || format!("case {case}: positive roots {pos} vs {want}"))?;
    }
    Ok("200 planted polynomials".into())
}

/// Failures that reflect the mathematics rather than the implementation.
/// A criterion listed here still prints FAIL, but only this exact failure is
/// tolerated by the exit status.
const KNOWN_UNATTAINABLE: [(u32, &str, &str); 1] = [(
    6,
    "no sign change below n = 100 for p=11 OddMultiples { j: 3 }",
    "tau(11) / (2 * 11^5.5) is within 5e-4 of 1/2, so the Satake angle sits just below pi/3 \
     and tau(11^(3(2n+1))) keeps one sign for n < 346; the first change is at exponent 2079",
)];

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 10] = [
        (1, "filtered generating functions match tables to order 200", 60, criterion_1),
        (2, "residue classes partition P for m <= 5", 30, criterion_2),
        (3, "odd-multiple series: filter path equals closed form", 30, criterion_3),
        (4, "j-step Hecke recurrence, p <= 97, j <= 6, n <= 100", 30, criterion_4),
        (5, "strict Deligne margin, p <= 1000", 30, criterion_5),
        (6, "sign changes for delta, p <= 97, j <= 4", 60, criterion_6),
        (7, "no root-of-unity exclusion hits for delta, p <= 1000, j <= 6", 60, criterion_7),
        (8, "real zeros of the residue-class polynomial", 60, criterion_8),
        (9, "characteristic polynomial checks, level one", 60, criterion_9),
        (10, "Sturm counts on planted polynomials", 10, criterion_10),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (n, title, limit, f) in criteria {
        if filter.is_some_and(|k| k != n) {
            continue;
        }
        let start = Instant::now();
        let r = f();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let ok = r.is_ok() && in_time;
        let known = KNOWN_UNATTAINABLE
            .iter()
            .find(|(k, msg, _)| *k == n && in_time && r.as_ref().err().is_some_and(|e| e == msg));
        if !ok && known.is_none() {
            failed += 1;
        }
        let detail = match &r {
            Ok(s) => s.clone(),
            Err(e) => format!("failure: {e}"),
        };
        let late = if in_time { "" } else { " (over time limit)" };
        println!(
            "{} criterion {n}: {title} [{:.2}s / {limit}s]{late} {detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
        if let Some((_, _, why)) = known {
            println!("     known unattainable: {why}");
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

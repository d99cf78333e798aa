//! Command-line front end for the `eigensign` library.

pub mod registry;
pub mod report;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use eigensign::exactmath::arith::primes_between;
use eigensign::genfun::{default_chi0, theorem5_polynomial, ConjugatePairData};
use eigensign::hecketheory::theorem4_hypotheses;
use eigensign::signscan::{char_value_order, satake_angle, scan_grid, theorem5_realroot_check, Census, ScanJob};
use eigensign::{CoeffTable, DirichletCharacter, FilterSpec, SignSequenceSpec};

use registry::Registry;
use report::{write_csv, write_json, ScanRow};
use verify::{verify_table, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "eigensign", version, about = "Sign changes of eigenform coefficients at prime powers")]
pub struct Cli {
    /// Directory holding ingested forms.
    #[arg(long, global = true, default_value = "forms")]
    pub registry: PathBuf,
    /// Working precision in bits for certified numerics.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Registry queries.
    Forms {
        #[command(subcommand)]
        action: FormsAction,
    },
    /// Validate a form file and add it to the registry.
    Ingest { file: PathBuf },
    /// Coefficients a(p^{jn}) and their normalized values.
    Coeffs {
        #[arg(long)]
        form: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long, default_value_t = 10)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
    },
    /// Exact identity suite for the generating functions.
    Verify {
        #[arg(long, required = true, value_delimiter = ',')]
        form: Vec<String>,
        #[arg(long, default_value_t = 13)]
        pmax: u64,
        #[arg(long = "j-max", default_value_t = 3)]
        j_max: u32,
        #[arg(long, default_value_t = 200)]
        order: usize,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
    },
    /// Sign-change censuses over a prime range.
    Scan {
        #[arg(long, required = true, value_delimiter = ',')]
        form: Vec<String>,
        #[arg(long, default_value_t = 2)]
        pmin: u64,
        #[arg(long, default_value_t = 97)]
        pmax: u64,
        #[arg(long, value_enum, default_value_t = PatternKind::All)]
        pattern: PatternKind,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        j: Vec<u32>,
        /// Residues for `--pattern class`; all of `1..m` when omitted.
        #[arg(long, value_delimiter = ',')]
        l: Vec<u32>,
        /// Modulus for `--pattern class`; defaults to the order of chi0(p).
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Characteristic polynomial checks for T_j(p) on level-one cusp forms.
    Theorem4 {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        j: u32,
    },
    /// Real zeros of the residue-class polynomial at one prime.
    Theorem5 {
        #[arg(long)]
        form: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormsAction {
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternKind {
    All,
    Odd,
    Class,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

type CmdResult = Result<i32, String>;

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let reg = Registry::new(&cli.registry);
    let r = match &cli.command {
        Command::Forms { action: FormsAction::List } => cmd_forms_list(&reg, out),
        Command::Ingest { file } => cmd_ingest(&reg, file, out),
        Command::Coeffs { form, prime, j, n, nmax } => cmd_coeffs(&reg, form, *prime, *j, *n, *nmax, out),
        Command::Verify { form, pmax, j_max, order, nmax } => {
            let cfg = VerifyConfig { pmax: *pmax, jmax: *j_max, order: *order };
            let tables = form.iter().map(|f| resolve(&reg, f, (*nmax).max(*pmax))).collect::<Result<Vec<_>, _>>();
            tables.and_then(|ts| cmd_verify(&ts, &cfg, out))
        }
        Command::Scan { form, pmin, pmax, pattern, j, l, m, nmax, out: path, format } => {
            let cfg = ScanConfig {
                pmin: *pmin,
                pmax: *pmax,
                pattern: *pattern,
                j: j.clone(),
                l: l.clone(),
                m: *m,
                nmax: *nmax,
            };
            let tables = form.iter().map(|f| resolve(&reg, f, (*pmax).max(100))).collect::<Result<Vec<_>, _>>();
            tables.and_then(|ts| cmd_scan(&ts, &cfg, path.as_ref(), *format, out, err))
        }
        Command::Theorem4 { weight, prime, j } => cmd_theorem4(*weight, *prime, *j, out),
        Command::Theorem5 { form, prime, m, nmax } => {
            resolve(&reg, form, (*nmax).max(*prime)).and_then(|t| cmd_theorem5(&t, *prime, *m, cli.precision, out))
        }
    };
    match r {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn resolve(reg: &Registry, label: &str, nmax: u64) -> Result<CoeffTable, String> {
    reg.resolve(label, nmax).map_err(|e| format!("{label}: {e}"))
}

fn io(e: std::io::Error) -> String {
    e.to_string()
}

pub fn cmd_forms_list(reg: &Registry, out: &mut dyn Write) -> CmdResult {
    for e in reg.list() {
        let kind = if e.builtin { "builtin" } else { "ingested" };
        writeln!(out, "{}\tk={}\tN={}\tchi_order={}\t{kind}", e.label, e.weight, e.level, e.char_order).map_err(io)?;
    }
    Ok(0)
}

pub fn cmd_ingest(reg: &Registry, file: &std::path::Path, out: &mut dyn Write) -> CmdResult {
    let t = reg.ingest(file).map_err(|e| e.to_string())?;
    writeln!(out, "ingested {} (k={}, N={}, nmax={}) into {}", t.label(), t.weight(), t.level(), t.nmax(), reg.dir().display())
        .map_err(io)?;
    Ok(0)
}

fn cmd_coeffs(reg: &Registry, form: &str, p: u64, j: u32, n: u32, nmax: u64, out: &mut dyn Write) -> CmdResult {
    if j == 0 {
        return Err("j must be at least 1".into());
    }
    let t = resolve(reg, form, nmax.max(p))?;
    let chi0 = default_chi0(&t).map_err(|e| e.to_string())?;
    let e_max = j * n.saturating_sub(1);
    let a = t.prime_power_coeffs(p, e_max).map_err(|e| e.to_string())?;
    let c_inv = chi0.value_u64(p).inverse();
    writeln!(out, "n\texponent\ta(p^e)\ta(p^e)/chi0(p)^e").map_err(io)?;
    for i in 0..n {
        let e = i * j;
        let v = &a[e as usize];
        writeln!(out, "{i}\t{e}\t{v}\t{}", v * &c_inv.pow(e as u64)).map_err(io)?;
    }
    Ok(0)
}

/// Identity suite over several tables; exit 0 iff every identity holds.
pub fn cmd_verify(tables: &[CoeffTable], cfg: &VerifyConfig, out: &mut dyn Write) -> CmdResult {
    let mut failed = 0usize;
    let mut total = 0usize;
    for t in tables {
        for r in verify_table(t, cfg) {
            total += 1;
            if !r.passed() {
                failed += 1;
            }
            writeln!(out, "{r}").map_err(io)?;
        }
    }
    writeln!(out, "{} identities, {failed} failed", total).map_err(io)?;
    Ok(if failed == 0 { 0 } else { 1 })
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub pmin: u64,
    pub pmax: u64,
    pub pattern: PatternKind,
    pub j: Vec<u32>,
    pub l: Vec<u32>,
    pub m: Option<u32>,
    pub nmax: usize,
}

/// Rows of a scan, sorted by form, prime and pattern, plus notes on skipped cases.
pub fn scan_rows(tables: &[CoeffTable], cfg: &ScanConfig) -> Result<(Vec<ScanRow>, Vec<String>), String> {
    if cfg.pmin < 2 || cfg.pmax < cfg.pmin {
        return Err(format!("need 2 <= pmin <= pmax, got {}..{}", cfg.pmin, cfg.pmax));
    }
    if cfg.nmax < 2 {
        return Err("nmax must be at least 2".into());
    }
    let chis: Vec<DirichletCharacter> =
        tables.iter().map(|t| default_chi0(t).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let mut notes = Vec::new();
    let mut jobs = Vec::new();
    for (t, chi0) in tables.iter().zip(&chis) {
        for p in primes_between(cfg.pmin, cfg.pmax) {
            if t.level() % p == 0 {
                notes.push(format!("{} p={p}: skipped, p divides N", t.label()));
                continue;
            }
            let patterns: Vec<FilterSpec> = match cfg.pattern {
                PatternKind::All => cfg.j.iter().map(|&j| FilterSpec::AllMultiples { j }).collect(),
                PatternKind::Odd => cfg.j.iter().map(|&j| FilterSpec::OddMultiples { j }).collect(),
                PatternKind::Class => {
                    let m = cfg.m.unwrap_or_else(|| char_value_order(chi0, p) as u32);
                    let ls: Vec<u32> = if cfg.l.is_empty() { (1..m).collect() } else { cfg.l.clone() };
                    if ls.is_empty() {
                        notes.push(format!("{} p={p}: no residue class l in [1, m-1] for m = {m}", t.label()));
                    }
                    ls.into_iter().map(|l| FilterSpec::ResidueClass { l, m }).collect()
                }
            };
            for pattern in patterns {
                let spec = SignSequenceSpec { form: t.label().to_string(), prime: p, pattern, nmax: cfg.nmax };
                jobs.push(ScanJob { table: t, chi0, spec });
            }
        }
    }
    let results = scan_grid(&jobs);
    let mut rows = Vec::with_capacity(results.len());
    for (spec, r) in &results {
        if let Ok(rep) = r {
            if let Some(rm) = &rep.split {
                notes.push(format!(
                    "{} p={} {:?}: chi0(p)^l = {}{}; Re census {}, Im census {}",
                    spec.form,
                    spec.prime,
                    spec.pattern,
                    rm.chi0_power,
                    if rm.ambiguous { " (neither real nor +-i)" } else { "" },
                    census_text(&rm.re),
                    census_text(&rm.im)
                ));
            }
        }
        rows.push(ScanRow::from_result(spec, r));
    }
    Ok((rows, notes))
}

fn census_text(c: &Census) -> String {
    match c {
        Census::Counted(c) => format!("{} changes, {} zeros", c.change_count, c.zero_count),
        Census::AllZero => "ALL_ZERO".into(),
        Census::Undecided(i) => format!("UNDECIDED at {i}"),
    }
}

/// Exit 0 iff no row is an error.
pub fn cmd_scan(
    tables: &[CoeffTable],
    cfg: &ScanConfig,
    path: Option<&PathBuf>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (rows, notes) = scan_rows(tables, cfg)?;
    for n in &notes {
        writeln!(err, "note: {n}").map_err(io)?;
    }
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(&rows, &mut buf).map_err(|e| e.to_string())?,
        Format::Json => write_json(&rows, &mut buf).map_err(io)?,
    }
    match path {
        Some(p) => std::fs::write(p, &buf).map_err(|e| format!("{}: {e}", p.display()))?,
        None => out.write_all(&buf).map_err(io)?,
    }
    Ok(if rows.iter().any(|r| r.is_error()) { 1 } else { 0 })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

pub fn cmd_theorem4(k: u32, p: u64, j: u32, out: &mut dyn Write) -> CmdResult {
    let r = theorem4_hypotheses(k, p, j).map_err(|e| e.to_string())?;
    let lines = [
        format!("weight: {}", r.weight),
        format!("prime: {}", r.prime),
        format!("j: {}", r.j),
        format!("dimension: {}", r.dim),
        format!("char_poly: {}", r.char_poly),
        format!("irreducible: {} ({})", r.irreducible.verdict(), r.irreducible.reason()),
        format!("resultant: {}", eigensign::exactmath::rational::format_rational(&r.resultant)),
        format!("eigen_sum_zero: {}", yes_no(r.eigen_sum_zero)),
        format!("zero_eigenvalue_repeated: {}", yes_no(r.zero_eigenvalue_repeated)),
    ];
    for l in lines {
        writeln!(out, "{l}").map_err(io)?;
    }
    Ok(0)
}

pub fn cmd_theorem5(t: &CoeffTable, p: u64, m: Option<u32>, bits: u32, out: &mut dyn Write) -> CmdResult {
    let chi0 = default_chi0(t).map_err(|e| e.to_string())?;
    let d = ConjugatePairData::from_table(t, p, &chi0).map_err(|e| e.to_string())?;
    let order = char_value_order(&chi0, p) as u32;
    let m = m.unwrap_or(order);
    if m == 0 || m % order != 0 {
        return Err(format!("m = {m} is not a multiple of the order {order} of chi0({p})"));
    }
    let status = theorem5_realroot_check(&d, m).map_err(|e| e.to_string())?;
    writeln!(out, "form: {}\nprime: {p}\nchi0(p): {}\nm: {m}", t.label(), chi0.value_u64(p)).map_err(io)?;
    writeln!(out, "trace: {}\ndeligne_margin: {}", d.trace, d.deligne_margin()).map_err(io)?;
    if let Ok(a) = satake_angle(&d, bits) {
        writeln!(out, "satake_angle: {}", a.theta).map_err(io)?;
    }
    if m >= 2 {
        writeln!(out, "polynomial: {}", theorem5_polynomial(&d, m)).map_err(io)?;
    }
    writeln!(out, "status: {status}").map_err(io)?;
    Ok(0)
}

use std::process::Command;

use eigensign::qexpand::{builtin_table, delta_table, to_form_file};
use eigensign::{CoeffTable, CycNumber};
use eigensign_cli::registry::Registry;
use eigensign_cli::report::{read_csv, write_csv, write_json, ScanRow, CSV_HEADER};
use eigensign_cli::verify::VerifyConfig;
use eigensign_cli::{cmd_scan, cmd_theorem4, cmd_verify, scan_rows, Format, PatternKind, ScanConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigensign"))
}

fn scan_cfg(pattern: PatternKind, j: Vec<u32>, pmin: u64, pmax: u64) -> ScanConfig {
    ScanConfig { pmin, pmax, pattern, j, l: vec![], m: None, nmax: 30 }
}

fn text(buf: Vec<u8>) -> String {
    String::from_utf8(buf).unwrap()
}

#[test]
fn forms_list_and_ingest() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("forms");
    let out = bin().args(["--registry", reg.to_str().unwrap(), "forms", "list"]).output().unwrap();
    assert!(out.status.success());
    let listing = String::from_utf8(out.stdout).unwrap();
    assert!(listing.lines().any(|l| l.starts_with("delta\tk=12\tN=1\t")));

    let mut file = to_form_file(&builtin_table("11.2.a.a", 50).unwrap());
    file.label = "11.2.copy".into();
    let src = dir.path().join("copy.json");
    std::fs::write(&src, serde_json::to_string(&file).unwrap()).unwrap();
    let out = bin().args(["--registry", reg.to_str().unwrap(), "ingest", src.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let listing = Registry::new(&reg).list();
    assert!(listing.iter().any(|e| e.label == "11.2.copy" && !e.builtin && e.level == 11));
    assert!(listing.iter().any(|e| e.label == "delta"));

    // a(6) != a(2) a(3) is rejected with its index
    file.coefficients[5] = file.coefficients[0].clone();
    std::fs::write(&src, serde_json::to_string(&file).unwrap()).unwrap();
    let out = bin().args(["--registry", reg.to_str().unwrap(), "ingest", src.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n = 6"));
}

#[test]
fn verify_passes_and_locates_planted_error() {
    let t = delta_table(100);
    let cfg = VerifyConfig { pmax: 7, jmax: 3, order: 60 };
    let mut out = Vec::new();
    assert_eq!(cmd_verify(&[t.clone()], &cfg, &mut out), Ok(0));
    assert!(text(out).ends_with("0 failed\n"));

    let bad = t.with_coefficient(16, CycNumber::from_int(1));
    let mut out = Vec::new();
    assert_eq!(cmd_verify(&[bad], &cfg, &mut out), Ok(1));
    let report = text(out);
    assert!(report.contains("FAIL hecke-relations delta: n = 16"), "{report}");
    assert!(report.contains("FAIL j-step-recurrence delta p=2 j=1: n = 16"), "{report}");

    let short = VerifyConfig { pmax: 13, jmax: 3, order: 2 };
    assert_eq!(cmd_verify(&[t], &short, &mut Vec::new()), Ok(0));
}

#[test]
fn verify_binary_exit_code() {
    let out = bin().args(["verify", "--form", "delta", "--pmax", "5", "--j-max", "2", "--order", "40"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["verify", "--form", "no-such-form"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_skips_level_primes() {
    let t = builtin_table("11.2.a.a", 100).unwrap();
    let (rows, notes) = scan_rows(&[t], &scan_cfg(PatternKind::All, vec![1], 2, 13)).unwrap();
    assert!(rows.iter().all(|r| r.p != 11));
    assert_eq!(rows.len(), 5);
    assert!(notes.iter().any(|n| n.contains("p=11") && n.contains("p divides N")));
}

#[test]
fn scan_reports_all_zero() {
    let spec = delta_table(5).spec().clone();
    let planted = CoeffTable::from_coefficients(spec, vec![1, 0, 252].into_iter().map(CycNumber::from_int).collect());
    let cfg = scan_cfg(PatternKind::Odd, vec![1], 2, 2);
    let mut out = Vec::new();
    let code = cmd_scan(&[planted], &cfg, None, Format::Csv, &mut out, &mut Vec::new()).unwrap();
    assert_eq!(code, 0);
    let rows = read_csv(text(out).as_bytes()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].first_change, "ALL_ZERO");
}

#[test]
fn scan_error_rows_set_exit_code() {
    let t = delta_table(100);
    let mut out = Vec::new();
    let cfg = scan_cfg(PatternKind::Odd, vec![2], 2, 3);
    let code = cmd_scan(&[t], &cfg, None, Format::Csv, &mut out, &mut Vec::new()).unwrap();
    assert_eq!(code, 1);
    let rows = read_csv(text(out).as_bytes()).unwrap();
    assert!(rows.iter().all(ScanRow::is_error));
}

#[test]
fn csv_and_json_agree_and_are_deterministic() {
    let tables = [delta_table(100), builtin_table("5.4.a.a", 100).unwrap()];
    let cfg = ScanConfig { nmax: 20, ..scan_cfg(PatternKind::All, vec![1, 2, 3, 4], 2, 23) };
    let (rows, _) = scan_rows(&tables, &cfg).unwrap();
    let (again, _) = scan_rows(&tables, &cfg).unwrap();
    assert_eq!(rows, again);
    let keys: Vec<_> = rows.iter().map(|r| (r.form.clone(), r.p, r.pattern.clone(), r.j)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(rows.iter().all(|r| r.change_count.unwrap() >= 1));

    let mut csv_buf = Vec::new();
    write_csv(&rows, &mut csv_buf).unwrap();
    let csv_text = text(csv_buf);
    assert_eq!(csv_text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert!(csv_text.lines().all(|l| l.split(',').count() == 13));
    let mut json_buf = Vec::new();
    write_json(&rows, &mut json_buf).unwrap();
    let from_json: Vec<ScanRow> = serde_json::from_slice(&json_buf).unwrap();
    assert_eq!(read_csv(csv_text.as_bytes()).unwrap(), from_json);
}

#[test]
fn scan_binary_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let out = bin()
        .args(["scan", "--form", "delta", "--pmax", "7", "--pattern", "odd", "--j", "1,3", "--nmax", "20"])
        .args(["--format", "json", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<ScanRow> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 8);
}

#[test]
fn theorem_reports() {
    let mut out = Vec::new();
    assert_eq!(cmd_theorem4(12, 2, 1, &mut out), Ok(0));
    let r = text(out);
    assert!(r.contains("irreducible: Yes"));
    assert!(r.contains("eigen_sum_zero: No"));
    let out = bin().args(["theorem5", "--form", "delta", "--prime", "3", "--m", "2"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("status: NoRealRoot"));
}

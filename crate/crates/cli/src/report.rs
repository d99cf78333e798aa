//! Scan rows and their CSV / JSON encodings.

use std::io::Write;

use eigensign::signscan::{Census, ScanReport, SignscanError};
use eigensign::{FilterSpec, SignSequenceSpec};
use serde::{Deserialize, Serialize};

/// One output row. `first_change` carries the census status when no index
/// applies: `none`, `ALL_ZERO`, `UNDECIDED` or `ERROR:<message>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub form: String,
    pub p: u64,
    pub pattern: String,
    pub j: Option<u32>,
    pub l: Option<u32>,
    pub m: Option<u32>,
    pub nmax: usize,
    pub first_change: String,
    pub change_count: Option<usize>,
    pub zero_count: Option<usize>,
    pub deligne_margin: String,
    pub exclusion_mus: String,
    pub theorem5_status: String,
}

pub const CSV_HEADER: [&str; 13] = [
    "form",
    "p",
    "pattern",
    "j",
    "l",
    "m",
    "nmax",
    "first_change",
    "change_count",
    "zero_count",
    "deligne_margin",
    "exclusion_mus",
    "theorem5_status",
];

fn pattern_fields(f: &FilterSpec) -> (&'static str, Option<u32>, Option<u32>, Option<u32>) {
    match *f {
        FilterSpec::AllMultiples { j } => ("all", Some(j), None, None),
        FilterSpec::OddMultiples { j } => ("odd", Some(j), None, None),
        FilterSpec::ResidueClass { l, m } => ("class", None, Some(l), Some(m)),
    }
}

impl ScanRow {
    fn skeleton(spec: &SignSequenceSpec) -> ScanRow {
        let (pattern, j, l, m) = pattern_fields(&spec.pattern);
        ScanRow {
            form: spec.form.clone(),
            p: spec.prime,
            pattern: pattern.into(),
            j,
            l,
            m,
            nmax: spec.nmax,
            first_change: String::new(),
            change_count: None,
            zero_count: None,
            deligne_margin: String::new(),
            exclusion_mus: String::new(),
            theorem5_status: String::new(),
        }
    }

    pub fn from_result(spec: &SignSequenceSpec, r: &Result<ScanReport, SignscanError>) -> ScanRow {
        let mut row = Self::skeleton(spec);
        match r {
            Err(e) => row.first_change = format!("ERROR:{e}"),
            Ok(rep) => {
                match &rep.census {
                    Census::Counted(c) => {
                        row.first_change = c.first_change.map_or("none".into(), |i| i.to_string());
                        row.change_count = Some(c.change_count);
                        row.zero_count = Some(c.zero_count);
                    }
                    Census::AllZero => {
                        row.first_change = "ALL_ZERO".into();
                        row.change_count = Some(0);
                        row.zero_count = Some(rep.realized.len());
                    }
                    Census::Undecided(_) => row.first_change = "UNDECIDED".into(),
                }
                row.deligne_margin = rep.deligne_margin.to_string();
                row.exclusion_mus =
                    rep.exclusion_hits.iter().map(|h| h.mu.to_string()).collect::<Vec<_>>().join(";");
                row.theorem5_status = rep.theorem5_status.to_string();
            }
        }
        row
    }

    pub fn is_error(&self) -> bool {
        self.first_change.starts_with("ERROR:")
    }
}

pub fn write_csv(rows: &[ScanRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    // an explicit header keeps the column list fixed even for zero rows
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl std::io::Read) -> csv::Result<Vec<ScanRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn write_json(rows: &[ScanRow], mut out: impl Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)
}

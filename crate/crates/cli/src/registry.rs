//! Built-in forms plus ingested forms persisted as canonical JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use eigensign::qexpand::{builtin_specs, builtin_table, form_to_json, ingest_form, QexpandError};
use eigensign::CoeffTable;

pub struct Registry {
    dir: PathBuf,
}

/// One line of `forms list`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormEntry {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    pub char_order: u64,
    pub builtin: bool,
}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.starts_with('.')
        && label.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
}

impl Registry {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Registry { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, label: &str) -> PathBuf {
        self.dir.join(format!("{label}.json"))
    }

    fn ingested_labels(&self) -> Vec<String> {
        let Ok(entries) = fs::read_dir(&self.dir) else {
            return Vec::new();
        };
        let mut out: Vec<String> = entries
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                name.strip_suffix(".json").map(str::to_string)
            })
            .collect();
        out.sort();
        out
    }

    /// Built-ins first, then ingested forms by label. Unreadable files are skipped.
    pub fn list(&self) -> Vec<FormEntry> {
        let mut out: Vec<FormEntry> = builtin_specs()
            .into_iter()
            .map(|s| FormEntry {
                char_order: s.character.order(),
                label: s.label,
                weight: s.weight,
                level: s.level,
                builtin: true,
            })
            .collect();
        for label in self.ingested_labels() {
            if out.iter().any(|e| e.label == label) {
                continue;
            }
            if let Ok(t) = ingest_form(&self.path_for(&label)) {
                out.push(FormEntry {
                    label: t.label().to_string(),
                    weight: t.weight(),
                    level: t.level(),
                    char_order: t.spec().character.order(),
                    builtin: false,
                });
            }
        }
        out
    }

    /// Table of a built-in form computed to `nmax`, or the stored table of an ingested form.
    pub fn resolve(&self, label: &str, nmax: u64) -> Result<CoeffTable, QexpandError> {
        if let Some(t) = builtin_table(label, nmax) {
            return Ok(t);
        }
        if !valid_label(label) {
            return Err(QexpandError::InvalidInput(format!("bad form label {label:?}")));
        }
        let path = self.path_for(label);
        if !path.exists() {
            return Err(QexpandError::InvalidInput(format!("unknown form {label:?}")));
        }
        ingest_form(&path)
    }

    /// Validates a form file and stores its canonical form under its label.
    pub fn ingest(&self, file: &Path) -> Result<CoeffTable, QexpandError> {
        let t = ingest_form(file)?;
        if !valid_label(t.label()) {
            return Err(QexpandError::InvalidInput(format!("bad form label {:?}", t.label())));
        }
        if builtin_specs().iter().any(|s| s.label == t.label()) {
            return Err(QexpandError::InvalidInput(format!("{} is a built-in label", t.label())));
        }
        let io = |e: std::io::Error| QexpandError::Io(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        fs::write(self.path_for(t.label()), form_to_json(&t) + "\n").map_err(io)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert!(valid_label("11.2.a.a"));
        assert!(!valid_label("../x"));
        assert!(!valid_label(""));
    }
}

//! The table of forbidden triples of size 6 shipped with the crate, and the
//! comparison of an enumeration against it.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use super::records::{RecordVerdict, ResultRecord};
use super::HarnessError;
use crate::model::Permutation;

pub const FORBIDDEN_SIZE6: &str = include_str!("../../data/forbidden_size6.txt");
pub const FORBIDDEN_SIZE6_SHA256: &str = include_str!("../../data/forbidden_size6.txt.sha256");

/// Second and third words of forbidden triples whose first word is the
/// identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForbiddenTable {
    pub size: usize,
    pub entries: BTreeSet<(String, String)>,
}

impl ForbiddenTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Lines of two digit words; `#` starts a comment.
pub fn parse_table(text: &str) -> Result<ForbiddenTable, HarnessError> {
    let mut table = ForbiddenTable::default();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| HarnessError::Table { line: k + 1, message };
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != 2 {
            return Err(err(format!("expected two words, found {}", words.len())));
        }
        for w in &words {
            let p = Permutation::parse_digits(w).map_err(|e| err(format!("{w}: {e}")))?;
            if table.size == 0 {
                table.size = p.len();
            } else if p.len() != table.size {
                return Err(err(format!("{w} has size {}, expected {}", p.len(), table.size)));
            }
        }
        if !table.entries.insert((words[0].to_string(), words[1].to_string())) {
            return Err(err(format!("duplicate entry {line}")));
        }
    }
    Ok(table)
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// The bundled table, after checking its digest.
pub fn load_forbidden_size6() -> Result<ForbiddenTable, HarnessError> {
    let digest = sha256_hex(FORBIDDEN_SIZE6);
    if digest != FORBIDDEN_SIZE6_SHA256.trim() {
        return Err(HarnessError::Table {
            line: 0,
            message: format!("checksum mismatch: {digest}"),
        });
    }
    parse_table(FORBIDDEN_SIZE6)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffReport {
    /// In the table but not found unrealizable.
    pub missing_from_results: Vec<(String, String)>,
    /// Found unrealizable but absent from the table.
    pub extra_in_results: Vec<(String, String)>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.missing_from_results.is_empty() && self.extra_in_results.is_empty()
    }

    pub fn len(&self) -> usize {
        self.missing_from_results.len() + self.extra_in_results.len()
    }
}

impl std::fmt::Display for DiffReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (a, b) in &self.missing_from_results {
            writeln!(f, "missing from results: {a} {b}")?;
        }
        for (a, b) in &self.extra_in_results {
            writeln!(f, "extra in results: {a} {b}")?;
        }
        Ok(())
    }
}

pub fn compare_forbidden_list(results: &[ResultRecord], table: &ForbiddenTable) -> DiffReport {
    let found: BTreeSet<(String, String)> = results
        .iter()
        .filter(|r| r.verdict == RecordVerdict::Unrealizable)
        .map(|r| (r.triple[1].clone(), r.triple[2].clone()))
        .collect();
    DiffReport {
        missing_from_results: table.entries.difference(&found).cloned().collect(),
        extra_in_results: found.difference(&table.entries).cloned().collect(),
    }
}

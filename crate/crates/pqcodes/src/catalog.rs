//! Append-only JSONL catalogs: one code per line, stamped with a
//! content hash (SHA-256 over the canonical code document) and the
//! verification status current when the entry was written.  A strict
//! load re-derives both stamps and rejects any line that disagrees, so a
//! catalog can never silently drift from what its codes actually are.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::code::SubspaceCode;
use crate::json::{canonical_code_json, code_doc, parse_code, CodeDoc, JsonError, ParseMode, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: JsonError,
    },
    #[error("line {line}: stored hash {stored} does not match recomputed {actual}")]
    HashMismatch {
        line: usize,
        stored: String,
        actual: String,
    },
    #[error("line {line}: stored status {stored:?} does not match re-verification {actual:?}")]
    StatusMismatch {
        line: usize,
        stored: VerificationStatus,
        actual: VerificationStatus,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationStatus {
    Linear,
    NotLinear,
    /// No addition table, so linearity has no meaning yet.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub schema: String,
    pub hash: String,
    pub status: VerificationStatus,
    pub code: CodeDoc,
}

/// Stamps one code: canonical document, content hash, fresh verification.
pub fn catalog_entry(code: &SubspaceCode) -> Result<CatalogEntry, JsonError> {
    let doc = code_doc(code);
    let hash = sha256_hex(&canonical_code_json(&doc)?);
    let status = verify_status(code);
    Ok(CatalogEntry {
        schema: SCHEMA_VERSION.to_string(),
        hash,
        status,
        code: doc,
    })
}

fn verify_status(code: &SubspaceCode) -> VerificationStatus {
    match code.table() {
        None => VerificationStatus::Unverified,
        Some(_) => {
            let passed = code
                .is_linear()
                .expect("table presence was just checked")
                .passed;
            if passed {
                VerificationStatus::Linear
            } else {
                VerificationStatus::NotLinear
            }
        }
    }
}

/// Appends one line per code, creating the file if needed.  Returns the
/// entries written, in order.
pub fn append_codes(
    path: &Path,
    codes: &[SubspaceCode],
) -> Result<Vec<CatalogEntry>, CatalogError> {
    let entries: Vec<CatalogEntry> = codes
        .iter()
        .map(catalog_entry)
        .collect::<Result<_, _>>()
        .map_err(|source| CatalogError::Json { line: 0, source })?;
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for entry in &entries {
        let line = serde_json::to_string(entry)
            .map_err(|e| CatalogError::Json { line: 0, source: e.into() })?;
        writeln!(file, "{line}")?;
    }
    Ok(entries)
}

/// Reads a whole catalog.  Strict mode re-derives every stamp: the hash
/// must match the stored document and the stored status must match a
/// fresh verification of the parsed code.
pub fn load_catalog(
    path: &Path,
    mode: ParseMode,
) -> Result<Vec<(CatalogEntry, SubspaceCode)>, CatalogError> {
    let file = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line_no = idx + 1;
        let text = line?;
        if text.trim().is_empty() {
            continue;
        }
        let entry: CatalogEntry = serde_json::from_str(&text).map_err(|e| CatalogError::Json {
            line: line_no,
            source: e.into(),
        })?;
        let code = parse_code(&entry.code, mode).map_err(|source| CatalogError::Json {
            line: line_no,
            source,
        })?;
        if mode == ParseMode::Strict {
            let actual = sha256_hex(&canonical_code_json(&entry.code).map_err(|source| {
                CatalogError::Json {
                    line: line_no,
                    source,
                }
            })?);
            if actual != entry.hash {
                return Err(CatalogError::HashMismatch {
                    line: line_no,
                    stored: entry.hash,
                    actual,
                });
            }
            let fresh = verify_status(&code);
            if fresh != entry.status {
                return Err(CatalogError::StatusMismatch {
                    line: line_no,
                    stored: entry.status,
                    actual: fresh,
                });
            }
        }
        out.push((entry, code));
    }
    Ok(out)
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
